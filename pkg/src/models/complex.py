"""C^{n+2} 中的复形、链映射与同伦"""

from typing import Dict, Sequence

from .morphism import Morphism
from .object_expr import ObjectExpr


class ComplexNp2:
    def __init__(self, n: int, terms: Sequence[ObjectExpr], diffs: Sequence[Morphism]):
        """
        (n+2) 项复形 X⁰ → X¹ → … → X^{n+1}

        :param n: 正整数
        :param terms: n+2 个对象
        :param diffs: n+1 个微分，diffs[i]: terms[i] → terms[i+1]
        """
        self.n = n
        self.terms = tuple(terms)
        self.diffs = tuple(diffs)
        if len(self.terms) != n + 2:
            raise ValueError(f"复形应有 {n + 2} 项，实际 {len(self.terms)} 项")
        if len(self.diffs) != n + 1:
            raise ValueError(f"复形应有 {n + 1} 个微分，实际 {len(self.diffs)} 个")
        for i, d in enumerate(self.diffs):
            if d.source != self.terms[i] or d.target != self.terms[i + 1]:
                raise ValueError(f"第 {i} 个微分端点与复形各项不一致")

    @property
    def start(self) -> ObjectExpr:
        return self.terms[0]

    @property
    def end(self) -> ObjectExpr:
        return self.terms[-1]

    def with_diffs(self, updates: Dict[int, Morphism]) -> "ComplexNp2":
        """替换若干微分（端点对象随之更新）"""
        diffs = list(self.diffs)
        terms = list(self.terms)
        for i, d in updates.items():
            diffs[i] = d
            terms[i] = d.source
            terms[i + 1] = d.target
        return ComplexNp2(self.n, terms, diffs)

    def to_dict(self):
        return {
            'terms': [list(t.summands) for t in self.terms],
            'diffs': [d.to_dict() for d in self.diffs],
        }

    def describe(self) -> str:
        return " → ".join(str(t) for t in self.terms)

    def __repr__(self) -> str:
        return f"ComplexNp2({self.describe()})"


class ChainMap:
    """链映射 f: source → target，components[i]: source.terms[i] → target.terms[i]"""

    def __init__(self, source: ComplexNp2, target: ComplexNp2, components: Sequence[Morphism]):
        self.source = source
        self.target = target
        self.components = tuple(components)

    def to_dict(self):
        return {'components': [c.to_dict() for c in self.components]}


class Homotopy:
    def __init__(self, maps: Sequence[Morphism]):
        """
        同伦 h¹..h^{n+1}，maps[i-1] = h^i: X^i → Y^{i-1}

        满足 f^i − g^i = d_Y^{i−1} h^i + h^{i+1} d_X^i（越界项取零）
        """
        self.maps = tuple(maps)

    def to_dict(self):
        return {'maps': [h.to_dict() for h in self.maps]}
