"""复形范畴 C^{n+2}

链映射与同伦都作为 LinearSystem 的解求出；同伦等价的搜索在链映射的
仿射解空间上枚举，对每个候选 f 再联立求解 (g, h, k)。
"""

import logging
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from ..exceptions import PreconditionError, ShapeMismatchError
from ..models import ChainMap, ComplexNp2, Homotopy, Morphism, ObjectExpr, Report
from .linsys import LinearSystem

Slot = Union[int, Morphism]
Part = Tuple[int, Slot, Optional[Morphism], Optional[Morphism]]
Equivalence = Tuple[ChainMap, ChainMap, Homotopy, Homotopy]


class ComplexCategory:
    """(n+2) 项复形、链映射、同伦、映射锥与映射余锥"""

    def __init__(self, cat, n: int, max_enumeration: int = 4096):
        """
        :param cat: FiniteCategory
        :param n: 正整数
        :param max_enumeration: 解空间枚举上限
        """
        if n < 1:
            raise ValueError(f"n 必须是正整数: {n}")
        self.cat = cat
        self.n = n
        self.max_enumeration = max_enumeration
        self.logger = self._setup_logger()

    # ==================== 构造 ====================

    def make(self, terms: Sequence[ObjectExpr], diffs: Sequence[Morphism]) -> ComplexNp2:
        return ComplexNp2(self.n, tuple(terms), tuple(diffs))

    def split_complex(self, a: ObjectExpr, c: ObjectExpr) -> ComplexNp2:
        """A →1 A → 0 … 0 → C →1 C 的逐项直和（n=1 时中间项为 A⊕C）"""
        n = self.n

        def groups(i: int) -> List[ObjectExpr]:
            found = []
            if i in (0, 1):
                found.append(a)
            if i in (n, n + 1):
                found.append(c)
            return found

        terms, diffs = [], []
        for i in range(n + 1):
            cols, rows = groups(i), groups(i + 1)
            entries = {}
            if i == 0:
                entries[(0, 0)] = self.cat.identity(a)
            if i == n:
                entries[(len(rows) - 1, len(cols) - 1)] = self.cat.identity(c)
            diffs.append(self.cat.assemble(rows, cols, entries))
        terms = [d.source for d in diffs] + [diffs[-1].target]
        return self.make(terms, diffs)

    def contractible(self, obj: ObjectExpr, degree: int) -> ComplexNp2:
        """obj 在 degree 与 degree+1 两处、其间为恒等的可缩复形"""
        if not 0 <= degree <= self.n:
            raise ValueError(f"可缩补丁位置越界: {degree}")
        terms = [obj if i in (degree, degree + 1) else ObjectExpr.zero() for i in range(self.n + 2)]
        diffs = []
        for i in range(self.n + 1):
            if i == degree:
                diffs.append(self.cat.identity(obj))
            else:
                diffs.append(self.cat.zero(terms[i], terms[i + 1]))
        return self.make(terms, diffs)

    def direct_sum(self, *complexes: ComplexNp2) -> ComplexNp2:
        """逐项直和，微分为分块对角"""
        diffs = []
        for i in range(self.n + 1):
            rows = [x.terms[i + 1] for x in complexes]
            cols = [x.terms[i] for x in complexes]
            entries = {(k, k): x.diffs[i] for k, x in enumerate(complexes)}
            diffs.append(self.cat.assemble(rows, cols, entries))
        terms = [d.source for d in diffs] + [diffs[-1].target]
        return self.make(terms, diffs)

    def pad(self, x: ComplexNp2, obj: ObjectExpr, degree: int) -> ComplexNp2:
        return self.direct_sum(x, self.contractible(obj, degree))

    def conjugate(self, x: ComplexNp2, isos: Dict[int, Morphism]) -> ComplexNp2:
        """用各次数上的同构 φ_i: X^i → X′^i 替换复形：d′^i = φ_{i+1} d^i φ_i^{-1}"""
        inverses = {}
        for i, phi in isos.items():
            if phi.source != x.terms[i]:
                raise ShapeMismatchError(f"第 {i} 项的同构源 {phi.source} 与 {x.terms[i]} 不一致")
            inverse = self.cat.is_isomorphism(phi)
            if inverse is None:
                raise ValueError(f"第 {i} 项给出的态射不是同构")
            inverses[i] = inverse
        diffs = []
        for i, d in enumerate(x.diffs):
            if i in inverses:
                d = self.cat.compose(d, inverses[i])
            if i + 1 in isos:
                d = self.cat.compose(isos[i + 1], d)
            diffs.append(d)
        terms = [d.source for d in diffs] + [diffs[-1].target]
        return self.make(terms, diffs)

    def identity_map(self, x: ComplexNp2) -> ChainMap:
        return ChainMap(x, x, tuple(self.cat.identity(t) for t in x.terms))

    def zero_map(self, x: ComplexNp2, y: ComplexNp2) -> ChainMap:
        return ChainMap(x, y, tuple(self.cat.zero(s, t) for s, t in zip(x.terms, y.terms)))

    def compose_maps(self, g: ChainMap, f: ChainMap) -> ChainMap:
        components = tuple(self.cat.compose(gi, fi) for gi, fi in zip(g.components, f.components))
        return ChainMap(f.source, g.target, components)

    # ==================== 检查 ====================

    def validate_complex(self, x: ComplexNp2) -> Report:
        """逐位置检查 d^{i+1}∘d^i = 0"""
        report = Report("complex")
        for i in range(self.n):
            square = self.cat.compose(x.diffs[i + 1], x.diffs[i])
            report.record('d_squared', f"{x.describe()}@{i}", square.is_zero(),
                          position=i, value=self.cat.describe(square))
        return report

    def _check_components(self, f: ChainMap) -> None:
        if len(f.components) != self.n + 2:
            raise ShapeMismatchError(f"链映射应有 {self.n + 2} 个分量，实际 {len(f.components)} 个")
        for i, component in enumerate(f.components):
            if component.source != f.source.terms[i] or component.target != f.target.terms[i]:
                raise ShapeMismatchError(f"链映射第 {i} 个分量端点与复形不一致")

    def is_chain_map(self, f: ChainMap) -> bool:
        self._check_components(f)
        x, y = f.source, f.target
        for i in range(self.n + 1):
            lhs = self.cat.compose(f.components[i + 1], x.diffs[i])
            rhs = self.cat.compose(y.diffs[i], f.components[i])
            if not lhs.same_value(rhs):
                return False
        return True

    # ==================== 线性方程组 ====================

    def _emit(self, system: LinearSystem, source: ObjectExpr, target: ObjectExpr,
              parts: Sequence[Part], rhs: Optional[Morphism] = None) -> None:
        """Σ sign·(post∘slot∘pre) = rhs；已知分量移到右端"""
        terms = []
        value = rhs if rhs is not None else self.cat.zero(source, target)
        for sign, slot, post, pre in parts:
            if isinstance(slot, Morphism):
                known = slot
                if pre is not None:
                    known = self.cat.compose(known, pre)
                if post is not None:
                    known = self.cat.compose(post, known)
                value = self.cat.add(value, self.cat.scale(-sign, known))
            else:
                terms.append(system.term(slot, post=post, pre=pre, sign=sign))
        system.equation(source, target, terms, value)

    def _chain_slots(self, system: LinearSystem, x: ComplexNp2, y: ComplexNp2,
                     fixed: Dict[int, Morphism]) -> List[Slot]:
        """链映射 x → y 的变量，并加入交换方块方程"""
        slots: List[Slot] = []
        for i in range(self.n + 2):
            if i in fixed:
                component = fixed[i]
                if component.source != x.terms[i] or component.target != y.terms[i]:
                    raise ShapeMismatchError(f"固定分量 {i} 的端点与复形不一致")
                slots.append(component)
            else:
                slots.append(system.variable(x.terms[i], y.terms[i]))
        for i in range(self.n + 1):
            # f^{i+1} d_X^i − d_Y^i f^i = 0
            self._emit(system, x.terms[i], y.terms[i + 1], [
                (1, slots[i + 1], None, x.diffs[i]),
                (-1, slots[i], y.diffs[i], None),
            ])
        return slots

    def _homotopy_slots(self, system: LinearSystem, x: ComplexNp2, y: ComplexNp2) -> List[int]:
        """h^i: X^i → Y^{i−1}，i = 1..n+1"""
        return [system.variable(x.terms[i], y.terms[i - 1]) for i in range(1, self.n + 2)]

    def _homotopy_parts(self, x: ComplexNp2, y: ComplexNp2, h: List[int], i: int) -> List[Part]:
        """d_Y^{i−1} h^i + h^{i+1} d_X^i 在第 i 次的各项"""
        parts: List[Part] = []
        if i >= 1:
            parts.append((1, h[i - 1], y.diffs[i - 1], None))
        if i <= self.n:
            parts.append((1, h[i], None, x.diffs[i]))
        return parts

    @staticmethod
    def _resolve(slots: List[Slot], values: List[Morphism]) -> Tuple[Morphism, ...]:
        return tuple(values[s] if isinstance(s, int) else s for s in slots)

    # ==================== 链映射与同伦 ====================

    def chain_maps(self, x: ComplexNp2, y: ComplexNp2,
                   fixed: Optional[Dict[int, Morphism]] = None) -> Iterator[ChainMap]:
        """枚举全部链映射 x → y（可固定若干分量），特解最先给出"""
        system = LinearSystem(self.cat)
        slots = self._chain_slots(system, x, y, fixed or {})
        solution = system.solve()
        if solution is None:
            return
        for values in solution.points(self.max_enumeration):
            yield ChainMap(x, y, self._resolve(slots, values))

    def lift(self, x: ComplexNp2, y: ComplexNp2, fixed: Dict[int, Morphism]) -> Optional[ChainMap]:
        """一个满足固定分量的链映射，不存在时返回 None"""
        system = LinearSystem(self.cat)
        slots = self._chain_slots(system, x, y, fixed)
        solution = system.solve()
        if solution is None:
            return None
        return ChainMap(x, y, self._resolve(slots, solution.morphisms()))

    def null_homotopy(self, f: ChainMap) -> Optional[Homotopy]:
        """求 h 使 f^i = d_Y^{i−1}h^i + h^{i+1}d_X^i"""
        if not self.is_chain_map(f):
            raise PreconditionError("null_homotopy 需要链映射", offending=f)
        x, y = f.source, f.target
        system = LinearSystem(self.cat)
        h = self._homotopy_slots(system, x, y)
        for i in range(self.n + 2):
            self._emit(system, x.terms[i], y.terms[i], self._homotopy_parts(x, y, h, i), f.components[i])
        solution = system.solve()
        if solution is None:
            return None
        return Homotopy(tuple(solution.morphisms()))

    def check_homotopy(self, f: ChainMap, g: ChainMap, homotopy: Homotopy) -> bool:
        """验证 f^i − g^i = d_Y^{i−1}h^i + h^{i+1}d_X^i"""
        x, y = f.source, f.target
        for i in range(self.n + 2):
            value = self.cat.zero(x.terms[i], y.terms[i])
            if i >= 1:
                value = self.cat.add(value, self.cat.compose(y.diffs[i - 1], homotopy.maps[i - 1]))
            if i <= self.n:
                value = self.cat.add(value, self.cat.compose(homotopy.maps[i], x.diffs[i]))
            difference = self.cat.add(f.components[i], self.cat.neg(g.components[i]))
            if not value.same_value(difference):
                return False
        return True

    def _end_fixings(self, x: ComplexNp2, y: ComplexNp2) -> Dict[int, Morphism]:
        last = self.n + 1
        if not (x.start.same_as(y.start) and x.end.same_as(y.end)):
            raise PreconditionError(f"fix_ends 要求端点相同: {x.describe()} vs {y.describe()}")
        return {0: self.cat.permutation(x.start, y.start), last: self.cat.permutation(x.end, y.end)}

    def is_homotopy_equivalence(self, f: ChainMap, fix_ends: bool = False
                                ) -> Optional[Tuple[ChainMap, Homotopy, Homotopy]]:
        """
        判断 f 是否为同伦等价

        联立求解 g（链映射，fix_ends 时端点取 f 端点的逆）、h: gf ≃ 1、k: fg ≃ 1。

        :return: (g, h, k)，不存在时返回 None
        """
        x, y = f.source, f.target
        system = LinearSystem(self.cat)
        fixed = {}
        if fix_ends:
            for i in (0, self.n + 1):
                inverse = self.cat.is_isomorphism(f.components[i])
                if inverse is None:
                    return None
                fixed[i] = inverse
        g = self._chain_slots(system, y, x, fixed)
        h = self._homotopy_slots(system, x, x)
        k = self._homotopy_slots(system, y, y)
        for i in range(self.n + 2):
            fi = f.components[i]
            # g^i f^i − (d h + h d)^i = 1
            parts = [(1, g[i], None, fi)]
            parts += [(-sign, slot, post, pre) for sign, slot, post, pre in self._homotopy_parts(x, x, h, i)]
            self._emit(system, x.terms[i], x.terms[i], parts, self.cat.identity(x.terms[i]))
            # f^i g^i − (d k + k d)^i = 1
            parts = [(1, g[i], fi, None)]
            parts += [(-sign, slot, post, pre) for sign, slot, post, pre in self._homotopy_parts(y, y, k, i)]
            self._emit(system, y.terms[i], y.terms[i], parts, self.cat.identity(y.terms[i]))
        solution = system.solve()
        if solution is None:
            return None
        values = solution.morphisms()
        g_map = ChainMap(y, x, self._resolve(g, values))
        h_maps = Homotopy(tuple(values[v] for v in h))
        k_maps = Homotopy(tuple(values[v] for v in k))
        return g_map, h_maps, k_maps

    def homotopy_equivalent(self, x: ComplexNp2, y: ComplexNp2, fix_ends: bool) -> Optional[Equivalence]:
        """
        在链映射解空间上枚举 f，寻找同伦等价 x ≃ y

        :param fix_ends: True 时要求 f⁰、f^{n+1} 与 g⁰、g^{n+1} 为恒等（C^{n+2}_{(A,C)} 中的等价）
        :return: (f, g, h, k)，不存在时返回 None
        """
        fixed = self._end_fixings(x, y) if fix_ends else {}
        for f in self.chain_maps(x, y, fixed):
            witness = self.is_homotopy_equivalence(f, fix_ends)
            if witness is not None:
                g, h, k = witness
                return f, g, h, k
        return None

    # ==================== 映射锥与映射余锥 ====================

    def mapping_cone(self, f: ChainMap) -> ComplexNp2:
        """
        f⁰ = 1 时的映射锥 X¹ → X²⊕Y¹ → … → X^{n+1}⊕Yⁿ → Y^{n+1}

        :param f: 链映射 X → Y
        :return: 映射锥
        """
        x, y = f.source, f.target
        cat, n = self.cat, self.n
        if x.start != y.start or not f.components[0].same_value(cat.identity(x.start)):
            raise PreconditionError("映射锥要求 f⁰ 为恒等", offending=f.components[0])
        diffs = []
        # d⁰ = [−d_X¹; f¹]
        diffs.append(cat.assemble([x.terms[2], y.terms[1]], [x.terms[1]],
                                  {(0, 0): cat.neg(x.diffs[1]), (1, 0): f.components[1]}))
        for i in range(1, n):
            # [[−d_X^{i+1}, 0], [f^{i+1}, d_Y^i]]
            diffs.append(cat.assemble([x.terms[i + 2], y.terms[i + 1]], [x.terms[i + 1], y.terms[i]], {
                (0, 0): cat.neg(x.diffs[i + 1]),
                (1, 0): f.components[i + 1],
                (1, 1): y.diffs[i],
            }))
        # dⁿ = [f^{n+1}, d_Yⁿ]
        diffs.append(cat.assemble([y.terms[n + 1]], [x.terms[n + 1], y.terms[n]], {
            (0, 0): f.components[n + 1],
            (0, 1): y.diffs[n],
        }))
        terms = [d.source for d in diffs] + [diffs[-1].target]
        return self.make(terms, diffs)

    def mapping_cocone(self, h: ChainMap) -> ComplexNp2:
        """
        h^{n+1} = 1 时的映射余锥 X⁰ → X¹⊕Y⁰ → … → Xⁿ⊕Y^{n−1} → Yⁿ

        :param h: 链映射 X → Y
        :return: 映射余锥
        """
        x, y = h.source, h.target
        cat, n = self.cat, self.n
        if x.end != y.end or not h.components[n + 1].same_value(cat.identity(x.end)):
            raise PreconditionError("映射余锥要求 h^{n+1} 为恒等", offending=h.components[n + 1])
        diffs = []
        # d⁰ = [d_X⁰; h⁰]
        diffs.append(cat.assemble([x.terms[1], y.terms[0]], [x.terms[0]],
                                  {(0, 0): x.diffs[0], (1, 0): h.components[0]}))
        for i in range(1, n):
            # [[d_X^i, 0], [h^i, −d_Y^{i−1}]]
            diffs.append(cat.assemble([x.terms[i + 1], y.terms[i]], [x.terms[i], y.terms[i - 1]], {
                (0, 0): x.diffs[i],
                (1, 0): h.components[i],
                (1, 1): cat.neg(y.diffs[i - 1]),
            }))
        # dⁿ = [hⁿ, −d_Y^{n−1}]
        diffs.append(cat.assemble([y.terms[n]], [x.terms[n], y.terms[n - 1]], {
            (0, 0): h.components[n],
            (0, 1): cat.neg(y.diffs[n - 1]),
        }))
        terms = [d.source for d in diffs] + [diffs[-1].target]
        return self.make(terms, diffs)

    def _setup_logger(self) -> logging.Logger:
        """设置日志记录器"""
        logger = logging.getLogger('ComplexCategory')
        logger.setLevel(logging.INFO)

        if not logger.handlers:
            handler = logging.StreamHandler()
            formatter = logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            )
            handler.setFormatter(formatter)
            logger.addHandler(handler)

        return logger
