"""候选类 ξ"""

from typing import TYPE_CHECKING, Dict, Tuple

import numpy as np

if TYPE_CHECKING:
    from ..algorithms.linalg import Subspace


class DistClass:
    """
    每个不可分解对 (C, A) 上的子空间 ξ(C, A) ⊆ E(C, A)

    未列出的对视为零子空间；可分解端点按块判定成员关系。
    """

    def __init__(self, name: str, subspaces: Dict[Tuple[str, str], "Subspace"]):
        """
        :param name: 类名
        :param subspaces: (C, A) -> ξ(C, A)
        """
        self.name = name
        self.subspaces = dict(subspaces)

    def subspace(self, c: str, a: str, dim: int, prime: int) -> "Subspace":
        # 延迟导入，避免 models 与 algorithms 循环依赖
        from ..algorithms.linalg import Subspace

        found = self.subspaces.get((c, a))
        if found is None:
            return Subspace.zero(dim, prime)
        return found

    def contains_block(self, c: str, a: str, coords: np.ndarray, prime: int) -> bool:
        if not np.any(coords):
            return True
        return self.subspace(c, a, len(coords), prime).contains(coords)

    def is_split(self) -> bool:
        return all(sub.dim == 0 for sub in self.subspaces.values())

    def key(self) -> str:
        parts = []
        for (c, a) in sorted(self.subspaces):
            sub = self.subspaces[(c, a)]
            if sub.dim:
                rows = ";".join("".join(str(x) for x in row) for row in sub.to_list())
                parts.append(f"{c},{a}:{rows}")
        return "|".join(parts) or "Δ0"

    def to_dict(self):
        return {
            'name': self.name,
            'subspaces': {f"{c},{a}": sub.to_list()
                          for (c, a), sub in sorted(self.subspaces.items()) if sub.dim},
        }
