"""以态射为未知量的线性方程组

链映射、零伦、提升与逆都归结为形如 Σ g∘x∘f = b 的方程；
这里把每个未知态射按坐标展开，拼成一个 F_p 上的大方程组求解。
"""

from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import ShapeMismatchError
from ..models import Morphism, ObjectExpr
from . import linalg
from .linalg import Subspace

Term = Tuple[int, np.ndarray]


class Solution:
    """仿射解空间 particular + kernel"""

    def __init__(self, system: "LinearSystem", particular: np.ndarray, kernel: Subspace):
        self.system = system
        self.particular = particular
        self.kernel = kernel

    def morphisms(self, vector: Optional[np.ndarray] = None) -> List[Morphism]:
        return self.system.unpack(self.particular if vector is None else vector)

    def points(self, cap: int) -> Iterator[List[Morphism]]:
        """枚举全部解，特解最先给出"""
        for vector in linalg.affine_points(self.particular, self.kernel, cap):
            yield self.system.unpack(vector)

    @property
    def unique(self) -> bool:
        return self.kernel.dim == 0


class LinearSystem:
    """未知态射 x_k: source_k → target_k 上的线性方程组"""

    def __init__(self, cat):
        """
        :param cat: FiniteCategory
        """
        self.cat = cat
        self.variables: List[Tuple[ObjectExpr, ObjectExpr]] = []
        self.offsets: List[int] = []
        self.size = 0
        self._equations: List[Tuple[int, List[Term], np.ndarray]] = []

    def variable(self, source: ObjectExpr, target: ObjectExpr) -> int:
        self.variables.append((source, target))
        self.offsets.append(self.size)
        self.size += self.cat.hom_dim(source, target)
        return len(self.variables) - 1

    def var_dim(self, var: int) -> int:
        source, target = self.variables[var]
        return self.cat.hom_dim(source, target)

    # ==================== 项 ====================

    def term(self, var: int, post: Optional[Morphism] = None, pre: Optional[Morphism] = None,
             sign: int = 1) -> Term:
        """sign·(post∘x∘pre)，post/pre 缺省为恒等"""
        source, target = self.variables[var]
        matrix = np.eye(self.var_dim(var), dtype=np.int64)
        if pre is not None:
            if pre.target != source:
                raise ShapeMismatchError(f"x∘f 布局不一致: f 的目标 {pre.target}, x 的源 {source}")
            matrix = self.cat.pre_matrix(pre, target) @ matrix
            source = pre.source
        if post is not None:
            if post.source != target:
                raise ShapeMismatchError(f"g∘x 布局不一致: g 的源 {post.source}, x 的目标 {target}")
            matrix = self.cat.post_matrix(post, source) @ matrix
        return var, np.mod(sign * matrix, self.cat.prime)

    # ==================== 方程 ====================

    def equation(self, source: ObjectExpr, target: ObjectExpr,
                 terms: Sequence[Term], rhs: Optional[Morphism] = None) -> None:
        """Σ terms = rhs，方程落在 hom(source, target) 中"""
        dim = self.cat.hom_dim(source, target)
        if rhs is None:
            value = np.zeros(dim, dtype=np.int64)
        else:
            if rhs.source != source or rhs.target != target:
                raise ShapeMismatchError(f"方程右端 {rhs.source}→{rhs.target} 与 hom({source}, {target}) 不一致")
            value = rhs.coords
        for var, matrix in terms:
            if matrix.shape != (dim, self.var_dim(var)):
                raise ShapeMismatchError(f"方程项形状 {matrix.shape} 与 ({dim}, {self.var_dim(var)}) 不一致")
        self._equations.append((dim, list(terms), value))

    def matrix(self) -> Tuple[np.ndarray, np.ndarray]:
        total = sum(dim for dim, _, _ in self._equations)
        a = np.zeros((total, self.size), dtype=np.int64)
        b = np.zeros(total, dtype=np.int64)
        row = 0
        for dim, terms, value in self._equations:
            for var, m in terms:
                start = self.offsets[var]
                a[row:row + dim, start:start + m.shape[1]] += m
            b[row:row + dim] = value
            row += dim
        return np.mod(a, self.cat.prime), np.mod(b, self.cat.prime)

    def solve(self) -> Optional[Solution]:
        a, b = self.matrix()
        if a.shape[0] == 0:
            return Solution(self, np.zeros(self.size, dtype=np.int64), Subspace.full(self.size, self.cat.prime))
        result = linalg.solve(a, b, self.cat.prime)
        if result is None:
            return None
        particular, kernel = result
        return Solution(self, particular, kernel)

    def unpack(self, vector: np.ndarray) -> List[Morphism]:
        morphisms = []
        for (source, target), start in zip(self.variables, self.offsets):
            dim = self.cat.hom_dim(source, target)
            morphisms.append(Morphism(source, target, np.mod(vector[start:start + dim], self.cat.prime)))
        return morphisms
