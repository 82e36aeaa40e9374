"""素域 F_p 上的精确线性代数

所有 Hom 空间与扩张空间的坐标运算都落在这里：行约化、秩、核、解线性方程组、
子空间的和/交/成员测试/商投影，以及有限仿射空间的枚举。
矩阵一律用 numpy 整数数组按模 p 计算，不出现浮点。
"""

import itertools
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import EnumerationLimitError


def as_matrix(m, p: int, rows: Optional[int] = None, cols: Optional[int] = None) -> np.ndarray:
    """规范化为 int64 矩阵并按模 p 约化；空矩阵按给定形状构造"""
    arr = np.asarray(m, dtype=np.int64)
    if arr.size == 0 and rows is not None and cols is not None:
        return np.zeros((rows, cols), dtype=np.int64)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1) if arr.size else np.zeros((0, cols or 0), dtype=np.int64)
    return np.mod(arr, p)


def as_vector(v, p: int) -> np.ndarray:
    return np.mod(np.asarray(v, dtype=np.int64).reshape(-1), p)


def rref(m: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """
    模 p 的行最简形

    :param m: 矩阵
    :param p: 素数
    :return: (行最简形矩阵, 主元列列表)
    """
    a = np.mod(np.array(m, dtype=np.int64, copy=True), p)
    if a.ndim != 2:
        a = a.reshape(0, 0) if a.size == 0 else a.reshape(1, -1)
    rows, cols = a.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nonzero = np.nonzero(a[r:, c])[0]
        if nonzero.size == 0:
            continue
        piv = r + int(nonzero[0])
        if piv != r:
            a[[r, piv], :] = a[[piv, r], :]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r, :] = np.mod(a[r, :] * inv, p)
        others = np.nonzero(a[:, c])[0]
        others = others[others != r]
        if others.size:
            a[others, :] = np.mod(a[others, :] - np.outer(a[others, c], a[r, :]), p)
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: np.ndarray, p: int) -> int:
    m = np.asarray(m)
    if m.size == 0:
        return 0
    return len(rref(m, p)[1])


def kernel_basis(m: np.ndarray, p: int) -> "Subspace":
    """{v : m·v = 0} 的一组基，维数 = 列数 − 秩"""
    m = np.asarray(m, dtype=np.int64)
    cols = m.shape[1] if m.ndim == 2 else 0
    if m.size == 0:
        return Subspace.full(cols, p)
    reduced, pivots = rref(m, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    vectors = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-reduced[i, f]) % p
        vectors.append(v)
    return Subspace.span(vectors, cols, p)


def solve(m: np.ndarray, b, p: int) -> Optional[Tuple[np.ndarray, "Subspace"]]:
    """
    求解 m·v = b

    :return: (特解, 核空间)；方程组不相容时返回 None
    """
    m = np.asarray(m, dtype=np.int64)
    b = as_vector(b, p)
    rows = b.shape[0]
    cols = m.shape[1] if m.ndim == 2 else 0
    if m.size == 0:
        if np.any(b):
            return None
        return np.zeros(cols, dtype=np.int64), Subspace.full(cols, p)
    if m.shape[0] != rows:
        raise ValueError(f"方程右端长度 {rows} 与矩阵行数 {m.shape[0]} 不一致")
    augmented = np.concatenate([np.mod(m, p), b.reshape(-1, 1)], axis=1)
    reduced, pivots = rref(augmented, p)
    if cols in pivots:
        return None
    particular = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(pivots):
        particular[pc] = reduced[i, cols]
    return particular, kernel_basis(m, p)


def image_basis(m: np.ndarray, p: int, rows: int) -> "Subspace":
    """列空间"""
    m = np.asarray(m, dtype=np.int64)
    if m.size == 0:
        return Subspace.zero(rows, p)
    return Subspace.span(list(m.T), rows, p)


def exact_at(incoming: np.ndarray, outgoing: np.ndarray, dim: int, p: int) -> bool:
    """ker(outgoing) = im(incoming)，两者都作用在 dim 维空间上"""
    if dim == 0:
        return True
    kernel = kernel_basis(np.asarray(outgoing, dtype=np.int64).reshape(-1, dim), p)
    image = image_basis(incoming, p, dim)
    return kernel.equals(image)


def inverse(m: np.ndarray, p: int) -> Optional[np.ndarray]:
    """方阵的模 p 逆；不可逆时返回 None"""
    m = np.asarray(m, dtype=np.int64)
    size = m.shape[0]
    if size == 0:
        return np.zeros((0, 0), dtype=np.int64)
    reduced, pivots = rref(np.concatenate([np.mod(m, p), np.eye(size, dtype=np.int64)], axis=1), p)
    if pivots[:size] != list(range(size)) or len(pivots) < size:
        return None
    return reduced[:, size:]


def check_enumeration(count: int, cap: int, what: str = "枚举") -> None:
    if count > cap:
        raise EnumerationLimitError(f"{what}规模 {count} 超过上限 {cap}")


def all_vectors(dim: int, p: int, cap: int) -> Iterator[np.ndarray]:
    """按字典序枚举 F_p^dim 的全部向量（零向量在前）"""
    check_enumeration(p ** dim, cap)
    for coeffs in itertools.product(range(p), repeat=dim):
        yield np.array(coeffs, dtype=np.int64)


def affine_points(particular: np.ndarray, kernel: "Subspace", cap: int) -> Iterator[np.ndarray]:
    """枚举仿射空间 particular + kernel，特解本身最先给出"""
    p = kernel.prime
    check_enumeration(p ** kernel.dim, cap, "仿射解空间")
    for coeffs in itertools.product(range(p), repeat=kernel.dim):
        if kernel.dim == 0:
            yield particular.copy()
            continue
        shift = np.asarray(coeffs, dtype=np.int64) @ kernel.basis
        yield np.mod(particular + shift, p)


class Subspace:
    """
    F_p^ambient 的子空间

    基向量以行最简形存放，因此同一子空间的表示唯一。
    """

    def __init__(self, ambient_dim: int, basis: np.ndarray, prime: int):
        self.ambient_dim = ambient_dim
        self.basis = basis.reshape(-1, ambient_dim) if basis.size else np.zeros((0, ambient_dim), dtype=np.int64)
        self.prime = prime
        self._pivots: Optional[List[int]] = None

    @classmethod
    def span(cls, vectors: Sequence, ambient_dim: int, p: int) -> "Subspace":
        rows = [as_vector(v, p) for v in vectors]
        for v in rows:
            if v.shape[0] != ambient_dim:
                raise ValueError(f"向量长度 {v.shape[0]} 与环境维数 {ambient_dim} 不一致")
        if not rows:
            return cls.zero(ambient_dim, p)
        reduced, pivots = rref(np.stack(rows), p)
        subspace = cls(ambient_dim, reduced[:len(pivots)], p)
        subspace._pivots = list(pivots)
        return subspace

    @classmethod
    def zero(cls, ambient_dim: int, p: int) -> "Subspace":
        subspace = cls(ambient_dim, np.zeros((0, ambient_dim), dtype=np.int64), p)
        subspace._pivots = []
        return subspace

    @classmethod
    def full(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls.span(list(np.eye(ambient_dim, dtype=np.int64)), ambient_dim, p)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def pivots(self) -> List[int]:
        if self._pivots is None:
            self._pivots = rref(self.basis, self.prime)[1] if self.dim else []
        return self._pivots

    def _check_ambient(self, other: "Subspace") -> None:
        if other.ambient_dim != self.ambient_dim:
            raise ValueError(f"环境维数不一致: {self.ambient_dim} vs {other.ambient_dim}")

    def reduce(self, v) -> np.ndarray:
        """用行最简基消去主元坐标"""
        v = as_vector(v, self.prime).copy()
        for row, pc in zip(self.basis, self.pivots):
            if v[pc]:
                v = np.mod(v - v[pc] * row, self.prime)
        return v

    def contains(self, v) -> bool:
        v = as_vector(v, self.prime)
        if v.shape[0] != self.ambient_dim:
            raise ValueError(f"向量长度 {v.shape[0]} 与环境维数 {self.ambient_dim} 不一致")
        return not np.any(self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(self.contains(v) for v in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim, self.prime)

    def intersection(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim, self.prime)
        # (a, b) 满足 Uᵀa = Wᵀb
        stacked = np.concatenate([self.basis.T, np.mod(-other.basis.T, self.prime)], axis=1)
        kernel = kernel_basis(stacked, self.prime)
        vectors = [np.mod(row[:self.dim] @ self.basis, self.prime) for row in kernel.basis]
        return Subspace.span(vectors, self.ambient_dim, self.prime)

    def equals(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return self.dim == other.dim and np.array_equal(self.basis, other.basis)

    def complement_coordinates(self) -> List[int]:
        """非主元坐标：商空间的标准坐标"""
        pivots = set(self.pivots)
        return [c for c in range(self.ambient_dim) if c not in pivots]

    def projection(self) -> np.ndarray:
        """商投影矩阵，其核恰为本子空间"""
        free = self.complement_coordinates()
        q = np.zeros((len(free), self.ambient_dim), dtype=np.int64)
        for t, j in enumerate(free):
            q[t, j] = 1
            for row, pc in zip(self.basis, self.pivots):
                q[t, pc] = (q[t, pc] - row[j]) % self.prime
        return q

    def section(self) -> np.ndarray:
        """商坐标到代表元的矩阵（代表元支撑在非主元坐标上）"""
        free = self.complement_coordinates()
        s = np.zeros((self.ambient_dim, len(free)), dtype=np.int64)
        for t, j in enumerate(free):
            s[j, t] = 1
        return s

    def coordinates(self, v) -> np.ndarray:
        """v 在本子空间行最简基下的坐标（v 必须属于子空间）"""
        v = as_vector(v, self.prime)
        return np.array([v[pc] for pc in self.pivots], dtype=np.int64)

    def elements(self, cap: int) -> Iterator[np.ndarray]:
        for coeffs in all_vectors(self.dim, self.prime, cap):
            if self.dim == 0:
                yield np.zeros(self.ambient_dim, dtype=np.int64)
            else:
                yield np.mod(coeffs @ self.basis, self.prime)

    def to_list(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self.basis]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, p={self.prime})"


def all_subspaces(ambient_dim: int, p: int, cap: int) -> List[Subspace]:
    """F_p^ambient 的全部子空间（按维数、再按基排序）"""
    vectors = [v for v in all_vectors(ambient_dim, p, cap) if np.any(v)]
    found = {}
    for size in range(ambient_dim + 1):
        for subset in itertools.combinations(vectors, size):
            subspace = Subspace.span(list(subset), ambient_dim, p)
            key = (subspace.dim, tuple(subspace.basis.reshape(-1).tolist()))
            found.setdefault(key, subspace)
        check_enumeration(len(found), cap, "子空间")
    return [found[k] for k in sorted(found)]
