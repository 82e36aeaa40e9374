"""E-扩张、实现与 n-角

ExtStructure 是加性双函子 E 在不可分解对象上的坐标表示；
ExangulatedCategory 把 E、实现表 s 与复形范畴组装在一起，
提供 realize、n-角判定以及 inflation/deflation 的有界搜索。
"""

import logging
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from config.algorithm_config import get_exangle_config
from ..exceptions import RealizationError, ShapeMismatchError
from ..models import ComplexNp2, Extension, Morphism, NExangle, ObjectExpr, Report
from . import linalg
from .complexes import ComplexCategory
from .linsys import LinearSystem

TableKey = Tuple[str, str, Tuple[int, ...]]


def _columns(vectors: List[np.ndarray], rows: int) -> np.ndarray:
    if not vectors:
        return np.zeros((rows, 0), dtype=np.int64)
    return np.stack(vectors, axis=1)


class ExtStructure:
    """
    加性双函子 E: C^op × C → Ab 的有限表示

    E(C, A) 的坐标按 C 的直和项（外层）、A 的直和项（内层）分块；
    基态射的作用矩阵只在不可分解对象上给出，其余由双线性与分块延拓。
    """

    def __init__(self, cat, dims: Dict[Tuple[str, str], int],
                 cov: Dict[Tuple[str, str], np.ndarray],
                 contra: Dict[Tuple[str, str], np.ndarray],
                 labels: Optional[Dict[Tuple[str, str], Tuple[str, ...]]] = None):
        """
        :param cat: FiniteCategory
        :param dims: (C, A) -> dim E(C, A)
        :param cov: (f 的标签, C) -> E(C, f) 的矩阵，f: A → A′
        :param contra: (g 的标签, A) -> E(g, A) 的矩阵，g: C′ → C
        :param labels: (C, A) -> E(C, A) 的基标签（可选）
        """
        self.cat = cat
        self.prime = cat.prime
        self.dims = {k: v for k, v in dims.items() if v}
        self.cov = dict(cov)
        self.contra = dict(contra)
        self.labels = dict(labels or {})
        self._label_index = cat.presentation.label_index()
        self._layouts: Dict[Tuple[Tuple[str, ...], Tuple[str, ...]], Tuple[Dict, int]] = {}
        self._cov_cache: Dict[Tuple[str, Tuple[str, ...]], np.ndarray] = {}
        self._contra_cache: Dict[Tuple[str, Tuple[str, ...]], np.ndarray] = {}
        self._fill_identity_actions()

    def _fill_identity_actions(self) -> None:
        """恒等态射恰为一个基向量时，补上恒等作用（显式给出的条目优先）"""
        pres = self.cat.presentation
        for name in pres.objects:
            coords = pres.identities.get(name)
            if coords is None or np.count_nonzero(coords) != 1 or int(coords[np.flatnonzero(coords)[0]]) != 1:
                continue
            label = pres.hom_labels[(name, name)][int(np.flatnonzero(coords)[0])]
            for other in pres.objects:
                self.cov.setdefault((label, other), np.eye(self.dim(other, name), dtype=np.int64))
                self.contra.setdefault((label, other), np.eye(self.dim(name, other), dtype=np.int64))

    # ==================== 坐标 ====================

    def dim(self, c: str, a: str) -> int:
        return self.dims.get((c, a), 0)

    def nonzero_pairs(self) -> List[Tuple[str, str]]:
        return sorted(self.dims)

    def layout(self, c: ObjectExpr, a: ObjectExpr) -> Tuple[Dict[Tuple[int, int], Tuple[int, int]], int]:
        key = (c.summands, a.summands)
        cached = self._layouts.get(key)
        if cached is not None:
            return cached
        blocks = {}
        offset = 0
        for k, cname in enumerate(c):
            for l, aname in enumerate(a):
                size = self.dim(cname, aname)
                blocks[(k, l)] = (offset, size)
                offset += size
        self._layouts[key] = (blocks, offset)
        return blocks, offset

    def ext_dim(self, c: ObjectExpr, a: ObjectExpr) -> int:
        return self.layout(c, a)[1]

    def make(self, a: ObjectExpr, c: ObjectExpr, coords) -> Extension:
        dim = self.ext_dim(c, a)
        vector = linalg.as_vector(coords, self.prime) if dim else np.zeros(0, dtype=np.int64)
        if vector.shape[0] != dim:
            raise ShapeMismatchError(f"扩张坐标长度 {vector.shape[0]} 与 E({c}, {a}) 维数 {dim} 不一致")
        return Extension(a, c, vector)

    def zero(self, a: ObjectExpr, c: ObjectExpr) -> Extension:
        return Extension(a, c, np.zeros(self.ext_dim(c, a), dtype=np.int64))

    def elements(self, a: ObjectExpr, c: ObjectExpr, cap: int) -> Iterator[Extension]:
        for vec in linalg.all_vectors(self.ext_dim(c, a), self.prime, cap):
            yield Extension(a, c, vec)

    def basis(self, a: ObjectExpr, c: ObjectExpr) -> List[Extension]:
        dim = self.ext_dim(c, a)
        return [Extension(a, c, row) for row in np.eye(dim, dtype=np.int64)]

    def block(self, delta: Extension, k: int, l: int) -> np.ndarray:
        start, size = self.layout(delta.c, delta.a)[0][(k, l)]
        return delta.coords[start:start + size]

    def from_blocks(self, a: ObjectExpr, c: ObjectExpr, values: Dict[Tuple[int, int], np.ndarray]) -> Extension:
        blocks, dim = self.layout(c, a)
        coords = np.zeros(dim, dtype=np.int64)
        for (k, l), vec in values.items():
            start, size = blocks[(k, l)]
            if size:
                coords[start:start + size] = np.mod(vec, self.prime)
        return Extension(a, c, coords)

    # ==================== 作用 ====================

    def cov_basis(self, label: str, c: str) -> np.ndarray:
        a, a2, _ = self._label_index[label]
        found = self.cov.get((label, c))
        if found is None:
            return np.zeros((self.dim(c, a2), self.dim(c, a)), dtype=np.int64)
        return found

    def contra_basis(self, label: str, a: str) -> np.ndarray:
        c2, c, _ = self._label_index[label]
        found = self.contra.get((label, a))
        if found is None:
            return np.zeros((self.dim(c2, a), self.dim(c, a)), dtype=np.int64)
        return found

    def covariant(self, a: Morphism, delta: Extension) -> Extension:
        """a_*δ，a: A → A′"""
        if a.source != delta.a:
            raise ShapeMismatchError(f"a 的源 {a.source} 与扩张的第一端 {delta.a} 不一致")
        labels = self.cat.presentation.hom_labels
        values = {}
        for k, cname in enumerate(delta.c):
            for l2, a2name in enumerate(a.target):
                acc = np.zeros(self.dim(cname, a2name), dtype=np.int64)
                for l, aname in enumerate(a.source):
                    dblock = self.block(delta, k, l)
                    ablock = self.cat.block(a, l2, l)
                    if not (np.any(dblock) and np.any(ablock)):
                        continue
                    for b in np.flatnonzero(ablock):
                        label = labels[(aname, a2name)][b]
                        acc = acc + int(ablock[b]) * (self.cov_basis(label, cname) @ dblock)
                values[(k, l2)] = acc
        return self.from_blocks(a.target, delta.c, values)

    def contravariant(self, c: Morphism, delta: Extension) -> Extension:
        """c^*δ，c: C′ → C"""
        if c.target != delta.c:
            raise ShapeMismatchError(f"c 的目标 {c.target} 与扩张的第二端 {delta.c} 不一致")
        labels = self.cat.presentation.hom_labels
        values = {}
        for k2, c2name in enumerate(c.source):
            for l, aname in enumerate(delta.a):
                acc = np.zeros(self.dim(c2name, aname), dtype=np.int64)
                for k, cname in enumerate(delta.c):
                    dblock = self.block(delta, k, l)
                    cblock = self.cat.block(c, k, k2)
                    if not (np.any(dblock) and np.any(cblock)):
                        continue
                    for b in np.flatnonzero(cblock):
                        label = labels[(c2name, cname)][b]
                        acc = acc + int(cblock[b]) * (self.contra_basis(label, aname) @ dblock)
                values[(k2, l)] = acc
        return self.from_blocks(delta.a, c.source, values)

    def transport(self, a: Optional[Morphism], c: Optional[Morphism], delta: Extension) -> Extension:
        """先协变后反变：c^*(a_*δ)"""
        result = delta
        if a is not None:
            result = self.covariant(a, result)
        if c is not None:
            result = self.contravariant(c, result)
        return result

    def cov_matrix(self, a: Morphism, c: ObjectExpr) -> np.ndarray:
        """δ ↦ a_*δ 在 E(c, a.source) → E(c, a.target) 上的矩阵"""
        key = (a.key(), c.summands)
        if key not in self._cov_cache:
            images = [self.covariant(a, e).coords for e in self.basis(a.source, c)]
            self._cov_cache[key] = _columns(images, self.ext_dim(c, a.target))
        return self._cov_cache[key]

    def contra_matrix(self, c: Morphism, a: ObjectExpr) -> np.ndarray:
        """δ ↦ c^*δ 在 E(c.target, a) → E(c.source, a) 上的矩阵"""
        key = (c.key(), a.summands)
        if key not in self._contra_cache:
            images = [self.contravariant(c, e).coords for e in self.basis(a, c.target)]
            self._contra_cache[key] = _columns(images, self.ext_dim(c.source, a))
        return self._contra_cache[key]

    def direct_sum(self, delta: Extension, other: Extension) -> Extension:
        """δ⊕δ′ ∈ E(C⊕C′, A⊕A′)，对应 (δ, 0, 0, δ′)"""
        a = delta.a.direct_sum(other.a)
        c = delta.c.direct_sum(other.c)
        values = {}
        for k in range(len(delta.c)):
            for l in range(len(delta.a)):
                values[(k, l)] = self.block(delta, k, l)
        for k in range(len(other.c)):
            for l in range(len(other.a)):
                values[(len(delta.c) + k, len(delta.a) + l)] = self.block(other, k, l)
        return self.from_blocks(a, c, values)

    # ==================== 校验 ====================

    def validate_bifunctor(self) -> Report:
        """函子性、双函子性、恒等作用与分块加性"""
        report = Report("bifunctor")
        cat = self.cat
        pres = cat.presentation
        objects = pres.objects
        one = ObjectExpr.of

        # 1. 矩阵形状
        for (label, c), matrix in sorted(self.cov.items()):
            a, a2, _ = self._label_index[label]
            expected = (self.dim(c, a2), self.dim(c, a))
            report.record('action_shape', f"cov:{label}@{c}", matrix.shape == expected,
                          expected=list(expected), actual=list(matrix.shape))
        for (label, a), matrix in sorted(self.contra.items()):
            c2, c, _ = self._label_index[label]
            expected = (self.dim(c2, a), self.dim(c, a))
            report.record('action_shape', f"contra:{label}@{a}", matrix.shape == expected,
                          expected=list(expected), actual=list(matrix.shape))
        if not report.ok:
            return report

        # 2. 恒等作用
        for x in objects:
            identity = cat.identity(one(x))
            for y in objects:
                cov = self.cov_matrix(identity, one(y))
                contra = self.contra_matrix(identity, one(y))
                report.record('identity_action', f"cov:1_{x}@{y}",
                              np.array_equal(cov, np.eye(self.dim(y, x), dtype=np.int64)))
                report.record('identity_action', f"contra:1_{x}@{y}",
                              np.array_equal(contra, np.eye(self.dim(x, y), dtype=np.int64)))

        # 3. 函子性：(f′f)_* = f′_* f_*，(g g′)^* = g′^* g^*
        for (a, b) in pres.nonzero_pairs():
            for (b2, c) in pres.nonzero_pairs():
                if b2 != b:
                    continue
                for f, fl in zip(cat.basis(one(a), one(b)), pres.hom_labels[(a, b)]):
                    for g, gl in zip(cat.basis(one(b), one(c)), pres.hom_labels[(b, c)]):
                        gf = cat.compose(g, f)
                        for m in objects:
                            lhs = self.cov_matrix(gf, one(m))
                            rhs = np.mod(self.cov_matrix(g, one(m)) @ self.cov_matrix(f, one(m)), self.prime)
                            report.record('functorial_cov', f"{gl}∘{fl}@{m}", np.array_equal(lhs, rhs))
                            lhs = self.contra_matrix(gf, one(m))
                            rhs = np.mod(self.contra_matrix(f, one(m)) @ self.contra_matrix(g, one(m)), self.prime)
                            report.record('functorial_contra', f"{gl}∘{fl}@{m}", np.array_equal(lhs, rhs))

        # 4. 双函子性：g^* f_* = f_* g^*
        for (a, a2) in pres.nonzero_pairs():
            for (c2, c) in pres.nonzero_pairs():
                for f, fl in zip(cat.basis(one(a), one(a2)), pres.hom_labels[(a, a2)]):
                    for g, gl in zip(cat.basis(one(c2), one(c)), pres.hom_labels[(c2, c)]):
                        lhs = np.mod(self.contra_matrix(g, one(a2)) @ self.cov_matrix(f, one(c)), self.prime)
                        rhs = np.mod(self.cov_matrix(f, one(c2)) @ self.contra_matrix(g, one(a)), self.prime)
                        report.record('bifunctorial', f"{gl}^*{fl}_*", np.array_equal(lhs, rhs))

        # 5. 加性：投影回分块恢复原扩张
        for (c, a) in self.nonzero_pairs():
            for (c2, a2) in self.nonzero_pairs():
                for delta in self.basis(one(a), one(c)):
                    for other in self.basis(one(a2), one(c2)):
                        total = self.direct_sum(delta, other)
                        project = cat.from_blocks(total.a, one(a), {(0, 0): pres.identities[a]})
                        include = cat.from_blocks(one(c), total.c, {(0, 0): pres.identities[c]})
                        back = self.transport(project, include, total)
                        report.record('additivity', f"{delta.key()}⊕{other.key()}",
                                      np.array_equal(back.coords, delta.coords))
        return report


class ExangulatedCategory:
    """
    三元组 (C, E, s)

    实现表只存不可分解端点上的扩张元素；零元素缺省为分裂复形，
    可分解端点的扩张按分块直和实现。
    """

    def __init__(self, cat, ext: ExtStructure, n: int,
                 table: Dict[TableKey, ComplexNp2], name: str = "",
                 config: Optional[Dict] = None):
        """
        :param cat: FiniteCategory
        :param ext: 扩张双函子
        :param n: 正整数
        :param table: (C, A, 坐标) -> 代表复形
        :param name: 结构名称
        :param config: 生效配置（缺省取 get_exangle_config()）
        """
        self.cat = cat
        self.ext = ext
        self.n = n
        self.name = name
        self.config = config if config is not None else get_exangle_config()
        self.complexes = ComplexCategory(cat, n, self.config['max_enumeration'])
        self.logger = self._setup_logger()
        self.table: Dict[TableKey, ComplexNp2] = dict(table)
        self._realized: Dict[str, ComplexNp2] = {}
        self._inflations: Dict[str, List[NExangle]] = {}
        self._deflations: Dict[str, List[NExangle]] = {}
        self._fill_split_entries()

    @property
    def prime(self) -> int:
        return self.cat.prime

    @property
    def objects(self) -> Tuple[str, ...]:
        return self.cat.objects

    def _fill_split_entries(self) -> None:
        for c in self.objects:
            for a in self.objects:
                key = (c, a, (0,) * self.ext.dim(c, a))
                if key not in self.table:
                    self.table[key] = self.complexes.split_complex(ObjectExpr.of(a), ObjectExpr.of(c))

    def extension(self, c: str, a: str, coords) -> Extension:
        return self.ext.make(ObjectExpr.of(a), ObjectExpr.of(c), coords)

    def distinguished(self) -> List[NExangle]:
        """实现表中的全部 n-角（按扩张键排序）"""
        found = []
        for (c, a, coords), x in self.table.items():
            found.append(NExangle(x, self.extension(c, a, coords)))
        return sorted(found, key=lambda e: e.key())

    def exangle(self, key: str) -> NExangle:
        """按 "C,A:c1/c2" 查找实现表中的 n-角"""
        for e in self.distinguished():
            if e.key() == key:
                return e
        raise KeyError(f"实现表中没有扩张 {key}")

    # ==================== Yoneda 变换与 n-角 ====================

    def sharp_maps(self, delta: Extension, m: ObjectExpr) -> Tuple[np.ndarray, np.ndarray]:
        """
        (δ♯)_M: C(M, C) → E(M, A), f ↦ f^*δ 与 δ♯_M: C(A, M) → E(C, M), g ↦ g_*δ

        :return: 两个矩阵
        """
        pull = [self.ext.contravariant(f, delta).coords for f in self.cat.basis(m, delta.c)]
        push = [self.ext.covariant(g, delta).coords for g in self.cat.basis(delta.a, m)]
        return (_columns(pull, self.ext.ext_dim(m, delta.a)),
                _columns(push, self.ext.ext_dim(delta.c, m)))

    def is_n_exangle(self, x: ComplexNp2, delta: Extension) -> Report:
        """对每个不可分解 M 检查两条 Hom 序列的正合性"""
        if x.start != delta.a or x.end != delta.c:
            raise ShapeMismatchError(f"复形端点 {x.start}, {x.end} 与扩张端点 {delta.a}, {delta.c} 不一致")
        cat, n = self.cat, self.n
        report = self.complexes.validate_complex(x)
        report.name = "n_exangle"
        key = delta.key()
        pushed = self.ext.covariant(x.diffs[0], delta)
        pulled = self.ext.contravariant(x.diffs[n], delta)
        report.record('attached', f"{key}|d0", pushed.is_zero(), value=pushed.coords)
        report.record('attached', f"{key}|dn", pulled.is_zero(), value=pulled.coords)

        for name in self.objects:
            m = ObjectExpr.of(name)
            pull_sharp, push_sharp = self.sharp_maps(delta, m)
            # C(M, X⁰) → … → C(M, X^{n+1}) → E(M, X⁰)
            cov = [cat.post_matrix(d, m) for d in x.diffs] + [pull_sharp]
            for i in range(1, n + 2):
                ok = linalg.exact_at(cov[i - 1], cov[i], cat.hom_dim(m, x.terms[i]), self.prime)
                report.record('exact_cov', f"{key}|M={name}|{i}", ok, M=name, position=i)
            # C(X^{n+1}, M) → … → C(X⁰, M) → E(X^{n+1}, M)
            contra = [cat.pre_matrix(d, m) for d in x.diffs]
            for i in range(0, n + 1):
                outgoing = push_sharp if i == 0 else contra[i - 1]
                ok = linalg.exact_at(contra[i], outgoing, cat.hom_dim(x.terms[i], m), self.prime)
                report.record('exact_contra', f"{key}|M={name}|{i}", ok, M=name, position=i)
        return report

    # ==================== 实现 ====================

    def realize(self, delta: Extension) -> ComplexNp2:
        """s(δ) 的代表复形，端点布局与 δ 完全一致"""
        key = delta.key()
        cached = self._realized.get(key)
        if cached is not None:
            return cached
        result = self._realize(delta)
        self._realized[key] = result
        return result

    def _realize(self, delta: Extension) -> ComplexNp2:
        a, c = delta.a, delta.c
        if a.is_indecomposable and c.is_indecomposable:
            entry = self.table.get((c[0], a[0], tuple(int(v) for v in delta.coords)))
            if entry is None:
                raise RealizationError(f"实现表中缺少扩张 {delta.key()}")
            return entry
        if delta.is_zero():
            return self.complexes.split_complex(a, c)

        cap = self.config['max_automorphism_pairs']
        tried = 0
        for alpha in self.cat.automorphisms(a):
            for gamma in self.cat.automorphisms(c):
                tried += 1
                if tried > cap:
                    raise RealizationError(f"{delta.key()} 在 {cap} 对自同构内未找到可实现的分块形状")
                moved = self.ext.transport(alpha, gamma, delta)
                matching = self._partial_matching(moved)
                if matching is None:
                    continue
                x = self._assemble(moved, matching)
                return x.with_diffs({
                    0: self.cat.compose(x.diffs[0], alpha),
                    self.n: self.cat.compose(gamma, x.diffs[self.n]),
                })
        raise RealizationError(f"{delta.key()} 没有可实现的分块形状")

    def _partial_matching(self, delta: Extension) -> Optional[Dict[int, int]]:
        """非零块构成部分匹配时返回 A 下标 -> C 下标"""
        matching: Dict[int, int] = {}
        used = set()
        for k in range(len(delta.c)):
            for l in range(len(delta.a)):
                if np.any(self.ext.block(delta, k, l)):
                    if l in matching or k in used:
                        return None
                    matching[l] = k
                    used.add(k)
        return matching

    def _assemble(self, delta: Extension, matching: Dict[int, int]) -> ComplexNp2:
        zero = ObjectExpr.zero()
        pieces, c_order = [], []
        for l, aname in enumerate(delta.a):
            if l in matching:
                k = matching[l]
                coords = tuple(int(v) for v in self.ext.block(delta, k, l))
                entry = self.table.get((delta.c[k], aname, coords))
                if entry is None:
                    raise RealizationError(f"实现表中缺少扩张 {delta.c[k]},{aname}")
                pieces.append(entry)
                c_order.append(k)
            else:
                pieces.append(self.complexes.split_complex(ObjectExpr.of(aname), zero))
        for k, cname in enumerate(delta.c):
            if k not in c_order:
                pieces.append(self.complexes.split_complex(zero, ObjectExpr.of(cname)))
                c_order.append(k)
        x = self.complexes.direct_sum(*pieces)
        position = {k: i for i, k in enumerate(c_order)}
        perm = self.cat.reorder(x.end, [position[k] for k in range(len(delta.c))])
        return self.complexes.conjugate(x, {self.n + 1: perm})

    # ==================== inflation / deflation ====================

    def _padding(self, have: ObjectExpr, want: ObjectExpr) -> Optional[ObjectExpr]:
        rest = want.multiset()
        rest.subtract(have.multiset())
        if any(v < 0 for v in rest.values()):
            return None
        names = [name for name in self.objects for _ in range(rest.get(name, 0))]
        if len(names) > self.config['padding_bound']:
            return None
        return ObjectExpr(tuple(names))

    def inflation_witnesses(self, f: Morphism) -> List[NExangle]:
        """全部以 f 为 d⁰ 的分布 n-角（每个扩张至多一个代表）"""
        key = f.key()
        if key in self._inflations:
            return self._inflations[key]
        found = []
        for c in self.cat.objects_up_to(self.config['max_mult']):
            for delta in self.ext.elements(f.source, c, self.config['max_enumeration']):
                witness = self._inflation_from(f, delta)
                if witness is not None:
                    found.append(NExangle(witness, delta))
        self._inflations[key] = found
        return found

    def _inflation_from(self, f: Morphism, delta: Extension) -> Optional[ComplexNp2]:
        y = self.realize(delta)
        padding = self._padding(y.terms[1], f.target)
        if padding is None:
            return None
        if not padding.is_zero:
            if self.n < 2:
                return None
            y = self.complexes.pad(y, padding, 1)
        system = LinearSystem(self.cat)
        phi = system.variable(y.terms[1], f.target)
        system.equation(f.source, f.target, [system.term(phi, pre=y.diffs[0])], f)
        solution = system.solve()
        if solution is None:
            return None
        for values in solution.points(self.config['max_enumeration']):
            if self.cat.is_isomorphism(values[0]) is not None:
                return self.complexes.conjugate(y, {1: values[0]})
        return None

    def deflation_witnesses(self, g: Morphism) -> List[NExangle]:
        """全部以 g 为 dⁿ 的分布 n-角"""
        key = g.key()
        if key in self._deflations:
            return self._deflations[key]
        found = []
        for a in self.cat.objects_up_to(self.config['max_mult']):
            for delta in self.ext.elements(a, g.target, self.config['max_enumeration']):
                witness = self._deflation_from(g, delta)
                if witness is not None:
                    found.append(NExangle(witness, delta))
        self._deflations[key] = found
        return found

    def _deflation_from(self, g: Morphism, delta: Extension) -> Optional[ComplexNp2]:
        n = self.n
        y = self.realize(delta)
        padding = self._padding(y.terms[n], g.source)
        if padding is None:
            return None
        if not padding.is_zero:
            if n < 2:
                return None
            y = self.complexes.pad(y, padding, n - 1)
        system = LinearSystem(self.cat)
        psi = system.variable(g.source, y.terms[n])
        system.equation(g.source, g.target, [system.term(psi, post=y.diffs[n])], g)
        solution = system.solve()
        if solution is None:
            return None
        for values in solution.points(self.config['max_enumeration']):
            inverse = self.cat.is_isomorphism(values[0])
            if inverse is not None:
                return self.complexes.conjugate(y, {n: inverse})
        return None

    def is_inflation(self, f: Morphism) -> Optional[NExangle]:
        witnesses = self.inflation_witnesses(f)
        return witnesses[0] if witnesses else None

    def is_deflation(self, g: Morphism) -> Optional[NExangle]:
        witnesses = self.deflation_witnesses(g)
        return witnesses[0] if witnesses else None

    def _setup_logger(self) -> logging.Logger:
        """设置日志记录器"""
        logger = logging.getLogger('ExangulatedCategory')
        logger.setLevel(logging.INFO)

        if not logger.handlers:
            handler = logging.StreamHandler()
            formatter = logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            )
            handler.setFormatter(formatter)
            logger.addHandler(handler)

        return logger
