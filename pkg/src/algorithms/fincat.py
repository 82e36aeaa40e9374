"""有限加法范畴核心

不可分解对象、Hom 空间、复合、形式直和与子范畴生成的理想。
态射坐标布局见 Morphism：目标直和项在外层、源直和项在内层。
"""

import itertools
import logging
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import ShapeMismatchError
from ..models import CategoryPresentation, Morphism, ObjectExpr, Report
from . import linalg
from .linalg import Subspace

Layout = Dict[Tuple[int, int], Tuple[int, int]]


class FiniteCategory:
    """Krull–Schmidt 表示的有限加法范畴上的运算"""

    def __init__(self, presentation: CategoryPresentation, max_enumeration: int = 4096):
        """
        :param presentation: 范畴表示
        :param max_enumeration: 元素枚举上限
        """
        self.presentation = presentation
        self.prime = presentation.prime
        self.objects = tuple(presentation.objects)
        self.max_enumeration = max_enumeration
        self.logger = self._setup_logger()
        self._labels = presentation.label_index()
        self._layouts: Dict[Tuple[Tuple[str, ...], Tuple[str, ...]], Tuple[Layout, int]] = {}
        self._post_cache: Dict[Tuple[str, Tuple[str, ...]], np.ndarray] = {}
        self._pre_cache: Dict[Tuple[str, Tuple[str, ...]], np.ndarray] = {}
        self._auto_cache: Dict[Tuple[str, ...], List[Morphism]] = {}

    # ==================== 布局与基本态射 ====================

    def layout(self, source: ObjectExpr, target: ObjectExpr) -> Tuple[Layout, int]:
        key = (source.summands, target.summands)
        cached = self._layouts.get(key)
        if cached is not None:
            return cached
        blocks: Layout = {}
        offset = 0
        for i, t in enumerate(target):
            for j, s in enumerate(source):
                size = self.presentation.hom_dim(s, t)
                blocks[(i, j)] = (offset, size)
                offset += size
        self._layouts[key] = (blocks, offset)
        return blocks, offset

    def hom_dim(self, source: ObjectExpr, target: ObjectExpr) -> int:
        return self.layout(source, target)[1]

    def morphism(self, source: ObjectExpr, target: ObjectExpr, coords) -> Morphism:
        dim = self.hom_dim(source, target)
        vector = linalg.as_vector(coords, self.prime) if dim else np.zeros(0, dtype=np.int64)
        if vector.shape[0] != dim:
            raise ShapeMismatchError(f"坐标长度 {vector.shape[0]} 与 hom({source}, {target}) 维数 {dim} 不一致")
        return Morphism(source, target, vector)

    def zero(self, source: ObjectExpr, target: ObjectExpr) -> Morphism:
        return Morphism(source, target, np.zeros(self.hom_dim(source, target), dtype=np.int64))

    def identity(self, obj: ObjectExpr) -> Morphism:
        blocks, dim = self.layout(obj, obj)
        coords = np.zeros(dim, dtype=np.int64)
        for i, name in enumerate(obj):
            start, size = blocks[(i, i)]
            if size:
                coords[start:start + size] = self.presentation.identities[name]
        return Morphism(obj, obj, coords)

    def block(self, m: Morphism, i: int, j: int) -> np.ndarray:
        blocks, _ = self.layout(m.source, m.target)
        start, size = blocks[(i, j)]
        return m.coords[start:start + size]

    def from_blocks(self, source: ObjectExpr, target: ObjectExpr,
                    values: Dict[Tuple[int, int], np.ndarray]) -> Morphism:
        blocks, dim = self.layout(source, target)
        coords = np.zeros(dim, dtype=np.int64)
        for (i, j), vec in values.items():
            start, size = blocks[(i, j)]
            if size:
                coords[start:start + size] = np.mod(vec, self.prime)
        return Morphism(source, target, coords)

    def basis(self, source: ObjectExpr, target: ObjectExpr) -> List[Morphism]:
        dim = self.hom_dim(source, target)
        return [Morphism(source, target, row) for row in np.eye(dim, dtype=np.int64)]

    def elements(self, source: ObjectExpr, target: ObjectExpr) -> Iterator[Morphism]:
        dim = self.hom_dim(source, target)
        for vec in linalg.all_vectors(dim, self.prime, self.max_enumeration):
            yield Morphism(source, target, vec)

    def label_morphism(self, label: str) -> Morphism:
        a, b, index = self._labels[label]
        coords = np.zeros(self.presentation.hom_dim(a, b), dtype=np.int64)
        coords[index] = 1
        return Morphism(ObjectExpr.of(a), ObjectExpr.of(b), coords)

    def basis_labels(self) -> List[str]:
        return sorted(self._labels)

    def describe(self, m: Morphism) -> str:
        """可读形式，例如 [0,1]:P2>P1"""
        terms = []
        for (i, j), (start, size) in sorted(self.layout(m.source, m.target)[0].items()):
            labels = self.presentation.hom_labels.get((m.source[j], m.target[i]), ())
            for k in range(size):
                coeff = int(m.coords[start + k])
                if coeff:
                    prefix = "" if coeff == 1 else f"{coeff}*"
                    position = "" if (len(m.source) == 1 and len(m.target) == 1) else f"[{i},{j}]"
                    terms.append(f"{position}{prefix}{labels[k]}")
        return " + ".join(terms) if terms else "0"

    # ==================== 线性运算与复合 ====================

    def add(self, *morphisms: Morphism) -> Morphism:
        first = morphisms[0]
        coords = np.zeros_like(first.coords)
        for m in morphisms:
            if m.source != first.source or m.target != first.target:
                raise ShapeMismatchError(f"态射相加端点不一致: {m.source}→{m.target} vs {first.source}→{first.target}")
            coords = coords + m.coords
        return Morphism(first.source, first.target, np.mod(coords, self.prime))

    def scale(self, coeff: int, m: Morphism) -> Morphism:
        return Morphism(m.source, m.target, np.mod(coeff * m.coords, self.prime))

    def neg(self, m: Morphism) -> Morphism:
        return self.scale(-1, m)

    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        """g∘f，要求 f.target 与 g.source 布局完全一致"""
        if f.target != g.source:
            raise ShapeMismatchError(f"无法复合: f 的目标 {f.target} 与 g 的源 {g.source} 不一致")
        result_blocks, dim = self.layout(f.source, g.target)
        coords = np.zeros(dim, dtype=np.int64)
        pres = self.presentation
        for (i, j), (start, size) in result_blocks.items():
            if not size:
                continue
            s, t = f.source[j], g.target[i]
            acc = np.zeros(size, dtype=np.int64)
            for k, mid in enumerate(f.target):
                gb = self.block(g, i, k)
                fb = self.block(f, k, j)
                if not gb.size or not fb.size or not (np.any(gb) and np.any(fb)):
                    continue
                tensor = pres.composition_tensor(s, mid, t)
                acc = acc + np.einsum('abc,b,c->a', tensor, gb, fb)
            coords[start:start + size] = np.mod(acc, self.prime)
        return Morphism(f.source, g.target, coords)

    def compose_all(self, *morphisms: Morphism) -> Morphism:
        """compose_all(h, g, f) = h∘g∘f"""
        result = morphisms[-1]
        for m in reversed(morphisms[:-1]):
            result = self.compose(m, result)
        return result

    def post_matrix(self, g: Morphism, source: ObjectExpr) -> np.ndarray:
        """f ↦ g∘f 在 hom(source, g.source) → hom(source, g.target) 上的矩阵"""
        key = (g.key(), source.summands)
        cached = self._post_cache.get(key)
        if cached is not None:
            return cached
        rows = self.hom_dim(source, g.target)
        columns = [self.compose(g, f).coords for f in self.basis(source, g.source)]
        matrix = np.stack(columns, axis=1) if columns else np.zeros((rows, 0), dtype=np.int64)
        self._post_cache[key] = matrix
        return matrix

    def pre_matrix(self, f: Morphism, target: ObjectExpr) -> np.ndarray:
        """h ↦ h∘f 在 hom(f.target, target) → hom(f.source, target) 上的矩阵"""
        key = (f.key(), target.summands)
        cached = self._pre_cache.get(key)
        if cached is not None:
            return cached
        rows = self.hom_dim(f.source, target)
        columns = [self.compose(h, f).coords for h in self.basis(f.target, target)]
        matrix = np.stack(columns, axis=1) if columns else np.zeros((rows, 0), dtype=np.int64)
        self._pre_cache[key] = matrix
        return matrix

    def assemble(self, rows: Sequence[ObjectExpr], cols: Sequence[ObjectExpr],
                 entries: Dict[Tuple[int, int], Morphism]) -> Morphism:
        """
        由分块态射拼装 ⊕cols → ⊕rows

        :param rows: 目标的分组
        :param cols: 源的分组
        :param entries: (行组, 列组) -> 态射，缺省为零
        """
        target = ObjectExpr.zero().direct_sum(*rows)
        source = ObjectExpr.zero().direct_sum(*cols)
        row_offsets = list(itertools.accumulate([0] + [len(r) for r in rows]))
        col_offsets = list(itertools.accumulate([0] + [len(c) for c in cols]))
        values = {}
        for (r, c), m in entries.items():
            if m.source != cols[c] or m.target != rows[r]:
                raise ShapeMismatchError(f"分块 ({r},{c}) 的端点 {m.source}→{m.target} 与分组不一致")
            for i in range(len(m.target)):
                for j in range(len(m.source)):
                    values[(row_offsets[r] + i, col_offsets[c] + j)] = self.block(m, i, j)
        return self.from_blocks(source, target, values)

    def reindex(self, m: Morphism, source: ObjectExpr, target: ObjectExpr) -> Morphism:
        """只改变端点标注（用于去掉维数为零的直和项）"""
        if self.hom_dim(source, target) != m.coords.shape[0]:
            raise ShapeMismatchError(f"重新标注后的维数与原态射不一致: {source}→{target}")
        return Morphism(source, target, m.coords.copy())

    # ==================== 同构与自同构 ====================

    def is_isomorphism(self, f: Morphism) -> Optional[Morphism]:
        """可逆时返回逆态射，否则返回 None"""
        if not f.source.same_as(f.target):
            return None
        left = self.pre_matrix(f, f.source)
        right = self.post_matrix(f, f.target)
        system = np.concatenate([left, right], axis=0)
        rhs = np.concatenate([self.identity(f.source).coords, self.identity(f.target).coords])
        solution = linalg.solve(system, rhs, self.prime)
        if solution is None:
            return None
        return Morphism(f.target, f.source, solution[0])

    def permutation(self, source: ObjectExpr, target: ObjectExpr) -> Morphism:
        """重集相同的两个对象之间按名字顺序对应的置换同构"""
        if not source.same_as(target):
            raise ShapeMismatchError(f"{source} 与 {target} 不是同一重集")
        used = set()
        values = {}
        for i, name in enumerate(target):
            j = next(k for k, s in enumerate(source) if s == name and k not in used)
            used.add(j)
            values[(i, j)] = self.presentation.identities[name]
        return self.from_blocks(source, target, values)

    def reorder(self, source: ObjectExpr, order: Sequence[int]) -> Morphism:
        """source → target 的置换同构，target 的第 i 项为 source 的第 order[i] 项"""
        target = ObjectExpr(tuple(source[j] for j in order))
        values = {(i, j): self.presentation.identities[source[j]] for i, j in enumerate(order)}
        return self.from_blocks(source, target, values)

    def automorphisms(self, obj: ObjectExpr) -> List[Morphism]:
        """Aut(obj)，恒等态射排在首位"""
        cached = self._auto_cache.get(obj.summands)
        if cached is not None:
            return cached
        identity = self.identity(obj)
        found = [identity]
        for m in self.elements(obj, obj):
            if np.array_equal(m.coords, identity.coords):
                continue
            if self.is_isomorphism(m) is not None:
                found.append(m)
        self._auto_cache[obj.summands] = found
        return found

    def objects_up_to(self, mult: int, include_zero: bool = True) -> List[ObjectExpr]:
        """重数不超过 mult 的全部对象（按不可分解对象的顺序组合）"""
        result = []
        for k in range(0 if include_zero else 1, mult + 1):
            for combo in itertools.combinations_with_replacement(self.objects, k):
                result.append(ObjectExpr(combo))
        return result

    # ==================== 理想 ====================

    def ideal_subspace(self, subcategory: Iterable[str], source: ObjectExpr, target: ObjectExpr) -> Subspace:
        """[X](source, target)：经 X 中对象分解的态射张成的子空间"""
        vectors = []
        for name in subcategory:
            middle = ObjectExpr.of(name)
            for u in self.basis(source, middle):
                for v in self.basis(middle, target):
                    vectors.append(self.compose(v, u).coords)
        return Subspace.span(vectors, self.hom_dim(source, target), self.prime)

    # ==================== 校验 ====================

    def validate_category(self) -> Report:
        """检查张量形状、单位律与基三元组上的结合律"""
        self.logger.info("开始校验范畴表示")
        report = Report("category")
        pres = self.presentation
        report.meta['objects'] = list(self.objects)
        report.meta['prime'] = self.prime

        # 1. 形状
        for (a, b, c), tensor in sorted(pres.compose.items()):
            expected = (pres.hom_dim(a, c), pres.hom_dim(b, c), pres.hom_dim(a, b))
            report.record('compose_shape', f"{a},{b},{c}", tuple(tensor.shape) == expected,
                          expected=list(expected), actual=list(tensor.shape))
        for name in self.objects:
            ok = len(pres.identities.get(name, ())) == pres.hom_dim(name, name)
            report.record('identity_shape', name, ok)

        # 2. 单位律
        for (a, b) in pres.nonzero_pairs():
            src, tgt = ObjectExpr.of(a), ObjectExpr.of(b)
            for f, label in zip(self.basis(src, tgt), pres.hom_labels[(a, b)]):
                left = self.compose(self.identity(tgt), f)
                right = self.compose(f, self.identity(src))
                report.record('identity_left', label, np.array_equal(left.coords, f.coords),
                              result=self.describe(left))
                report.record('identity_right', label, np.array_equal(right.coords, f.coords),
                              result=self.describe(right))

        # 3. 结合律
        for a, b, c, d in itertools.product(self.objects, repeat=4):
            if not (pres.hom_dim(a, b) and pres.hom_dim(b, c) and pres.hom_dim(c, d)):
                continue
            oa, ob, oc, od = (ObjectExpr.of(x) for x in (a, b, c, d))
            for f, fl in zip(self.basis(oa, ob), pres.hom_labels[(a, b)]):
                for g, gl in zip(self.basis(ob, oc), pres.hom_labels[(b, c)]):
                    gf = self.compose(g, f)
                    for h, hl in zip(self.basis(oc, od), pres.hom_labels[(c, d)]):
                        lhs = self.compose(self.compose(h, g), f)
                        rhs = self.compose(h, gf)
                        report.record('associativity', f"{hl}∘{gl}∘{fl}",
                                      np.array_equal(lhs.coords, rhs.coords),
                                      left=self.describe(lhs), right=self.describe(rhs))

        self.logger.info(f"范畴表示校验完成: {len(report.failures())} 处违例")
        return report

    def _setup_logger(self) -> logging.Logger:
        """设置日志记录器"""
        logger = logging.getLogger('FiniteCategory')
        logger.setLevel(logging.INFO)

        if not logger.handlers:
            handler = logging.StreamHandler()
            formatter = logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            )
            handler.setFormatter(formatter)
            logger.addHandler(handler)

        return logger
