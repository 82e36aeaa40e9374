"""n-proper 类

候选类 ξ 以每个不可分解对 (C, A) 上的子空间 ξ(C, A) ⊆ E(C, A) 给出，
可分解端点按块判定成员关系。这里检查闭性与饱和性，构造限制结构
(C, E_ξ, s_ξ)，并由子范畴 H 构造 ξ(H)。
"""

import itertools
import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import PreconditionError, RestrictionError
from ..models import ChainMap, DistClass, Extension, Morphism, ObjectExpr, Report
from . import linalg
from .axioms import AxiomChecker
from .exstruct import ExangulatedCategory, ExtStructure
from .linalg import Subspace
from .linsys import LinearSystem

NEITHER = "neither n-exact nor (n+2)-angulated"


class ProperClassChecker:
    """候选类 ξ 的公理检查与限制结构"""

    def __init__(self, structure: ExangulatedCategory):
        """
        :param structure: 原 n-角结构
        """
        self.structure = structure
        self.cat = structure.cat
        self.ext = structure.ext
        self.n = structure.n
        self.config = structure.config
        self.prime = structure.prime
        self.logger = self._setup_logger()

    # ==================== 候选类 ====================

    def full_class(self) -> DistClass:
        return DistClass("full", {pair: Subspace.full(dim, self.prime) for pair, dim in self.ext.dims.items()})

    def split_class(self) -> DistClass:
        return DistClass("split", {})

    def enumerate_candidates(self) -> List[DistClass]:
        """全部子空间族（各不可分解对上子空间的乘积）"""
        pairs = self.ext.nonzero_pairs()
        choices = [linalg.all_subspaces(self.ext.dim(c, a), self.prime, self.config['max_enumeration'])
                   for c, a in pairs]
        total = int(np.prod([len(c) for c in choices])) if choices else 1
        linalg.check_enumeration(total, self.config['max_enumeration'], "候选类")
        candidates = []
        for index, combo in enumerate(itertools.product(*choices)):
            subspaces = {pair: sub for pair, sub in zip(pairs, combo) if sub.dim}
            candidates.append(DistClass(f"candidate{index}", subspaces))
        return candidates

    def contains(self, xi: DistClass, delta: Extension) -> bool:
        """按块判定 δ ∈ ξ"""
        for k, c in enumerate(delta.c):
            for l, a in enumerate(delta.a):
                if not xi.contains_block(c, a, self.ext.block(delta, k, l), self.prime):
                    return False
        return True

    def _xi_basis(self, xi: DistClass, c: str, a: str) -> List[np.ndarray]:
        return list(xi.subspace(c, a, self.ext.dim(c, a), self.prime).basis)

    # ==================== 弱同构 ====================

    def is_weak_isomorphism(self, f: ChainMap, delta: Extension, rho: Extension) -> bool:
        """f 为 n-角态射且两端分量可逆"""
        last = self.n + 1
        pushed = self.ext.covariant(f.components[0], delta)
        pulled = self.ext.contravariant(f.components[last], rho)
        if not np.array_equal(pushed.coords, pulled.coords):
            raise PreconditionError("不是 n-角之间的态射: (f⁰)_*δ ≠ (f^{n+1})^*ρ", offending=f)
        return (self.cat.is_isomorphism(f.components[0]) is not None
                and self.cat.is_isomorphism(f.components[last]) is not None)

    # ==================== ξ-inflation / ξ-deflation ====================

    def xi_inflation_witnesses(self, xi: DistClass, f: Morphism):
        return [w for w in self.structure.inflation_witnesses(f) if self.contains(xi, w.delta)]

    def xi_deflation_witnesses(self, xi: DistClass, g: Morphism):
        return [w for w in self.structure.deflation_witnesses(g) if self.contains(xi, w.delta)]

    def is_xi_inflation(self, xi: DistClass, f: Morphism) -> bool:
        return bool(self.xi_inflation_witnesses(xi, f))

    def is_xi_deflation(self, xi: DistClass, g: Morphism) -> bool:
        return bool(self.xi_deflation_witnesses(xi, g))

    def _pool(self) -> List[Tuple[ObjectExpr, ObjectExpr, Morphism]]:
        objects = self.cat.objects_up_to(self.config['axiom_object_bound'])
        return [(x, y, f) for x in objects for y in objects for f in self.cat.elements(x, y)]

    # ==================== 闭性 ====================

    def closure_check(self, xi: DistClass) -> Report:
        """弱同构、余积、基变换与余基变换闭性"""
        report = Report("closure")
        report.meta['class'] = xi.key()
        one = ObjectExpr.of
        objects = self.cat.objects
        bound = self.config['max_mult'] + 1

        # 1. 弱同构：沿端点自同构搬运 ξ 的基向量
        ends = self.cat.objects_up_to(self.config['max_mult'], include_zero=False)
        for c in ends:
            for a in ends:
                if len(c) + len(a) > bound:
                    continue
                for k, l in itertools.product(range(len(c)), range(len(a))):
                    for v in self._xi_basis(xi, c[k], a[l]):
                        delta = self.ext.from_blocks(a, c, {(k, l): v})
                        for alpha in self.cat.automorphisms(a):
                            pushed = self.ext.covariant(alpha, delta)
                            for gamma in self.cat.automorphisms(c):
                                moved = self.ext.contravariant(gamma, pushed)
                                report.record('weak_iso', f"{delta.key()}|a={self.cat.describe(alpha)}"
                                                          f"|c={self.cat.describe(gamma)}",
                                              self.contains(xi, moved), image=moved.coords)

        # 2. 余积
        pairs = self.ext.nonzero_pairs()
        for (c, a), (c2, a2) in itertools.product(pairs, pairs):
            for v in self._xi_basis(xi, c, a):
                for w in self._xi_basis(xi, c2, a2):
                    total = self.ext.direct_sum(Extension(one(a), one(c), v), Extension(one(a2), one(c2), w))
                    report.record('coproduct', total.key(), self.contains(xi, total))

        # 3. 基变换与余基变换
        for (c, a) in pairs:
            for v in self._xi_basis(xi, c, a):
                delta = Extension(one(a), one(c), v)
                for other in objects:
                    for label, gamma in zip(self.cat.presentation.hom_labels.get((other, c), ()),
                                            self.cat.basis(one(other), one(c))):
                        pulled = self.ext.contravariant(gamma, delta)
                        report.record('base_change', f"{delta.key()}|c={label}", self.contains(xi, pulled),
                                      image=pulled.coords)
                    for label, alpha in zip(self.cat.presentation.hom_labels.get((a, other), ()),
                                            self.cat.basis(one(a), one(other))):
                        pushed = self.ext.covariant(alpha, delta)
                        report.record('cobase_change', f"{delta.key()}|a={label}", self.contains(xi, pushed),
                                      image=pushed.coords)
        return report

    # ==================== 饱和性 ====================

    def _solvable(self, unknown: Tuple[ObjectExpr, ObjectExpr], post: Optional[Morphism],
                  pre: Optional[Morphism], rhs: Morphism) -> bool:
        system = LinearSystem(self.cat)
        var = system.variable(*unknown)
        system.equation(rhs.source, rhs.target, [system.term(var, post=post, pre=pre)], rhs)
        return system.solve() is not None

    def saturation_check(self, xi: DistClass, closed: Optional[bool] = None) -> Report:
        """
        同时检查两种形式：
        deflation 形式：交换方块 dc = ba 中 a、b 为 ξ-deflation 且 d 为 deflation 时 d 为 ξ-deflation；
        inflation 形式：a、b 为 ξ-inflation 且 c 为 inflation 时 c 为 ξ-inflation。
        两种形式只在闭类上等价，闭类上结论不一致时给出告警。

        :param xi: 候选类
        :param closed: closure_check 的结论（缺省时现算）
        """
        if closed is None:
            closed = self.closure_check(xi).ok
        report = Report("saturation")
        report.meta['class'] = xi.key()
        report.meta['axiom_object_bound'] = self.config['axiom_object_bound']
        s = self.structure
        pool = self._pool()
        xi_infl = [(x, y, f) for x, y, f in pool if self.is_xi_inflation(xi, f)]
        xi_defl = [(x, y, f) for x, y, f in pool if self.is_xi_deflation(xi, f)]

        # 1. deflation 形式
        deflation_ok = True
        for source, target, d in pool:
            if s.is_deflation(d) is None or self.is_xi_deflation(xi, d):
                continue
            violation = None
            for (a_src, b_obj, a), (b_src, d_obj, b) in itertools.product(xi_defl, xi_defl):
                if b_src != b_obj or d_obj != target:
                    continue
                ba = self.cat.compose(b, a)
                if self._solvable((a_src, source), d, None, ba):
                    violation = {'a': self.cat.describe(a), 'b': self.cat.describe(b), 'A': a_src.key()}
                    break
            if violation is not None:
                deflation_ok = False
            report.record('saturation_deflation', f"{source.key()}→{target.key()}:{self.cat.describe(d)}",
                          violation is None, **(violation or {}))

        # 2. inflation 形式
        inflation_ok = True
        for source, target, c in pool:
            if s.is_inflation(c) is None or self.is_xi_inflation(xi, c):
                continue
            violation = None
            for (a_src, b_obj, a), (b_src, d_obj, b) in itertools.product(xi_infl, xi_infl):
                if a_src != source or b_src != b_obj:
                    continue
                ba = self.cat.compose(b, a)
                if self._solvable((target, d_obj), None, c, ba):
                    violation = {'a': self.cat.describe(a), 'b': self.cat.describe(b), 'D': d_obj.key()}
                    break
            if violation is not None:
                inflation_ok = False
            report.record('saturation_inflation', f"{source.key()}→{target.key()}:{self.cat.describe(c)}",
                          violation is None, **(violation or {}))

        report.verdicts['deflation_form'] = deflation_ok
        report.verdicts['inflation_form'] = inflation_ok
        report.verdicts['closed'] = closed
        if closed and deflation_ok != inflation_ok:
            report.alarm('lemma43', xi.key(), deflation_form=deflation_ok, inflation_form=inflation_ok)
        return report

    def corollary44_check(self, xi: DistClass) -> Report:
        """ξ-inflation 的复合仍是 ξ-inflation"""
        report = Report("corollary44")
        pool = self._pool()
        xi_infl = [(x, y, f) for x, y, f in pool if self.is_xi_inflation(xi, f)]
        for (x, y, f), (y2, z, g) in itertools.product(xi_infl, xi_infl):
            if y2 != y:
                continue
            gf = self.cat.compose(g, f)
            report.record('xi_inflation_composite',
                          f"{y.key()}→{z.key()}:{self.cat.describe(g)}∘{x.key()}→{y.key()}:{self.cat.describe(f)}",
                          self.is_xi_inflation(xi, gf), composite=self.cat.describe(gf))
        return report

    # ==================== 限制结构 ====================

    def restrict_structure(self, xi: DistClass) -> ExangulatedCategory:
        """(C, E_ξ, s_ξ)：E_ξ(C, A) 以 ξ(C, A) 的行最简基为坐标"""
        base = self.ext
        pres = self.cat.presentation
        label_index = pres.label_index()
        spaces = {pair: xi.subspace(pair[0], pair[1], dim, self.prime) for pair, dim in base.dims.items()}
        dims = {pair: sub.dim for pair, sub in spaces.items() if sub.dim}

        def restrict(matrix: np.ndarray, source: Subspace, target: Subspace, label: str) -> np.ndarray:
            columns = []
            for v in source.basis:
                image = np.mod(matrix @ v, self.prime)
                if not target.contains(image):
                    raise RestrictionError(f"{label} 把 ξ 中的元素送出 ξ", morphism=label,
                                           extension=[int(x) for x in v])
                columns.append(target.coordinates(image))
            if not columns:
                return np.zeros((target.dim, 0), dtype=np.int64)
            return np.stack(columns, axis=1)

        def space(c: str, a: str) -> Subspace:
            return spaces.get((c, a), Subspace.zero(base.dim(c, a), self.prime))

        cov, contra = {}, {}
        for label, (a, a2, _) in sorted(label_index.items()):
            for c in self.cat.objects:
                if (label, c) in base.cov and (dims.get((c, a)) or dims.get((c, a2))):
                    cov[(label, c)] = restrict(base.cov[(label, c)], space(c, a), space(c, a2), label)
        for label, (c2, c, _) in sorted(label_index.items()):
            for a in self.cat.objects:
                if (label, a) in base.contra and (dims.get((c, a)) or dims.get((c2, a))):
                    contra[(label, a)] = restrict(base.contra[(label, a)], space(c, a), space(c2, a), label)
        restricted_ext = ExtStructure(self.cat, dims, cov, contra)

        table = {}
        for (c, a), sub in spaces.items():
            for coeffs in linalg.all_vectors(sub.dim, self.prime, self.config['max_enumeration']):
                if not sub.dim:
                    continue
                original = np.mod(coeffs @ sub.basis, self.prime)
                table[(c, a, tuple(int(x) for x in coeffs))] = \
                    self.structure.table[(c, a, tuple(int(x) for x in original))]
        for c in self.cat.objects:
            for a in self.cat.objects:
                if not dims.get((c, a)):
                    table[(c, a, ())] = self.structure.table[(c, a, (0,) * base.dim(c, a))]
        return ExangulatedCategory(self.cat, restricted_ext, self.n, table,
                                   name=f"{self.structure.name}|{xi.name}", config=self.config)

    def theorem45_decide(self, xi: DistClass) -> Report:
        """
        ξ 是 n-proper 类 当且仅当 (C, E_ξ, s_ξ) 是 n-角范畴

        两侧独立计算，不一致时记录告警。
        """
        self.logger.info(f"开始判定候选类 {xi.name}")
        report = Report("theorem45")
        report.meta['class'] = xi.to_dict()
        try:
            closure = self.closure_check(xi)
            saturation = self.saturation_check(xi, closed=closure.ok)
            report.merge(closure)
            report.merge(saturation)
            proper = closure.ok and saturation.verdicts['deflation_form']

            restricted_ok = False
            try:
                restricted = self.restrict_structure(xi)
                checker = AxiomChecker(restricted)
                realization = checker.check_realization()
                axioms = checker.check_axioms()
                restricted_ok = realization.ok and axioms.ok
                report.meta['restricted_failures'] = [f.to_dict() for f in
                                                      realization.failures() + axioms.failures()]
            except RestrictionError as e:
                report.info('restriction', xi.key(), morphism=e.morphism, extension=e.extension)

            agree = proper == restricted_ok
            report.verdicts['proper'] = proper
            report.verdicts['restricted_ok'] = restricted_ok
            report.verdicts['agree'] = agree
            if not agree:
                report.alarm('theorem45', xi.key(), proper=proper, restricted_ok=restricted_ok)
            self.logger.info(f"候选类 {xi.name}: proper={proper}, restricted_ok={restricted_ok}")
            return report
        except Exception as e:
            self.logger.error(f"判定候选类失败: {str(e)}")
            raise

    # ==================== 由子范畴构造 ξ(H) ====================

    def _left_approximation(self, d0: Morphism, subcategory: Sequence[str]) -> bool:
        """C(d⁰, H): C(X¹, H) → C(X⁰, H) 对每个 H 满"""
        for name in subcategory:
            h = ObjectExpr.of(name)
            matrix = self.cat.pre_matrix(d0, h)
            if linalg.rank(matrix, self.prime) != self.cat.hom_dim(d0.source, h):
                return False
        return True

    def xi_from_subcategory(self, subcategory: Sequence[str]) -> Tuple[DistClass, Report]:
        """
        ξ(H)(C, A) = {δ : realize(δ) 的 C(d⁰, H) 满}

        先验证成员集合是子空间，再在补丁代表上复测满性。
        """
        names = list(subcategory)
        for name in names:
            if name not in self.cat.objects:
                raise PreconditionError(f"子范畴中的对象 {name} 不存在", offending=name)
        report = Report("xi_from_subcategory")
        one = ObjectExpr.of
        s = self.structure
        subspaces = {}
        for (c, a) in self.ext.nonzero_pairs():
            members = []
            for delta in self.ext.elements(one(a), one(c), self.config['max_enumeration']):
                x = s.realize(delta)
                surjective = self._left_approximation(x.diffs[0], names)
                if surjective:
                    members.append(delta.coords)
                # 补丁只加在内部次数 1..n，两端不动
                for degree in range(1, self.n):
                    for padding in self.cat.objects:
                        padded = s.complexes.pad(x, one(padding), degree)
                        report.record('representative_invariance', f"{delta.key()}|pad={padding}@{degree}",
                                      self._left_approximation(padded.diffs[0], names) == surjective)
            span = Subspace.span(members, self.ext.dim(c, a), self.prime)
            report.record('subspace', f"{c},{a}", len(members) == self.prime ** span.dim,
                          members=len(members), span_dim=span.dim)
            if span.dim:
                subspaces[(c, a)] = span
        xi = DistClass(f"xi({'+'.join(names) or '0'})", subspaces)
        report.verdicts['class'] = xi.to_dict()
        return xi, report

    def prop48_flags(self, subcategory: Sequence[str]) -> Report:
        """强共变有限性见证、ξ(H) ≠ Δ₀、proper 判定、限制结构的内射对象与最终结论"""
        names = sorted(subcategory, key=self.cat.objects.index)
        projectives, injectives, _ = AxiomChecker(self.structure).classify_proj_inj()
        if projectives or injectives:
            raise PreconditionError(f"要求 P = I = 0, 实际 P = {projectives}, I = {injectives}",
                                    offending=projectives or injectives)
        xi, report = self.xi_from_subcategory(names)
        report.name = "prop48"
        everything = list(self.cat.objects)

        if not names:
            report.verdicts['case'] = "H=0"
            report.record('xi_full', xi.key(), xi.key() == self.full_class().key())
            report.verdicts['verdict'] = "ξ(H) = E"
            return report
        if names == everything:
            report.verdicts['case'] = "H=C"
            report.record('xi_split', xi.key(), xi.is_split())
            report.verdicts['verdict'] = "ξ(H) split"
            return report

        # 1. 强共变有限：每个 B 有以 B 开头、中间项在 add H、d⁰ 为左 H-逼近的分布 n-角
        witnesses = {}
        for b in everything:
            witness = self._approximation_witness(b, names)
            witnesses[b] = witness
            report.record('strongly_covariantly_finite', b, witness is not None, witness=witness)
        report.verdicts['approximations'] = witnesses

        # 2. ξ(H) ≠ Δ₀
        report.record('nonsplit', xi.key(), not xi.is_split())

        # 3. proper
        decision = self.theorem45_decide(xi)
        report.verdicts['proper'] = decision.verdicts['proper']
        report.verdicts['restricted_ok'] = decision.verdicts['restricted_ok']
        report.record('proper', xi.key(), decision.verdicts['proper'] and decision.verdicts['agree'])

        # 4. 限制结构的内射对象 = H
        restricted = self.restrict_structure(xi)
        _, restricted_injectives, _ = AxiomChecker(restricted).classify_proj_inj()
        report.verdicts['restricted_injectives'] = restricted_injectives
        report.record('injectives_equal_H', ",".join(names), sorted(restricted_injectives) == sorted(names),
                      injectives=restricted_injectives)

        report.verdicts['case'] = "0≠H⊊C"
        report.verdicts['verdict'] = NEITHER if report.ok else "undetermined"
        return report

    def _approximation_witness(self, b: str, subcategory: Sequence[str]) -> Optional[str]:
        s = self.structure
        allowed = set(subcategory)
        candidates = [e.complex for e in s.distinguished() if e.complex.start == ObjectExpr.of(b)]
        for c in [ObjectExpr.zero()] + [ObjectExpr.of(o) for o in self.cat.objects]:
            candidates.append(s.complexes.split_complex(ObjectExpr.of(b), c))
        for x in candidates:
            middle = x.terms[1:-1]
            if not all(name in allowed for term in middle for name in term):
                continue
            if self._left_approximation(x.diffs[0], subcategory):
                return x.describe()
        return None

    def _setup_logger(self) -> logging.Logger:
        """设置日志记录器"""
        logger = logging.getLogger('ProperClassChecker')
        logger.setLevel(logging.INFO)

        if not logger.handlers:
            handler = logging.StreamHandler()
            formatter = logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            )
            handler.setFormatter(formatter)
            logger.addHandler(handler)

        return logger


def theorem45_decide_api(structure: ExangulatedCategory, xi: DistClass) -> Report:
    """
    对外接口：判定候选类

    :param structure: 原结构
    :param xi: 候选类
    :return: 判定报告
    """
    return ProperClassChecker(structure).theorem45_decide(xi)


def xi_from_subcategory_api(structure: ExangulatedCategory, subcategory: Sequence[str],
                            flags: bool = False) -> Report:
    """对外接口：由子范畴构造 ξ(H)，flags 为 True 时附带全部性质判定"""
    checker = ProperClassChecker(structure)
    if flags:
        return checker.prop48_flags(subcategory)
    return checker.xi_from_subcategory(subcategory)[1]
