"""理想商 C/X 与诱导结构 (Ē, s̄)

商范畴保留全部对象名；恒等态射落入理想的不可分解对象记为"死"对象，
它们在商中的 Hom 空间都是零，因此投影后的复形无需重新编号。
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..exceptions import PreconditionError
from ..models import CategoryPresentation, ComplexNp2, Morphism, NExangle, ObjectExpr, Report
from . import linalg
from .axioms import AxiomChecker
from .exstruct import ExangulatedCategory, ExtStructure
from .fincat import FiniteCategory
from .linalg import Subspace


class QuotientPresentation:
    def __init__(self,
                 base: ExangulatedCategory,
                 subcategory: Tuple[str, ...],
                 structure: ExangulatedCategory,
                 ideals: Dict[Tuple[str, str], Subspace],
                 survivors: List[str],
                 dead: List[str],
                 report: Optional[Report] = None):
        """
        商范畴 C/X 及其上的 (Ē, s̄)

        :param base: 原结构
        :param subcategory: X
        :param structure: 商结构（对象名不变）
        :param ideals: (A, B) -> [X](A, B)
        :param survivors: 商中非零的不可分解对象
        :param dead: 商中变为零的不可分解对象
        :param report: 构造时的良定性检查
        """
        self.base = base
        self.subcategory = subcategory
        self.structure = structure
        self.ideals = ideals
        self.survivors = survivors
        self.dead = dead
        self.report = report if report is not None else Report("quotient")


class QuotientBuilder:
    """构造商结构并判定弱核-余核条件"""

    def __init__(self, structure: ExangulatedCategory):
        """
        :param structure: 原 n-角结构
        """
        self.structure = structure
        self.cat = structure.cat
        self.logger = self._setup_logger()

    # ==================== 构造 ====================

    def build_quotient(self, subcategory: Sequence[str], check_precondition: bool = True) -> QuotientPresentation:
        """
        构造 C/X，并验证理想性与 Ē 的良定性

        :param subcategory: X 中的不可分解对象
        :param check_precondition: 是否验证 X ⊆ P∩I
        :return: QuotientPresentation
        """
        self.logger.info(f"开始构造商范畴, X = {list(subcategory)}")
        try:
            names = tuple(subcategory)
            for name in names:
                if name not in self.cat.objects:
                    raise PreconditionError(f"子范畴中的对象 {name} 不存在", offending=name)
            if check_precondition and names:
                projectives, injectives, _ = AxiomChecker(self.structure).classify_proj_inj()
                for name in names:
                    if name not in projectives or name not in injectives:
                        raise PreconditionError(f"对象 {name} 不属于 P∩I", offending=name)

            report = Report("quotient")
            pres = self.cat.presentation
            one = ObjectExpr.of
            objects = self.cat.objects

            # 1. 理想与投影
            ideals = {}
            for a in objects:
                for b in objects:
                    ideals[(a, b)] = self.cat.ideal_subspace(names, one(a), one(b))
            dead = [a for a in objects if ideals[(a, a)].contains(pres.identities[a])]
            survivors = [a for a in objects if a not in dead]

            # 2. 理想的双边性
            for (a, b), ideal in sorted(ideals.items()):
                for w in ideal.basis:
                    wm = Morphism(one(a), one(b), w)
                    for c in objects:
                        for g in self.cat.basis(one(b), one(c)):
                            report.record('ideal_closed', f"post:{a},{b},{c}",
                                          ideals[(a, c)].contains(self.cat.compose(g, wm).coords))
                        for f in self.cat.basis(one(c), one(a)):
                            report.record('ideal_closed', f"pre:{c},{a},{b}",
                                          ideals[(c, b)].contains(self.cat.compose(wm, f).coords))

            # 3. 商表示
            quotient_pres = self._quotient_presentation(ideals)
            quotient_cat = FiniteCategory(quotient_pres, self.cat.max_enumeration)

            # 4. Ē 的良定性：理想中的态射作用为零
            ext = self.structure.ext
            for (a, b), ideal in sorted(ideals.items()):
                for w in ideal.basis:
                    wm = Morphism(one(a), one(b), w)
                    for m in objects:
                        report.record('ext_well_defined', f"cov:{a},{b}@{m}",
                                      not np.any(ext.cov_matrix(wm, one(m))))
                        report.record('ext_well_defined', f"contra:{a},{b}@{m}",
                                      not np.any(ext.contra_matrix(wm, one(m))))

            # 5. 投影是函子
            for a in objects:
                for b in objects:
                    for c in objects:
                        for f in self.cat.basis(one(a), one(b)):
                            for g in self.cat.basis(one(b), one(c)):
                                lhs = self._project(ideals, self.cat.compose(g, f), quotient_cat)
                                rhs = quotient_cat.compose(self._project(ideals, g, quotient_cat),
                                                           self._project(ideals, f, quotient_cat))
                                report.record('projection_functor', f"{a},{b},{c}", lhs.same_value(rhs))

            quotient_ext = ExtStructure(
                quotient_cat, dict(ext.dims), self._surviving_actions(ext.cov, quotient_pres),
                self._surviving_actions(ext.contra, quotient_pres), ext.labels)
            table = {key: self._project_complex(ideals, x, quotient_cat)
                     for key, x in self.structure.table.items()}
            quotient = ExangulatedCategory(
                quotient_cat, quotient_ext, self.structure.n, table,
                name=f"{self.structure.name}/{'+'.join(names) or '0'}", config=self.structure.config)

            report.verdicts['survivors'] = survivors
            report.verdicts['dead'] = dead
            self.logger.info(f"商范畴构造完成: 存活对象 {survivors}")
            return QuotientPresentation(self.structure, names, quotient, ideals, survivors, dead, report)
        except Exception as e:
            self.logger.error(f"构造商范畴失败: {str(e)}")
            raise

    def _quotient_presentation(self, ideals: Dict[Tuple[str, str], Subspace]) -> CategoryPresentation:
        pres = self.cat.presentation
        objects = self.cat.objects
        labels, projections, sections = {}, {}, {}
        for (a, b), ideal in ideals.items():
            free = ideal.complement_coordinates()
            if free:
                labels[(a, b)] = tuple(pres.hom_labels[(a, b)][j] for j in free)
            projections[(a, b)] = ideal.projection()
            sections[(a, b)] = ideal.section()
        compose = {}
        for a in objects:
            for b in objects:
                for c in objects:
                    if not (labels.get((a, b)) and labels.get((b, c)) and labels.get((a, c))):
                        continue
                    tensor = pres.composition_tensor(a, b, c)
                    reduced = np.einsum('xa,abc,bg,cf->xgf', projections[(a, c)], tensor,
                                        sections[(b, c)], sections[(a, b)])
                    compose[(a, b, c)] = np.mod(reduced, pres.prime)
        identities = {a: np.mod(projections[(a, a)] @ pres.identities[a], pres.prime) for a in objects}
        return CategoryPresentation(pres.prime, objects, labels, compose, identities)

    @staticmethod
    def _surviving_actions(actions: Dict[Tuple[str, str], np.ndarray],
                           quotient_pres: CategoryPresentation) -> Dict[Tuple[str, str], np.ndarray]:
        alive = quotient_pres.label_index()
        return {(label, other): m for (label, other), m in actions.items() if label in alive}

    def _project(self, ideals: Dict[Tuple[str, str], Subspace], m: Morphism,
                 quotient_cat: FiniteCategory) -> Morphism:
        values = {}
        for i, t in enumerate(m.target):
            for j, s in enumerate(m.source):
                block = self.cat.block(m, i, j)
                if block.size:
                    values[(i, j)] = np.mod(ideals[(s, t)].projection() @ block, self.cat.prime)
        return quotient_cat.from_blocks(m.source, m.target, values)

    def _project_complex(self, ideals, x: ComplexNp2, quotient_cat: FiniteCategory) -> ComplexNp2:
        return ComplexNp2(x.n, x.terms, tuple(self._project(ideals, d, quotient_cat) for d in x.diffs))

    def project_morphism(self, q: QuotientPresentation, m: Morphism) -> Morphism:
        return self._project(q.ideals, m, q.structure.cat)

    def project_complex(self, q: QuotientPresentation, x: ComplexNp2) -> ComplexNp2:
        return self._project_complex(q.ideals, x, q.structure.cat)

    # ==================== 弱核-余核 ====================

    def wkc_check(self, q: QuotientPresentation, exangle: NExangle) -> Report:
        """投影后的复形在商中两条 Hom 序列于位置 1..n 正合"""
        report = Report("wkc")
        qcat = q.structure.cat
        n = self.structure.n
        x = self.project_complex(q, exangle.complex)
        key = exangle.key()
        first: Optional[Dict] = None
        for name in q.survivors:
            m = ObjectExpr.of(name)
            cov = [qcat.post_matrix(d, m) for d in x.diffs]
            contra = [qcat.pre_matrix(d, m) for d in x.diffs]
            for i in range(1, n + 1):
                ok = linalg.exact_at(cov[i - 1], cov[i], qcat.hom_dim(m, x.terms[i]), qcat.prime)
                report.record('wkc_cov', f"{key}|M={name}|{i}", ok, M=name, position=i)
                if not ok and first is None:
                    first = {'side': 'covariant', 'M': name, 'position': i}
            for i in range(1, n + 1):
                ok = linalg.exact_at(contra[i], contra[i - 1], qcat.hom_dim(x.terms[i], m), qcat.prime)
                report.record('wkc_contra', f"{key}|M={name}|{i}", ok, M=name, position=i)
                if not ok and first is None:
                    first = {'side': 'contravariant', 'M': name, 'position': i}
        report.verdicts['wkc'] = first is None
        report.verdicts['first_failure'] = first
        report.meta['projected'] = x.describe()
        return report

    # ==================== 判定 ====================

    def quotient_structure(self, q: QuotientPresentation) -> ExangulatedCategory:
        """去掉死对象后的独立商结构（死直和项的 Hom 块维数为零，坐标不变）"""
        source = q.structure
        pres = source.cat.presentation
        alive = q.survivors
        keep = set(alive)
        labels = {k: v for k, v in pres.hom_labels.items() if k[0] in keep and k[1] in keep}
        compose = {k: v for k, v in pres.compose.items() if all(x in keep for x in k)}
        identities = {a: pres.identities[a] for a in alive}
        stripped = CategoryPresentation(pres.prime, tuple(alive), labels, compose, identities)
        cat = FiniteCategory(stripped, source.cat.max_enumeration)
        index = stripped.label_index()
        ext = ExtStructure(
            cat,
            {k: v for k, v in source.ext.dims.items() if k[0] in keep and k[1] in keep},
            {k: v for k, v in source.ext.cov.items() if k[0] in index and k[1] in keep},
            {k: v for k, v in source.ext.contra.items() if k[0] in index and k[1] in keep},
            {k: v for k, v in source.ext.labels.items() if k[0] in keep and k[1] in keep})
        table = {}
        for (c, a, coords), x in source.table.items():
            if c not in keep or a not in keep:
                continue
            terms = tuple(t.without(q.dead) for t in x.terms)
            diffs = tuple(cat.reindex(d, terms[i], terms[i + 1]) for i, d in enumerate(x.diffs))
            table[(c, a, coords)] = ComplexNp2(x.n, terms, diffs)
        return ExangulatedCategory(cat, ext, source.n, table, name=source.name, config=source.config)

    def shape_flags(self, q: QuotientPresentation) -> Dict[str, bool]:
        """
        n-exact 型：投影后的 d⁰ 在 Hom 上单、dⁿ 在 Hom 上满；
        (n+2)-angulated 型：商中没有非零投射或内射对象
        """
        stripped = self.quotient_structure(q)
        n = self.structure.n
        monic = True
        for exangle in stripped.distinguished():
            x = exangle.complex
            for name in stripped.objects:
                m = ObjectExpr.of(name)
                if linalg.kernel_basis(stripped.cat.post_matrix(x.diffs[0], m), stripped.prime).dim:
                    monic = False
                if linalg.kernel_basis(stripped.cat.pre_matrix(x.diffs[n], m), stripped.prime).dim:
                    monic = False
        projectives, injectives, _ = AxiomChecker(stripped).classify_proj_inj()
        angulated = not projectives and not injectives
        return {
            'n_exact_style': monic,
            'angulated_style': angulated,
            'neither': not monic and not angulated,
            'projectives': projectives,
            'injectives': injectives,
        }

    def theorem31_decide(self, subcategory: Sequence[str]) -> Report:
        """
        商结构是 n-角范畴 当且仅当 每个分布 n-角投影为弱核-余核序列

        YES 时在去掉死对象的商结构上独立运行全部公理检查并附上报告；
        NO 时给出全部失败的 n-角作为见证。
        """
        self.logger.info("开始判定商结构")
        q = self.build_quotient(subcategory)
        report = Report("theorem31")
        report.merge(q.report)
        witnesses = []
        for exangle in self.structure.distinguished():
            check = self.wkc_check(q, exangle)
            report.findings.extend(check.findings)
            report.stats.update(check.stats)
            if not check.verdicts['wkc']:
                witnesses.append({
                    'exangle': exangle.key(),
                    'complex': exangle.complex.describe(),
                    'start': exangle.complex.start.key(),
                    'end': exangle.complex.end.key(),
                    'projected': check.meta['projected'],
                    'first_failure': check.verdicts['first_failure'],
                })
        report.verdicts['survivors'] = q.survivors
        report.verdicts['wkc_all'] = not witnesses
        if witnesses:
            report.verdicts['theorem31'] = "NO"
            report.verdicts['witnesses'] = witnesses
            for witness in witnesses:
                report.info('theorem31_witness', witness['exangle'], **witness)
            self.logger.info(f"判定结果: NO, {len(witnesses)} 个见证")
            return report
        report.verdicts['theorem31'] = "YES"
        stripped = self.quotient_structure(q)
        suite = AxiomChecker(stripped).validate_all()
        report.merge(suite)
        report.verdicts['quotient_suite_ok'] = suite.ok
        report.verdicts['shape'] = self.shape_flags(q)
        self.logger.info(f"判定结果: YES, 商结构检查{'通过' if suite.ok else '未通过'}")
        return report

    def _setup_logger(self) -> logging.Logger:
        """设置日志记录器"""
        logger = logging.getLogger('QuotientBuilder')
        logger.setLevel(logging.INFO)

        if not logger.handlers:
            handler = logging.StreamHandler()
            formatter = logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            )
            handler.setFormatter(formatter)
            logger.addHandler(handler)

        return logger


def build_quotient_api(structure: ExangulatedCategory, subcategory: Sequence[str]) -> QuotientPresentation:
    """
    对外接口：构造商结构

    :param structure: 原结构
    :param subcategory: X
    :return: QuotientPresentation
    """
    return QuotientBuilder(structure).build_quotient(subcategory)


def theorem31_decide_api(structure: ExangulatedCategory, subcategory: Sequence[str]) -> Report:
    """对外接口：判定商结构是否为 n-角范畴"""
    return QuotientBuilder(structure).theorem31_decide(subcategory)
