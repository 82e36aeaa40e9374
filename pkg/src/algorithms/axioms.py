"""实现公理 (R0)(R1)(R2)、(EA1)(EA2)(EA2op)、投射/内射对象分类与弱同构性质"""

import itertools
import logging
from typing import List, Tuple

import numpy as np

from ..models import ComplexNp2, Extension, Morphism, ObjectExpr, Report
from . import linalg
from .exstruct import ExangulatedCategory


class AxiomChecker:
    """对一个 ExangulatedCategory 运行全部公理检查，失败作为报告条目返回"""

    def __init__(self, structure: ExangulatedCategory):
        """
        :param structure: 待检查的 n-角结构
        """
        self.structure = structure
        self.cat = structure.cat
        self.ext = structure.ext
        self.complexes = structure.complexes
        self.n = structure.n
        self.config = structure.config
        self.logger = self._setup_logger()

    def _one(self, name: str) -> ObjectExpr:
        return ObjectExpr.of(name)

    def _all_extensions(self) -> List[Extension]:
        found = []
        for c in self.cat.objects:
            for a in self.cat.objects:
                found.extend(self.ext.elements(self._one(a), self._one(c), self.config['max_enumeration']))
        return found

    def _label(self, source: ObjectExpr, target: ObjectExpr, m: Morphism) -> str:
        return f"{source.key()}→{target.key()}:{self.cat.describe(m)}"

    # ==================== 实现公理 ====================

    def check_realization(self) -> Report:
        """
        (R0) 扩张态射 (a, c) 的提升存在；(R1) 表中每项是 n-角；
        (R2) 零元素的代表与分裂复形同伦等价
        """
        self.logger.info("开始检查实现公理 (R0)(R1)(R2)")
        report = Report("realization")
        try:
            s = self.structure
            last = self.n + 1
            extensions = self._all_extensions()

            # 1. (R0)
            for delta in extensions:
                pushed = {}
                for a2 in self.cat.objects:
                    for alpha in self.cat.elements(delta.a, self._one(a2)):
                        pushed.setdefault(a2, []).append((alpha, self.ext.covariant(alpha, delta)))
                for rho in extensions:
                    if delta.is_zero() and rho.is_zero():
                        continue
                    for alpha, image in pushed[rho.a[0]]:
                        for gamma in self.cat.elements(delta.c, rho.c):
                            if not np.array_equal(image.coords, self.ext.contravariant(gamma, rho).coords):
                                continue
                            lift = self.complexes.lift(s.realize(delta), s.realize(rho), {0: alpha, last: gamma})
                            report.record('R0', f"{delta.key()}→{rho.key()}|a={self.cat.describe(alpha)}"
                                                f"|c={self.cat.describe(gamma)}", lift is not None)

            # 2. (R1)
            for exangle in s.distinguished():
                check = s.is_n_exangle(exangle.complex, exangle.delta)
                report.record('R1', exangle.key(), check.ok,
                              failures=[f.instance for f in check.failures()])

            # 3. (R2)
            zero = ObjectExpr.zero()
            for c in self.cat.objects:
                for a in self.cat.objects:
                    entry = s.table[(c, a, (0,) * self.ext.dim(c, a))]
                    split = self.complexes.split_complex(self._one(a), self._one(c))
                    equivalent = self.complexes.homotopy_equivalent(entry, split, fix_ends=True)
                    report.record('R2', f"{c},{a}:0", equivalent is not None, complex=entry.describe())
            for name in self.cat.objects:
                obj = self._one(name)
                # E(0, A) 的零元素对应 A →1 A → 0 … 0，E(C, 0) 的对应 0 … 0 → C →1 C
                for delta, quoted, key in (
                        (self.ext.zero(obj, zero), self._identity_then_zeros(obj), f"0,{name}:0"),
                        (self.ext.zero(zero, obj), self._zeros_then_identity(obj), f"{name},0:0")):
                    realized = s.realize(delta)
                    report.record('R2_exangle', key, s.is_n_exangle(quoted, delta).ok, complex=quoted.describe())
                    equivalent = self.complexes.homotopy_equivalent(realized, quoted, fix_ends=True)
                    report.record('R2', key, equivalent is not None, complex=realized.describe())

            self.logger.info(f"实现公理检查完成: {len(report.failures())} 处违例")
            return report
        except Exception as e:
            self.logger.error(f"检查实现公理失败: {str(e)}")
            raise

    def _identity_then_zeros(self, obj: ObjectExpr) -> ComplexNp2:
        zero = ObjectExpr.zero()
        terms = [obj, obj] + [zero] * self.n
        diffs = [self.cat.identity(obj)] + [self.cat.zero(terms[i], terms[i + 1]) for i in range(1, self.n + 1)]
        return self.complexes.make(terms, diffs)

    def _zeros_then_identity(self, obj: ObjectExpr) -> ComplexNp2:
        zero = ObjectExpr.zero()
        terms = [zero] * self.n + [obj, obj]
        diffs = [self.cat.zero(terms[i], terms[i + 1]) for i in range(self.n)] + [self.cat.identity(obj)]
        return self.complexes.make(terms, diffs)

    # ==================== EA1 / EA2 / EA2op ====================

    def _pool(self) -> List[Tuple[ObjectExpr, ObjectExpr, Morphism]]:
        objects = self.cat.objects_up_to(self.config['axiom_object_bound'])
        pool = []
        for x in objects:
            for y in objects:
                for f in self.cat.elements(x, y):
                    pool.append((x, y, f))
        return pool

    def _check_ea1(self, report: Report) -> None:
        s = self.structure
        pool = self._pool()
        inflations = [(x, y, f) for x, y, f in pool if s.is_inflation(f) is not None]
        deflations = [(x, y, f) for x, y, f in pool if s.is_deflation(f) is not None]
        report.meta['inflations_in_pool'] = len(inflations)
        report.meta['deflations_in_pool'] = len(deflations)
        for (x, y, f), (y2, z, g) in itertools.product(inflations, inflations):
            if y2 != y:
                continue
            gf = self.cat.compose(g, f)
            report.record('EA1_inflation', f"{self._label(y, z, g)}∘{self._label(x, y, f)}",
                          s.is_inflation(gf) is not None, composite=self.cat.describe(gf))
        for (x, y, f), (y2, z, g) in itertools.product(deflations, deflations):
            if y2 != y:
                continue
            gf = self.cat.compose(g, f)
            report.record('EA1_deflation', f"{self._label(y, z, g)}∘{self._label(x, y, f)}",
                          s.is_deflation(gf) is not None, composite=self.cat.describe(gf))

    def _good_lift(self, report: Report, instance: str, lifts, make_cone, target_ext) -> Tuple[bool, int]:
        """逐个尝试提升，返回 (是否存在好提升, 尝试个数)；每个锥的 d² = 0 记入 cone_d_squared"""
        s = self.structure
        tried = 0
        for f in itertools.islice(lifts, self.config['max_lifts']):
            tried += 1
            cone = make_cone(f)
            squares = self.complexes.validate_complex(cone)
            report.record('cone_d_squared', f"{instance}|#{tried}", squares.ok,
                          positions=[x.instance for x in squares.failures()])
            if not squares.ok:
                continue
            delta = target_ext(f)
            if not s.is_n_exangle(cone, delta).ok:
                continue
            if self.complexes.homotopy_equivalent(cone, s.realize(delta), fix_ends=True) is not None:
                return True, tried
        return False, tried

    def _check_ea2(self, report: Report) -> None:
        s = self.structure
        last = self.n + 1
        for rho in self._all_extensions():
            a, d = rho.a, rho.c
            for c_name in self.cat.objects:
                c = self._one(c_name)
                for label, gamma in zip(self.cat.presentation.hom_labels.get((c_name, d[0]), ()),
                                        self.cat.basis(c, d)):
                    x = s.realize(self.ext.contravariant(gamma, rho))
                    y = s.realize(rho)
                    lifts = self.complexes.chain_maps(x, y, {0: self.cat.identity(a), last: gamma})
                    instance = f"{rho.key()}|c={label}"
                    ok, tried = self._good_lift(
                        report, instance, lifts, self.complexes.mapping_cone,
                        lambda f, x=x: self.ext.covariant(x.diffs[0], rho))
                    report.record('EA2', instance, ok, lifts_tried=tried)

    def _check_ea2op(self, report: Report) -> None:
        s = self.structure
        last = self.n + 1
        for rho in self._all_extensions():
            a, c = rho.a, rho.c
            for b_name in self.cat.objects:
                b = self._one(b_name)
                for label, alpha in zip(self.cat.presentation.hom_labels.get((a[0], b_name), ()),
                                        self.cat.basis(a, b)):
                    x = s.realize(rho)
                    y = s.realize(self.ext.covariant(alpha, rho))
                    lifts = self.complexes.chain_maps(x, y, {0: alpha, last: self.cat.identity(c)})
                    instance = f"{rho.key()}|a={label}"
                    ok, tried = self._good_lift(
                        report, instance, lifts, self.complexes.mapping_cocone,
                        lambda f, y=y: self.ext.contravariant(y.diffs[self.n], rho))
                    report.record('EA2op', instance, ok, lifts_tried=tried)

    def check_axioms(self) -> Report:
        """(EA1) 复合封闭，(EA2)/(EA2op) 好提升存在"""
        self.logger.info("开始检查公理 (EA1)(EA2)(EA2op)")
        report = Report("axioms")
        report.meta['axiom_object_bound'] = self.config['axiom_object_bound']
        report.meta['max_mult'] = self.config['max_mult']
        report.meta['padding_bound'] = self.config['padding_bound']
        try:
            self._check_ea1(report)
            self._check_ea2(report)
            self._check_ea2op(report)
            self.logger.info(f"公理检查完成: {len(report.failures())} 处违例")
            return report
        except Exception as e:
            self.logger.error(f"检查公理失败: {str(e)}")
            raise

    # ==================== 投射与内射对象 ====================

    def classify_proj_inj(self) -> Tuple[List[str], List[str], Report]:
        """
        投射对象 P：对每个分布 n-角与每个基态射 c: P → X^{n+1}，dⁿb = c 可解；内射对偶

        :return: (投射对象, 内射对象, 引理检查报告)
        """
        s = self.structure
        n = self.n
        exangles = s.distinguished()
        projectives, injectives = [], []
        for name in self.cat.objects:
            obj = self._one(name)
            if all(self._solvable_post(e.complex.diffs[n], c)
                   for e in exangles for c in self.cat.basis(obj, e.complex.end)):
                projectives.append(name)
            if all(self._solvable_pre(e.complex.diffs[0], c)
                   for e in exangles for c in self.cat.basis(e.complex.start, obj)):
                injectives.append(name)

        report = Report("projectives_injectives")
        report.verdicts['projectives'] = projectives
        report.verdicts['injectives'] = injectives
        for p in projectives:
            for a in self.cat.objects:
                report.record('lemma_projective', f"E({p},{a})", self.ext.dim(p, a) == 0,
                              dim=self.ext.dim(p, a))
        for i in injectives:
            for c in self.cat.objects:
                report.record('lemma_injective', f"E({c},{i})", self.ext.dim(c, i) == 0,
                              dim=self.ext.dim(c, i))
        return projectives, injectives, report

    def _solvable_post(self, d: Morphism, c: Morphism) -> bool:
        """存在 b 使 d∘b = c"""
        matrix = self.cat.post_matrix(d, c.source)
        return linalg.solve(matrix, c.coords, self.cat.prime) is not None

    def _solvable_pre(self, d: Morphism, c: Morphism) -> bool:
        """存在 b 使 b∘d = c"""
        matrix = self.cat.pre_matrix(d, c.target)
        return linalg.solve(matrix, c.coords, self.cat.prime) is not None

    # ==================== 弱同构 ====================

    def prop41_check(self) -> Report:
        """每个实现表 n-角之间的弱同构都是同伦等价（不固定端点）"""
        self.logger.info("开始检查弱同构与同伦等价")
        report = Report("weak_isomorphisms")
        s = self.structure
        last = self.n + 1
        try:
            exangles = s.distinguished()
            for source, target in itertools.product(exangles, exangles):
                delta, rho = source.delta, target.delta
                if delta.a != rho.a or delta.c != rho.c:
                    continue
                for alpha in self.cat.automorphisms(delta.a):
                    pushed = self.ext.covariant(alpha, delta)
                    for gamma in self.cat.automorphisms(delta.c):
                        if not np.array_equal(pushed.coords, self.ext.contravariant(gamma, rho).coords):
                            continue
                        maps = self.complexes.chain_maps(source.complex, target.complex,
                                                         {0: alpha, last: gamma})
                        for index, f in enumerate(itertools.islice(maps, self.config['max_lifts'])):
                            witness = self.complexes.is_homotopy_equivalence(f, fix_ends=False)
                            report.record('prop41', f"{delta.key()}→{rho.key()}|a={self.cat.describe(alpha)}"
                                                    f"|c={self.cat.describe(gamma)}|#{index}",
                                          witness is not None)
            self.logger.info(f"弱同构检查完成: {report.stats['prop41']} 个链映射")
            return report
        except Exception as e:
            self.logger.error(f"检查弱同构失败: {str(e)}")
            raise

    # ==================== 汇总 ====================

    def validate_all(self) -> Report:
        """范畴、双函子、实现、公理、投射/内射与弱同构的完整检查"""
        report = Report(self.structure.name or "structure")
        report.meta['n'] = self.n
        report.meta['prime'] = self.cat.prime
        report.meta['config'] = {k: self.config[k] for k in sorted(self.config)}
        report.merge(self.cat.validate_category())
        bifunctor = self.ext.validate_bifunctor()
        report.merge(bifunctor)
        if not report.ok:
            self.logger.warning("范畴或双函子校验未通过，跳过公理检查")
            return report
        report.merge(self.check_realization())
        report.merge(self.check_axioms())
        projectives, injectives, lemma = self.classify_proj_inj()
        report.merge(lemma)
        report.merge(self.prop41_check())
        return report

    def _setup_logger(self) -> logging.Logger:
        """设置日志记录器"""
        logger = logging.getLogger('AxiomChecker')
        logger.setLevel(logging.INFO)

        if not logger.handlers:
            handler = logging.StreamHandler()
            formatter = logging.Formatter(
                '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
            )
            handler.setFormatter(formatter)
            logger.addHandler(handler)

        return logger


def validate_structure_api(structure: ExangulatedCategory) -> Report:
    """
    对外接口：完整检查一个 n-角结构

    :param structure: ExangulatedCategory
    :return: 合并后的报告
    """
    checker = AxiomChecker(structure)
    return checker.validate_all()

