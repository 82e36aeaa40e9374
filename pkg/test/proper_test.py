#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
n-proper 类、限制结构与 ξ(H) 测试
"""

import os
import sys

import pytest

# 添加项目根目录到 Python 路径
script_dir = os.path.dirname(os.path.abspath(__file__))
project_dir = os.path.dirname(script_dir)
sys.path.insert(0, project_dir)

from config.algorithm_config import get_exangle_config
from src.algorithms import ProperClassChecker, theorem45_decide_api, xi_from_subcategory_api
from src.algorithms.linalg import Subspace
from src.algorithms.proper import NEITHER
from src.exceptions import PreconditionError
from src.models import DistClass
from src.utils import load_fixture


def load(name, config=None):
    return load_fixture(os.path.join(project_dir, 'fixtures', f'{name}.json'), config=config)


@pytest.fixture(scope="module")
def f1():
    return load("F1")


@pytest.fixture(scope="module")
def f2():
    return load("F2")


@pytest.fixture(scope="module")
def f3():
    return load("F3")


# 候选类全量扫描只取不可分解对象的方块
@pytest.fixture(scope="module")
def f2_sweep():
    return load("F2", get_exangle_config({'axiom_object_bound': 1}))


@pytest.fixture(scope="module")
def f3_sweep():
    return load("F3", get_exangle_config({'axiom_object_bound': 1}))


# ==================== 候选类 ====================

@pytest.mark.parametrize("class_name", ["full", "split"])
def test_builtin_classes_are_proper_in_f1(f1, class_name):
    report = theorem45_decide_api(f1.structure, f1.resolve_class(class_name))
    assert report.verdicts['proper'] is True
    assert report.verdicts['restricted_ok'] is True
    assert report.verdicts['agree'] is True


def test_closed_class_that_is_not_saturated(f2_sweep):
    checker = ProperClassChecker(f2_sweep.structure)
    xi = f2_sweep.resolve_class("bc")
    assert checker.closure_check(xi).ok
    report = checker.theorem45_decide(xi)
    assert report.verdicts['proper'] is False
    assert report.verdicts['agree'] is True
    assert not report.failures('lemma43')


def sweep(fixture):
    """对全部候选类做判定，返回 proper 的候选类"""
    checker = ProperClassChecker(fixture.structure)
    proper = []
    for xi in checker.enumerate_candidates():
        report = checker.theorem45_decide(xi)
        assert report.verdicts['agree'] is True, xi.key()
        assert not report.failures('lemma43'), xi.key()
        if report.verdicts['proper']:
            proper.append(xi)
    return checker, proper


def test_enumerated_candidates_agree_in_f2(f2_sweep):
    checker = ProperClassChecker(f2_sweep.structure)
    candidates = checker.enumerate_candidates()
    assert len(candidates) == 8
    assert candidates[0].is_split()
    _, proper = sweep(f2_sweep)
    assert proper


def test_enumerated_candidates_agree_in_f3(f3_sweep):
    checker, proper = sweep(f3_sweep)
    assert len(checker.enumerate_candidates()) == 64
    assert len(proper) == 8
    assert any(xi.key() == f3_sweep.resolve_class("xiH").key() for xi in proper)
    for xi in proper:
        report = checker.corollary44_check(xi)
        assert report.ok, xi.key()


def test_membership_by_blocks(f2):
    s = f2.structure
    checker = ProperClassChecker(s)
    xi = f2.resolve_class("bc")
    ea = s.extension("S1", "S4", [1])
    eb = s.extension("S1", "P3", [1])
    assert not checker.contains(xi, ea)
    assert checker.contains(xi, eb)
    assert not checker.contains(xi, s.ext.direct_sum(ea, eb))
    assert checker.contains(checker.full_class(), s.ext.direct_sum(ea, eb))


def test_weak_isomorphism_of_identity(f1):
    s = f1.structure
    checker = ProperClassChecker(s)
    exangle = s.exangle("S1,S3:1")
    identity = s.complexes.identity_map(exangle.complex)
    assert checker.is_weak_isomorphism(identity, exangle.delta, exangle.delta)


# ==================== 饱和性 ====================

def test_saturation_forms_agree(f2_sweep, f3_sweep):
    for fixture, name in ((f2_sweep, "bc"), (f2_sweep, "b"), (f3_sweep, "xiH")):
        report = ProperClassChecker(fixture.structure).saturation_check(fixture.resolve_class(name))
        if report.verdicts['closed']:
            assert report.verdicts['deflation_form'] == report.verdicts['inflation_form'], name
        assert not report.failures('lemma43')


@pytest.mark.parametrize("name", ["f2_sweep", "f3_sweep"])
def test_saturation_forms_on_every_candidate(request, name):
    fixture = request.getfixturevalue(name)
    checker = ProperClassChecker(fixture.structure)
    disagreements = []
    for xi in checker.enumerate_candidates():
        closed = checker.closure_check(xi).ok
        report = checker.saturation_check(xi, closed=closed)
        assert report.verdicts['closed'] is closed
        assert not report.failures('lemma43'), xi.key()
        if report.verdicts['deflation_form'] != report.verdicts['inflation_form']:
            # 只有非闭的候选类才可能两种形式不一致
            assert not closed, xi.key()
            disagreements.append(xi.key())
    if name == "f3_sweep":
        assert disagreements


def test_xi_inflations_compose(f1, f3):
    assert ProperClassChecker(f1.structure).corollary44_check(f1.resolve_class("full")).ok
    assert ProperClassChecker(f3.structure).corollary44_check(f3.resolve_class("xiH")).ok


def test_xi_inflation_of_f3(f3):
    s = f3.structure
    checker = ProperClassChecker(s)
    xi = f3.resolve_class("xiH")
    v = s.cat.label_morphism("v")
    u = s.cat.label_morphism("u")
    # P1 → S1 → S3 → P1 实现 ξ(H) 中的 e3
    assert checker.is_xi_inflation(xi, v)
    assert s.is_inflation(u) is not None
    assert not checker.is_xi_inflation(xi, u)


# ==================== 限制结构 ====================

def test_restricted_structure_of_xi_h(f3):
    checker = ProperClassChecker(f3.structure)
    restricted = checker.restrict_structure(f3.resolve_class("xiH"))
    assert restricted.ext.dims == {("P1", "P1"): 1}
    assert [e.key() for e in restricted.distinguished() if not e.delta.is_zero()] == ["P1,P1:1"]


def test_closure_implications_in_f3(f3):
    checker = ProperClassChecker(f3.structure)

    def single(c, a):
        return DistClass(f"{c},{a}", {(c, a): Subspace.full(1, 2)})

    # e2 ∈ E(P1, S3) 的闭包含 e1 与 e3
    report = checker.closure_check(single("P1", "S3"))
    assert not report.ok
    images = {f.instance for f in report.failures()}
    assert any(i.startswith("P1,S3:1|c=u") for i in images)
    assert any(i.startswith("P1,S3:1|a=u") for i in images)
    assert checker.closure_check(single("P1", "P1")).ok


# ==================== ξ(H) ====================

def test_xi_from_subcategory_matches_fixture_class(f3):
    checker = ProperClassChecker(f3.structure)
    xi, report = checker.xi_from_subcategory(f3.resolve_subcategory("H"))
    assert report.ok, report.summary()
    assert xi.key() == f3.resolve_class("xiH").key()
    s = f3.structure
    elements = sum(s.cat.prime ** s.ext.dim(c, a) for c, a in s.ext.nonzero_pairs())
    # 每个元素在每个内部次数上各补一次每个不可分解对象
    assert report.stats['representative_invariance'] == elements * len(s.cat.objects) * (s.n - 1)


def test_prop48_flags_for_f3(f3):
    report = xi_from_subcategory_api(f3.structure, f3.resolve_subcategory("H"), flags=True)
    assert report.ok, report.summary()
    assert report.verdicts['case'] == "0≠H⊊C"
    assert report.verdicts['verdict'] == NEITHER
    assert report.verdicts['approximations']['P1'] == "P1 → S1 → S3 → P1"
    assert report.verdicts['restricted_injectives'] == ["S3", "S1"]
    assert report.verdicts['proper'] is True


def test_prop48_boundary_cases(f3):
    checker = ProperClassChecker(f3.structure)
    empty = checker.prop48_flags([])
    assert empty.verdicts['case'] == "H=0" and empty.ok
    everything = checker.prop48_flags(list(f3.structure.objects))
    assert everything.verdicts['case'] == "H=C" and everything.ok


def test_prop48_requires_no_projectives(f1):
    with pytest.raises(PreconditionError):
        ProperClassChecker(f1.structure).prop48_flags(["S3"])
