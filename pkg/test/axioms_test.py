#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
公理检查测试：实现公理、(EA1)(EA2)(EA2op)、投射/内射对象与弱同构
"""

import os
import sys

import pytest

# 添加项目根目录到 Python 路径
script_dir = os.path.dirname(os.path.abspath(__file__))
project_dir = os.path.dirname(script_dir)
sys.path.insert(0, project_dir)

from config.algorithm_config import get_exangle_config
from src.algorithms import AxiomChecker, validate_structure_api
from src.models import ChainMap, ObjectExpr, Report
from src.utils import load_fixture, parse

one = ObjectExpr.of

FIXTURES = ("N1", "F1", "F2", "F3")


def load(name, config=None):
    return load_fixture(os.path.join(project_dir, 'fixtures', f'{name}.json'), config=config)


@pytest.fixture(scope="module")
def structures():
    return {name: load(name).structure for name in FIXTURES}


@pytest.mark.parametrize("name", FIXTURES)
def test_fixture_passes_full_suite(structures, name):
    report = validate_structure_api(structures[name])
    assert report.ok, report.summary()
    for check in ('R1', 'R2', 'R2_exangle', 'EA2', 'EA2op', 'cone_d_squared', 'prop41'):
        assert report.stats[check] > 0, check


@pytest.mark.parametrize("name,projectives,injectives", [
    ("N1", ["S2", "P1"], ["P1", "S1"]),
    ("F1", ["S3", "P2", "P1"], ["P2", "P1", "S1"]),
    ("F3", [], []),
])
def test_projectives_and_injectives(structures, name, projectives, injectives):
    found_p, found_i, lemma = AxiomChecker(structures[name]).classify_proj_inj()
    assert found_p == projectives
    assert found_i == injectives
    assert lemma.ok


def test_f2_projective_injective_objects(structures):
    p, i, _ = AxiomChecker(structures["F2"]).classify_proj_inj()
    assert sorted(set(p) & set(i)) == ["P1", "P2"]


def test_broken_realization_is_reported():
    doc = load("F1").document
    # 把 S3 → P2 → P1 → S1 的最后一个微分换成零
    doc["realizations"][0]["diffs"][2] = {}
    report = AxiomChecker(parse(doc).structure).check_realization()
    assert not report.ok
    assert [f.instance for f in report.failures('R1')] == ['S1,S3:1']


def test_weak_isomorphisms_are_homotopy_equivalences(structures):
    report = AxiomChecker(structures["F3"]).prop41_check()
    assert report.ok
    assert report.stats['prop41'] > 0


# ==================== 对象重数边界 ====================

def test_deflations_compose_with_doubled_objects(structures):
    s = structures["F1"]
    checker = AxiomChecker(s)
    assert checker.config['axiom_object_bound'] == 2
    assert checker.config['padding_bound'] >= 2
    assert one("P1", "P1") in s.cat.objects_up_to(checker.config['axiom_object_bound'])
    # P1⊕P1 → P1 的 [0, 1] 后接 P1 → 0
    fold = s.cat.assemble([one("P1")], [one("P1"), one("P1")], {(0, 1): s.cat.identity(one("P1"))})
    assert s.is_deflation(fold) is not None
    composite = s.cat.compose(s.cat.zero(one("P1"), ObjectExpr.zero()), fold)
    assert s.is_deflation(composite) is not None

    report = checker.check_axioms()
    assert report.ok, report.summary()
    single = AxiomChecker(load("F1", get_exangle_config({'axiom_object_bound': 1})).structure).check_axioms()
    assert report.stats['EA1_deflation'] > single.stats['EA1_deflation']


# ==================== 好提升的锥 ====================

def test_cone_with_nonzero_square_is_recorded(structures):
    s = structures["F1"]
    exangle = s.exangle("S1,S3:1")
    x = exangle.complex
    # 首项为恒等、但 f¹ = 0 的非链映射，其映射锥的 d² ≠ 0
    components = list(s.complexes.identity_map(x).components)
    components[1] = s.cat.zero(x.terms[1], x.terms[1])
    report = Report("axioms")
    ok, tried = AxiomChecker(s)._good_lift(report, "S1,S3:1|c=planted", iter([ChainMap(x, x, components)]),
                                           s.complexes.mapping_cone, lambda f: exangle.delta)
    assert not ok
    assert tried == 1
    assert report.stats['cone_d_squared'] == 1
    assert [f.instance for f in report.failures('cone_d_squared')] == ["S1,S3:1|c=planted|#1"]


# ==================== (R2) ====================

@pytest.mark.parametrize("name", FIXTURES)
def test_zero_extensions_realize_split_shapes(structures, name):
    s = structures[name]
    report = AxiomChecker(s).check_realization()
    assert report.ok, report.summary()
    objects = s.cat.objects
    # 不可分解对之外，每个对象各有 E(0, A) 与 E(C, 0) 两个零元素
    assert report.stats['R2'] == len(objects) ** 2 + 2 * len(objects)
    assert report.stats['R2_exangle'] == 2 * len(objects)
