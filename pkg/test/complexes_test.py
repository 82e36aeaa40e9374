#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
复形、链映射、同伦与映射锥测试
"""

import os
import sys

import pytest
from hypothesis import given, settings, strategies as st

# 添加项目根目录到 Python 路径
script_dir = os.path.dirname(os.path.abspath(__file__))
project_dir = os.path.dirname(script_dir)
sys.path.insert(0, project_dir)

from src.exceptions import PreconditionError
from src.models import ChainMap, ObjectExpr
from src.utils import load_fixture

one = ObjectExpr.of


@pytest.fixture(scope="module")
def f1():
    return load_fixture(os.path.join(project_dir, 'fixtures', 'F1.json')).structure


@pytest.fixture(scope="module")
def n1():
    return load_fixture(os.path.join(project_dir, 'fixtures', 'N1.json')).structure


def nontrivial(structure):
    return next(e.complex for e in structure.distinguished() if not e.delta.is_zero())


def test_table_entries_are_complexes(f1):
    for exangle in f1.distinguished():
        assert f1.complexes.validate_complex(exangle.complex).ok


def test_split_complex_shape(f1, n1):
    x = f1.complexes.split_complex(one("S3"), one("S1"))
    assert [t.key() for t in x.terms] == ["S3", "S3", "S1", "S1"]
    assert f1.complexes.validate_complex(x).ok
    y = n1.complexes.split_complex(one("S2"), one("S1"))
    assert y.terms[1] == one("S2", "S1")
    assert n1.complexes.validate_complex(y).ok


def test_chain_map_check(f1):
    x = nontrivial(f1)
    complexes = f1.complexes
    assert complexes.is_chain_map(complexes.identity_map(x))
    broken = list(complexes.identity_map(x).components)
    broken[1] = f1.cat.zero(x.terms[1], x.terms[1])
    assert not complexes.is_chain_map(ChainMap(x, x, tuple(broken)))


def test_contractible_identity_is_null_homotopic(f1):
    complexes = f1.complexes
    patch = complexes.contractible(one("P2"), 1)
    identity = complexes.identity_map(patch)
    h = complexes.null_homotopy(identity)
    assert h is not None
    assert complexes.check_homotopy(identity, complexes.zero_map(patch, patch), h)


def test_nonsplit_identity_is_not_null_homotopic(f1):
    complexes = f1.complexes
    x = nontrivial(f1)
    assert complexes.null_homotopy(complexes.identity_map(x)) is None


def test_padding_is_homotopy_equivalent(f1):
    complexes = f1.complexes
    x = nontrivial(f1)
    padded = complexes.pad(x, one("P2"), 1)
    found = complexes.homotopy_equivalent(x, padded, fix_ends=True)
    assert found is not None
    f, g, h, k = found
    assert complexes.check_homotopy(complexes.compose_maps(g, f), complexes.identity_map(x), h)
    assert complexes.check_homotopy(complexes.compose_maps(f, g), complexes.identity_map(padded), k)


def test_mapping_cone_and_cocone(f1):
    complexes = f1.complexes
    x = nontrivial(f1)
    identity = complexes.identity_map(x)
    cone = complexes.mapping_cone(identity)
    cocone = complexes.mapping_cocone(identity)
    assert len(cone.terms) == f1.n + 2
    assert cone.terms[1] == x.terms[2].direct_sum(x.terms[1])
    assert complexes.validate_complex(cone).ok
    assert complexes.validate_complex(cocone).ok


def test_mapping_cone_requires_identity_start(f1):
    complexes = f1.complexes
    x = nontrivial(f1)
    with pytest.raises(PreconditionError):
        complexes.mapping_cone(complexes.zero_map(x, x))


# ==================== 非恒等链映射的锥 ====================

def is_identity(complexes, f):
    return f.source is f.target and all(
        c.same_value(i) for c, i in zip(f.components, complexes.identity_map(f.source).components))


@pytest.fixture(scope="module")
def chain_maps_of_f1(f1):
    """F1 的非平凡 n-角到自身及其补丁的全部链映射，分别固定首项或末项为恒等"""
    complexes, n = f1.complexes, f1.n
    cone_maps, cocone_maps = [], []
    for exangle in f1.distinguished():
        if exangle.delta.is_zero():
            continue
        x = exangle.complex
        for y in (x, complexes.pad(x, one("P2"), 1), complexes.pad(x, one("P1"), 1)):
            cone_maps.extend(complexes.chain_maps(x, y, {0: f1.cat.identity(x.start)}))
            cocone_maps.extend(complexes.chain_maps(x, y, {n + 1: f1.cat.identity(x.end)}))
    return cone_maps, cocone_maps


def test_cones_of_all_lifts_are_complexes(f1, chain_maps_of_f1):
    complexes = f1.complexes
    cone_maps, cocone_maps = chain_maps_of_f1
    assert any(not is_identity(complexes, f) for f in cone_maps)
    assert any(not is_identity(complexes, h) for h in cocone_maps)
    for f in cone_maps:
        assert complexes.validate_complex(complexes.mapping_cone(f)).ok, f.target.describe()
    for h in cocone_maps:
        assert complexes.validate_complex(complexes.mapping_cocone(h)).ok, h.target.describe()


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_sampled_cone_has_shape_of_target(f1, chain_maps_of_f1, data):
    complexes = f1.complexes
    f = data.draw(st.sampled_from(chain_maps_of_f1[0]))
    assert complexes.is_chain_map(f)
    cone = complexes.mapping_cone(f)
    assert cone.start == f.source.terms[1]
    assert cone.end == f.target.end
    assert cone.terms[1] == f.source.terms[2].direct_sum(f.target.terms[1])
    assert complexes.validate_complex(cone).ok


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_sampled_cocone_has_shape_of_source(f1, chain_maps_of_f1, data):
    complexes = f1.complexes
    h = data.draw(st.sampled_from(chain_maps_of_f1[1]))
    assert complexes.is_chain_map(h)
    cocone = complexes.mapping_cocone(h)
    assert cocone.start == h.source.start
    assert cocone.end == h.target.terms[f1.n]
    assert complexes.validate_complex(cocone).ok


def test_cone_of_non_chain_map_fails_d_squared(f1):
    complexes = f1.complexes
    x = nontrivial(f1)
    broken = list(complexes.identity_map(x).components)
    broken[1] = f1.cat.zero(x.terms[1], x.terms[1])
    cone = complexes.mapping_cone(ChainMap(x, x, broken))
    assert not complexes.validate_complex(cone).ok
