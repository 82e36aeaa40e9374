#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
有限范畴表示测试
"""

import os
import sys

import numpy as np
import pytest

# 添加项目根目录到 Python 路径
script_dir = os.path.dirname(os.path.abspath(__file__))
project_dir = os.path.dirname(script_dir)
sys.path.insert(0, project_dir)

from src.exceptions import ShapeMismatchError
from src.models import ObjectExpr
from src.utils import load_fixture

one = ObjectExpr.of


@pytest.fixture(scope="module")
def f1():
    return load_fixture(os.path.join(project_dir, 'fixtures', 'F1.json'))


@pytest.fixture(scope="module")
def f2():
    return load_fixture(os.path.join(project_dir, 'fixtures', 'F2.json'))


def test_presentations_are_categories(f1, f2):
    assert f1.structure.cat.validate_category().ok
    assert f2.structure.cat.validate_category().ok


def test_relation_in_f1(f1):
    cat = f1.structure.cat
    a, b, c = (cat.label_morphism(x) for x in ("a", "b", "c"))
    assert cat.compose(b, a).is_zero()
    assert cat.compose(c, b).is_zero()
    assert cat.compose(cat.identity(one("P1")), b).same_value(b)


def test_path_composition_in_f2(f2):
    cat = f2.structure.cat
    composite = cat.compose(cat.label_morphism("p21"), cat.label_morphism("p32"))
    assert np.array_equal(composite.coords, cat.label_morphism("p31").coords)
    # αβγ = 0
    assert cat.compose_all(cat.label_morphism("r1"), cat.label_morphism("p21"),
                           cat.label_morphism("p32")).is_zero()


def test_compose_rejects_layout_mismatch(f1):
    cat = f1.structure.cat
    with pytest.raises(ShapeMismatchError):
        cat.compose(cat.label_morphism("a"), cat.label_morphism("b"))


def test_hom_dim_is_additive(f1):
    cat = f1.structure.cat
    assert cat.hom_dim(one("S3", "P1"), one("P2")) == 1
    assert cat.hom_dim(one("S3", "P2"), one("P2", "P1")) == 3
    assert cat.hom_dim(ObjectExpr.zero(), one("S1")) == 0


def test_isomorphisms(f1):
    cat = f1.structure.cat
    identity = cat.identity(one("S3", "P2"))
    inverse = cat.is_isomorphism(identity)
    assert inverse is not None and inverse.same_value(identity)
    assert cat.is_isomorphism(cat.label_morphism("a")) is None
    # GL_2(F_2)
    assert len(cat.automorphisms(one("S3", "S3"))) == 6
    assert cat.automorphisms(one("S3", "S3"))[0].same_value(cat.identity(one("S3", "S3")))


def test_permutation_and_block_matrices(f1):
    cat = f1.structure.cat
    swap = cat.permutation(one("S3", "P2"), one("P2", "S3"))
    back = cat.permutation(one("P2", "S3"), one("S3", "P2"))
    assert cat.compose(back, swap).same_value(cat.identity(one("S3", "P2")))
    a = cat.label_morphism("a")
    column = cat.assemble([one("P2"), one("S3")], [one("S3")], {(0, 0): a, (1, 0): cat.identity(one("S3"))})
    assert column.target == one("P2", "S3")
    assert np.array_equal(cat.block(column, 0, 0), a.coords)


def test_ideal_subspace(f1):
    cat = f1.structure.cat
    x = ["P2", "P1"]
    assert cat.ideal_subspace(x, one("P2"), one("P2")).dim == 1
    assert cat.ideal_subspace(x, one("S3"), one("S3")).dim == 0
    assert cat.ideal_subspace(x, one("S1"), one("S1")).dim == 0


def test_object_expressions_compare_by_summands(f1):
    a = ObjectExpr(["P1", "S1"])
    assert a == one("P1", "S1")
    assert hash(a) == hash(one("P1", "S1"))
    assert {one("P1", "S1"): 1}[a] == 1
    assert a != one("S1", "P1") and a.same_as(one("S1", "P1"))
    assert ObjectExpr().is_zero and one("P1").is_indecomposable
    identity = f1.structure.cat.identity(a)
    assert identity.to_dict()['source'] == ["P1", "S1"]
    assert f1.structure.cat.presentation.to_dict()['objects'] == list(f1.structure.cat.objects)
