#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
扩张双函子、n-角判定与实现测试
"""

import os
import sys

import numpy as np
import pytest

# 添加项目根目录到 Python 路径
script_dir = os.path.dirname(os.path.abspath(__file__))
project_dir = os.path.dirname(script_dir)
sys.path.insert(0, project_dir)

from src.models import ObjectExpr
from src.utils import load_fixture

one = ObjectExpr.of
FIXTURES = ("N1", "F1", "F2", "F3")


def load(name):
    return load_fixture(os.path.join(project_dir, 'fixtures', f'{name}.json')).structure


@pytest.fixture(scope="module")
def structures():
    return {name: load(name) for name in FIXTURES}


@pytest.mark.parametrize("name", FIXTURES)
def test_bifunctor(structures, name):
    report = structures[name].ext.validate_bifunctor()
    assert report.ok, report.summary()


@pytest.mark.parametrize("name", FIXTURES)
def test_every_table_entry_is_an_exangle(structures, name):
    s = structures[name]
    for exangle in s.distinguished():
        report = s.is_n_exangle(exangle.complex, exangle.delta)
        assert report.ok, report.summary()


def test_wrong_extension_is_rejected(structures):
    s = structures["F1"]
    x = s.exangle("S1,S3:1").complex
    zero = s.extension("S1", "S3", [0])
    assert not s.is_n_exangle(x, zero).ok


def test_covariant_action_in_f2(structures):
    s = structures["F2"]
    s43 = s.cat.label_morphism("s43")
    ea = s.extension("S1", "S4", [1])
    pushed = s.ext.covariant(s43, ea)
    assert pushed.a == one("P3") and pushed.coords.tolist() == [1]
    t = s.cat.label_morphism("t")
    pulled = s.ext.contravariant(t, ea)
    assert pulled.c == one("I2") and pulled.coords.tolist() == [1]
    # P1 → I2 把 E(I2, S4) 拉回到 E(P1, S4) = 0
    q1 = s.cat.label_morphism("q1")
    assert s.ext.contravariant(q1, s.extension("I2", "S4", [1])).coords.shape == (0,)


def test_sum_of_exangles_is_an_exangle(structures):
    s = structures["F2"]
    ea = s.extension("S1", "S4", [1])
    eb = s.extension("S1", "P3", [1])
    total = s.ext.direct_sum(ea, eb)
    assert total.a == one("S4", "P3") and total.c == one("S1", "S1")
    x = s.realize(total)
    assert x.start == total.a and x.end == total.c
    assert s.is_n_exangle(x, total).ok


def test_realize_transports_along_automorphisms(structures):
    s = structures["F1"]
    e = s.extension("S1", "S3", [1])
    zero = s.ext.zero(one("S3"), one("S1", "S1"))
    mixed = s.ext.from_blocks(one("S3"), one("S1", "S1"), {(0, 0): np.array([1]), (1, 0): np.array([1])})
    x = s.realize(mixed)
    assert s.is_n_exangle(x, mixed).ok
    assert s.is_n_exangle(s.realize(zero), zero).ok
    assert s.realize(e) is s.exangle("S1,S3:1").complex


def test_realize_split_for_zero(structures):
    s = structures["N1"]
    zero = s.ext.zero(one("S2"), one("S1"))
    x = s.realize(zero)
    assert x.terms[1] == one("S2", "S1")
    assert s.is_n_exangle(x, zero).ok


def test_inflations_and_deflations(structures):
    s = structures["F1"]
    a = s.cat.label_morphism("a")
    c = s.cat.label_morphism("c")
    b = s.cat.label_morphism("b")
    assert s.is_inflation(a) is not None
    assert s.is_deflation(c) is not None
    assert s.is_inflation(b) is None


def test_sharp_maps(structures):
    s = structures["F1"]
    e = s.extension("S1", "S3", [1])
    pull, push = s.sharp_maps(e, one("S1"))
    # id_{S1} ↦ δ
    assert pull.tolist() == [[1]]
    assert push.shape == (0, 0)
    pull, push = s.sharp_maps(s.extension("S1", "S3", [0]), one("S1"))
    assert not np.any(pull)
    pull, push = s.sharp_maps(e, ObjectExpr.zero())
    assert pull.shape == (0, 0) and push.shape[1] == 0


@pytest.mark.parametrize("name", FIXTURES)
def test_sum_through_diagonal_and_codiagonal(structures, name):
    s = structures[name]
    cat = s.cat
    for c, a in s.ext.nonzero_pairs():
        id_a = cat.identity(one(a)).coords
        id_c = cat.identity(one(c)).coords
        codiagonal = cat.from_blocks(one(a, a), one(a), {(0, 0): id_a, (0, 1): id_a})
        diagonal = cat.from_blocks(one(c), one(c, c), {(0, 0): id_c, (1, 0): id_c})
        for delta in s.ext.elements(one(a), one(c), 64):
            for rho in s.ext.elements(one(a), one(c), 64):
                folded = s.ext.transport(codiagonal, diagonal, s.ext.direct_sum(delta, rho))
                assert folded.a == one(a) and folded.c == one(c)
                assert folded.coords.tolist() == np.mod(delta.coords + rho.coords, s.prime).tolist()
