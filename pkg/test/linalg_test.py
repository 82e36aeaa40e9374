#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
F_p 线性代数测试
"""

import os
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

# 添加项目根目录到 Python 路径
script_dir = os.path.dirname(os.path.abspath(__file__))
project_dir = os.path.dirname(script_dir)
sys.path.insert(0, project_dir)

from src.algorithms import linalg
from src.algorithms.linalg import Subspace
from src.exceptions import EnumerationLimitError


@st.composite
def matrices(draw, max_rows=4, max_cols=4):
    p = draw(st.sampled_from([2, 3, 5]))
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    entries = draw(st.lists(st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols),
                            min_size=rows, max_size=rows))
    return p, np.array(entries, dtype=np.int64)


@st.composite
def subspace_pairs(draw):
    p = draw(st.sampled_from([2, 3]))
    ambient = draw(st.integers(1, 4))
    vector = st.lists(st.integers(0, p - 1), min_size=ambient, max_size=ambient)
    u = draw(st.lists(vector, max_size=3))
    w = draw(st.lists(vector, max_size=3))
    return p, ambient, Subspace.span(u, ambient, p), Subspace.span(w, ambient, p)


# ==================== 秩与核 ====================

@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(data):
    p, m = data
    kernel = linalg.kernel_basis(m, p)
    assert linalg.rank(m, p) + kernel.dim == m.shape[1]
    for v in kernel.basis:
        assert not np.any(np.mod(m @ v, p))


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_solve_consistent_system(data, draw):
    p, m = data
    x = np.array(draw.draw(st.lists(st.integers(0, p - 1), min_size=m.shape[1], max_size=m.shape[1])),
                 dtype=np.int64)
    b = np.mod(m @ x, p)
    result = linalg.solve(m, b, p)
    assert result is not None
    particular, kernel = result
    assert np.array_equal(np.mod(m @ particular, p), b)
    assert kernel.contains(np.mod(x - particular, p))


def test_solve_inconsistent_returns_none():
    m = np.array([[1, 0], [1, 0]], dtype=np.int64)
    assert linalg.solve(m, [0, 1], 2) is None


def test_rref_is_reduced():
    reduced, pivots = linalg.rref(np.array([[2, 4, 1], [1, 2, 0]]), 5)
    assert pivots == [0, 2]
    assert reduced[0].tolist() == [1, 2, 0]
    assert reduced[1].tolist() == [0, 0, 1]


def test_inverse_mod_p():
    m = np.array([[1, 1], [0, 1]], dtype=np.int64)
    inv = linalg.inverse(m, 3)
    assert np.array_equal(np.mod(m @ inv, 3), np.eye(2, dtype=np.int64))
    assert linalg.inverse(np.array([[1, 1], [1, 1]]), 2) is None


def test_exact_at():
    # F_2 --[1 0]^T--> F_2^2 --[0 1]--> F_2
    incoming = np.array([[1], [0]])
    outgoing = np.array([[0, 1]])
    assert linalg.exact_at(incoming, outgoing, 2, 2)
    assert not linalg.exact_at(np.zeros((2, 1), dtype=np.int64), outgoing, 2, 2)


# ==================== 子空间 ====================

@settings(max_examples=60, deadline=None)
@given(subspace_pairs())
def test_sum_intersection_dimension(data):
    p, ambient, u, w = data
    total = u.sum(w)
    meet = u.intersection(w)
    assert total.dim + meet.dim == u.dim + w.dim
    assert u.contains_subspace(meet) and w.contains_subspace(meet)
    assert total.contains_subspace(u) and total.contains_subspace(w)


@settings(max_examples=60, deadline=None)
@given(subspace_pairs())
def test_projection_kernel_is_subspace(data):
    p, ambient, u, _ = data
    q = u.projection()
    assert q.shape == (ambient - u.dim, ambient)
    for v in u.basis:
        assert not np.any(np.mod(q @ v, p))
    assert linalg.kernel_basis(q, p).equals(u) if q.size else u.dim == ambient


def test_span_is_canonical():
    a = Subspace.span([[1, 1, 0], [0, 1, 1]], 3, 2)
    b = Subspace.span([[1, 0, 1], [1, 1, 0]], 3, 2)
    assert a.equals(b)
    assert a.to_list() == b.to_list()


def test_coordinates_in_reduced_basis():
    u = Subspace.span([[1, 0, 2], [0, 1, 1]], 3, 3)
    v = np.mod(2 * u.basis[0] + u.basis[1], 3)
    assert u.coordinates(v).tolist() == [2, 1]


def test_all_subspaces_counts():
    # F_2^2: 零、三条直线、全空间；F_3^2: 零、四条直线、全空间
    assert len(linalg.all_subspaces(2, 2, 4096)) == 5
    assert len(linalg.all_subspaces(2, 3, 4096)) == 6


def test_enumeration_limit():
    with pytest.raises(EnumerationLimitError):
        list(linalg.all_vectors(13, 2, 4096))
    kernel = Subspace.full(3, 2)
    points = list(linalg.affine_points(np.array([1, 0, 0]), kernel, 8))
    assert len(points) == 8
    assert points[0].tolist() == [1, 0, 0]
