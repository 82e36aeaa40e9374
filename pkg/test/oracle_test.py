#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
夹具数据与独立计算的 Hom/Ext 维数对照
"""

import os
import sys

import pytest

# 添加项目根目录到 Python 路径
script_dir = os.path.dirname(os.path.abspath(__file__))
project_dir = os.path.dirname(script_dir)
sys.path.insert(0, project_dir)

from src.utils import load_fixture
from tools import cluster_oracle, nakayama_oracle


def fixture_dims(name):
    s = load_fixture(os.path.join(project_dir, 'fixtures', f'{name}.json')).structure
    pres = s.cat.presentation
    hom, ext = {}, {}
    for a in s.objects:
        for b in s.objects:
            if pres.hom_dim(a, b):
                hom[f"{a},{b}"] = pres.hom_dim(a, b)
            if s.ext.dim(a, b):
                ext[f"{a},{b}"] = s.ext.dim(a, b)
    return {'hom': hom, 'ext': ext}


@pytest.mark.parametrize("name", ["F1", "F2"])
def test_nakayama_fixtures(name):
    assert fixture_dims(name) == nakayama_oracle.oracle(name)


def test_cluster_fixture():
    assert fixture_dims("F3") == cluster_oracle.oracle()


def test_nakayama_resolution():
    # 1 在 A4/(长度 3) 上的极小投射分解: P1 ← P2 ← P4
    assert nakayama_oracle.resolution((1, 1), 4, 3, 2) == [1, 2, 4]
    assert nakayama_oracle.ext_dim((1, 1), (4, 4), 2, 4, 3) == 1


def test_cluster_suspension_cycles():
    diagonals = cluster_oracle.FIXTURE_DIAGONALS
    assert cluster_oracle.rotate(diagonals['S3'], -2) == diagonals['P1']
    assert cluster_oracle.rotate(diagonals['P1'], -2) == diagonals['S1']
    assert cluster_oracle.rotate(diagonals['S1'], -2) == diagonals['S3']
