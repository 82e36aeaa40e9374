#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
A3 型丛范畴中的 Hom 与 E 维数

不可分解对象对应正六边形的对角线，τ⁻¹ 为旋转一格。
Hom(X, Y) ≠ 0 当且仅当 X 与 τ⁻¹Y 相交（此时维数为 1）；
子范畴 add(S3⊕P1⊕S1) 上 E(C, A) = Hom(C, A[2]) = Hom(C, τ²A)。

用法: python tools/cluster_oracle.py
"""

import json
from typing import Dict, Tuple

Diagonal = Tuple[int, int]
VERTICES = 6

# 中心三角形的三条对角线
FIXTURE_DIAGONALS = {'S3': (0, 2), 'P1': (0, 4), 'S1': (2, 4)}


def normalize(d: Diagonal) -> Diagonal:
    i, j = d[0] % VERTICES, d[1] % VERTICES
    return (min(i, j), max(i, j))


def rotate(d: Diagonal, steps: int) -> Diagonal:
    """τ^{-steps}"""
    return normalize((d[0] + steps, d[1] + steps))


def crosses(x: Diagonal, y: Diagonal) -> bool:
    (a, b), (c, d) = normalize(x), normalize(y)
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b) != (a < d < b)


def hom_dim(x: Diagonal, y: Diagonal) -> int:
    return 1 if crosses(x, rotate(y, 1)) else 0


def oracle() -> Dict[str, Dict[str, int]]:
    """:return: {"hom": {"A,B": dim}, "ext": {"C,A": dim}}，只列非零项"""
    hom, ext = {}, {}
    for a, x in FIXTURE_DIAGONALS.items():
        for b, y in FIXTURE_DIAGONALS.items():
            if hom_dim(x, y):
                hom[f"{a},{b}"] = 1
            # E(C, A) 以 (C, A) = (a, b) 为键
            if hom_dim(x, rotate(y, -2)):
                ext[f"{a},{b}"] = 1
    return {'hom': hom, 'ext': ext}


if __name__ == "__main__":
    print(json.dumps(oracle(), sort_keys=True, indent=2))
