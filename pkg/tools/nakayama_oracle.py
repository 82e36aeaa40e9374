#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
线性 Nakayama 代数的 Hom 与 Ext 维数

箭图 1 → 2 → … → m，长度为 L 的路径为零。不可分解模是区间模 M[a, b]
（顶 a、底 b、a ≤ b、b − a < L），投射模 P_i = M[i, min(i + L − 1, m)]。
Ext 由极小投射分解的 Hom 复形计算，与夹具中的数据互相独立。

用法: python tools/nakayama_oracle.py F1
"""

import json
import sys
from typing import Dict, List, Tuple

Interval = Tuple[int, int]

# 夹具中对象名 -> 区间模
FIXTURE_MODULES = {
    'F1': {'m': 3, 'L': 2, 'n': 2,
           'modules': {'S3': (3, 3), 'P2': (2, 3), 'P1': (1, 2), 'S1': (1, 1)}},
    'F2': {'m': 4, 'L': 3, 'n': 2,
           'modules': {'S4': (4, 4), 'P3': (3, 4), 'P2': (2, 4), 'P1': (1, 3), 'I2': (1, 2), 'S1': (1, 1)}},
}


def projective_end(i: int, m: int, length: int) -> int:
    return min(i + length - 1, m)


def hom_dim(x: Interval, y: Interval) -> int:
    """单列模之间 Hom 至多一维：像为 M[a, d]，要求 c ≤ a ≤ d ≤ b"""
    a, b = x
    c, d = y
    return 1 if c <= a <= d <= b else 0


def resolution(x: Interval, m: int, length: int, steps: int) -> List[int]:
    """极小投射分解 P^0 ← P^1 ← …，返回各项 P_s 的下标 s"""
    tops = []
    start, end = x
    for _ in range(steps + 2):
        tops.append(start)
        top_end = projective_end(start, m, length)
        if end >= top_end:
            break
        start, end = end + 1, top_end
    return tops


def ext_dim(x: Interval, y: Interval, k: int, m: int, length: int) -> int:
    """
    Ext^k(x, y)

    Hom(P_s, y) 的维数为 [c ≤ s ≤ d]；相邻两项都非零时诱导映射是同构。
    """
    tops = resolution(x, m, length, k)
    c, d = y
    h = [1 if c <= s <= d else 0 for s in tops] + [0]
    if k >= len(tops):
        return 0
    outgoing = h[k] * h[k + 1]
    incoming = h[k - 1] * h[k] if k >= 1 else 0
    return h[k] - outgoing - incoming


def oracle(name: str) -> Dict[str, Dict[str, int]]:
    """
    :param name: 夹具名
    :return: {"hom": {"A,B": dim}, "ext": {"C,A": dim}}，只列非零项
    """
    params = FIXTURE_MODULES[name]
    modules = params['modules']
    hom, ext = {}, {}
    for a, x in modules.items():
        for b, y in modules.items():
            if hom_dim(x, y):
                hom[f"{a},{b}"] = hom_dim(x, y)
            e = ext_dim(x, y, params['n'], params['m'], params['L'])
            if e:
                ext[f"{a},{b}"] = e
    return {'hom': hom, 'ext': ext}


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else "F1"
    print(json.dumps(oracle(target), sort_keys=True, indent=2))
