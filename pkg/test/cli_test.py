#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
命令行测试：退出码、--json 报告与环境变量
"""

import json
import os
import sys

import pytest

# 添加项目根目录到 Python 路径
script_dir = os.path.dirname(os.path.abspath(__file__))
project_dir = os.path.dirname(script_dir)
sys.path.insert(0, project_dir)

from config.algorithm_config import MAX_MULT_ENV, get_exangle_config
from src.algorithms import AxiomChecker
from src.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, main
from src.utils import load_fixture


def fixture_path(name):
    return os.path.join(project_dir, 'fixtures', f'{name}.json')


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    monkeypatch.delenv(MAX_MULT_ENV, raising=False)


# ==================== 退出码 ====================

@pytest.mark.parametrize("argv,expected", [
    (["validate", fixture_path("N1")], EXIT_OK),
    (["quotient", fixture_path("F1"), "--subcat", "X"], EXIT_OK),
    (["quotient", fixture_path("F1"), "--subcat", "X", "--decide"], EXIT_OK),
    (["quotient", fixture_path("F2"), "--subcat", "X234", "--decide"], EXIT_FAIL),
    (["wkc", fixture_path("F1"), "--subcat", "X", "--exangle", "S1,S3:1"], EXIT_OK),
    (["wkc", fixture_path("F2"), "--subcat", "X234", "--exangle", "S1,S4:1"], EXIT_FAIL),
    (["proper", fixture_path("F1"), "--class", "split"], EXIT_OK),
    (["proper", fixture_path("F2"), "--class", "bc"], EXIT_FAIL),
    (["xi-from", fixture_path("F3"), "--subcat", "H"], EXIT_OK),
    (["xi-from", fixture_path("F3"), "--subcat", "H", "--flags", "-q"], EXIT_OK),
])
def test_exit_codes(argv, expected):
    assert main(argv) == expected


@pytest.mark.parametrize("argv", [
    [],
    ["frobnicate", fixture_path("F1")],
    ["quotient", fixture_path("F1")],
    ["quotient", fixture_path("F1"), "--subcat", "missing"],
    ["quotient", fixture_path("F1"), "--subcat", "X", "-v", "-q"],
    ["wkc", fixture_path("F1"), "--subcat", "X", "--exangle", "S3,S1:1"],
    ["proper", fixture_path("F1"), "--class", "nope"],
    ["xi-from", fixture_path("F1"), "--subcat", "X", "--flags"],
    ["validate", os.path.join(project_dir, "fixtures", "absent.json")],
])
def test_input_errors(argv):
    assert main(argv) == EXIT_INPUT


def test_malformed_fixture(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"field": 2, "n": 1, "objects": ["A"], "hom": {}}', encoding='utf-8')
    assert main(["validate", str(path)]) == EXIT_INPUT


# ==================== JSON 报告 ====================

def test_json_report(tmp_path):
    out = tmp_path / "reports" / "f2.json"
    code = main(["quotient", fixture_path("F2"), "--subcat", "X234", "--decide", "--json", str(out)])
    assert code == EXIT_FAIL
    data = json.loads(out.read_text(encoding='utf-8'))
    assert data['verdicts']['theorem31'] == "NO"
    assert data['meta']['fixture'] == "F2"
    assert data['meta']['bounds']['max_mult'] == 2
    assert any(w['start'] == "S4" and w['end'] == "S1" for w in data['verdicts']['witnesses'])


def test_json_report_is_deterministic(tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    argv = ["quotient", fixture_path("F1"), "--subcat", "X", "--decide"]
    assert main(argv + ["--json", str(first)]) == EXIT_OK
    assert main(argv + ["--json", str(second)]) == EXIT_OK
    assert first.read_bytes() == second.read_bytes()


def test_validate_counts_each_check_once(tmp_path):
    out = tmp_path / "n1.json"
    assert main(["validate", fixture_path("N1"), "--json", str(out)]) == EXIT_OK
    data = json.loads(out.read_text(encoding='utf-8'))
    direct = AxiomChecker(load_fixture(fixture_path("N1")).structure).validate_all()
    assert data['stats'] == {k: direct.stats[k] for k in sorted(direct.stats)}
    assert len(data['findings']) == len(direct.findings)


# ==================== 环境变量 ====================

def test_max_mult_from_environment(monkeypatch, tmp_path):
    monkeypatch.setenv(MAX_MULT_ENV, "3")
    assert get_exangle_config()['max_mult'] == 3
    out = tmp_path / "r.json"
    assert main(["wkc", fixture_path("F1"), "--subcat", "X", "--exangle", "S1,S3:1", "--json", str(out)]) == EXIT_OK
    assert json.loads(out.read_text(encoding='utf-8'))['meta']['bounds']['max_mult'] == 3


@pytest.mark.parametrize("value", ["0", "-2", "two"])
def test_invalid_max_mult(monkeypatch, value):
    monkeypatch.setenv(MAX_MULT_ENV, value)
    with pytest.raises(ValueError):
        get_exangle_config()
    assert main(["validate", fixture_path("N1")]) == EXIT_INPUT


def test_bounds_follow_max_mult(monkeypatch):
    config = get_exangle_config()
    assert config['axiom_object_bound'] == 2
    assert config['padding_bound'] == 2
    assert get_exangle_config({'axiom_object_bound': 1})['padding_bound'] == 1
    assert get_exangle_config({'padding_bound': 3})['padding_bound'] == 3
    monkeypatch.setenv(MAX_MULT_ENV, "3")
    config = get_exangle_config()
    assert config['axiom_object_bound'] == 3
    assert config['padding_bound'] == 3
