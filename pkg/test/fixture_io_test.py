#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
夹具读写测试
"""

import os
import sys

import pytest

# 添加项目根目录到 Python 路径
script_dir = os.path.dirname(os.path.abspath(__file__))
project_dir = os.path.dirname(script_dir)
sys.path.insert(0, project_dir)

from config.algorithm_config import get_exangle_config
from src.exceptions import EnumerationLimitError, FixtureFormatError
from src.utils import load_fixture, parse, pointer, serialize

FIXTURES = ("N1", "F1", "F2", "F3")


def fixture_path(name):
    return os.path.join(project_dir, 'fixtures', f'{name}.json')


def document(name):
    return load_fixture(fixture_path(name)).document


@pytest.mark.parametrize("name", FIXTURES)
def test_canonical_text_is_stable(name):
    fixture = load_fixture(fixture_path(name))
    text = serialize(fixture)
    again = parse(text)
    assert again.document == fixture.document
    assert serialize(again) == text
    assert text.endswith("\n") and "\r" not in text


def test_parse_accepts_bytes_and_dicts():
    with open(fixture_path("N1"), 'rb') as f:
        raw = f.read()
    from_bytes = parse(raw)
    from_dict = parse(from_bytes.document)
    assert from_bytes.structure.objects == ("S2", "P1", "S1")
    assert from_dict.subcategories == {"P1": ("P1",)}


def test_empty_category():
    fixture = parse({"field": 2, "n": 1, "objects": []})
    assert fixture.structure.objects == ()
    assert fixture.structure.cat.validate_category().ok
    assert fixture.structure.ext.validate_bifunctor().ok


def test_pointer_escaping():
    assert pointer("classes", "a/b", "c~d") == "/classes/a~1b/c~0d"


# ==================== 错误路径 ====================

def broken(name, mutate):
    doc = document(name)
    mutate(doc)
    return doc


@pytest.mark.parametrize("name,mutate,path", [
    ("F1", lambda d: d.pop("field"), "/"),
    ("F1", lambda d: d.update(field=4), "/field"),
    ("F1", lambda d: d.update(n=0), "/n"),
    ("F1", lambda d: d.update(extra=1), "/extra"),
    ("F1", lambda d: d.update(objects=["S3", "S3"]), "/objects"),
    ("F1", lambda d: d["compose"][0].update(g="z"), "/compose/0/g"),
    ("F1", lambda d: d.update(realizations=[]), "/realizations"),
    ("F1", lambda d: d["identities"].pop("P2"), "/identities/P2"),
    ("F1", lambda d: d["subcategories"].update(bad=["Q"]), "/subcategories/bad/0"),
    ("F1", lambda d: d["realizations"][0].update(terms=[["S3"], ["P2"], ["S1"]]), "/realizations/0/terms"),
    ("F2", lambda d: d["ext_action_cov"][0].update(matrix=[[1, 0]]), "/ext_action_cov/0/matrix/0"),
    ("F2", lambda d: d["classes"].update(full={}), "/classes/full"),
])
def test_format_errors_carry_pointer(name, mutate, path):
    with pytest.raises(FixtureFormatError) as info:
        parse(broken(name, mutate))
    assert info.value.path == path


def test_undecodable_input():
    with pytest.raises(FixtureFormatError) as info:
        parse(b"\xff\xfe")
    assert info.value.path == "/"
    with pytest.raises(FixtureFormatError):
        parse("{")
    with pytest.raises(FixtureFormatError):
        parse("[]")


def test_missing_file(tmp_path):
    with pytest.raises(FixtureFormatError):
        load_fixture(tmp_path / "absent.json")


def test_unknown_names_resolve_to_format_errors():
    fixture = load_fixture(fixture_path("F1"))
    with pytest.raises(FixtureFormatError) as info:
        fixture.resolve_class("nope")
    assert info.value.path == "/classes/nope"
    with pytest.raises(FixtureFormatError):
        fixture.resolve_subcategory("nope")


def test_enumeration_cap_comes_from_config():
    with pytest.raises(EnumerationLimitError):
        parse(document("F1"), config=get_exangle_config({'max_enumeration': 1}))
