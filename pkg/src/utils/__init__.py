"""统一工具模块"""

from .fixture_io import Fixture, FixtureParser, parse, serialize, load_fixture, pointer
from .report_io import report_json, write_report

__all__ = [
    "Fixture",
    "FixtureParser",
    "parse",
    "serialize",
    "load_fixture",
    "pointer",
    "report_json",
    "write_report",
]
