"""
命令行入口

子命令：validate / quotient / wkc / proper / xi-from，均支持 --json PATH。
退出码：0 全部通过或结论为 YES；1 有检查失败或结论为 NO；2 输入错误。
"""

import argparse
import logging
import sys
from typing import List, Optional, Tuple

from config.algorithm_config import get_exangle_config
from config.settings import LOG_FORMAT, LOG_LEVEL, PROJECT_NAME, VERSION
from .algorithms import AxiomChecker, ProperClassChecker, QuotientBuilder
from .exceptions import EnumerationLimitError, FixtureFormatError, PreconditionError, RealizationError
from .models import Report
from .utils import Fixture, load_fixture, write_report

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

logger = logging.getLogger("exang")


# ==================== 子命令 ====================

def run_validate(fixture: Fixture, args) -> Tuple[Report, bool]:
    """范畴、双函子、实现与公理检查"""
    s = fixture.structure
    report = Report("validate")
    # validate_all 已包含范畴与双函子检查
    report.merge(AxiomChecker(s).validate_all())
    report.verdicts['exangles'] = [e.key() for e in s.distinguished()]
    return report, report.ok


def run_quotient(fixture: Fixture, args) -> Tuple[Report, bool]:
    builder = QuotientBuilder(fixture.structure)
    subcategory = fixture.resolve_subcategory(args.subcat)
    if args.decide:
        report = builder.theorem31_decide(subcategory)
        passed = report.verdicts['theorem31'] == "YES" and report.ok
        return report, passed
    q = builder.build_quotient(subcategory)
    report = Report("quotient")
    report.merge(q.report)
    report.verdicts['survivors'] = q.survivors
    report.verdicts['dead'] = q.dead
    return report, report.ok


def run_wkc(fixture: Fixture, args) -> Tuple[Report, bool]:
    builder = QuotientBuilder(fixture.structure)
    q = builder.build_quotient(fixture.resolve_subcategory(args.subcat))
    try:
        exangle = fixture.structure.exangle(args.exangle)
    except KeyError as e:
        raise PreconditionError(str(e.args[0]), offending=args.exangle)
    report = builder.wkc_check(q, exangle)
    report.verdicts['exangle'] = exangle.key()
    return report, report.verdicts['wkc']


def run_proper(fixture: Fixture, args) -> Tuple[Report, bool]:
    xi = fixture.resolve_class(args.class_name)
    report = ProperClassChecker(fixture.structure).theorem45_decide(xi)
    return report, bool(report.verdicts['proper']) and bool(report.verdicts['agree'])


def run_xi_from(fixture: Fixture, args) -> Tuple[Report, bool]:
    checker = ProperClassChecker(fixture.structure)
    subcategory = fixture.resolve_subcategory(args.subcat)
    if args.flags:
        report = checker.prop48_flags(subcategory)
    else:
        _, report = checker.xi_from_subcategory(subcategory)
    return report, report.ok


COMMANDS = {
    'validate': run_validate,
    'quotient': run_quotient,
    'wkc': run_wkc,
    'proper': run_proper,
    'xi-from': run_xi_from,
}


# ==================== 参数解析 ====================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("fixture", help="夹具文件 (JSON)")
    common.add_argument("--json", dest="json_path", default=None, help="写出 JSON 报告的路径")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", help="输出调试日志")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="只输出警告及以上日志")

    parser = argparse.ArgumentParser(prog="exang", description=f"{PROJECT_NAME}: 有限 n-角范畴的公理检查与构造")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    sub.add_parser("validate", parents=[common], help="范畴、双函子、实现与公理检查")

    p = sub.add_parser("quotient", parents=[common], help="理想商 C/X")
    p.add_argument("--subcat", required=True, help="夹具中的子范畴名")
    p.add_argument("--decide", action="store_true", help="判定商是否为 n-角范畴")

    p = sub.add_parser("wkc", parents=[common], help="弱核-余核检查")
    p.add_argument("--subcat", required=True, help="夹具中的子范畴名")
    p.add_argument("--exangle", required=True, help="n-角键，形如 C,A:1")

    p = sub.add_parser("proper", parents=[common], help="判定候选类是否为 n-proper 类")
    p.add_argument("--class", dest="class_name", required=True, help="候选类名（内置 full / split）")

    p = sub.add_parser("xi-from", parents=[common], help="由子范畴构造 ξ(H)")
    p.add_argument("--subcat", required=True, help="夹具中的子范畴名")
    p.add_argument("--flags", action="store_true", help="附带强共变有限性等全部判定")
    return parser


def _configure_logging(args) -> None:
    if not logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(handler)
    logger.setLevel(LOG_LEVEL)
    if args.quiet:
        logging.disable(logging.INFO)
        return
    logging.disable(logging.NOTSET)
    if args.verbose:
        for name in list(logging.Logger.manager.loggerDict) + ["exang"]:
            logging.getLogger(name).setLevel(logging.DEBUG)


def main(argv: Optional[List[str]] = None) -> int:
    """
    命令行主函数

    :param argv: 参数列表（缺省取 sys.argv[1:]）
    :return: 退出码
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    _configure_logging(args)

    try:
        config = get_exangle_config()
    except ValueError as e:
        print(f"配置错误: {e}", file=sys.stderr)
        return EXIT_INPUT

    try:
        fixture = load_fixture(args.fixture, config=config)
        report, passed = COMMANDS[args.command](fixture, args)
    except (FixtureFormatError, PreconditionError) as e:
        print(f"输入错误: {e}", file=sys.stderr)
        return EXIT_INPUT
    except (EnumerationLimitError, RealizationError) as e:
        print(f"输入超出可处理范围: {e}", file=sys.stderr)
        return EXIT_INPUT

    logger.debug(f"{args.command} 完成, 通过={passed}")
    report.meta['fixture'] = fixture.name
    report.meta['command'] = args.command
    report.meta['bounds'] = {k: config[k] for k in ('max_mult', 'padding_bound', 'axiom_object_bound')}
    print(report.summary())
    if args.json_path:
        write_report(report, args.json_path)
    return EXIT_OK if passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
