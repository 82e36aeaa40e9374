"""检查报告模型"""

from collections import Counter
from typing import Any, Dict, List, Optional

import numpy as np

PASS = "pass"
FAIL = "fail"
ALARM = "alarm"
INFO = "info"


def jsonable(value: Any) -> Any:
    """把 numpy 值与模型对象转换为可 JSON 序列化的结构"""
    if hasattr(value, 'to_dict'):
        return jsonable(value.to_dict())
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return jsonable(value.tolist())
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


class Finding:
    def __init__(self, check: str, instance: str, verdict: str, witness: Optional[Dict[str, Any]] = None):
        """
        单条检查结论

        :param check: 检查项名
        :param instance: 实例键
        :param verdict: pass / fail / alarm / info
        :param witness: 见证数据
        """
        self.check = check
        self.instance = instance
        self.verdict = verdict
        self.witness = witness if witness is not None else {}

    def to_dict(self):
        return {
            'check': self.check,
            'instance': self.instance,
            'verdict': self.verdict,
            'witness': jsonable(self.witness),
        }


class Report:
    """
    机器可读的检查报告

    findings 记录失败、告警与结论；stats 记录各检查项的实例数。
    输出按 (check, instance) 字典序排列，保证多次运行逐字节一致。
    """

    def __init__(self, name: str):
        self.name = name
        self.findings: List[Finding] = []
        self.stats: Counter = Counter()
        self.meta: Dict[str, Any] = {}
        self.verdicts: Dict[str, Any] = {}

    def count(self, check: str, amount: int = 1) -> None:
        self.stats[check] += amount

    def fail(self, check: str, instance: str, **witness) -> None:
        self.findings.append(Finding(check, instance, FAIL, witness))

    def alarm(self, check: str, instance: str, **witness) -> None:
        self.findings.append(Finding(check, instance, ALARM, witness))

    def info(self, check: str, instance: str, **witness) -> None:
        self.findings.append(Finding(check, instance, INFO, witness))

    def record(self, check: str, instance: str, passed: bool, **witness) -> None:
        self.count(check)
        if not passed:
            self.fail(check, instance, **witness)

    def merge(self, other: "Report") -> "Report":
        self.findings.extend(other.findings)
        self.stats.update(other.stats)
        for key, value in other.meta.items():
            self.meta.setdefault(key, value)
        for key, value in other.verdicts.items():
            self.verdicts.setdefault(key, value)
        return self

    def failures(self, check: str = None) -> List[Finding]:
        return sorted((f for f in self.findings
                       if f.verdict in (FAIL, ALARM) and (check is None or f.check == check)),
                      key=lambda f: (f.check, f.instance))

    @property
    def ok(self) -> bool:
        return not self.failures()

    def to_dict(self):
        findings = sorted(self.findings, key=lambda f: (f.check, f.instance, f.verdict))
        return {
            'name': self.name,
            'ok': self.ok,
            'meta': jsonable(self.meta),
            'verdicts': jsonable(self.verdicts),
            'stats': {k: self.stats[k] for k in sorted(self.stats)},
            'findings': [f.to_dict() for f in findings],
        }

    def summary(self) -> str:
        """人类可读摘要"""
        lines = [f"[{self.name}] {'通过' if self.ok else '未通过'}"]
        for check in sorted(self.stats):
            failed = len(self.failures(check))
            lines.append(f"  {check}: {self.stats[check]} 个实例, {failed} 个失败")
        for key in sorted(self.verdicts):
            lines.append(f"  结论 {key}: {self.verdicts[key]}")
        for finding in self.failures()[:20]:
            lines.append(f"  ✗ {finding.check} {finding.instance}")
        return "\n".join(lines)
