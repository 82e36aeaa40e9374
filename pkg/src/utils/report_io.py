"""报告输出"""

import json
import logging
from pathlib import Path
from typing import Union

from ..models import Report

logger = logging.getLogger(__name__)


def report_json(report: Report) -> str:
    """报告的规范 JSON 文本（键排序，逐字节可复现）"""
    return json.dumps(report.to_dict(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_report(report: Report, path: Union[str, Path]) -> Path:
    """
    写出 JSON 报告

    :param report: 检查报告
    :param path: 输出路径（父目录不存在时自动创建）
    :return: 实际写出的路径
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(report_json(report))
    logger.info(f"报告已写出: {path}")
    return path
