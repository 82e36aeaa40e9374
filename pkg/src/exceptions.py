"""统一异常定义

所有异常均继承自 ValueError，调用方按 ValueError 捕获即可。
公理检查中的失败不抛异常，而是作为报告条目返回。
"""

from typing import Any, Optional


class ShapeMismatchError(ValueError):
    """态射复合或分块拼装时对象布局不一致"""


class PreconditionError(ValueError):
    """前置条件不满足"""

    def __init__(self, message: str, offending: Optional[Any] = None):
        super().__init__(message)
        self.offending = offending


class FixtureFormatError(ValueError):
    """夹具文件格式错误，path 为 JSON-pointer 风格位置"""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path or '/'}: {message}")
        self.path = path or "/"
        self.message = message


class RealizationError(ValueError):
    """扩张无法实现为直和形式"""


class RestrictionError(ValueError):
    """作用把 ξ 中的元素送出 ξ"""

    def __init__(self, message: str, morphism: str = "", extension: Any = None):
        super().__init__(message)
        self.morphism = morphism
        self.extension = extension


class EnumerationLimitError(ValueError):
    """枚举规模超过配置上限"""
