"""统一数据模型模块"""

# 对象与态射
from .object_expr import ObjectExpr
from .morphism import Morphism
from .presentation import CategoryPresentation

# 复形与扩张
from .complex import ComplexNp2, ChainMap, Homotopy
from .extension import Extension, NExangle
from .dist_class import DistClass

# 报告
from .report import Report, Finding, jsonable

__all__ = [
    "ObjectExpr",
    "Morphism",
    "CategoryPresentation",
    "ComplexNp2",
    "ChainMap",
    "Homotopy",
    "Extension",
    "NExangle",
    "DistClass",
    "Report",
    "Finding",
    "jsonable",
]
