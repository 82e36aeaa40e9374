"""统一算法模块"""

from . import linalg
from .fincat import FiniteCategory
from .linsys import LinearSystem, Solution
from .complexes import ComplexCategory
from .exstruct import ExtStructure, ExangulatedCategory
from .axioms import AxiomChecker, validate_structure_api
from .quotient import QuotientBuilder, QuotientPresentation, build_quotient_api, theorem31_decide_api
from .proper import ProperClassChecker, theorem45_decide_api, xi_from_subcategory_api

__all__ = [
    "linalg",
    "FiniteCategory",
    "LinearSystem",
    "Solution",
    "ComplexCategory",
    "ExtStructure",
    "ExangulatedCategory",
    "AxiomChecker",
    "validate_structure_api",
    "QuotientBuilder",
    "QuotientPresentation",
    "build_quotient_api",
    "theorem31_decide_api",
    "ProperClassChecker",
    "theorem45_decide_api",
    "xi_from_subcategory_api",
]
