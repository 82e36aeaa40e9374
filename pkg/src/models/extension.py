"""E-扩张与 n-角"""

import numpy as np

from .complex import ComplexNp2
from .object_expr import ObjectExpr


class Extension:
    """
    δ ∈ E(C, A)

    坐标分块：C 的直和项在外层、A 的直和项在内层。
    """

    def __init__(self, a: ObjectExpr, c: ObjectExpr, coords: np.ndarray):
        self.a = a
        self.c = c
        self.coords = coords

    def is_zero(self) -> bool:
        return not np.any(self.coords)

    def key(self) -> str:
        values = "/".join(str(int(x)) for x in self.coords)
        return f"{self.c.key()},{self.a.key()}:{values}"

    def to_dict(self):
        return {
            'a': list(self.a.summands),
            'c': list(self.c.summands),
            'coords': [int(x) for x in self.coords],
        }

    def __repr__(self) -> str:
        return f"Extension({self.key()})"


class NExangle:
    def __init__(self, complex: ComplexNp2, delta: Extension):
        """
        n-角 ⟨X, δ⟩

        :param complex: 实现复形
        :param delta: E-扩张
        """
        self.complex = complex
        self.delta = delta

    def key(self) -> str:
        return self.delta.key()

    def to_dict(self):
        return {'delta': self.delta.to_dict(), 'complex': self.complex.to_dict()}
