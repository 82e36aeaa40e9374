"""形式直和对象"""

from collections import Counter
from typing import Iterable


class ObjectExpr:
    """
    不可分解对象的有序形式直和

    summands 的顺序决定态射的分块布局；对象相等按重集判断（same_as）。
    空元组即零对象。
    """

    def __init__(self, summands: Iterable[str] = ()):
        """
        :param summands: 不可分解直和项名（有序）
        """
        self.summands = tuple(summands)

    @classmethod
    def of(cls, *names: str) -> "ObjectExpr":
        return cls(names)

    @classmethod
    def zero(cls) -> "ObjectExpr":
        return cls(())

    def __eq__(self, other) -> bool:
        if not isinstance(other, ObjectExpr):
            return NotImplemented
        return self.summands == other.summands

    def __hash__(self) -> int:
        return hash(self.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def __getitem__(self, index: int) -> str:
        return self.summands[index]

    @property
    def is_zero(self) -> bool:
        return not self.summands

    @property
    def is_indecomposable(self) -> bool:
        return len(self.summands) == 1

    def multiset(self) -> Counter:
        return Counter(self.summands)

    def same_as(self, other: "ObjectExpr") -> bool:
        """重集相等"""
        return self.multiset() == other.multiset()

    def direct_sum(self, *others: "ObjectExpr") -> "ObjectExpr":
        names = list(self.summands)
        for other in others:
            names.extend(other.summands)
        return ObjectExpr(names)

    def without(self, names: Iterable[str]) -> "ObjectExpr":
        dropped = set(names)
        return ObjectExpr(s for s in self.summands if s not in dropped)

    def key(self) -> str:
        return "+".join(self.summands) if self.summands else "0"

    def to_dict(self):
        return list(self.summands)

    def __repr__(self) -> str:
        return f"ObjectExpr({self.summands!r})"

    def __str__(self) -> str:
        return "⊕".join(self.summands) if self.summands else "0"
