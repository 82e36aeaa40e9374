"""态射模型"""

import numpy as np

from .object_expr import ObjectExpr


class Morphism:
    def __init__(self, source: ObjectExpr, target: ObjectExpr, coords: np.ndarray):
        """
        source → target 的态射

        :param source: 源对象
        :param target: 目标对象
        :param coords: 扁平坐标向量，按 target 的直和项（外层）、source 的直和项（内层）
                       依次排列各块 hom(source_j, target_i) 的基坐标
        """
        self.source = source
        self.target = target
        self.coords = coords

    def is_zero(self) -> bool:
        return not np.any(self.coords)

    def key(self) -> str:
        values = ",".join(str(int(x)) for x in self.coords)
        return f"{self.source.key()}->{self.target.key()}:{values}"

    def same_value(self, other: "Morphism") -> bool:
        return (self.source == other.source and self.target == other.target
                and np.array_equal(self.coords, other.coords))

    def to_dict(self):
        return {
            'source': list(self.source.summands),
            'target': list(self.target.summands),
            'coords': [int(x) for x in self.coords],
        }

    def __repr__(self) -> str:
        return f"Morphism({self.source}→{self.target})"
