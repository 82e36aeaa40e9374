"""有限加法范畴的表示"""

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np


class CategoryPresentation:
    def __init__(self,
                 prime: int,
                 objects: Sequence[str],
                 hom_labels: Optional[Dict[Tuple[str, str], Tuple[str, ...]]] = None,
                 compose: Optional[Dict[Tuple[str, str, str], np.ndarray]] = None,
                 identities: Optional[Dict[str, np.ndarray]] = None):
        """
        Krull–Schmidt 表示的有限 k-线性加法范畴

        :param prime: 素域特征 p
        :param objects: 不可分解对象名（有序）
        :param hom_labels: (A, B) -> hom(A, B) 的基标签；缺省即零空间
        :param compose: (A, B, C) -> 形状 (dim(A,C), dim(B,C), dim(A,B)) 的复合张量，
                        T[:, g, f] 为 g∘f 的坐标
        :param identities: A -> id_A 在 hom(A, A) 中的坐标
        """
        self.prime = prime
        self.objects = tuple(objects)
        self.hom_labels = hom_labels if hom_labels is not None else {}
        self.compose = compose if compose is not None else {}
        self.identities = identities if identities is not None else {}

    def hom_dim(self, a: str, b: str) -> int:
        return len(self.hom_labels.get((a, b), ()))

    def label_index(self) -> Dict[str, Tuple[str, str, int]]:
        """标签 -> (源, 目标, 基下标)"""
        index = {}
        for (a, b), labels in self.hom_labels.items():
            for i, label in enumerate(labels):
                index[label] = (a, b, i)
        return index

    def composition_tensor(self, a: str, b: str, c: str) -> np.ndarray:
        tensor = self.compose.get((a, b, c))
        if tensor is None:
            return np.zeros((self.hom_dim(a, c), self.hom_dim(b, c), self.hom_dim(a, b)), dtype=np.int64)
        return tensor

    def nonzero_pairs(self) -> List[Tuple[str, str]]:
        return [(a, b) for a in self.objects for b in self.objects if self.hom_dim(a, b)]

    def to_dict(self):
        return {
            'prime': self.prime,
            'objects': list(self.objects),
            'hom': {f"{a},{b}": list(labels) for (a, b), labels in sorted(self.hom_labels.items())},
        }
