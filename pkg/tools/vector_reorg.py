"""
CSSC-SpMV - Vector Reorganization (Client B)
"""

from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from errors import IndexOutOfRange


@dataclass(frozen=True, eq=False)
class ReorgVector:
    """チャンクごとに列インデックスへ整列したベクトル"""

    segments: List[np.ndarray]


def reorg_vector(v: Sequence[int], colidx_per_chunk: Sequence[Sequence[int]]) -> ReorgVector:
    """ReorganizedResult[k] = v[ColumnIndex[k]]、-1 は 0"""
    v = np.asarray(v, dtype=np.int64).ravel()
    segments = []
    for colidx in colidx_per_chunk:
        colidx = np.asarray(colidx, dtype=np.int64)
        if colidx.size and colidx.max() >= v.size:
            raise IndexOutOfRange(f"column index {int(colidx.max())} out of range for vector of length {v.size}")
        segment = np.zeros(colidx.size, dtype=np.int64)
        valid = colidx >= 0
        segment[valid] = v[colidx[valid]]
        segments.append(segment)
    return ReorgVector(segments)
