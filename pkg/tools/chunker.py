"""
CSSC-SpMV - Chunk Generator

CSSC の整列列を左から貪欲に詰め、暗号文 1 個に収まるチャンクへ分割する。
容量判定はパディング込みのサイズ h·k ≤ s で行う（非ゼロ数の単純加算では
パディング分が暗号文からあふれるため）。h はチャンク先頭列の高さ。
"""

import logging
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from formats.sparse import CsrMatrix, CsscMatrix
from errors import ColumnTooTall

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Chunk:
    """列優先で平坦化したチャンク（パディングは値 0 / 列 -1）"""

    value_flat: np.ndarray
    colidx_flat: np.ndarray
    rows: int
    cols: int
    first_column: int = 0

    @property
    def size(self) -> int:
        return self.rows * self.cols


@dataclass(frozen=True, eq=False)
class ChunkSet:
    """チャンク列とその形状リスト、元の次元と行マップ"""

    chunks: List[Chunk]
    rows: int
    cols: int
    row_map: np.ndarray

    @property
    def r_list(self) -> List[int]:
        return [chunk.rows for chunk in self.chunks]

    @property
    def c_list(self) -> List[int]:
        return [chunk.cols for chunk in self.chunks]

    @property
    def n_ct(self) -> int:
        return len(self.chunks)

    @property
    def colidx_per_chunk(self) -> List[np.ndarray]:
        return [chunk.colidx_flat for chunk in self.chunks]


def _flatten(m: CsscMatrix, start: int, stop: int, height: int) -> Chunk:
    width = stop - start
    values = np.zeros(height * width, dtype=np.int64)
    colidx = np.full(height * width, -1, dtype=np.int64)
    for offset, j in enumerate(range(start, stop)):
        va, ci = m.column(j)
        base = offset * height
        values[base:base + va.size] = va
        colidx[base:base + ci.size] = ci
    return Chunk(values, colidx, height, width, start)


def generate_chunks(m: CsscMatrix, s: int, slot_count: Optional[int] = None) -> ChunkSet:
    """CSSC を暗号文サイズ s 以下のチャンクに分割"""
    if s < 1:
        raise ValueError("chunk size must be positive")
    if slot_count is not None and s > slot_count:
        raise ValueError(f"chunk size {s} exceeds slot_count {slot_count}")

    heights = m.heights
    if heights.size and heights[0] > s:
        raise ColumnTooTall(
            f"aligned column of height {heights[0]} exceeds chunk size {s}; partition rows first"
        )

    chunks = []
    start, n_cols = 0, heights.size
    while start < n_cols:
        height = int(heights[start])
        stop = start + 1
        while stop < n_cols and height * (stop - start + 1) <= s:
            stop += 1
        chunks.append(_flatten(m, start, stop, height))
        start = stop

    logger.debug("Generated %d chunks (s=%d): shapes=%s", len(chunks), s, [(c.rows, c.cols) for c in chunks])
    return ChunkSet(chunks, m.rows, m.cols, m.RM)


def partition_rows(m: CsrMatrix, s: int) -> List[CsrMatrix]:
    """行方向に s 行以下のスライスへ分割（最長の整列列も s 以下になる）"""
    if s < 1:
        raise ValueError("chunk size must be positive")
    if m.rows <= s:
        return [m]
    return [m.row_slice(start, start + s) for start in range(0, m.rows, s)]
