"""
CSSC-SpMV - Ciphertext Aggregation (Cloud)

チャンク内: totalSum（回転と加算の二分木）で c 個の列ブロックを行和にまとめる。
チャンク間: 先頭 r_i スロットだけ 1 のマスクを掛けて累積する。

totalSum の追加ステップ（bit_j(c) = 1）は w ← ctV + Rot(w, r) とする。
w ← w + Rot(w, r) では既に集約済みの列が二重に数えられ、列和オラクルに
一致しない。回転回数・加算回数はどちらの形でも同じ。
"""

import logging
from typing import Dict, List, Sequence

from he.backend import Ciphertext, HEBackend, Plaintext

logger = logging.getLogger(__name__)


def num_bits(c: int) -> int:
    """整数 c のビット長 (numBits(5)=3, numBits(21)=5)"""
    if c < 1:
        raise ValueError("num_bits requires c >= 1")
    return int(c).bit_length()


def rotation_schedule(r: int, c: int) -> List[int]:
    """r×c チャンクの totalSum が行う回転量（スロット数）の列"""
    offsets = []
    e = 1
    for j in range(num_bits(c) - 2, -1, -1):
        offsets.append(e * r)
        e *= 2
        if (c >> j) & 1:
            offsets.append(r)
            e += 1
    return offsets


def rotation_count(c: int) -> int:
    return (num_bits(c) - 1) + (bin(c).count("1") - 1)


def intra_chunk_sum(backend: HEBackend, ct: Ciphertext, r: int, c: int) -> Ciphertext:
    """列優先 r×c チャンクの各行和をスロット [0, r) に集める"""
    if r * c > backend.slot_count:
        raise ValueError(f"chunk {r}x{c} exceeds slot_count {backend.slot_count}")
    w = ct
    e = 1
    for j in range(num_bits(c) - 2, -1, -1):
        w = backend.he_add(w, backend.he_rot(w, e * r))
        e *= 2
        if (c >> j) & 1:
            w = backend.he_add(ct, backend.he_rot(w, r))
            e += 1
    return w


def _mask(backend: HEBackend, ones_len: int, cache: Dict[int, Plaintext]) -> Plaintext:
    if ones_len not in cache:
        cache[ones_len] = backend.encode([1] * ones_len)
    return cache[ones_len]


def inter_chunk_sum(backend: HEBackend, parts: Sequence[Ciphertext], r_list: Sequence[int]) -> Ciphertext:
    """result = Σ_i part_i × mask_i（mask_i は 1^{r_i} 0...）"""
    if len(parts) != len(r_list):
        raise ValueError("parts and r_list must have equal length")
    cache: Dict[int, Plaintext] = {}
    result = backend.zero()
    for part, rows in zip(parts, r_list):
        result = backend.he_add(result, backend.he_cmult(part, _mask(backend, rows, cache)))
    logger.debug("Inter-chunk sum over %d parts (%d distinct masks)", len(parts), len(cache))
    return result


def aggregate(backend: HEBackend, products: Sequence[Ciphertext], r_list: Sequence[int], c_list: Sequence[int]) -> Ciphertext:
    """チャンク内集約の後にチャンク間集約"""
    intra = [intra_chunk_sum(backend, ct, r, c) for ct, r, c in zip(products, r_list, c_list)]
    return inter_chunk_sum(backend, intra, r_list)
