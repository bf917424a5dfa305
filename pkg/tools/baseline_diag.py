"""
CSSC-SpMV - Diagonal Method Baseline

一般化対角 d（要素 (i, (i+d) mod n)）ごとに暗号文 1 個を作り、
Rot(ct_v, d) との HE-Mult を累積する比較用ベースライン。
ベクトルは全スロットに周期的に敷き詰めるので、左回転後の先頭 n スロットが
v[(i+d) mod n] になるには n ≤ slots/2 か slots % n == 0 が必要。
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from formats.sparse import CsrMatrix
from he.backend import Ciphertext, HEBackend, SimulatorBackend
from errors import DimensionMismatch, NonSquare
from he.params import HEParams
from protocol.result import SpmvResult
from protocol.transcript import MessageKind, MessageLedger, PartyRole

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class DiagPlan:
    """空でない一般化対角のオフセットと値（昇順、重複なし）"""

    size: int
    diagonal_offsets: List[int]
    diagonals: Dict[int, np.ndarray]

    @property
    def n_diagonals(self) -> int:
        return len(self.diagonal_offsets)


def plan_diagonals(matrix: CsrMatrix) -> DiagPlan:
    if matrix.rows != matrix.cols:
        raise NonSquare(f"diagonal method needs a square matrix, got {matrix.rows}x{matrix.cols}")
    n = matrix.rows
    coo = matrix.to_scipy().tocoo()
    offsets = (coo.col.astype(np.int64) - coo.row.astype(np.int64)) % max(n, 1)

    diagonals: Dict[int, np.ndarray] = {}
    for d in np.unique(offsets):
        diagonal = np.zeros(n, dtype=np.int64)
        mask = offsets == d
        diagonal[coo.row[mask]] = coo.data[mask]
        diagonals[int(d)] = diagonal
    return DiagPlan(n, sorted(diagonals), diagonals)


def _tile(vector: np.ndarray, slot_count: int) -> np.ndarray:
    if vector.size == 0:
        return np.zeros(slot_count, dtype=np.int64)
    return np.resize(vector, slot_count)


def _check_packing(n: int, slot_count: int) -> None:
    if n > slot_count:
        raise DimensionMismatch(f"dimension {n} exceeds slot_count {slot_count}")
    if n and not (2 * n <= slot_count or slot_count % n == 0):
        raise DimensionMismatch(
            f"dimension {n} cannot wrap cyclically in {slot_count} slots (need n <= slots/2 or slots % n == 0)"
        )


def diag_spmv(
    matrix: CsrMatrix, vector, params: HEParams, key_holder: str = "A",
    backend: Optional[HEBackend] = None
) -> SpmvResult:
    """対角法による暗号化 SpMV"""
    if matrix.rows != matrix.cols:
        raise NonSquare(f"diagonal method needs a square matrix, got {matrix.rows}x{matrix.cols}")
    vector = np.asarray(vector, dtype=np.int64).ravel()
    if vector.size != matrix.cols:
        raise DimensionMismatch(f"matrix has {matrix.cols} columns but vector has length {vector.size}")
    _check_packing(matrix.rows, params.slot_count)
    plan = plan_diagonals(matrix)

    backend = backend or SimulatorBackend(params)
    transcript = MessageLedger(key_holder=PartyRole.key_holder(key_holder))

    # Client A: 対角ごとに暗号化
    ct_diagonals = {d: backend.encrypt_values(plan.diagonals[d]) for d in plan.diagonal_offsets}
    if plan.n_diagonals:
        transcript.send_ciphertexts(PartyRole.CLIENT_A, PartyRole.CLOUD, plan.n_diagonals, params,
                                    note="encrypted generalized diagonals")
        transcript.send_plain(PartyRole.CLIENT_A, PartyRole.CLOUD, MessageKind.CHUNK_SHAPE_META,
                              n_ints=plan.n_diagonals, note="diagonal offsets")

    # Client B: 周期的に敷き詰めたベクトル
    ct_vector = backend.encrypt_values(_tile(vector, params.slot_count))
    transcript.send_ciphertexts(PartyRole.CLIENT_B, PartyRole.CLOUD, 1, params, note="tiled vector")

    # Cloud
    acc: Ciphertext = backend.zero()
    for d in plan.diagonal_offsets:
        rotated = ct_vector if d == 0 else backend.he_rot(ct_vector, d)
        acc = backend.he_add(acc, backend.he_mult(ct_diagonals[d], rotated))
    transcript.send_ciphertexts(PartyRole.CLOUD, transcript.key_holder, 1, params,
                                kind=MessageKind.RESULT_CIPHERTEXT, note="accumulated result")

    values = backend.decode_signed(backend.decrypt(acc)[:plan.size])
    logger.info("diag_spmv n=%d: %d diagonals", plan.size, plan.n_diagonals)
    return SpmvResult(
        values=values,
        op_ledger=backend.ledger,
        message_ledger=transcript,
        n_ct=plan.n_diagonals,
        noise_budget_remaining_bits=acc.noise_budget_bits,
        chunk_shapes=[[(plan.size, 1)] * plan.n_diagonals],
    )
