"""
CSSC-SpMV - Ciphertext aggregation tests (totalSum + masked inter-chunk sum)
"""

import numpy as np
import pytest

from bench.synthetic import three_chunk_fixture
from formats import csr_to_cssc
from he import HEParams, SimulatorBackend
from tools.aggregator import (
    aggregate,
    inter_chunk_sum,
    intra_chunk_sum,
    num_bits,
    rotation_count,
    rotation_schedule
)
from tools.chunker import generate_chunks
from tools.vector_reorg import reorg_vector


class RecordingBackend(SimulatorBackend):
    """回転量を記録するシミュレータ"""

    def __init__(self, params):
        super().__init__(params)
        self.rotations = []

    def he_rot(self, a, k):
        self.rotations.append(k)
        return super().he_rot(a, k)


def _column_sums(flat, r, c):
    return np.asarray(flat).reshape(c, r).sum(axis=0)


@pytest.mark.parametrize("c, expected", [(5, 3), (21, 5), (1, 1), (8, 4)])
def test_num_bits(c, expected):
    assert num_bits(c) == expected


def test_num_bits_rejects_zero():
    with pytest.raises(ValueError):
        num_bits(0)


def test_rotation_schedules_of_fixture_shapes():
    assert rotation_schedule(10, 1) == []
    assert rotation_schedule(7, 2) == [7]
    assert rotation_schedule(3, 4) == [3, 6]
    assert rotation_schedule(2, 5) == [2, 4, 2]


@pytest.mark.parametrize("r, c", [(10, 1), (7, 2), (3, 4)])
def test_fixture_shapes_sum_columns(r, c):
    backend = RecordingBackend(HEParams(slot_count=32))
    flat = np.arange(1, r * c + 1)
    out = backend.decrypt(intra_chunk_sum(backend, backend.encrypt_values(flat), r, c))
    assert out[:r].tolist() == _column_sums(flat, r, c).tolist()
    assert backend.rotations == rotation_schedule(r, c)


def test_two_column_chunk_rotates_once_by_row_count():
    backend = RecordingBackend(HEParams(slot_count=16))
    intra_chunk_sum(backend, backend.encrypt_values(range(14)), 7, 2)
    assert backend.rotations == [7]
    assert backend.ledger.n_rot == 1
    assert backend.ledger.n_add == 1


def test_intra_chunk_sum_random_oracle():
    """500 個のランダム (r, c) で各行和がスロット [0, r) に入る"""
    rng = np.random.default_rng(2024)
    params = HEParams(slot_count=8192)
    for _ in range(500):
        c = int(rng.integers(1, 65))
        r = int(rng.integers(1, 8192 // c + 1))
        backend = SimulatorBackend(params)
        flat = rng.integers(-100, 101, size=r * c)
        out = backend.decode_signed(backend.decrypt(intra_chunk_sum(backend, backend.encrypt_values(flat), r, c)))
        expected = backend.decode_signed(_column_sums(flat, r, c))
        assert np.array_equal(out[:r], expected)

        assert backend.ledger.n_rot == rotation_count(c)
        assert num_bits(c) - 1 <= backend.ledger.n_rot <= 2 * (num_bits(c) - 1)
        assert backend.ledger.n_add == backend.ledger.n_rot


def test_intra_chunk_sum_rejects_oversized_chunk():
    backend = SimulatorBackend(HEParams(slot_count=8))
    with pytest.raises(ValueError):
        intra_chunk_sum(backend, backend.zero(), 3, 3)


def test_inter_chunk_sum_single_chunk_is_masked_copy():
    backend = SimulatorBackend(HEParams(slot_count=8))
    part = backend.encrypt_values([4, 5, 6, 9, 9, 9, 9, 9])
    out = backend.decrypt(inter_chunk_sum(backend, [part], [3]))
    assert out.tolist() == [4, 5, 6, 0, 0, 0, 0, 0]
    assert backend.ledger.n_mult_cp == 1
    assert backend.ledger.n_add == 1


def test_inter_chunk_sum_masks_each_part():
    backend = SimulatorBackend(HEParams(slot_count=8))
    parts = [backend.encrypt_values([1, 1, 1, 7, 7]), backend.encrypt_values([2, 2, 2, 7, 7])]
    out = backend.decrypt(inter_chunk_sum(backend, parts, [3, 3]))
    assert out.tolist() == [3, 3, 3, 0, 0, 0, 0, 0]
    assert backend.ledger.n_mult_cp == 2
    assert backend.ledger.n_add == 2


def test_aggregate_on_three_chunk_fixture():
    matrix, vector, s = three_chunk_fixture()
    cssc = csr_to_cssc(matrix)
    chunk_set = generate_chunks(cssc, s)
    backend = SimulatorBackend(HEParams(slot_count=16))

    segments = reorg_vector(vector, chunk_set.colidx_per_chunk).segments
    products = [
        backend.he_mult(backend.encrypt_values(chunk.value_flat), backend.encrypt_values(segment))
        for chunk, segment in zip(chunk_set.chunks, segments)
    ]
    result = aggregate(backend, products, chunk_set.r_list, chunk_set.c_list)
    sorted_values = backend.decode_signed(backend.decrypt(result))[:matrix.rows]

    unpermuted = np.zeros(matrix.rows, dtype=np.int64)
    unpermuted[chunk_set.row_map] = sorted_values
    assert unpermuted.tolist() == (matrix.to_dense() @ vector).tolist()

    ledger = backend.ledger
    assert ledger.n_mult_cc == 3
    assert ledger.n_mult_cp == 3
    assert ledger.n_rot == sum(rotation_count(c) for c in chunk_set.c_list) == 3
    assert ledger.n_add == ledger.n_rot + 3
    assert result.noise_budget_bits == 146 - 33 - 26
