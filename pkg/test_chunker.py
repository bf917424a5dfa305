"""
CSSC-SpMV - Chunk generation, row partitioning and vector reorganization tests
"""

import numpy as np
import pytest

from bench.synthetic import random_density, three_chunk_fixture
from formats import CsrMatrix, csr_to_cssc
from errors import ColumnTooTall, IndexOutOfRange
from tools.chunker import generate_chunks, partition_rows
from tools.vector_reorg import reorg_vector

SAMPLE = np.array([
    [1, 2, 3, 0],
    [4, 0, 5, 0],
    [0, 6, 0, 0],
    [0, 0, 0, 7],
])


def test_greedy_packing_by_padded_size():
    chunk_set = generate_chunks(csr_to_cssc(CsrMatrix.from_dense(SAMPLE)), 8)
    assert list(zip(chunk_set.r_list, chunk_set.c_list)) == [(4, 2), (1, 1)]

    first, second = chunk_set.chunks
    assert first.value_flat.tolist() == [1, 4, 6, 7, 2, 5, 0, 0]
    assert first.colidx_flat.tolist() == [0, 0, 1, 3, 1, 2, -1, -1]
    assert second.value_flat.tolist() == [3]
    assert second.colidx_flat.tolist() == [2]
    assert chunk_set.row_map.tolist() == [0, 1, 2, 3]


def test_single_column_has_no_padding():
    chunk_set = generate_chunks(csr_to_cssc(CsrMatrix.from_dense([[1], [2], [3]])), 3)
    assert chunk_set.n_ct == 1
    assert chunk_set.chunks[0].colidx_flat.tolist() == [0, 0, 0]


def test_empty_matrix_has_no_chunks():
    chunk_set = generate_chunks(csr_to_cssc(CsrMatrix.from_dense(np.zeros((3, 3), dtype=int))), 4)
    assert chunk_set.n_ct == 0
    assert chunk_set.r_list == [] and chunk_set.c_list == []


def test_column_too_tall():
    with pytest.raises(ColumnTooTall):
        generate_chunks(csr_to_cssc(CsrMatrix.from_dense(SAMPLE)), 3)


def test_chunk_size_above_slot_count():
    with pytest.raises(ValueError):
        generate_chunks(csr_to_cssc(CsrMatrix.from_dense(SAMPLE)), 16, slot_count=8)


def test_three_chunk_fixture_shapes():
    matrix, _, s = three_chunk_fixture()
    chunk_set = generate_chunks(csr_to_cssc(matrix), s)
    assert list(zip(chunk_set.r_list, chunk_set.c_list)) == [(10, 1), (7, 2), (3, 4)]


def _greedy_count(heights, s):
    count, start = 0, 0
    while start < len(heights):
        k = 1
        while start + k < len(heights) and heights[start] * (k + 1) <= s:
            k += 1
        count += 1
        start += k
    return count


def test_random_chunk_properties():
    rng = np.random.default_rng(42)
    for _ in range(200):
        rows, cols = (int(x) for x in rng.integers(1, 33, size=2))
        matrix = random_density(rows, cols, float(rng.uniform(0, 0.5)), rng)
        cssc = csr_to_cssc(matrix)
        s = int(rng.integers(max(rows, 1), 4 * rows + 1))
        chunk_set = generate_chunks(cssc, s)

        assert chunk_set.n_ct == _greedy_count(cssc.heights.tolist(), s)
        covered = []
        real_slots = 0
        for chunk in chunk_set.chunks:
            assert chunk.size <= s
            assert chunk.value_flat.size == chunk.colidx_flat.size == chunk.size
            padding = chunk.colidx_flat == -1
            assert np.all(chunk.value_flat[padding] == 0)
            assert np.all((chunk.colidx_flat[~padding] >= 0) & (chunk.colidx_flat[~padding] < cols))
            assert chunk.rows == cssc.heights[chunk.first_column]
            covered.extend(range(chunk.first_column, chunk.first_column + chunk.cols))
            real_slots += int(np.count_nonzero(~padding))
        assert covered == list(range(cssc.n_aligned_cols))
        assert real_slots == matrix.nnz


def test_partition_rows_ceiling():
    tall = CsrMatrix(10000, 1, [], [], np.zeros(10001, dtype=np.int64))
    slices = partition_rows(tall, 8192)
    assert [piece.rows for piece in slices] == [8192, 1808]


def test_partition_single_slice_is_input():
    matrix = CsrMatrix.from_dense(SAMPLE)
    assert partition_rows(matrix, 8) == [matrix]


def test_partition_concatenation_reproduces_matrix():
    rng = np.random.default_rng(3)
    matrix = random_density(100, 40, 0.2, rng)
    slices = partition_rows(matrix, 30)
    assert [piece.rows for piece in slices] == [30, 30, 30, 10]
    assert np.array_equal(np.vstack([piece.to_dense() for piece in slices]), matrix.to_dense())
    for piece in slices:
        heights = csr_to_cssc(piece).heights
        assert heights.size == 0 or heights[0] <= 30


def test_reorg_follows_column_index():
    reorganized = reorg_vector([1, 2, 3], [[0, 2, 0, 1]])
    assert reorganized.segments[0][3] == 2
    assert reorganized.segments[0].tolist() == [1, 3, 1, 2]


def test_reorg_padding_maps_to_zero():
    assert reorg_vector([5, 6], [[1, -1, -1]]).segments[0].tolist() == [6, 0, 0]


def test_reorg_identity_indexing():
    v = [4, -2, 9, 1]
    assert reorg_vector(v, [list(range(4))]).segments[0].tolist() == v


def test_reorg_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        reorg_vector([1, 2], [[0, 2]])


def test_reorg_segments_align_with_chunks():
    chunk_set = generate_chunks(csr_to_cssc(CsrMatrix.from_dense(SAMPLE)), 8)
    v = np.array([10, 20, 30, 40])
    reorganized = reorg_vector(v, chunk_set.colidx_per_chunk)
    assert [seg.size for seg in reorganized.segments] == [chunk.size for chunk in chunk_set.chunks]
    assert reorganized.segments[0].tolist() == [10, 10, 20, 40, 20, 30, 0, 0]
