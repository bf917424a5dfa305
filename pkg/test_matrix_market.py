"""
CSSC-SpMV - Matrix Market / vector file tests
"""

import logging

import numpy as np
import pytest

from formats import CooMatrix, coo_to_csr, read_matrix_market, read_vector, write_matrix_market, write_vector
from errors import ParseError, UnsupportedFormat


def _write(tmp_path, text, name="m.mtx"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_general_real_file(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix coordinate real general\n% comment\n2 2 2\n1 1 3.0\n2 2 4.0\n")
    coo = read_matrix_market(path)
    assert (coo.rows, coo.cols) == (2, 2)
    assert coo.triples() == [(0, 0, 3), (1, 1, 4)]


def test_symmetric_file_is_mirrored(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix coordinate real symmetric\n2 2 1\n2 1 5.0\n")
    assert sorted(read_matrix_market(path).triples()) == [(0, 1, 5), (1, 0, 5)]


def test_symmetric_diagonal_not_duplicated(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix coordinate integer symmetric\n2 2 2\n1 1 7\n2 1 2\n")
    assert sorted(read_matrix_market(path).triples()) == [(0, 0, 7), (0, 1, 2), (1, 0, 2)]


def test_skew_symmetric_file_is_negated(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix coordinate integer skew-symmetric\n2 2 1\n2 1 5\n")
    assert sorted(read_matrix_market(path).triples()) == [(0, 1, -5), (1, 0, 5)]


def test_pattern_file_values_are_one(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix coordinate pattern general\n3 3 2\n1 2\n3 1\n")
    coo = read_matrix_market(path)
    assert coo.values.tolist() == [1, 1]
    assert coo.triples() == [(0, 1, 1), (2, 0, 1)]


def test_array_format_unsupported(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n4\n")
    with pytest.raises(UnsupportedFormat):
        read_matrix_market(path)


def test_complex_field_unsupported(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix coordinate complex general\n1 1 1\n1 1 1.0 2.0\n")
    with pytest.raises(UnsupportedFormat):
        read_matrix_market(path)


def test_parse_error_carries_line_number(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 3.0\n2 2 oops\n")
    with pytest.raises(ParseError) as info:
        read_matrix_market(path)
    assert info.value.line_number == 4
    assert "line 4" in str(info.value)


def test_index_out_of_range_is_parse_error(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix coordinate integer general\n2 2 1\n3 1 1\n")
    with pytest.raises(ParseError) as info:
        read_matrix_market(path)
    assert info.value.line_number == 3


def test_entry_count_mismatch(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix coordinate integer general\n2 2 3\n1 1 1\n2 2 1\n")
    with pytest.raises(ParseError):
        read_matrix_market(path)


def test_real_values_are_quantized_with_warning(tmp_path, caplog):
    path = _write(tmp_path, "%%MatrixMarket matrix coordinate real general\n1 2 2\n1 1 1.5\n1 2 -0.25\n")
    with caplog.at_level(logging.WARNING):
        coo = read_matrix_market(path, quantization_scale=1.0)
    assert coo.triples() == [(0, 0, 2)]
    assert any("Quantized" in record.message for record in caplog.records)

    scaled = read_matrix_market(path, quantization_scale=4.0)
    assert scaled.triples() == [(0, 0, 6), (0, 1, -1)]


def test_explicit_zeros_dropped(tmp_path):
    path = _write(tmp_path, "%%MatrixMarket matrix coordinate integer general\n2 2 2\n1 1 0\n2 2 9\n")
    assert read_matrix_market(path).triples() == [(1, 1, 9)]


def test_write_then_read(tmp_path):
    coo = CooMatrix.from_triples(3, 4, [(0, 3, -2), (2, 0, 5), (1, 1, 7)])
    path = write_matrix_market(tmp_path / "out.mtx", coo, comment="sample")
    restored = coo_to_csr(read_matrix_market(path))
    assert np.array_equal(restored.to_dense(), coo_to_csr(coo).to_dense())


def test_vector_files(tmp_path):
    path = write_vector(tmp_path / "v.txt", [3, -1, 0, 12])
    assert read_vector(path).tolist() == [3, -1, 0, 12]


def test_vector_parse_error(tmp_path):
    path = _write(tmp_path, "1\n2\nthree\n", name="v.txt")
    with pytest.raises(ParseError) as info:
        read_vector(path)
    assert info.value.line_number == 3


def test_invalid_utf8_is_parse_error(tmp_path):
    path = tmp_path / "bad.mtx"
    path.write_bytes(b"%%MatrixMarket matrix coordinate integer general\n2 2 2\n1 1 3\n2 2 \xff\xfe\n")
    with pytest.raises(ParseError) as info:
        read_matrix_market(path)
    assert info.value.line_number == 4
    assert "UTF-8" in str(info.value)


def test_vector_invalid_utf8(tmp_path):
    path = tmp_path / "v.txt"
    path.write_bytes(b"1\n\xc3\x28\n3\n")
    with pytest.raises(ParseError) as info:
        read_vector(path)
    assert info.value.line_number == 2
