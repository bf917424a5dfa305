"""
CSSC-SpMV - Sparse Matrix Formats

COO / CSR と、HE 向けの CSSC (Compressed Sparse Sorted Column) 形式。
CSSC は行を非ゼロ数の降順（同数なら元の行番号の昇順）に並べ、各行の
非ゼロを左詰めし、列優先で読み出した (VA, CI, RM, CP) の組。
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Tuple

import numpy as np
import scipy.sparse

from errors import DuplicateEntry

logger = logging.getLogger(__name__)


def _as_int64(values) -> np.ndarray:
    """整数値の配列として取り込む（小数部を持つ要素は切り捨てずに拒否）"""
    array = np.asarray(values)
    if array.dtype.kind in "fc":
        fractional = np.flatnonzero(np.ravel(array != np.rint(array.real)))
        if fractional.size:
            raise ValueError(
                f"{fractional.size} non-integer entries (first: {np.ravel(array)[fractional[0]]}); "
                "quantize before building the matrix"
            )
        array = array.real
    return array.astype(np.int64)


def _int_array(values: Iterable) -> np.ndarray:
    return _as_int64(values).ravel()


@dataclass(frozen=True, eq=False)
class CooMatrix:
    """座標形式 (row, col, value)"""

    rows: int
    cols: int
    row: np.ndarray
    col: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        for name in ("row", "col", "values"):
            object.__setattr__(self, name, _int_array(getattr(self, name)))
        if not (self.row.size == self.col.size == self.values.size):
            raise ValueError("COO arrays must have equal length")
        if self.row.size and (self.row.min() < 0 or self.row.max() >= self.rows):
            raise ValueError("COO row index out of range")
        if self.col.size and (self.col.min() < 0 or self.col.max() >= self.cols):
            raise ValueError("COO column index out of range")

    @property
    def nnz(self) -> int:
        return int(self.values.size)

    @classmethod
    def from_triples(cls, rows: int, cols: int, triples: Iterable[Tuple[int, int, int]]) -> "CooMatrix":
        triples = list(triples)
        if not triples:
            return cls(rows, cols, [], [], [])
        row, col, values = zip(*triples)
        return cls(rows, cols, row, col, values)

    def triples(self) -> List[Tuple[int, int, int]]:
        return [(int(i), int(j), int(v)) for i, j, v in zip(self.row, self.col, self.values)]


@dataclass(frozen=True, eq=False)
class CsrMatrix:
    """圧縮行形式（行内の列インデックスは狭義単調増加）"""

    rows: int
    cols: int
    values: np.ndarray
    col_indices: np.ndarray
    row_ptrs: np.ndarray

    def __post_init__(self):
        for name in ("values", "col_indices", "row_ptrs"):
            object.__setattr__(self, name, _int_array(getattr(self, name)))
        self._check()

    def _check(self):
        nnz = self.values.size
        if self.col_indices.size != nnz:
            raise ValueError("values and col_indices must have equal length")
        if self.row_ptrs.size != self.rows + 1:
            raise ValueError(f"row_ptrs must have length rows+1={self.rows + 1}")
        if self.row_ptrs[0] != 0 or self.row_ptrs[-1] != nnz:
            raise ValueError("row_ptrs must start at 0 and end at nnz")
        if np.any(np.diff(self.row_ptrs) < 0):
            raise ValueError("row_ptrs must be non-decreasing")
        if nnz and (self.col_indices.min() < 0 or self.col_indices.max() >= self.cols):
            raise ValueError("column index out of range")
        if nnz > 1:
            # 行頭以外では列インデックスが増加していること
            row_starts = np.zeros(nnz, dtype=bool)
            row_starts[self.row_ptrs[:-1][self.row_ptrs[:-1] < nnz]] = True
            increasing = np.diff(self.col_indices) > 0
            if np.any(~increasing & ~row_starts[1:]):
                raise ValueError("column indices must be strictly increasing within each row")

    @property
    def nnz(self) -> int:
        return int(self.values.size)

    @property
    def row_nnz(self) -> np.ndarray:
        return np.diff(self.row_ptrs)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @classmethod
    def from_dense(cls, dense) -> "CsrMatrix":
        dense = _as_int64(dense)
        if dense.ndim != 2:
            raise ValueError("dense matrix must be 2-D")
        rows, cols = dense.shape
        row, col = np.nonzero(dense)
        row_ptrs = np.concatenate([[0], np.cumsum(np.bincount(row, minlength=rows))])
        return cls(rows, cols, dense[row, col], col, row_ptrs)

    @classmethod
    def from_scipy(cls, matrix) -> "CsrMatrix":
        matrix = scipy.sparse.csr_matrix(matrix)
        matrix.sum_duplicates()
        matrix.eliminate_zeros()
        matrix.sort_indices()
        rows, cols = matrix.shape
        return cls(rows, cols, matrix.data, matrix.indices, matrix.indptr)

    def to_scipy(self) -> scipy.sparse.csr_matrix:
        return scipy.sparse.csr_matrix((self.values, self.col_indices, self.row_ptrs), shape=self.shape)

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.shape, dtype=np.int64)
        row = np.repeat(np.arange(self.rows), self.row_nnz)
        dense[row, self.col_indices] = self.values
        return dense

    def row_slice(self, start: int, stop: int) -> "CsrMatrix":
        """行 [start, stop) の部分行列"""
        stop = min(stop, self.rows)
        lo, hi = self.row_ptrs[start], self.row_ptrs[stop]
        return CsrMatrix(
            stop - start,
            self.cols,
            self.values[lo:hi],
            self.col_indices[lo:hi],
            self.row_ptrs[start:stop + 1] - lo,
        )


@dataclass(frozen=True, eq=False)
class CsscMatrix:
    """CSSC 形式 (VA, CI, RM, CP)"""

    VA: np.ndarray
    CI: np.ndarray
    RM: np.ndarray
    CP: np.ndarray
    rows: int
    cols: int

    def __post_init__(self):
        for name in ("VA", "CI", "RM", "CP"):
            object.__setattr__(self, name, _int_array(getattr(self, name)))

    @property
    def nnz(self) -> int:
        return int(self.VA.size)

    @property
    def heights(self) -> np.ndarray:
        """整列列ごとの非ゼロ数 (CP の差分)"""
        return np.diff(self.CP)

    @property
    def n_aligned_cols(self) -> int:
        return int(self.CP.size - 1)

    def column(self, j: int) -> Tuple[np.ndarray, np.ndarray]:
        lo, hi = self.CP[j], self.CP[j + 1]
        return self.VA[lo:hi], self.CI[lo:hi]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "VA": self.VA.tolist(),
            "CI": self.CI.tolist(),
            "RM": self.RM.tolist(),
            "CP": self.CP.tolist(),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "CsscMatrix":
        return cls(data["VA"], data["CI"], data["RM"], data["CP"], int(data["rows"]), int(data["cols"]))


def coo_to_csr(m: CooMatrix) -> CsrMatrix:
    """COO → 正準 CSR（重複座標はエラー、明示的ゼロは除去）"""
    if m.nnz:
        keys = m.row * m.cols + m.col
        unique, counts = np.unique(keys, return_counts=True)
        if np.any(counts > 1):
            dup = int(unique[np.argmax(counts > 1)])
            raise DuplicateEntry(f"Duplicate entry at (row={dup // m.cols}, col={dup % m.cols})")

    keep = m.values != 0
    if not np.all(keep):
        logger.debug("Dropping %d explicit zeros", int((~keep).sum()))
    row, col, values = m.row[keep], m.col[keep], m.values[keep]

    if values.size == 0:
        return CsrMatrix(m.rows, m.cols, [], [], np.zeros(m.rows + 1, dtype=np.int64))

    matrix = scipy.sparse.coo_matrix((values, (row, col)), shape=(m.rows, m.cols)).tocsr()
    matrix.sort_indices()
    return CsrMatrix(m.rows, m.cols, matrix.data, matrix.indices, matrix.indptr)


def csr_to_cssc(m: CsrMatrix) -> CsscMatrix:
    """CSR → CSSC（左詰めした行を列優先で走査）"""
    row_nnz = m.row_nnz
    # 非ゼロ数の降順、同数なら元の行番号の昇順
    row_map = np.argsort(-row_nnz, kind="stable")
    max_row_nnz = int(row_nnz.max()) if m.rows and m.nnz else 0

    sorted_nnz = row_nnz[row_map]
    heights = np.array([int(np.count_nonzero(sorted_nnz > j)) for j in range(max_row_nnz)], dtype=np.int64)
    col_ptrs = np.concatenate([[0], np.cumsum(heights)]).astype(np.int64)

    values = np.empty(m.nnz, dtype=np.int64)
    col_idx = np.empty(m.nnz, dtype=np.int64)
    starts = m.row_ptrs[row_map]
    for j, height in enumerate(heights):
        positions = starts[:height] + j
        values[col_ptrs[j]:col_ptrs[j + 1]] = m.values[positions]
        col_idx[col_ptrs[j]:col_ptrs[j + 1]] = m.col_indices[positions]

    logger.debug("CSSC: %dx%d nnz=%d aligned_cols=%d", m.rows, m.cols, m.nnz, max_row_nnz)
    return CsscMatrix(values, col_idx, row_map, col_ptrs, m.rows, m.cols)


def _sorted_row_positions(m: CsscMatrix) -> np.ndarray:
    """各非ゼロが属するソート済み行の位置"""
    heights = m.heights
    col_of = np.repeat(np.arange(heights.size), heights)
    return np.arange(m.nnz) - m.CP[col_of]


def cssc_expand(m: CsscMatrix) -> np.ndarray:
    """ソート済み行順の密行列へ展開（行 p は元の行 RM[p]）"""
    dense = np.zeros((m.rows, m.cols), dtype=np.int64)
    if m.nnz:
        dense[_sorted_row_positions(m), m.CI] = m.VA
    return dense


def cssc_to_dense(m: CsscMatrix) -> np.ndarray:
    """RM で行順を元に戻した密行列"""
    dense = np.zeros((m.rows, m.cols), dtype=np.int64)
    dense[m.RM] = cssc_expand(m)
    return dense


def validate_cssc(m: CsscMatrix) -> List[str]:
    """CSSC 不変条件の検査（違反が無ければ空リスト）"""
    violations = []
    nnz = m.VA.size

    if m.CI.size != nnz:
        violations.append(f"CI length {m.CI.size} != VA length {nnz}")
    if m.CP.size == 0 or m.CP[0] != 0:
        violations.append("CP[0] must be 0")
    else:
        heights = np.diff(m.CP)
        for j in np.flatnonzero(heights < 0):
            violations.append(f"CP not non-decreasing at j={j}")
        if m.CP[-1] != nnz:
            violations.append(f"CP[L]={m.CP[-1]} != nnz={nnz}")
        for j in np.flatnonzero(np.diff(heights) > 0):
            violations.append(f"aligned-column heights increase at j={j + 1}")
        if heights.size and heights.max() > m.rows:
            violations.append(f"aligned column taller than row count {m.rows}")

    if m.RM.size != m.rows or not np.array_equal(np.sort(m.RM), np.arange(m.rows)):
        violations.append("RM not a permutation")

    out_of_range = np.flatnonzero((m.CI < 0) | (m.CI >= m.cols))
    for k in out_of_range:
        violations.append(f"CI out of range at k={k}")

    if not violations and nnz:
        # 各ソート済み行の中で元の列インデックスが増加していること
        positions = _sorted_row_positions(m)
        order = np.lexsort((np.arange(nnz), positions))
        same_row = np.diff(positions[order]) == 0
        not_increasing = np.diff(m.CI[order]) <= 0
        for k in np.flatnonzero(same_row & not_increasing):
            violations.append(f"CI not increasing along sorted row p={positions[order][k]}")

    return violations
