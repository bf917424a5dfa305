"""
CSSC-SpMV - Matrix Market Reader / Writer
"""

import logging
from pathlib import Path
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np
import pandas as pd
import scipy.io
import scipy.sparse

from config.settings import settings
from errors import ParseError, UnsupportedFormat
from .sparse import CooMatrix

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

SUPPORTED_FIELDS = ("real", "integer", "pattern")
SUPPORTED_SYMMETRIES = ("general", "symmetric", "skew-symmetric")


def _text_lines(path: Path) -> Iterator[Tuple[int, str]]:
    """(行番号, 行) を返す。UTF-8 として読めない行は ParseError"""
    with open(path, "rb") as f:
        for number, raw in enumerate(f, start=1):
            try:
                yield number, raw.decode("utf-8")
            except UnicodeDecodeError:
                raise ParseError("invalid UTF-8", number) from None


def _data_lines(path: Path) -> Tuple[List[str], List[int]]:
    """ヘッダ・コメント・サイズ行を除いたデータ行と、その行番号（1 始まり）"""
    lines, numbers = [], []
    size_line_seen = False
    for number, line in _text_lines(path):
        stripped = line.strip()
        if number == 1 or not stripped or stripped.startswith("%"):
            continue
        if not size_line_seen:
            size_line_seen = True
            continue
        lines.append(stripped)
        numbers.append(number)
    return lines, numbers


def _parse_entries(lines: List[str], numbers: List[int], n_fields: int) -> pd.DataFrame:
    """データ行を数値 DataFrame に変換（不正行は行番号付きで ParseError）"""
    tokens = pd.Series(lines, dtype=object).str.split()
    counts = tokens.str.len()
    bad = np.flatnonzero(counts.to_numpy() != n_fields)
    if bad.size:
        first = int(bad[0])
        raise ParseError(f"expected {n_fields} fields, found {counts.iloc[first]}", numbers[first])

    frame = pd.DataFrame(tokens.tolist(), columns=list(range(n_fields)))
    frame = frame.apply(pd.to_numeric, errors="coerce")
    bad = np.flatnonzero(frame.isna().any(axis=1).to_numpy())
    if bad.size:
        raise ParseError("non-numeric entry", numbers[int(bad[0])])
    return frame


def _quantize(values: np.ndarray, scale: float) -> np.ndarray:
    scaled = values * scale
    rounded = np.rint(scaled)
    inexact = int(np.count_nonzero(rounded != scaled))
    if inexact:
        logger.warning(
            "Quantized %d non-integer entries (scale=%s); results are exact only for the rounded matrix",
            inexact, scale,
        )
    return rounded.astype(np.int64)


def read_matrix_market(path: PathLike, quantization_scale: Optional[float] = None) -> CooMatrix:
    """Matrix Market (coordinate) を 0 始まりの CooMatrix として読み込む"""
    path = Path(path)
    scale = settings.quantization_scale if quantization_scale is None else quantization_scale
    lines, numbers = _data_lines(path)

    try:
        rows, cols, entries, fmt, field, symmetry = scipy.io.mminfo(str(path))
    except (ValueError, IndexError) as e:
        raise ParseError(f"invalid Matrix Market header: {e}", 1)

    if fmt != "coordinate":
        raise UnsupportedFormat(f"Matrix Market format '{fmt}' is not supported (coordinate only)")
    if field not in SUPPORTED_FIELDS:
        raise UnsupportedFormat(f"Matrix Market field '{field}' is not supported")
    if symmetry not in SUPPORTED_SYMMETRIES:
        raise UnsupportedFormat(f"Matrix Market symmetry '{symmetry}' is not supported")

    if len(lines) != entries:
        raise ParseError(f"header declares {entries} entries, found {len(lines)}", numbers[-1] if numbers else None)

    n_fields = 2 if field == "pattern" else 3
    if lines:
        frame = _parse_entries(lines, numbers, n_fields)
        raw_row, raw_col = frame[0].to_numpy(), frame[1].to_numpy()
        bad = np.flatnonzero(
            (raw_row != np.floor(raw_row)) | (raw_col != np.floor(raw_col))
            | (raw_row < 1) | (raw_row > rows) | (raw_col < 1) | (raw_col > cols)
        )
        if bad.size:
            raise ParseError("index out of range", numbers[int(bad[0])])
        row = raw_row.astype(np.int64) - 1
        col = raw_col.astype(np.int64) - 1

        if field == "pattern":
            values = np.ones(row.size, dtype=np.int64)
        elif field == "integer":
            raw = frame[2].to_numpy()
            bad = np.flatnonzero(raw != np.floor(raw))
            if bad.size:
                raise ParseError("non-integer value in integer field", numbers[int(bad[0])])
            values = raw.astype(np.int64)
        else:
            values = _quantize(frame[2].to_numpy(dtype=float), scale)
    else:
        row = col = values = np.zeros(0, dtype=np.int64)

    if symmetry != "general":
        off = row != col
        sign = -1 if symmetry == "skew-symmetric" else 1
        row, col, values = (
            np.concatenate([row, col[off]]),
            np.concatenate([col, row[off]]),
            np.concatenate([values, sign * values[off]]),
        )

    nonzero = values != 0
    dropped = int(np.count_nonzero(~nonzero))
    if dropped:
        logger.warning("Dropped %d explicit zero entries from %s", dropped, path.name)

    logger.info("Loaded %s: %dx%d, %d stored non-zeros (%s, %s)", path.name, rows, cols, int(nonzero.sum()), field, symmetry)
    return CooMatrix(rows, cols, row[nonzero], col[nonzero], values[nonzero])


def write_matrix_market(path: PathLike, matrix: CooMatrix, comment: str = "") -> Path:
    """CooMatrix を integer/general の Matrix Market として保存"""
    path = Path(path)
    # mmwrite は .mtx 以外の拡張子に .mtx を付与する
    target = path if path.suffix == ".mtx" else path.with_name(path.name + ".mtx")
    target.parent.mkdir(parents=True, exist_ok=True)
    coo = scipy.sparse.coo_matrix((matrix.values, (matrix.row, matrix.col)), shape=(matrix.rows, matrix.cols))
    scipy.io.mmwrite(str(target), coo, comment=comment, field="integer", symmetry="general")
    return target


def read_vector(path: PathLike) -> np.ndarray:
    """1 行 1 整数のベクトルファイルを読み込む"""
    path = Path(path)
    lines, numbers = [], []
    for number, line in _text_lines(path):
        stripped = line.strip()
        if stripped and not stripped.startswith(("#", "%")):
            lines.append(stripped)
            numbers.append(number)

    values = pd.to_numeric(pd.Series(lines, dtype=object), errors="coerce").to_numpy(dtype=float)
    bad = np.flatnonzero(np.isnan(values) | (values != np.floor(values)))
    if bad.size:
        raise ParseError("expected one integer per line", numbers[int(bad[0])])
    return values.astype(np.int64)


def write_vector(path: PathLike, values) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.savetxt(path, np.asarray(values, dtype=np.int64), fmt="%d")
    return path
