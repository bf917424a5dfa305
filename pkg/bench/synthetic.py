"""
CSSC-SpMV - Synthetic Matrix Suites

位置は重複なしの一様乱択、値は [-100, 100] の非ゼロ整数、すべて seed 固定。
"""

from typing import List, Optional, Tuple

import numpy as np
import scipy.sparse

from formats.sparse import CsrMatrix

VALUE_LIMIT = 100


def random_values(rng: np.random.Generator, size: int) -> np.ndarray:
    """[-100, 100] から 0 を除いた整数"""
    magnitude = rng.integers(1, VALUE_LIMIT + 1, size=size)
    return magnitude * rng.choice(np.array([-1, 1]), size=size)


def random_sparse(rows: int, cols: int, nnz: int, seed: Optional[int] = None,
                  rng: Optional[np.random.Generator] = None) -> CsrMatrix:
    if not 0 <= nnz <= rows * cols:
        raise ValueError(f"nnz={nnz} impossible for a {rows}x{cols} matrix")
    rng = rng if rng is not None else np.random.default_rng(seed)
    flat = rng.choice(rows * cols, size=nnz, replace=False)
    matrix = scipy.sparse.coo_matrix(
        (random_values(rng, nnz), (flat // cols, flat % cols)), shape=(rows, cols), dtype=np.int64
    )
    return CsrMatrix.from_scipy(matrix)


def random_density(rows: int, cols: int, density: float, rng: np.random.Generator) -> CsrMatrix:
    return random_sparse(rows, cols, int(round(density * rows * cols)), rng=rng)


def random_vector(size: int, seed: Optional[int] = None,
                  rng: Optional[np.random.Generator] = None) -> np.ndarray:
    rng = rng if rng is not None else np.random.default_rng(seed)
    return rng.integers(-VALUE_LIMIT, VALUE_LIMIT + 1, size=size)


def scaling_suite(count: int = 10, min_nnz: int = 100, max_nnz: int = 100_000,
                  nnz_per_row: int = 4, seed: int = 0) -> List[Tuple[str, CsrMatrix]]:
    """行あたり非ゼロ数を固定し、nnz を対数等間隔に並べた正方行列群"""
    rng = np.random.default_rng(seed)
    suite = []
    for nnz in np.unique(np.geomspace(min_nnz, max_nnz, count).round().astype(int)):
        n = max(1, int(np.ceil(nnz / nnz_per_row)))
        suite.append((f"synthetic_n{n}_nnz{nnz}", random_sparse(n, n, int(nnz), rng=rng)))
    return suite


def dominance_suite(count: int = 50, min_n: int = 64, max_n: int = 256,
                    min_density: float = 0.01, max_density: float = 0.10,
                    seed: int = 0) -> List[Tuple[str, CsrMatrix]]:
    """対角法ベースラインとの比較用の疎な正方行列群"""
    rng = np.random.default_rng(seed)
    suite = []
    for index in range(count):
        n = int(rng.integers(min_n, max_n + 1))
        density = float(rng.uniform(min_density, max_density))
        suite.append((f"dominance_{index:02d}_n{n}", random_density(n, n, density, rng)))
    return suite


def three_chunk_fixture() -> Tuple[CsrMatrix, np.ndarray, int]:
    """チャンク形状が (10,1), (7,2), (3,4) になる 10×10 行列・ベクトル・チャンクサイズ

    行ごとの非ゼロ数は 7 が 3 行、3 が 4 行、1 が 3 行。チャンクサイズ 14 で
    整列列の高さ 10, 7, 7, 3, 3, 3, 3 が 3 個の暗号文に分かれる。
    """
    rng = np.random.default_rng(7)
    row_counts = [7, 3, 1, 3, 7, 1, 3, 7, 3, 1]
    dense = np.zeros((10, 10), dtype=np.int64)
    for i, count in enumerate(row_counts):
        cols = np.sort(rng.choice(10, size=count, replace=False))
        dense[i, cols] = random_values(rng, count)
    return CsrMatrix.from_dense(dense), np.arange(1, 11, dtype=np.int64), 14
