"""
サンプル入力ファイル作成スクリプト

input/sample.mtx, input/sample_vector.txt, input/bench.toml を作成する。
"""

from pathlib import Path

from bench.synthetic import random_sparse, random_vector
from formats import CooMatrix, write_matrix_market, write_vector

# 48×48、密度約 5% のサンプル行列
matrix = random_sparse(48, 48, 115, seed=2024)
coo = matrix.to_scipy().tocoo()
sample = CooMatrix(matrix.rows, matrix.cols, coo.row, coo.col, coo.data)

# パスの作成
input_dir = Path("input")
input_dir.mkdir(parents=True, exist_ok=True)

matrix_path = write_matrix_market(input_dir / "sample.mtx", sample, comment="CSSC-SpMV sample matrix")
vector_path = write_vector(input_dir / "sample_vector.txt", random_vector(matrix.cols, seed=2024))

bench_path = input_dir / "bench.toml"
bench_path.write_text(
    """# CSSC-SpMV benchmark sweep
slot_count = 8192
plaintext_modulus = 65537
chunk_size = 8192
key_holder = "A"
seed = 0
baseline = true

[[matrices]]
name = "sample"
path = "sample.mtx"

[[matrices]]
name = "banded_random"
synthetic = { rows = 256, cols = 256, nnz = 2000, seed = 1 }

# SuiteSparse matrices are read from the cache only; run `python main.py fetch HB/arc130` first
# [[matrices]]
# name = "arc130"
# suitesparse = "HB/arc130"
# reference_a_to_cloud_mb = 1.04

# nnz 10^2 .. 10^5 scaling sweep; runs at its own slot_count so cost grows with nnz
[scaling_suite]
count = 10
min_nnz = 100
max_nnz = 100000
nnz_per_row = 4
slot_count = 16
""",
    encoding="utf-8",
)

print(f"✅ サンプル行列を作成しました: {matrix_path}")
print(f"✅ サンプルベクトルを作成しました: {vector_path}")
print(f"✅ ベンチ設定を作成しました: {bench_path}")
