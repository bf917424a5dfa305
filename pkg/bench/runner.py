"""
CSSC-SpMV - Benchmark Runner
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime
from typing import List, Optional, Sequence, Tuple

import numpy as np

from formats.matrix_market import read_matrix_market
from formats.sparse import CsrMatrix, coo_to_csr
from errors import DimensionMismatch, NonSquare
from he.params import HEParams
from protocol.result import SpmvResult
from protocol.transcript import PartyRole
from tools.baseline_diag import diag_spmv
from tools.cost_calculator import CostTable, estimate_time
from workflow import spmv_partitioned

from .config import BenchConfig, MatrixSpec
from .report_generator import BenchRecord, BenchReport, CommStats
from .suitesparse import cached_path
from .synthetic import random_sparse, random_vector, scaling_suite

logger = logging.getLogger(__name__)


def dense_oracle(matrix: CsrMatrix, vector: np.ndarray, modulus: int) -> np.ndarray:
    """平文 SpMV を mod t の符号付き表現で返す"""
    reduced_matrix = matrix.to_scipy().astype(np.int64)
    reduced_matrix.data = np.mod(reduced_matrix.data, modulus)
    product = np.mod(reduced_matrix.dot(np.mod(np.asarray(vector, dtype=np.int64), modulus)), modulus)
    return np.where(product > modulus // 2, product - modulus, product)


def scaling_slope(nnz: Sequence[int], cost: Sequence[float]) -> Optional[float]:
    """log10(cost) を log10(nnz) に最小二乗直線で当てはめた傾き"""
    points = [(n, c) for n, c in zip(nnz, cost) if n > 0 and c > 0]
    if len({n for n, _ in points}) < 2:
        return None
    x = np.log10([n for n, _ in points])
    y = np.log10([c for _, c in points])
    return round(float(np.polyfit(x, y, 1)[0]), 6)


def comm_stats(result: SpmvResult, params: HEParams) -> CommStats:
    transcript = result.message_ledger
    return CommStats(
        a_to_cloud_mb=round(transcript.ciphertext_count(PartyRole.CLIENT_A, PartyRole.CLOUD) * params.ciphertext_size_mb, 6),
        b_to_cloud_mb=round(transcript.ciphertext_count(PartyRole.CLIENT_B, PartyRole.CLOUD) * params.ciphertext_size_mb, 6),
        a_to_b_bytes=transcript.total_bytes(PartyRole.CLIENT_A, PartyRole.CLIENT_B),
    )


def estimated_memory_mb(result: SpmvResult, params: HEParams) -> float:
    """アップロードされた暗号文数 × 暗号文サイズ"""
    transcript = result.message_ledger
    uploads = (transcript.ciphertext_count(PartyRole.CLIENT_A, PartyRole.CLOUD)
               + transcript.ciphertext_count(PartyRole.CLIENT_B, PartyRole.CLOUD))
    return round(uploads * params.ciphertext_size_mb, 6)


def load_matrix(spec: MatrixSpec, config: BenchConfig) -> CsrMatrix:
    if spec.synthetic is not None:
        s = spec.synthetic
        return random_sparse(s.rows, s.cols, s.nnz, seed=s.seed)
    if spec.suitesparse is not None:
        path = cached_path(spec.suitesparse, config.cache_dir)
        if not path.exists():
            raise FileNotFoundError(f"{spec.suitesparse} is not cached at {path}; run `fetch {spec.suitesparse}` first")
    else:
        path = spec.path
    return coo_to_csr(read_matrix_market(path))


def check_reference_upload(record: BenchRecord, params: HEParams) -> bool:
    """A→Cloud の実測アップロード量を既知の値と比べる（不一致は WARNING のみ）"""
    reference = record.reference_a_to_cloud_mb
    if reference is None or np.isclose(record.comm.a_to_cloud_mb, reference):
        return True
    logger.warning(
        "Upload mismatch for %s: A->Cloud %.2f MB (%d ciphertexts), reference %.2f MB (%d ciphertexts)",
        record.name, record.comm.a_to_cloud_mb, record.n_ct,
        reference, round(reference / params.ciphertext_size_mb) if params.ciphertext_size_mb else 0,
    )
    return False


def bench_matrix(name: str, matrix: CsrMatrix, config: BenchConfig,
                 table: Optional[CostTable] = None,
                 reference_a_to_cloud_mb: Optional[float] = None) -> BenchRecord:
    """1 行列分のパイプライン + ベースライン計測"""
    table = table or CostTable.from_settings()
    params = config.he_params()
    vector = random_vector(matrix.cols, seed=config.seed)

    result = spmv_partitioned(matrix, vector, params, config.chunk_size, config.key_holder)
    ours_ms = estimate_time(result.op_ledger, table)
    record = BenchRecord(
        name=name,
        rows=matrix.rows,
        cols=matrix.cols,
        nnz=matrix.nnz,
        density=round(matrix.nnz / (matrix.rows * matrix.cols), 8) if matrix.rows and matrix.cols else 0.0,
        n_ct=result.n_ct,
        op_counts=result.op_ledger.to_dict(),
        estimated_time_ms=ours_ms,
        cloud_cost_ms=estimate_time(result.op_ledger, table, cloud_only=True),
        est_memory_mb=estimated_memory_mb(result, params),
        comm=comm_stats(result, params),
        noise_remaining_bits=result.noise_budget_remaining_bits,
        verified=bool(np.array_equal(result.values, dense_oracle(matrix, vector, params.plaintext_modulus))),
        reference_a_to_cloud_mb=reference_a_to_cloud_mb,
    )
    check_reference_upload(record, params)

    if config.baseline:
        try:
            baseline = diag_spmv(matrix, vector, params, config.key_holder)
        except (NonSquare, DimensionMismatch) as e:
            logger.info("Baseline skipped for %s: %s", name, e)
        else:
            baseline_ms = estimate_time(baseline.op_ledger, table)
            record.baseline_counts = baseline.op_ledger.to_dict()
            record.baseline_estimated_time_ms = baseline_ms
            record.speedup = round(baseline_ms / ours_ms, 6) if ours_ms > 0 else None

    return record


def _safe_bench(item: Tuple[str, object, BenchConfig], table: CostTable) -> BenchRecord:
    name, source, config = item
    try:
        if isinstance(source, CsrMatrix):
            return bench_matrix(name, source, config, table)
        matrix = load_matrix(source, config)
        return bench_matrix(name, matrix, config, table, source.reference_a_to_cloud_mb)
    except Exception as e:
        logger.warning("Benchmark of %s failed: %s", name, e)
        return BenchRecord(name=name, error=f"{type(e).__name__}: {e}")


def run_bench(config: BenchConfig, table: Optional[CostTable] = None) -> BenchReport:
    """設定の全行列を計測し、nnz 順のレポートとスケーリング傾きを返す"""
    table = table or CostTable.from_settings()
    items: List[Tuple[str, object, BenchConfig]] = [(spec.name, spec, config) for spec in config.matrices]
    suite_names = set()
    if config.scaling_suite is not None:
        suite = config.scaling_suite
        suite_config = config.model_copy(update={"slot_count": suite.slot_count, "chunk_size": suite.slot_count})
        for name, matrix in scaling_suite(suite.count, suite.min_nnz, suite.max_nnz, suite.nnz_per_row, suite.seed):
            suite_names.add(name)
            items.append((name, matrix, suite_config))

    if config.max_workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=config.max_workers) as executor:
            records = list(executor.map(lambda item: _safe_bench(item, table), items))
    else:
        records = [_safe_bench(item, table) for item in items]

    records.sort(key=lambda r: (r.nnz, r.name))
    # スイートがあれば傾きはスイートの記録だけから求める
    ok = [r for r in records if not r.error and (not suite_names or r.name in suite_names)]
    report = BenchReport(
        params={
            **config.model_dump(mode="json", exclude={"matrices", "cache_dir"}),
            "cost_table_ms": table.model_dump(),
        },
        records=records,
        scaling_slope=scaling_slope([r.nnz for r in ok], [r.cloud_cost_ms for r in ok]),
        generated_at=datetime.now().isoformat(),
    )
    logger.info("Benchmark finished: %d matrices, %d failures", len(records), len(report.failures))
    return report
