"""
CSSC-SpMV - Benchmark Module
"""

from .config import BenchConfig, MatrixSpec, ScalingSuiteSpec, SyntheticSpec, load_bench_config
from .report_generator import BenchRecord, BenchReport, CommStats, ReportGenerator
from .runner import bench_matrix, dense_oracle, run_bench, scaling_slope
from .suitesparse import cached_path, fetch_matrix
from .synthetic import dominance_suite, random_sparse, random_vector, scaling_suite, three_chunk_fixture

__all__ = [
    "BenchConfig",
    "BenchRecord",
    "BenchReport",
    "CommStats",
    "MatrixSpec",
    "ReportGenerator",
    "ScalingSuiteSpec",
    "SyntheticSpec",
    "bench_matrix",
    "cached_path",
    "dense_oracle",
    "dominance_suite",
    "fetch_matrix",
    "load_bench_config",
    "random_sparse",
    "random_vector",
    "run_bench",
    "scaling_slope",
    "scaling_suite",
    "three_chunk_fixture"
]
