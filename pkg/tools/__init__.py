"""
CSSC-SpMV - Tools Module
"""

from .aggregator import aggregate, inter_chunk_sum, intra_chunk_sum, num_bits, rotation_count, rotation_schedule
from .baseline_diag import DiagPlan, diag_spmv, plan_diagonals
from .chunker import Chunk, ChunkSet, generate_chunks, partition_rows
from .cost_calculator import CostTable, LedgerComparison, compare_ledgers, estimate_time
from .vector_reorg import ReorgVector, reorg_vector

__all__ = [
    "Chunk",
    "ChunkSet",
    "CostTable",
    "DiagPlan",
    "LedgerComparison",
    "ReorgVector",
    "aggregate",
    "compare_ledgers",
    "diag_spmv",
    "estimate_time",
    "generate_chunks",
    "inter_chunk_sum",
    "intra_chunk_sum",
    "num_bits",
    "partition_rows",
    "plan_diagonals",
    "reorg_vector",
    "rotation_count",
    "rotation_schedule"
]
