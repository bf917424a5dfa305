"""
CSSC-SpMV - Sparse Formats Module
"""

from .sparse import (
    CooMatrix,
    CsrMatrix,
    CsscMatrix,
    coo_to_csr,
    csr_to_cssc,
    cssc_expand,
    cssc_to_dense,
    validate_cssc
)
from .matrix_market import read_matrix_market, read_vector, write_matrix_market, write_vector

__all__ = [
    "read_matrix_market",
    "read_vector",
    "write_matrix_market",
    "write_vector",
    "CooMatrix",
    "CsrMatrix",
    "CsscMatrix",
    "coo_to_csr",
    "csr_to_cssc",
    "cssc_expand",
    "cssc_to_dense",
    "validate_cssc"
]
