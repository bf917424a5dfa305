"""
CSSC-SpMV - SpMV Result
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np

from he.ledger import OpLedger

from .transcript import MessageLedger


@dataclass
class SpmvResult:
    """SpMV 1 回分の結果と台帳（values は元の行順）"""

    values: np.ndarray
    op_ledger: OpLedger
    message_ledger: MessageLedger
    n_ct: int
    noise_budget_remaining_bits: int
    chunk_shapes: List[List[Tuple[int, int]]] = field(default_factory=list)

    @property
    def n_slices(self) -> int:
        return len(self.chunk_shapes)

    @property
    def r_list(self) -> List[int]:
        return [r for shapes in self.chunk_shapes for r, _ in shapes]

    @property
    def c_list(self) -> List[int]:
        return [c for shapes in self.chunk_shapes for _, c in shapes]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "values": [int(v) for v in self.values],
            "n_ct": self.n_ct,
            "noise_budget_remaining_bits": self.noise_budget_remaining_bits,
            "chunk_shapes": [[list(shape) for shape in shapes] for shapes in self.chunk_shapes],
            "op_counts": self.op_ledger.to_dict(),
            "transcript": self.message_ledger.model_dump(mode="json"),
        }
