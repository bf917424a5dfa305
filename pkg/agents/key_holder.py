"""
CSSC-SpMV - Key Holder Agent
"""

from typing import Any, Dict

import numpy as np


class KeyHolder:
    """結果を復号し、行マップで元の行順に戻してスライスを積み上げるエージェント"""

    def process(self, state: Dict[str, Any]) -> Dict[str, Any]:
        backend = state["backend"]
        budgets = []
        pieces = []

        for chunk_set, ct_result in zip(state["chunk_sets"], state.get("ct_results") or [None] * len(state["chunk_sets"])):
            rows = chunk_set.rows
            sorted_result = np.zeros(rows, dtype=np.int64)
            if ct_result is not None:
                mid_res = backend.decrypt(ct_result)
                n = min(rows, backend.slot_count)
                sorted_result[:n] = mid_res[:n]
                budgets.append(ct_result.noise_budget_bits)

            # Res[RM[idx]] = mid_res[idx]
            piece = np.zeros(rows, dtype=np.int64)
            piece[chunk_set.row_map] = sorted_result
            pieces.append(piece)

        values = np.concatenate(pieces) if pieces else np.zeros(0, dtype=np.int64)
        return {
            **state,
            "values": backend.decode_signed(values),
            "noise_remaining": min(budgets) if budgets else backend.params.noise_model.initial_budget_bits
        }
