"""
CSSC-SpMV - Cloud Server Agent
"""

import logging
from typing import Any, Dict

from protocol.transcript import MessageKind, PartyRole
from tools.aggregator import aggregate

logger = logging.getLogger(__name__)


class CloudServer:
    """暗号文同士の乗算と集約を行うエージェント（平文は一切扱わない）"""

    def process(self, state: Dict[str, Any]) -> Dict[str, Any]:
        backend = state["backend"]
        transcript = state["transcript"]

        ct_results = []
        for index, (chunk_set, values, vectors) in enumerate(
            zip(state["chunk_sets"], state["ct_values"], state.get("ct_vectors", []))
        ):
            if not chunk_set.n_ct:
                ct_results.append(None)
                continue

            # Step 1: チャンクごとに HE-Mult 1 回
            products = [backend.he_mult(ct_value, ct_vector) for ct_value, ct_vector in zip(values, vectors)]
            # Step 2: チャンク内 totalSum + マスク付きチャンク間加算
            result = aggregate(backend, products, chunk_set.r_list, chunk_set.c_list)
            ct_results.append(result)

            transcript.send_ciphertexts(
                PartyRole.CLOUD, transcript.key_holder, 1, backend.params,
                kind=MessageKind.RESULT_CIPHERTEXT, slice_index=index, note="aggregated result",
            )

        logger.debug("Cloud produced %d result ciphertexts", sum(r is not None for r in ct_results))
        return {
            **state,
            "ct_results": ct_results
        }
