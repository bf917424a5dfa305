"""
CSSC-SpMV - Client B Agent (vector owner)
"""

from typing import Any, Dict

from protocol.transcript import PartyRole
from tools.vector_reorg import reorg_vector


class ClientB:
    """受け取った列インデックスでベクトルを再配置し暗号化するエージェント"""

    def process(self, state: Dict[str, Any]) -> Dict[str, Any]:
        backend = state["backend"]
        transcript = state["transcript"]

        ct_vectors = []
        for index, chunk_set in enumerate(state["chunk_sets"]):
            reorganized = reorg_vector(state["vector"], chunk_set.colidx_per_chunk)
            ct_vectors.append([backend.encrypt_values(segment) for segment in reorganized.segments])
            if chunk_set.n_ct:
                transcript.send_ciphertexts(
                    PartyRole.CLIENT_B, PartyRole.CLOUD, chunk_set.n_ct, backend.params,
                    slice_index=index, note="encrypted reorganized vector",
                )

        return {
            **state,
            "ct_vectors": ct_vectors
        }
