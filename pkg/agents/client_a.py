"""
CSSC-SpMV - Client A Agent (matrix owner)
"""

import logging
from typing import Any, Dict

from formats.sparse import csr_to_cssc
from protocol.transcript import MessageKind, PartyRole
from tools.chunker import generate_chunks

logger = logging.getLogger(__name__)


class ClientA:
    """CSSC 変換・チャンク化・行列値の暗号化を行うエージェント"""

    def process(self, state: Dict[str, Any]) -> Dict[str, Any]:
        """各スライスを CSSC チャンクにして暗号化し、Cloud と Client B へ送る"""
        backend = state["backend"]
        transcript = state["transcript"]
        chunk_size = state["chunk_size"]
        to_holder_b = transcript.key_holder == PartyRole.CLIENT_B

        chunk_sets, ct_values = [], []
        for index, matrix in enumerate(state["slices"]):
            chunk_set = generate_chunks(csr_to_cssc(matrix), chunk_size, backend.slot_count)
            chunk_sets.append(chunk_set)
            ct_values.append([backend.encrypt_values(chunk.value_flat) for chunk in chunk_set.chunks])

            if not chunk_set.n_ct:
                continue

            transcript.send_ciphertexts(
                PartyRole.CLIENT_A, PartyRole.CLOUD, chunk_set.n_ct, backend.params,
                slice_index=index, note="encrypted CSSC value chunks",
            )
            transcript.send_plain(
                PartyRole.CLIENT_A, PartyRole.CLOUD, MessageKind.CHUNK_SHAPE_META,
                n_ints=2 * chunk_set.n_ct, slice_index=index, note="r_list, c_list",
            )
            transcript.send_plain(
                PartyRole.CLIENT_A, PartyRole.CLIENT_B, MessageKind.COLUMN_INDEX_PLAIN,
                n_ints=sum(chunk.size for chunk in chunk_set.chunks), n_shapes=chunk_set.n_ct,
                slice_index=index, note="flattened column indices",
            )
            if to_holder_b:
                transcript.send_plain(
                    PartyRole.CLIENT_A, PartyRole.CLIENT_B, MessageKind.ROW_MAP_PLAIN,
                    n_ints=matrix.rows, slice_index=index, note="row map for unpermutation",
                )

            logger.debug("Client A slice %d: %d chunks %s", index, chunk_set.n_ct, list(zip(chunk_set.r_list, chunk_set.c_list)))

        return {
            **state,
            "chunk_sets": chunk_sets,
            "ct_values": ct_values
        }
