"""
CSSC-SpMV - Protocol Transcript

三者プロトコル（Client A / Client B / Cloud）の送受信記録とバイト数計上。
"""

from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from he.params import HEParams

# 平文メッセージのシリアライズ: int32 配列 + チャンクごとの形状ヘッダ
INT_BYTES = 4
SHAPE_HEADER_BYTES = 8


class PartyRole(str, Enum):
    CLIENT_A = "ClientA"
    CLIENT_B = "ClientB"
    CLOUD = "Cloud"

    @classmethod
    def key_holder(cls, label: str) -> "PartyRole":
        """'A' / 'B' から秘密鍵保持者を決める"""
        return {"A": cls.CLIENT_A, "B": cls.CLIENT_B}[label.upper()]


class MessageKind(str, Enum):
    CIPHERTEXT_BATCH = "CiphertextBatch"
    COLUMN_INDEX_PLAIN = "ColumnIndexPlain"
    CHUNK_SHAPE_META = "ChunkShapeMeta"
    RESULT_CIPHERTEXT = "ResultCiphertext"
    ROW_MAP_PLAIN = "RowMapPlain"
    PLAINTEXT_VALUES = "PlaintextValues"


class Message(BaseModel):
    """1 回の送信"""

    sender: PartyRole
    receiver: PartyRole
    kind: MessageKind
    payload_bytes: int = Field(ge=0)
    ciphertext_count: int = Field(0, ge=0)
    slice_index: int = 0
    note: str = ""


class MessageLedger(BaseModel):
    """追記専用のプロトコル記録"""

    key_holder: PartyRole = PartyRole.CLIENT_A
    messages: List[Message] = Field(default_factory=list)

    def send_ciphertexts(
        self, sender: PartyRole, receiver: PartyRole, count: int, params: HEParams,
        kind: MessageKind = MessageKind.CIPHERTEXT_BATCH, slice_index: int = 0, note: str = ""
    ) -> Message:
        return self._append(Message(
            sender=sender, receiver=receiver, kind=kind,
            payload_bytes=params.batch_bytes(count), ciphertext_count=count,
            slice_index=slice_index, note=note,
        ))

    def send_plain(
        self, sender: PartyRole, receiver: PartyRole, kind: MessageKind, n_ints: int,
        n_shapes: int = 0, slice_index: int = 0, note: str = ""
    ) -> Message:
        return self._append(Message(
            sender=sender, receiver=receiver, kind=kind,
            payload_bytes=n_ints * INT_BYTES + n_shapes * SHAPE_HEADER_BYTES,
            slice_index=slice_index, note=note,
        ))

    def _append(self, message: Message) -> Message:
        self.messages.append(message)
        return message

    def between(self, sender: PartyRole, receiver: PartyRole, kind: Optional[MessageKind] = None) -> List[Message]:
        return [
            m for m in self.messages
            if m.sender == sender and m.receiver == receiver and (kind is None or m.kind == kind)
        ]

    def ciphertext_count(self, sender: PartyRole, receiver: PartyRole) -> int:
        return sum(m.ciphertext_count for m in self.between(sender, receiver))

    def total_bytes(self, sender: PartyRole, receiver: PartyRole) -> int:
        return sum(m.payload_bytes for m in self.between(sender, receiver))

    def totals_by_direction(self) -> Dict[str, int]:
        """方向別の合計バイト数 ('ClientA->Cloud' など)"""
        totals: Dict[str, int] = {}
        for m in self.messages:
            key = f"{m.sender.value}->{m.receiver.value}"
            totals[key] = totals.get(key, 0) + m.payload_bytes
        return totals
