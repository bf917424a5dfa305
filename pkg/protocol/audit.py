"""
CSSC-SpMV - Leakage Audit

半正直モデルでの漏洩プロファイル検査:
  (a) Cloud 宛ては CiphertextBatch / ChunkShapeMeta のみ
  (b) 列インデックス・行マップの平文は A→B のみ
  (c) 復号値は秘密鍵保持者以外に渡らない
"""

import logging
from typing import List

from pydantic import BaseModel, Field

from .transcript import MessageKind, MessageLedger, PartyRole

logger = logging.getLogger(__name__)

CLOUD_ALLOWED = (MessageKind.CIPHERTEXT_BATCH, MessageKind.CHUNK_SHAPE_META)
STRUCTURE_KINDS = (MessageKind.COLUMN_INDEX_PLAIN, MessageKind.ROW_MAP_PLAIN)

RULES = {
    "a": "Cloud-bound message must be CiphertextBatch or ChunkShapeMeta",
    "b": "Plaintext structure (column indices, row map) may flow only ClientA -> ClientB",
    "c": "Decrypted values may reach only the secret-key holder",
}


class Violation(BaseModel):
    rule: str
    message_index: int
    description: str


class AuditReport(BaseModel):
    passed: bool
    checked_messages: int
    violations: List[Violation] = Field(default_factory=list)

    @property
    def status(self) -> str:
        return "PASS" if self.passed else "FAIL"


def audit_leakage(ledger: MessageLedger) -> AuditReport:
    """記録全体を検査し、違反メッセージを列挙する"""
    violations = []
    for index, m in enumerate(ledger.messages):
        route = f"{m.kind.value} {m.sender.value}->{m.receiver.value}"

        if m.receiver == PartyRole.CLOUD and m.kind not in CLOUD_ALLOWED:
            violations.append(Violation(rule="a", message_index=index, description=f"{RULES['a']}: got {route}"))

        if m.kind in STRUCTURE_KINDS and not (m.sender == PartyRole.CLIENT_A and m.receiver == PartyRole.CLIENT_B):
            violations.append(Violation(rule="b", message_index=index, description=f"{RULES['b']}: got {route}"))

        if m.kind == MessageKind.PLAINTEXT_VALUES and m.receiver != ledger.key_holder:
            violations.append(Violation(rule="c", message_index=index, description=f"{RULES['c']}: got {route}"))

    report = AuditReport(passed=not violations, checked_messages=len(ledger.messages), violations=violations)
    if not report.passed:
        logger.warning("Leakage audit FAIL: %d violations", len(violations))
    return report
