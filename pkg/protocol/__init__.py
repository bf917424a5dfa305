"""
CSSC-SpMV - Protocol Module
"""

from .audit import AuditReport, Violation, audit_leakage
from .result import SpmvResult
from .transcript import Message, MessageKind, MessageLedger, PartyRole

__all__ = [
    "AuditReport",
    "Message",
    "MessageKind",
    "MessageLedger",
    "PartyRole",
    "SpmvResult",
    "Violation",
    "audit_leakage"
]
