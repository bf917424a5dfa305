"""
CSSC-SpMV - HE Operation Ledger
"""

import threading
from dataclasses import dataclass, field, fields
from typing import Dict

OP_KINDS = ("n_mult_cc", "n_mult_cp", "n_rot", "n_add", "n_enc", "n_dec")


@dataclass
class OpLedger:
    """HE 演算回数の記録（単調増加、明示的 reset のみ）"""

    n_mult_cc: int = 0
    n_mult_cp: int = 0
    n_rot: int = 0
    n_add: int = 0
    n_enc: int = 0
    n_dec: int = 0
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False, compare=False)

    def record(self, kind: str, count: int = 1) -> None:
        if kind not in OP_KINDS:
            raise KeyError(f"Unknown HE operation kind: {kind}")
        with self._lock:
            setattr(self, kind, getattr(self, kind) + count)

    def reset(self) -> None:
        with self._lock:
            for kind in OP_KINDS:
                setattr(self, kind, 0)

    def merge(self, other: "OpLedger") -> "OpLedger":
        """2 つの台帳の和（新しい台帳を返す）"""
        return OpLedger(**{kind: getattr(self, kind) + getattr(other, kind) for kind in OP_KINDS})

    def cloud_counts(self) -> Dict[str, int]:
        """クラウド側の演算のみ（乗算・回転・加算）"""
        return {kind: getattr(self, kind) for kind in ("n_mult_cc", "n_mult_cp", "n_rot", "n_add")}

    def to_dict(self) -> Dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name in OP_KINDS}

    @classmethod
    def from_dict(cls, data: Dict[str, int]) -> "OpLedger":
        return cls(**{kind: int(data.get(kind, 0)) for kind in OP_KINDS})
