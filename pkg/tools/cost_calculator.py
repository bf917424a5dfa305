"""
CSSC-SpMV - Cost Calculator Tool

演算台帳にレイテンシ表を掛けて推定実行時間を出す（非暗号の数値計算のみ）。
"""

from typing import Dict, Optional, Union

from pydantic import BaseModel, ConfigDict, Field

from config.settings import settings
from he.ledger import OpLedger

# 台帳フィールド -> レイテンシ表フィールド
LEDGER_TO_COST = {
    "n_mult_cc": "mult_cc",
    "n_mult_cp": "mult_cp",
    "n_add": "add",
    "n_rot": "rot",
    "n_enc": "enc",
    "n_dec": "dec",
}


class CostTable(BaseModel):
    """HE 演算 1 回あたりのレイテンシ (ms)"""

    model_config = ConfigDict(frozen=True)

    mult_cc: float = Field(20.874, ge=0)
    mult_cp: float = Field(4.138, ge=0)
    add: float = Field(0.550, ge=0)
    rot: float = Field(5.350, ge=0)
    enc: float = Field(5.501, ge=0)
    dec: float = Field(2.570, ge=0)

    @classmethod
    def from_settings(cls) -> "CostTable":
        return cls(**settings.op_costs_ms)


class LedgerComparison(BaseModel):
    """提案手法とベースラインの演算回数・推定時間の比較"""

    ours_counts: Dict[str, int]
    baseline_counts: Dict[str, int]
    ours_time_ms: float
    baseline_time_ms: float
    time_ratio: Optional[float] = None
    mult_ratio: Optional[float] = None


def _ledger_of(item) -> OpLedger:
    return getattr(item, "op_ledger", item)


def estimate_time(ledger: OpLedger, table: Optional[CostTable] = None, cloud_only: bool = False) -> float:
    """Σ count × latency (ms)"""
    table = table or CostTable()
    counts = ledger.cloud_counts() if cloud_only else ledger.to_dict()
    return round(sum(count * getattr(table, LEDGER_TO_COST[kind]) for kind, count in counts.items()), 6)


def compare_ledgers(ours: Union[OpLedger, object], baseline: Union[OpLedger, object],
                    table: Optional[CostTable] = None) -> LedgerComparison:
    """SpmvResult または OpLedger を受け取り比較レポートを作る

    比率は baseline / ours（1 より大きければ提案手法が有利）。
    """
    ours_ledger, baseline_ledger = _ledger_of(ours), _ledger_of(baseline)
    ours_ms = estimate_time(ours_ledger, table)
    baseline_ms = estimate_time(baseline_ledger, table)

    return LedgerComparison(
        ours_counts=ours_ledger.to_dict(),
        baseline_counts=baseline_ledger.to_dict(),
        ours_time_ms=ours_ms,
        baseline_time_ms=baseline_ms,
        time_ratio=round(baseline_ms / ours_ms, 6) if ours_ms > 0 else None,
        mult_ratio=(
            round(baseline_ledger.n_mult_cc / ours_ledger.n_mult_cc, 6)
            if ours_ledger.n_mult_cc > 0 else None
        ),
    )
