"""
CSSC-SpMV - Benchmark Report Generator
"""

import json
from pathlib import Path
from typing import Any, Dict, List, Optional

import pandas as pd
from pydantic import BaseModel, Field


class CommStats(BaseModel):
    a_to_cloud_mb: float = 0.0
    b_to_cloud_mb: float = 0.0
    a_to_b_bytes: int = 0


class BenchRecord(BaseModel):
    """行列 1 個分の計測結果（失敗時は error のみ埋まる）"""

    name: str
    rows: int = 0
    cols: int = 0
    nnz: int = 0
    density: float = 0.0
    n_ct: int = 0
    op_counts: Dict[str, int] = Field(default_factory=dict)
    estimated_time_ms: float = 0.0
    cloud_cost_ms: float = 0.0
    est_memory_mb: float = 0.0
    comm: CommStats = Field(default_factory=CommStats)
    noise_remaining_bits: Optional[int] = None
    verified: Optional[bool] = None
    baseline_counts: Optional[Dict[str, int]] = None
    baseline_estimated_time_ms: Optional[float] = None
    speedup: Optional[float] = None
    reference_a_to_cloud_mb: Optional[float] = None
    error: Optional[str] = None


class BenchReport(BaseModel):
    params: Dict[str, Any] = Field(default_factory=dict)
    records: List[BenchRecord] = Field(default_factory=list)
    scaling_slope: Optional[float] = None
    generated_at: Optional[str] = None

    @property
    def failures(self) -> List[BenchRecord]:
        return [record for record in self.records if record.error]


class ReportGenerator:
    """ベンチ結果の JSON / CSV 出力とコンソール表示"""

    def __init__(self, output_dir: Optional[Path] = None):
        self.output_dir = Path(output_dir) if output_dir else None

    def _resolve(self, path: Path) -> Path:
        path = Path(path)
        if self.output_dir is not None and not path.is_absolute():
            path = self.output_dir / path
        path.parent.mkdir(parents=True, exist_ok=True)
        return path

    def write_json(self, report: BenchReport, path: Path) -> Path:
        path = self._resolve(path)
        path.write_text(json.dumps(report.model_dump(mode="json"), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
        return path

    def scaling_frame(self, report: BenchReport) -> pd.DataFrame:
        """(nnz, simulated_cloud_cost) の組（失敗行は除外）"""
        rows = [
            {"name": r.name, "nnz": r.nnz, "simulated_cloud_cost_ms": r.cloud_cost_ms}
            for r in report.records if not r.error
        ]
        return pd.DataFrame(rows, columns=["name", "nnz", "simulated_cloud_cost_ms"])

    def write_scaling_csv(self, report: BenchReport, path: Path) -> Path:
        path = self._resolve(path)
        self.scaling_frame(report).to_csv(path, index=False)
        return path

    def display(self, report: BenchReport) -> None:
        """コンソールにサマリーを表示"""
        print("\n📊 ベンチマーク結果")
        print("=" * 60)
        if not report.records:
            print("  (対象行列なし)")
        for r in report.records:
            if r.error:
                print(f"  ❌ {r.name}: {r.error}")
                continue
            speedup = f"{r.speedup:.2f}x" if r.speedup is not None else "N/A"
            print(
                f"  {r.name}: {r.rows}x{r.cols} nnz={r.nnz} n_ct={r.n_ct} "
                f"推定 {r.estimated_time_ms:,.1f} ms / ベースライン比 {speedup}"
            )
        if report.scaling_slope is not None:
            print(f"\n📈 log-log スロープ: {report.scaling_slope:.3f}")
