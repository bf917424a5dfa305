"""
CSSC-SpMV - Benchmark Configuration
"""

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from pathlib import Path
from typing import List, Optional

from pydantic import BaseModel, Field, model_validator

from config.settings import settings
from he.params import HEParams


class SyntheticSpec(BaseModel):
    rows: int = Field(ge=1)
    cols: int = Field(ge=1)
    nnz: int = Field(ge=0)
    seed: int = 0


class MatrixSpec(BaseModel):
    """ベンチ対象の行列（path / suitesparse / synthetic のいずれか 1 つ）"""

    name: str
    path: Optional[Path] = None
    suitesparse: Optional[str] = None
    synthetic: Optional[SyntheticSpec] = None
    # 既知の A→Cloud アップロード量 (MB)。異なれば WARNING を出すだけで失敗扱いにはしない
    reference_a_to_cloud_mb: Optional[float] = Field(None, gt=0)

    @model_validator(mode="after")
    def _one_source(self) -> "MatrixSpec":
        sources = [self.path, self.suitesparse, self.synthetic]
        if sum(source is not None for source in sources) != 1:
            raise ValueError(f"matrix {self.name!r} needs exactly one of path, suitesparse, synthetic")
        return self


class ScalingSuiteSpec(BaseModel):
    """nnz スケーリング用の合成スイート

    slot_count はスイートにだけ適用される（チャンクサイズも同じ値）。全行列が
    複数の行スライスにまたがる小さなスロット数でないと、クラウドコストが nnz
    に比例しない。
    """

    count: int = Field(10, ge=2)
    min_nnz: int = Field(100, ge=1)
    max_nnz: int = Field(100_000, ge=1)
    nnz_per_row: int = Field(4, ge=1)
    slot_count: int = Field(16, ge=1)
    seed: int = 0


class BenchConfig(BaseModel):
    slot_count: int = Field(default_factory=lambda: settings.slot_count, ge=1)
    plaintext_modulus: int = Field(default_factory=lambda: settings.plaintext_modulus, ge=2)
    ciphertext_size_mb: float = Field(default_factory=lambda: settings.ciphertext_size_mb, ge=0)
    chunk_size: Optional[int] = None
    key_holder: str = Field(default_factory=lambda: settings.key_holder)
    seed: int = 0
    baseline: bool = True
    max_workers: int = Field(1, ge=1)
    cache_dir: Optional[Path] = None
    matrices: List[MatrixSpec] = Field(default_factory=list)
    scaling_suite: Optional[ScalingSuiteSpec] = None

    @model_validator(mode="after")
    def _check_chunk_size(self) -> "BenchConfig":
        if self.chunk_size is None:
            self.chunk_size = self.slot_count
        if not 1 <= self.chunk_size <= self.slot_count:
            raise ValueError("chunk_size must be between 1 and slot_count")
        return self

    def he_params(self) -> HEParams:
        return HEParams.from_settings(
            slot_count=self.slot_count,
            plaintext_modulus=self.plaintext_modulus,
            ciphertext_size_mb=self.ciphertext_size_mb,
        )


def load_bench_config(path: Path) -> BenchConfig:
    """TOML ファイルからベンチ設定を読み込む（相対パスは設定ファイル基準）"""
    path = Path(path)
    with open(path, "rb") as f:
        data = tomllib.load(f)
    config = BenchConfig(**data)
    for spec in config.matrices:
        if spec.path is not None and not spec.path.is_absolute():
            spec.path = path.parent / spec.path
    return config
