"""
CSSC-SpMV - HE Parameters and Noise Model
"""

from typing import List, Literal

from pydantic import BaseModel, ConfigDict, Field

from config.settings import settings


class NoiseModel(BaseModel):
    """線形ビットバジェットのノイズモデル

    各演算は一定ビットを消費し、バジェットは 0 で下げ止まる。
    デフォルトは ct×ct 33 bits / ct×pt 26 bits（反復乗算の実測減衰から一様化）。
    """

    model_config = ConfigDict(frozen=True)

    initial_budget_bits: int = Field(146, ge=0)
    cost_ct_ct_mult_bits: int = Field(33, ge=0)
    cost_ct_pt_mult_bits: int = Field(26, ge=0)
    cost_add_bits: int = Field(0, ge=0)
    cost_rot_bits: int = Field(0, ge=0)

    def consume(self, budget: int, cost: int) -> int:
        return max(0, budget - cost)

    def decay_sequence(self, kind: Literal["ct_ct", "ct_pt"], steps: int) -> List[int]:
        """同種乗算を steps 回繰り返したときのバジェット推移（0 回目を含む）"""
        cost = self.cost_ct_ct_mult_bits if kind == "ct_ct" else self.cost_ct_pt_mult_bits
        budgets = [self.initial_budget_bits]
        for _ in range(steps):
            budgets.append(self.consume(budgets[-1], cost))
        return budgets

    @classmethod
    def from_settings(cls) -> "NoiseModel":
        return cls(**settings.noise_model)


class HEParams(BaseModel):
    """SIMD スロット型 HE のパラメータ"""

    model_config = ConfigDict(frozen=True)

    slot_count: int = Field(8192, ge=1)
    plaintext_modulus: int = Field(65537, ge=2)
    ciphertext_size_mb: float = Field(0.52, ge=0)
    noise_model: NoiseModel = Field(default_factory=NoiseModel)

    @property
    def ciphertext_bytes(self) -> int:
        """シリアライズ済み暗号文 1 個のバイト数"""
        return round(self.ciphertext_size_mb * 2 ** 20)

    def batch_bytes(self, ciphertext_count: int) -> int:
        return ciphertext_count * self.ciphertext_bytes

    @classmethod
    def from_settings(cls, **overrides) -> "HEParams":
        values = {
            "slot_count": settings.slot_count,
            "plaintext_modulus": settings.plaintext_modulus,
            "ciphertext_size_mb": settings.ciphertext_size_mb,
            "noise_model": NoiseModel.from_settings(),
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
