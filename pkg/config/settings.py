"""
CSSC-SpMV - Configuration Settings
"""

import os
from pathlib import Path
from typing import Dict, Any
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class Settings:
    """システム設定管理クラス"""

    def __init__(self):
        # HE パラメータ (Pyfhel BFV プロファイル相当)
        self.slot_count = int(os.getenv("SLOT_COUNT", 8192))
        self.plaintext_modulus = int(os.getenv("PLAINTEXT_MODULUS", 65537))
        self.ciphertext_size_mb = float(os.getenv("CIPHERTEXT_SIZE_MB", 0.52))
        self.chunk_size = int(os.getenv("CHUNK_SIZE", self.slot_count))
        self.key_holder = os.getenv("KEY_HOLDER", "A").upper()

        # ノイズバジェットモデル (bits)
        self.noise_model = {
            "initial_budget_bits": int(os.getenv("NOISE_INITIAL_BITS", 146)),
            "cost_ct_ct_mult_bits": int(os.getenv("NOISE_CT_CT_BITS", 33)),
            "cost_ct_pt_mult_bits": int(os.getenv("NOISE_CT_PT_BITS", 26)),
            "cost_add_bits": int(os.getenv("NOISE_ADD_BITS", 0)),
            "cost_rot_bits": int(os.getenv("NOISE_ROT_BITS", 0)),
        }

        # HE 演算レイテンシ (ms)
        self.op_costs_ms = {
            "mult_cc": float(os.getenv("COST_MULT_CC_MS", 20.874)),
            "mult_cp": float(os.getenv("COST_MULT_CP_MS", 4.138)),
            "add": float(os.getenv("COST_ADD_MS", 0.550)),
            "rot": float(os.getenv("COST_ROT_MS", 5.350)),
            "enc": float(os.getenv("COST_ENC_MS", 5.501)),
            "dec": float(os.getenv("COST_DEC_MS", 2.570)),
        }

        # 入力データ
        self.quantization_scale = float(os.getenv("QUANTIZATION_SCALE", 1.0))
        self.cache_dir = Path(os.getenv("SPMV_CACHE_DIR", Path.home() / ".cache" / "cssc-spmv"))
        self.suitesparse_url = os.getenv("SUITESPARSE_URL", "https://sparse.tamu.edu/MM")
        self.output_dir = Path(os.getenv("OUTPUT_DIR", "output"))

        # Logging
        self.log_level = os.getenv("LOG_LEVEL", "INFO")
        self.log_file = os.getenv("LOG_FILE", "logs/spmv.log")

        # Validate required settings
        self._validate_settings()

    def _validate_settings(self):
        """設定の妥当性チェック"""
        if self.slot_count < 1:
            raise ValueError("SLOT_COUNT must be positive")

        if self.plaintext_modulus < 2:
            raise ValueError("PLAINTEXT_MODULUS must be at least 2")

        if not (1 <= self.chunk_size <= self.slot_count):
            raise ValueError("CHUNK_SIZE must be between 1 and SLOT_COUNT")

        if self.key_holder not in ("A", "B"):
            raise ValueError("KEY_HOLDER must be A or B")

        if any(cost < 0 for cost in self.noise_model.values()):
            raise ValueError("Noise costs must be non-negative")

        if self.quantization_scale <= 0:
            raise ValueError("QUANTIZATION_SCALE must be positive")

    def to_dict(self) -> Dict[str, Any]:
        """設定を辞書形式で返す"""
        return {
            "slot_count": self.slot_count,
            "plaintext_modulus": self.plaintext_modulus,
            "ciphertext_size_mb": self.ciphertext_size_mb,
            "chunk_size": self.chunk_size,
            "key_holder": self.key_holder,
            "noise_model": self.noise_model,
            "op_costs_ms": self.op_costs_ms,
            "quantization_scale": self.quantization_scale,
            "cache_dir": str(self.cache_dir),
            "suitesparse_url": self.suitesparse_url,
            "output_dir": str(self.output_dir),
            "log_level": self.log_level,
            "log_file": self.log_file
        }


# Global settings instance
settings = Settings()
