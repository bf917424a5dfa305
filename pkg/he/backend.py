"""
CSSC-SpMV - Slot-Vector HE Backend

HEBackend はパイプラインが依存する唯一の HE 契約。SimulatorBackend は
Z_t 上のスロットベクトルで BFV の SIMD 演算を厳密に再現し、演算回数と
ノイズバジェットを記録する。実格子暗号の実装は同じ契約で差し替える。
"""

import logging
import uuid
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from errors import NoiseExhausted, OverLength
from .ledger import OpLedger
from .params import HEParams

logger = logging.getLogger(__name__)

# t^2 が int64 に収まる上限
MAX_SIMULATOR_MODULUS = 2 ** 31


def _frozen(values: np.ndarray) -> np.ndarray:
    values = np.ascontiguousarray(values, dtype=np.int64)
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class Plaintext:
    """符号化済み平文（長さ slot_count, 各要素 [0, t)）"""

    encoded: np.ndarray


@dataclass(frozen=True, eq=False)
class Ciphertext:
    """暗号文ハンドル。payload はシミュレータ内部でのみ参照する"""

    payload: np.ndarray
    noise_budget_bits: int
    id: str = field(default_factory=lambda: uuid.uuid4().hex)


class HEBackend(ABC):
    """スロットベクトル HE バックエンドの契約"""

    def __init__(self, params: HEParams, ledger: Optional[OpLedger] = None):
        self.params = params
        self.ledger = ledger if ledger is not None else OpLedger()

    @property
    def slot_count(self) -> int:
        return self.params.slot_count

    @property
    def modulus(self) -> int:
        return self.params.plaintext_modulus

    @abstractmethod
    def encode(self, values: Sequence[int]) -> Plaintext: ...

    @abstractmethod
    def decode(self, plaintext: Plaintext) -> np.ndarray: ...

    @abstractmethod
    def encrypt(self, plaintext: Plaintext) -> Ciphertext: ...

    @abstractmethod
    def decrypt(self, ct: Ciphertext) -> np.ndarray: ...

    @abstractmethod
    def zero(self) -> Ciphertext:
        """鍵を使わない自明な 0 の暗号文（集約の初期値）"""

    @abstractmethod
    def he_add(self, a: Ciphertext, b: Ciphertext) -> Ciphertext: ...

    @abstractmethod
    def he_mult(self, a: Ciphertext, b: Ciphertext) -> Ciphertext: ...

    @abstractmethod
    def he_cmult(self, a: Ciphertext, p: Plaintext) -> Ciphertext: ...

    @abstractmethod
    def he_rot(self, a: Ciphertext, k: int) -> Ciphertext: ...

    def decode_signed(self, values: Sequence[int]) -> np.ndarray:
        """[0, t) の値を (-t/2, t/2] の符号付き表現へ"""
        t = self.modulus
        values = np.mod(np.asarray(values, dtype=np.int64), t)
        return np.where(values > t // 2, values - t, values)

    def encrypt_values(self, values: Sequence[int]) -> Ciphertext:
        return self.encrypt(self.encode(values))


class SimulatorBackend(HEBackend):
    """決定的スロットベクトル・シミュレータ"""

    def __init__(self, params: HEParams, ledger: Optional[OpLedger] = None):
        if params.plaintext_modulus > MAX_SIMULATOR_MODULUS:
            raise ValueError(f"Simulator supports plaintext_modulus <= 2^31, got {params.plaintext_modulus}")
        super().__init__(params, ledger)
        self.noise = params.noise_model

    def encode(self, values: Sequence[int]) -> Plaintext:
        data = np.asarray(values, dtype=np.int64).ravel()
        if data.size > self.slot_count:
            raise OverLength(f"{data.size} values exceed slot_count={self.slot_count}")
        encoded = np.zeros(self.slot_count, dtype=np.int64)
        encoded[:data.size] = np.mod(data, self.modulus)
        return Plaintext(_frozen(encoded))

    def decode(self, plaintext: Plaintext) -> np.ndarray:
        return np.array(plaintext.encoded, dtype=np.int64)

    def encrypt(self, plaintext: Plaintext) -> Ciphertext:
        self.ledger.record("n_enc")
        return Ciphertext(plaintext.encoded, self.noise.initial_budget_bits)

    def decrypt(self, ct: Ciphertext) -> np.ndarray:
        if ct.noise_budget_bits <= 0:
            raise NoiseExhausted(f"Ciphertext {ct.id} has no noise budget left")
        self.ledger.record("n_dec")
        return np.array(ct.payload, dtype=np.int64)

    def zero(self) -> Ciphertext:
        return Ciphertext(_frozen(np.zeros(self.slot_count, dtype=np.int64)), self.noise.initial_budget_bits)

    def he_add(self, a: Ciphertext, b: Ciphertext) -> Ciphertext:
        self.ledger.record("n_add")
        budget = self.noise.consume(min(a.noise_budget_bits, b.noise_budget_bits), self.noise.cost_add_bits)
        return Ciphertext(_frozen(np.mod(a.payload + b.payload, self.modulus)), budget)

    def he_mult(self, a: Ciphertext, b: Ciphertext) -> Ciphertext:
        self.ledger.record("n_mult_cc")
        budget = self.noise.consume(min(a.noise_budget_bits, b.noise_budget_bits), self.noise.cost_ct_ct_mult_bits)
        return Ciphertext(_frozen(np.mod(a.payload * b.payload, self.modulus)), budget)

    def he_cmult(self, a: Ciphertext, p: Plaintext) -> Ciphertext:
        self.ledger.record("n_mult_cp")
        budget = self.noise.consume(a.noise_budget_bits, self.noise.cost_ct_pt_mult_bits)
        return Ciphertext(_frozen(np.mod(a.payload * p.encoded, self.modulus)), budget)

    def he_rot(self, a: Ciphertext, k: int) -> Ciphertext:
        # 左回転: Rot(ct, i) の先頭スロットは x_i
        self.ledger.record("n_rot")
        budget = self.noise.consume(a.noise_budget_bits, self.noise.cost_rot_bits)
        return Ciphertext(_frozen(np.roll(a.payload, -(int(k) % self.slot_count))), budget)
