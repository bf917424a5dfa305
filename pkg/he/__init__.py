"""
CSSC-SpMV - Homomorphic Encryption Core
"""

from .backend import Ciphertext, HEBackend, Plaintext, SimulatorBackend
from .ledger import OpLedger
from .params import HEParams, NoiseModel

__all__ = [
    "Ciphertext",
    "HEBackend",
    "HEParams",
    "NoiseModel",
    "OpLedger",
    "Plaintext",
    "SimulatorBackend"
]
