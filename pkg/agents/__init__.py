"""
CSSC-SpMV - Agents Module (protocol parties)
"""

from .client_a import ClientA
from .client_b import ClientB
from .cloud_server import CloudServer
from .key_holder import KeyHolder

__all__ = [
    "ClientA",
    "ClientB",
    "CloudServer",
    "KeyHolder"
]
