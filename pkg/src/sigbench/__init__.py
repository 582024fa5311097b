"""Trapdoor and trapdoor-free signature schemes side by side.

Modules: :mod:`~sigbench.rsa` (textbook RSA), :mod:`~sigbench.lamport`,
:mod:`~sigbench.wots`, :mod:`~sigbench.merkle` (hash-based),
:mod:`~sigbench.lattice` (Schnorr-style identification and Fiat-Shamir),
with :mod:`~sigbench.api` and :mod:`~sigbench.keystore` as the uniform
byte-level interface used by the ``sigbench`` command.
"""
from .api import SCHEMES, KeyRecord, keygen, sign, verify
from .errors import InvalidInputError, KeyExhaustedError, ParameterError, SigbenchError

__all__ = [
    "SCHEMES", "KeyRecord", "keygen", "sign", "verify",
    "InvalidInputError", "KeyExhaustedError", "ParameterError", "SigbenchError",
]
__version__ = "0.1.0"
