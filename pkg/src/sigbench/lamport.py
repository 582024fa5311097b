"""Lamport one-time signatures over SHA-256.

Two lists of 256 secret values (A and B). Bit ``i`` of the message digest
picks ``A[i]`` when clear and ``B[i]`` when set. The public key keeps the
hash of every one of the 512 secrets, so verification compares slot by slot.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInputError
from .hashes import DIGEST_SIZE, Digest256, Seed, check_seed, prg_expand, sha256

N_BITS = 256
TAG_A = 0x0A
TAG_B = 0x0B

SECRET_SIZE = 2 * N_BITS * DIGEST_SIZE
PUBLIC_SIZE = 2 * N_BITS * DIGEST_SIZE
SIGNATURE_SIZE = N_BITS * DIGEST_SIZE


def digest_bits(digest: bytes) -> list[int]:
    """Big-endian bit order: bit 0 is the MSB of byte 0."""
    return [(digest[i >> 3] >> (7 - (i & 7))) & 1 for i in range(8 * len(digest))]


def _split(data: bytes, count: int) -> tuple[Digest256, ...]:
    if len(data) != count * DIGEST_SIZE:
        raise InvalidInputError(f"expected {count * DIGEST_SIZE} bytes, got {len(data)}")
    return tuple(data[i:i + DIGEST_SIZE] for i in range(0, len(data), DIGEST_SIZE))


@dataclass(frozen=True)
class LamportSecretKey:
    a_keys: tuple[Digest256, ...]
    b_keys: tuple[Digest256, ...]
    seed: Seed | None = None

    def to_bytes(self) -> bytes:
        return b"".join(self.a_keys) + b"".join(self.b_keys)

    @classmethod
    def from_bytes(cls, data: bytes) -> LamportSecretKey:
        keys = _split(data, 2 * N_BITS)
        return cls(keys[:N_BITS], keys[N_BITS:])


@dataclass(frozen=True)
class LamportPublicKey:
    a_hashes: tuple[Digest256, ...]
    b_hashes: tuple[Digest256, ...]

    def to_bytes(self) -> bytes:
        return b"".join(self.a_hashes) + b"".join(self.b_hashes)

    @classmethod
    def from_bytes(cls, data: bytes) -> LamportPublicKey:
        hs = _split(data, 2 * N_BITS)
        return cls(hs[:N_BITS], hs[N_BITS:])


@dataclass(frozen=True)
class LamportSignature:
    revealed: tuple[Digest256, ...]

    def to_bytes(self) -> bytes:
        return b"".join(self.revealed)

    @classmethod
    def from_bytes(cls, data: bytes) -> LamportSignature:
        return cls(_split(data, N_BITS))


def lamport_keygen(seed: Seed) -> tuple[LamportPublicKey, LamportSecretKey]:
    seed = check_seed(seed)
    a = tuple(prg_expand(seed, TAG_A, i) for i in range(N_BITS))
    b = tuple(prg_expand(seed, TAG_B, i) for i in range(N_BITS))
    sk = LamportSecretKey(a, b, seed)
    pk = LamportPublicKey(tuple(map(sha256, a)), tuple(map(sha256, b)))
    return pk, sk


def lamport_sign(sk: LamportSecretKey, message: bytes) -> LamportSignature:
    bits = digest_bits(sha256(message))
    return LamportSignature(tuple(
        sk.b_keys[i] if bit else sk.a_keys[i] for i, bit in enumerate(bits)
    ))


def lamport_verify(pk: LamportPublicKey, message: bytes, sig: LamportSignature) -> bool:
    if len(sig.revealed) != N_BITS:
        return False
    bits = digest_bits(sha256(message))
    for i, bit in enumerate(bits):
        expected = pk.b_hashes[i] if bit else pk.a_hashes[i]
        if sha256(sig.revealed[i]) != expected:
            return False
    return True
