"""Winternitz hash-chain one-time signatures with w = 256.

Each message digest byte ``N`` selects a position on one chain: the signer
reveals the chain secret hashed ``256 - N`` times and the verifier hashes
``N`` more times to land on the public chain end.

The default (plain) mode uses just the 32 digest bytes. That is malleable:
anyone holding a signature can hash elements forward and so sign any
digest whose digits are all less than or equal to the signed ones. ``checksum_mode`` appends two
base-256 digits of ``sum(255 - N_i)``; lowering a message digit raises the
checksum, and a raised digit would require inverting SHA-256.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInputError
from .hashes import DIGEST_SIZE, Digest256, Seed, check_seed, hash_chain, prg_expand, sha256

W = 256
MSG_DIGITS = 32
CHECKSUM_DIGITS = 2
TAG_CHAIN = 0x0C

MODE_PLAIN = 0x00
MODE_CHECKSUM = 0x01


def num_chains(checksum_mode: bool) -> int:
    return MSG_DIGITS + (CHECKSUM_DIGITS if checksum_mode else 0)


def _split(data: bytes, checksum_mode: bool) -> tuple[Digest256, ...]:
    k = num_chains(checksum_mode)
    if len(data) != k * DIGEST_SIZE:
        raise InvalidInputError(f"expected {k * DIGEST_SIZE} bytes, got {len(data)}")
    return tuple(data[i:i + DIGEST_SIZE] for i in range(0, len(data), DIGEST_SIZE))


def mode_for_length(n_bytes: int) -> bool:
    """Infer checksum mode from a serialized element block length."""
    for mode in (False, True):
        if n_bytes == num_chains(mode) * DIGEST_SIZE:
            return mode
    raise InvalidInputError(f"no WOTS layout has {n_bytes} bytes")


@dataclass(frozen=True)
class WotsSecretKey:
    chains: tuple[Digest256, ...]
    checksum_mode: bool = False
    seed: Seed | None = None

    def to_bytes(self) -> bytes:
        """Mode flag byte followed by the chain secrets."""
        flag = MODE_CHECKSUM if self.checksum_mode else MODE_PLAIN
        return bytes([flag]) + b"".join(self.chains)

    @classmethod
    def from_bytes(cls, data: bytes) -> WotsSecretKey:
        if not data or data[0] not in (MODE_PLAIN, MODE_CHECKSUM):
            raise InvalidInputError("bad WOTS mode flag")
        mode = data[0] == MODE_CHECKSUM
        return cls(_split(data[1:], mode), mode)


@dataclass(frozen=True)
class WotsPublicKey:
    chain_ends: tuple[Digest256, ...]
    checksum_mode: bool = False

    def to_bytes(self) -> bytes:
        return b"".join(self.chain_ends)

    @classmethod
    def from_bytes(cls, data: bytes, checksum_mode: bool | None = None) -> WotsPublicKey:
        if checksum_mode is None:
            checksum_mode = mode_for_length(len(data))
        return cls(_split(data, checksum_mode), checksum_mode)

    def digest(self) -> Digest256:
        """Leaf value used when this key sits in a Merkle tree."""
        return sha256(self.to_bytes())


@dataclass(frozen=True)
class WotsSignature:
    elements: tuple[Digest256, ...]
    checksum_mode: bool = False

    def to_bytes(self) -> bytes:
        return b"".join(self.elements)

    @classmethod
    def from_bytes(cls, data: bytes, checksum_mode: bool | None = None) -> WotsSignature:
        if checksum_mode is None:
            checksum_mode = mode_for_length(len(data))
        return cls(_split(data, checksum_mode), checksum_mode)


def wots_keygen(seed: Seed, checksum_mode: bool = False) -> tuple[WotsPublicKey, WotsSecretKey]:
    seed = check_seed(seed)
    chains = tuple(prg_expand(seed, TAG_CHAIN, i) for i in range(num_chains(checksum_mode)))
    sk = WotsSecretKey(chains, checksum_mode, seed)
    pk = WotsPublicKey(tuple(hash_chain(c, W) for c in chains), checksum_mode)
    return pk, sk


def checksum_digits(digits: list[int]) -> list[int]:
    c = sum(W - 1 - d for d in digits)
    return [c >> 8, c & 0xFF]


def digest_digits(digest: bytes, checksum_mode: bool = False) -> list[int]:
    if len(digest) != DIGEST_SIZE:
        raise InvalidInputError("digest must be 32 bytes")
    digits = list(digest)
    if checksum_mode:
        digits += checksum_digits(digits)
    return digits


def wots_digits(message: bytes, checksum_mode: bool = False) -> list[int]:
    return digest_digits(sha256(message), checksum_mode)


def wots_sign_digest(sk: WotsSecretKey, digest: bytes) -> WotsSignature:
    digits = digest_digits(digest, sk.checksum_mode)
    return WotsSignature(
        tuple(hash_chain(s, W - n) for s, n in zip(sk.chains, digits)),
        sk.checksum_mode,
    )


def wots_verify_digest(pk: WotsPublicKey, digest: bytes, sig: WotsSignature) -> bool:
    if sig.checksum_mode != pk.checksum_mode:
        return False
    k = num_chains(pk.checksum_mode)
    if len(sig.elements) != k or len(pk.chain_ends) != k:
        return False
    digits = digest_digits(digest, pk.checksum_mode)
    return all(
        hash_chain(el, n) == end
        for el, n, end in zip(sig.elements, digits, pk.chain_ends)
    )


def wots_sign(sk: WotsSecretKey, message: bytes) -> WotsSignature:
    return wots_sign_digest(sk, sha256(message))


def wots_verify(pk: WotsPublicKey, message: bytes, sig: WotsSignature) -> bool:
    return wots_verify_digest(pk, sha256(message), sig)


def wots_public_from_signature(message: bytes, sig: WotsSignature) -> WotsPublicKey:
    """Complete every chain of ``sig`` to its end (what a verifier would compare)."""
    digits = wots_digits(message, sig.checksum_mode)
    return WotsPublicKey(
        tuple(hash_chain(el, n) for el, n in zip(sig.elements, digits)),
        sig.checksum_mode,
    )


def extend_signature(sig: WotsSignature, signed_digest: bytes, target_digest: bytes) -> WotsSignature:
    """Forward-hash each element of ``sig`` to the position ``target_digest`` needs.

    No secret is needed. Element ``i`` sits ``256 - N_i`` steps into its chain,
    so hashing it ``N_i - N'_i`` more times re-encodes it as digit ``N'_i``.
    In plain mode the result verifies whenever every target digit is <= the
    signed one. Chains that would have to move backwards are left as they
    are, since that needs a preimage.
    """
    old = digest_digits(signed_digest, sig.checksum_mode)
    new = digest_digits(target_digest, sig.checksum_mode)
    return WotsSignature(
        tuple(hash_chain(el, max(0, a - b)) for el, a, b in zip(sig.elements, old, new)),
        sig.checksum_mode,
    )


def forgeable(target_digest: bytes, signed_digest: bytes, checksum_mode: bool = False) -> bool:
    """True when every digit of the target is <= the signed one.

    With the checksum this never holds for a distinct digest: lowering a
    message digit raises ``sum(255 - N_i)`` and so raises a checksum digit.
    """
    return all(
        b <= a
        for a, b in zip(digest_digits(signed_digest, checksum_mode),
                        digest_digits(target_digest, checksum_mode))
    )
