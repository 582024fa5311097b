"""Stateful many-time signatures from a Merkle tree of WOTS key pairs.

The public key is only the 32-byte root. Leaf ``i`` is the SHA-256 of the
concatenated chain ends of the WOTS key derived from
``prg_expand(master_seed, 0x4C, i)``. A signature carries the leaf's WOTS
signature, the leaf's full WOTS public key and its authentication path.

Leaves are consumed in order; the key pair is immutable and :func:`mmt_sign`
returns a copy with the counter advanced. Persisting that counter before
releasing the signature is the caller's job (see :mod:`sigbench.keystore`).
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

from .errors import InvalidInputError, KeyExhaustedError, ParameterError
from .hashes import (
    DIGEST_SIZE, Digest256, MerkleAuthPath, Seed, check_seed, merkle_path,
    merkle_root, prg_expand, verify_path,
)
from .wots import (
    WotsPublicKey, WotsSignature, num_chains, wots_keygen, wots_sign, wots_verify,
)

TAG_LEAF = 0x4C
MIN_HEIGHT = 1
MAX_HEIGHT = 20
INDEX_BYTES = 4
# the index field has room to spare (h <= 20); its top bit carries the WOTS mode
CHECKSUM_FLAG = 1 << 31


def check_height(height: int) -> None:
    if not MIN_HEIGHT <= height <= MAX_HEIGHT:
        raise ParameterError(f"height must be in [{MIN_HEIGHT}, {MAX_HEIGHT}], got {height}")


def leaf_keypair(master_seed: Seed, index: int, checksum_mode: bool):
    return wots_keygen(prg_expand(master_seed, TAG_LEAF, index), checksum_mode)


def leaf_digests(master_seed: Seed, height: int, checksum_mode: bool) -> list[Digest256]:
    return [
        leaf_keypair(master_seed, i, checksum_mode)[0].digest()
        for i in range(1 << height)
    ]


@dataclass(frozen=True)
class MerkleManyTimeKeyPair:
    master_seed: Seed
    height: int
    root: Digest256
    checksum_mode: bool = False
    next_leaf: int = 0
    # cached leaf digests so signing does not redo 2^h WOTS keygens
    leaves: tuple[Digest256, ...] | None = field(default=None, repr=False, compare=False)

    @property
    def capacity(self) -> int:
        return 1 << self.height

    @property
    def remaining(self) -> int:
        return self.capacity - self.next_leaf

    def public_key(self) -> bytes:
        return self.root


@dataclass(frozen=True)
class MerkleManyTimeSignature:
    leaf_index: int
    wots_sig: WotsSignature
    leaf_public: WotsPublicKey
    auth_path: MerkleAuthPath

    def to_bytes(self) -> bytes:
        idx = self.leaf_index | (CHECKSUM_FLAG if self.wots_sig.checksum_mode else 0)
        return (
            idx.to_bytes(INDEX_BYTES, "big")
            + self.wots_sig.to_bytes()
            + self.leaf_public.to_bytes()
            + b"".join(self.auth_path.siblings)
        )

    @classmethod
    def from_bytes(cls, data: bytes) -> MerkleManyTimeSignature:
        if len(data) < INDEX_BYTES:
            raise InvalidInputError("signature shorter than its index field")
        raw = int.from_bytes(data[:INDEX_BYTES], "big")
        mode = bool(raw & CHECKSUM_FLAG)
        index = raw & ~CHECKSUM_FLAG
        block = num_chains(mode) * DIGEST_SIZE
        rest = data[INDEX_BYTES:]
        path_bytes = len(rest) - 2 * block
        if path_bytes < 0 or path_bytes % DIGEST_SIZE:
            raise InvalidInputError("merkle signature has a malformed length")
        height = path_bytes // DIGEST_SIZE
        if not MIN_HEIGHT <= height <= MAX_HEIGHT:
            raise InvalidInputError(f"authentication path height {height} out of range")
        sig = WotsSignature.from_bytes(rest[:block], mode)
        pub = WotsPublicKey.from_bytes(rest[block:2 * block], mode)
        tail = rest[2 * block:]
        sibs = tuple(tail[i:i + DIGEST_SIZE] for i in range(0, len(tail), DIGEST_SIZE))
        return cls(index, sig, pub, MerkleAuthPath(index, sibs))


def signature_size(height: int, checksum_mode: bool = False) -> int:
    return INDEX_BYTES + 2 * num_chains(checksum_mode) * DIGEST_SIZE + height * DIGEST_SIZE


def mmt_keygen(master_seed: Seed, height: int, checksum_mode: bool = False) -> MerkleManyTimeKeyPair:
    master_seed = check_seed(master_seed)
    check_height(height)
    leaves = tuple(leaf_digests(master_seed, height, checksum_mode))
    return MerkleManyTimeKeyPair(
        master_seed, height, merkle_root(list(leaves)), checksum_mode, 0, leaves,
    )


def mmt_restore(master_seed: Seed, height: int, checksum_mode: bool, next_leaf: int) -> MerkleManyTimeKeyPair:
    """Rebuild a key pair from stored state."""
    kp = mmt_keygen(master_seed, height, checksum_mode)
    if not 0 <= next_leaf <= kp.capacity:
        raise InvalidInputError(f"stored leaf counter {next_leaf} out of range")
    return dataclasses.replace(kp, next_leaf=next_leaf)


def mmt_sign(keypair: MerkleManyTimeKeyPair, message: bytes) -> tuple[MerkleManyTimeSignature, MerkleManyTimeKeyPair]:
    i = keypair.next_leaf
    if i >= keypair.capacity:
        raise KeyExhaustedError(f"all {keypair.capacity} leaves have been used")
    leaves = keypair.leaves
    if leaves is None:
        leaves = tuple(leaf_digests(keypair.master_seed, keypair.height, keypair.checksum_mode))
    pk, sk = leaf_keypair(keypair.master_seed, i, keypair.checksum_mode)
    sig = MerkleManyTimeSignature(i, wots_sign(sk, message), pk, merkle_path(list(leaves), i))
    return sig, dataclasses.replace(keypair, next_leaf=i + 1, leaves=leaves)


def mmt_verify(root: Digest256, message: bytes, sig: MerkleManyTimeSignature) -> bool:
    if sig.auth_path.leaf_index != sig.leaf_index:
        return False
    if not wots_verify(sig.leaf_public, message, sig.wots_sig):
        return False
    return verify_path(sig.leaf_public.digest(), sig.auth_path, root)
