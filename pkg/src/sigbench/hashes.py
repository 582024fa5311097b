"""SHA-256 building blocks shared by the hash-based schemes.

Every digest is a plain 32-byte ``bytes`` object. Randomness is never drawn
from the OS inside the schemes: keys are expanded from a 32-byte seed with
:func:`prg_expand`, so identical seeds give identical keys.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .errors import InvalidInputError

DIGEST_SIZE = 32
SEED_SIZE = 32

Digest256 = bytes
Seed = bytes


def sha256(data: bytes) -> Digest256:
    return hashlib.sha256(data).digest()


def hash_chain(start: Digest256, iterations: int) -> Digest256:
    """Apply SHA-256 ``iterations`` times; zero iterations returns ``start``."""
    if iterations < 0:
        raise InvalidInputError("iterations must be non-negative")
    d = start
    for _ in range(iterations):
        d = hashlib.sha256(d).digest()
    return d


def check_seed(seed: bytes) -> Seed:
    if not isinstance(seed, (bytes, bytearray)) or len(seed) != SEED_SIZE:
        raise InvalidInputError(f"seed must be exactly {SEED_SIZE} bytes")
    return bytes(seed)


def prg_expand(seed: Seed, domain_tag: int, index: int) -> Digest256:
    """sha256(seed || tag || index as 4-byte big-endian)."""
    check_seed(seed)
    if not 0 <= domain_tag < 256:
        raise InvalidInputError("domain tag must fit in one byte")
    if not 0 <= index < 1 << 32:
        raise InvalidInputError("index must be < 2**32")
    return sha256(seed + bytes([domain_tag]) + index.to_bytes(4, "big"))


def _is_power_of_two(k: int) -> bool:
    return k > 0 and k & (k - 1) == 0


@dataclass(frozen=True)
class MerkleAuthPath:
    leaf_index: int
    siblings: tuple[Digest256, ...]

    @property
    def height(self) -> int:
        return len(self.siblings)


def _levels(leaves: list[Digest256]) -> list[list[Digest256]]:
    if not _is_power_of_two(len(leaves)):
        raise InvalidInputError("leaf count must be a non-zero power of two")
    for leaf in leaves:
        if len(leaf) != DIGEST_SIZE:
            raise InvalidInputError("leaves must be 32-byte digests")
    levels = [list(leaves)]
    while len(levels[-1]) > 1:
        cur = levels[-1]
        levels.append([sha256(cur[i] + cur[i + 1]) for i in range(0, len(cur), 2)])
    return levels


def merkle_root(leaves: list[Digest256]) -> Digest256:
    return _levels(leaves)[-1][0]


def merkle_path(leaves: list[Digest256], leaf_index: int) -> MerkleAuthPath:
    levels = _levels(leaves)
    if not 0 <= leaf_index < len(leaves):
        raise InvalidInputError(f"leaf index {leaf_index} out of range")
    siblings = []
    idx = leaf_index
    for level in levels[:-1]:
        siblings.append(level[idx ^ 1])
        idx >>= 1
    return MerkleAuthPath(leaf_index, tuple(siblings))


def root_from_path(leaf: Digest256, path: MerkleAuthPath) -> Digest256:
    node = leaf
    idx = path.leaf_index
    for sib in path.siblings:
        # bit 0 of the index set means the current node is a right child
        node = sha256(sib + node) if idx & 1 else sha256(node + sib)
        idx >>= 1
    return node


def verify_path(leaf: Digest256, path: MerkleAuthPath, root: Digest256) -> bool:
    if path.leaf_index < 0 or path.leaf_index >> path.height:
        return False
    return root_from_path(leaf, path) == root
