"""One keygen/sign/verify contract over opaque byte blobs for every scheme.

A :class:`KeyRecord` carries the serialized keys plus a usage counter.
Lamport and WOTS keys sign once, a Merkle key ``2**height`` times, RSA and
the lattice scheme without limit. :func:`sign` refuses to go past the limit.

Signature blobs start with a one-byte scheme tag so files are self-routing.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from functools import lru_cache

from . import lamport, lattice, merkle, rsa, wots
from .errors import InvalidInputError, KeyExhaustedError, ParameterError
from .hashes import Seed, check_seed, merkle_root, prg_expand

SCHEME_TAGS = {
    "rsa": 0x01,
    "lamport": 0x02,
    "wots": 0x03,
    "wots-checksum": 0x04,
    "merkle": 0x05,
    "lattice-fs": 0x06,
}
TAG_SCHEMES = {v: k for k, v in SCHEME_TAGS.items()}
SCHEMES = tuple(SCHEME_TAGS)

DEFAULT_RSA_BITS = 512
DEFAULT_MERKLE_HEIGHT = 8
TAG_LATTICE_SIGNING = 0x53

_ALLOWED_PARAMS = {
    "rsa": {"bits"},
    "lamport": set(),
    "wots": set(),
    "wots-checksum": set(),
    "merkle": {"height", "checksum"},
    "lattice-fs": set(),
}


@dataclass(frozen=True)
class KeyRecord:
    scheme: str
    public_blob: bytes
    secret_blob: bytes
    uses_consumed: int = 0
    uses_max: int | None = None  # None means unbounded

    def __post_init__(self):
        if self.scheme not in SCHEME_TAGS:
            raise InvalidInputError(f"unknown scheme {self.scheme!r}")
        if self.uses_max is not None and not 0 <= self.uses_consumed <= self.uses_max:
            raise InvalidInputError("uses_consumed exceeds uses_max")

    @property
    def remaining(self) -> int | None:
        return None if self.uses_max is None else self.uses_max - self.uses_consumed

    @property
    def exhausted(self) -> bool:
        return self.uses_max is not None and self.uses_consumed >= self.uses_max


def scheme_tag(scheme: str) -> int:
    try:
        return SCHEME_TAGS[scheme]
    except KeyError:
        raise InvalidInputError(f"unknown scheme {scheme!r}; choose from {', '.join(SCHEMES)}") from None


def keygen(scheme: str, params: dict | None, seed: Seed) -> KeyRecord:
    scheme_tag(scheme)
    params = dict(params or {})
    extra = set(params) - _ALLOWED_PARAMS[scheme]
    if extra:
        raise ParameterError(f"{scheme} does not take parameters {sorted(extra)}")
    seed = check_seed(seed)

    if scheme == "rsa":
        key = rsa.rsa_keygen(int(params.get("bits", DEFAULT_RSA_BITS)), seed)
        return KeyRecord(scheme, key.public_bytes(), key.secret_bytes())
    if scheme == "lamport":
        pk, sk = lamport.lamport_keygen(seed)
        return KeyRecord(scheme, pk.to_bytes(), sk.to_bytes(), 0, 1)
    if scheme in ("wots", "wots-checksum"):
        pk, sk = wots.wots_keygen(seed, scheme == "wots-checksum")
        return KeyRecord(scheme, pk.to_bytes(), sk.to_bytes(), 0, 1)
    if scheme == "merkle":
        height = int(params.get("height", DEFAULT_MERKLE_HEIGHT))
        mode = bool(params.get("checksum", False))
        merkle.check_height(height)
        root = merkle_root(list(_merkle_leaves(seed, height, mode)))
        return KeyRecord(scheme, root, _merkle_secret(seed, height, mode), 0, 1 << height)
    # lattice-fs
    kp = lattice.lattice_keygen(lattice.DEFAULT_PARAMS, seed)
    return KeyRecord(scheme, kp.public_bytes(), seed)


def _merkle_secret(seed: Seed, height: int, mode: bool) -> bytes:
    return seed + bytes([height, wots.MODE_CHECKSUM if mode else wots.MODE_PLAIN])


def _merkle_unpack(secret: bytes) -> tuple[Seed, int, bool]:
    if len(secret) != 34 or secret[33] not in (wots.MODE_PLAIN, wots.MODE_CHECKSUM):
        raise InvalidInputError("malformed merkle secret key")
    return secret[:32], secret[32], secret[33] == wots.MODE_CHECKSUM


@lru_cache(maxsize=8)
def _merkle_leaves(seed: Seed, height: int, mode: bool) -> tuple[bytes, ...]:
    return tuple(merkle.leaf_digests(seed, height, mode))


def _sign_payload(record: KeyRecord, message: bytes) -> bytes:
    s, sec = record.scheme, record.secret_blob
    if s == "rsa":
        return rsa.rsa_sign(rsa.RsaKeyPair.from_secret_bytes(sec), message).to_bytes()
    if s == "lamport":
        return lamport.lamport_sign(lamport.LamportSecretKey.from_bytes(sec), message).to_bytes()
    if s in ("wots", "wots-checksum"):
        return wots.wots_sign(wots.WotsSecretKey.from_bytes(sec), message).to_bytes()
    if s == "merkle":
        seed, height, mode = _merkle_unpack(sec)
        leaves = _merkle_leaves(seed, height, mode)
        kp = merkle.MerkleManyTimeKeyPair(
            seed, height, record.public_blob, mode, record.uses_consumed, leaves,
        )
        sig, _ = merkle.mmt_sign(kp, message)
        return sig.to_bytes()
    seed = check_seed(sec)
    kp = lattice.lattice_keygen(lattice.DEFAULT_PARAMS, seed)
    nonce_seed = prg_expand(seed, TAG_LATTICE_SIGNING, 0)
    return lattice.fs_sign(kp, lattice.DEFAULT_PARAMS, message, nonce_seed).to_bytes()


def sign(record: KeyRecord, message: bytes) -> tuple[bytes, KeyRecord]:
    """Return ``(tagged signature, record with the use counted)``."""
    if not record.secret_blob:
        raise InvalidInputError("record holds no secret key")
    if record.exhausted:
        raise KeyExhaustedError(
            f"{record.scheme} key already used {record.uses_consumed} of {record.uses_max} times"
        )
    payload = _sign_payload(record, message)
    if record.uses_max is not None:
        record = dataclasses.replace(record, uses_consumed=record.uses_consumed + 1)
    return bytes([SCHEME_TAGS[record.scheme]]) + payload, record


def split_signature(sig: bytes) -> tuple[str, bytes]:
    if len(sig) < 1:
        raise InvalidInputError("signature blob is empty")
    try:
        return TAG_SCHEMES[sig[0]], sig[1:]
    except KeyError:
        raise InvalidInputError(f"unknown scheme tag 0x{sig[0]:02x}") from None


def verify(scheme: str, public_blob: bytes, message: bytes, sig: bytes) -> bool:
    """True/False for a well-formed signature; InvalidInputError when malformed."""
    tag = scheme_tag(scheme)
    if len(sig) < 1:
        raise InvalidInputError("signature blob is empty")
    if sig[0] != tag:
        raise InvalidInputError(
            f"signature tag 0x{sig[0]:02x} does not match scheme {scheme} (0x{tag:02x})"
        )
    payload = sig[1:]
    if scheme == "rsa":
        e, N = rsa.public_from_bytes(public_blob)
        return rsa.rsa_verify(e, N, message, rsa.RsaSignature.from_bytes(payload))
    if scheme == "lamport":
        return lamport.lamport_verify(
            lamport.LamportPublicKey.from_bytes(public_blob), message,
            lamport.LamportSignature.from_bytes(payload),
        )
    if scheme in ("wots", "wots-checksum"):
        mode = scheme == "wots-checksum"
        return wots.wots_verify(
            wots.WotsPublicKey.from_bytes(public_blob, mode), message,
            wots.WotsSignature.from_bytes(payload, mode),
        )
    if scheme == "merkle":
        if len(public_blob) != 32:
            raise InvalidInputError("merkle public key must be a 32-byte root")
        return merkle.mmt_verify(public_blob, message, merkle.MerkleManyTimeSignature.from_bytes(payload))
    params = lattice.DEFAULT_PARAMS
    A, u = lattice.public_from_bytes(public_blob, params)
    return lattice.fs_verify(A, u, params, message, lattice.LatticeSignature.from_bytes(payload, params))
