"""Lattice Schnorr identification and its Fiat-Shamir signature.

Plain integer matrices mod a prime ``q`` (no polynomial rings). The prover
holds a short secret ``x`` and publishes ``u = A x + e1``. One round:

    commit     v = A y + e2          (y, e2 short)
    challenge  c in [0, c_max)
    respond    z = c x + y
    check      A z - c u - v  is short

The residual is exactly ``-(c e1 + e2)``, so it is accepted when every
centered coordinate is at most ``B = c_max * eta + eta``. With
``with_errors=False`` the error vectors vanish and the check is equality.

The signature replaces the verifier's challenge with
``c = int(sha256(v || message)[:4]) mod c_max``.

Warning: there is no rejection sampling. ``z = c x + y`` with ``|y| <= eta``
hands out ``x`` as ``round(z / c)`` whenever ``c > 2 eta``. With the default
``c_max = 256`` a signature also verifies for any other message whose
challenge happens to collide, about one message in 256. This module is for
study, not for protecting anything.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, ParameterError
from .hashes import Seed, check_seed, prg_expand, sha256
from .numtheory import is_probable_prime

TAG_MATRIX_SEED = 0x40
TAG_MATRIX = 0x41
TAG_X = 0x58
TAG_E1 = 0x45
TAG_NONCE = 0x4E
TAG_Y = 0x59
TAG_E2 = 0x46
TAG_CHALLENGE = 0x43

CHALLENGE_BYTES = 4
COEFF_BYTES = 2

# A and the vectors are int64 numpy arrays with entries in [0, q)
ModMatrix = np.ndarray
ModVec = np.ndarray


@dataclass(frozen=True)
class LatticeParams:
    q: int = 3329
    n: int = 16
    m: int = 24
    eta: int = 1
    c_max: int = 256
    with_errors: bool = True

    def __post_init__(self):
        if not 2 < self.q < 1 << 16 or not is_probable_prime(self.q):
            raise ParameterError("q must be an odd prime below 2**16")
        if self.n < 1 or self.m < 1:
            raise ParameterError("dimensions must be positive")
        if self.eta < 1 or self.c_max < 1 or self.c_max > 1 << 32:
            raise ParameterError("eta and c_max must be positive (c_max <= 2**32)")
        if 4 * self.bound >= self.q:
            raise ParameterError(f"bound {self.bound} must stay below q/4")

    @property
    def bound(self) -> int:
        return self.c_max * self.eta + self.eta


DEFAULT_PARAMS = LatticeParams()


def centered(vec: np.ndarray, q: int) -> np.ndarray:
    """Map entries mod q into (-q/2, q/2]."""
    r = np.mod(vec, q)
    return np.where(r > q // 2, r - q, r)


def _uniform_stream(seed: Seed, tag: int, count: int, bound: int) -> list[int]:
    """``count`` integers uniform in [0, bound) by rejection from prg_expand output."""
    width = 2 if bound <= 1 << 16 else 4
    space = 1 << (8 * width)
    limit = space - space % bound
    out: list[int] = []
    ctr = 0
    while len(out) < count:
        block = prg_expand(seed, tag, ctr)
        ctr += 1
        for i in range(0, len(block), width):
            v = int.from_bytes(block[i:i + width], "big")
            if v < limit:
                out.append(v % bound)
                if len(out) == count:
                    break
    return out


def sample_matrix(matrix_seed: Seed, params: LatticeParams) -> ModMatrix:
    vals = _uniform_stream(matrix_seed, TAG_MATRIX, params.m * params.n, params.q)
    return np.array(vals, dtype=np.int64).reshape(params.m, params.n)


def sample_short(seed: Seed, tag: int, length: int, eta: int, q: int) -> ModVec:
    """Coordinates uniform on [-eta, eta], stored mod q."""
    vals = _uniform_stream(seed, tag, length, 2 * eta + 1)
    return np.mod(np.array(vals, dtype=np.int64) - eta, q)


def _errors(seed: Seed, tag: int, length: int, params: LatticeParams) -> ModVec:
    if not params.with_errors:
        return np.zeros(length, dtype=np.int64)
    return sample_short(seed, tag, length, params.eta, params.q)


@dataclass(frozen=True, eq=False)
class LatticeKeyPair:
    A: ModMatrix
    x: ModVec
    e1: ModVec
    u: ModVec
    params: LatticeParams = DEFAULT_PARAMS
    matrix_seed: Seed | None = None
    seed: Seed | None = None

    def public_bytes(self) -> bytes:
        """32-byte matrix seed followed by u (2 bytes per entry)."""
        if self.matrix_seed is None:
            raise InvalidInputError("a key built from an explicit matrix has no compact public form")
        return self.matrix_seed + encode_vec(self.u)


def keypair_from_components(A, x, e1, params: LatticeParams = DEFAULT_PARAMS) -> LatticeKeyPair:
    """Build a key pair from explicit A, x, e1 (integers, any sign)."""
    q = params.q
    A = np.mod(np.asarray(A, dtype=np.int64), q)
    x = np.mod(np.asarray(x, dtype=np.int64), q)
    e1 = np.mod(np.asarray(e1, dtype=np.int64), q)
    if A.shape != (params.m, params.n) or x.shape != (params.n,) or e1.shape != (params.m,):
        raise InvalidInputError("component shapes do not match params")
    return LatticeKeyPair(A, x, e1, np.mod(A @ x + e1, q), params)


def lattice_keygen(params: LatticeParams, seed: Seed) -> LatticeKeyPair:
    seed = check_seed(seed)
    matrix_seed = prg_expand(seed, TAG_MATRIX_SEED, 0)
    A = sample_matrix(matrix_seed, params)
    x = sample_short(seed, TAG_X, params.n, params.eta, params.q)
    e1 = _errors(seed, TAG_E1, params.m, params)
    u = np.mod(A @ x + e1, params.q)
    return LatticeKeyPair(A, x, e1, u, params, matrix_seed, seed)


def id_commit(A: ModMatrix, params: LatticeParams, seed: Seed, nonce: int) -> tuple[ModVec, ModVec, ModVec]:
    """Prover's first move: returns (y, e2, v) with v = A y + e2."""
    s = prg_expand(check_seed(seed), TAG_NONCE, nonce)
    y = sample_short(s, TAG_Y, params.n, params.eta, params.q)
    e2 = _errors(s, TAG_E2, params.m, params)
    return y, e2, np.mod(A @ y + e2, params.q)


def id_challenge(rng_seed: Seed, params: LatticeParams = DEFAULT_PARAMS) -> int:
    return _uniform_stream(check_seed(rng_seed), TAG_CHALLENGE, 1, params.c_max)[0]


def id_respond(x: ModVec, y: ModVec, c: int, q: int = DEFAULT_PARAMS.q) -> ModVec:
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    if x.shape != y.shape:
        raise InvalidInputError("x and y must have the same length")
    return np.mod(c * x + y, q)


def residual(A: ModMatrix, u: ModVec, v: ModVec, z: ModVec, c: int, q: int) -> np.ndarray:
    """Centered A z - c u - v."""
    A = np.asarray(A, dtype=np.int64)
    u, v, z = (np.asarray(t, dtype=np.int64) for t in (u, v, z))
    m, n = A.shape
    if z.shape != (n,) or u.shape != (m,) or v.shape != (m,):
        raise InvalidInputError("dimension mismatch between A, u, v and z")
    return centered(A @ z - (c % q) * u - v, q)


def id_check(A: ModMatrix, u: ModVec, v: ModVec, z: ModVec, c: int, params: LatticeParams = DEFAULT_PARAMS) -> bool:
    r = residual(A, u, v, z, c, params.q)
    return int(np.max(np.abs(r))) <= params.bound


@dataclass(frozen=True)
class Transcript:
    v: ModVec
    c: int
    z: ModVec
    y: ModVec
    e2: ModVec
    accepted: bool


def run_identification(keypair: LatticeKeyPair, prover_seed: Seed, verifier_seed: Seed,
                       nonce: int = 0, secret: ModVec | None = None) -> Transcript:
    """One interactive round. ``secret`` overrides x to model an impostor."""
    p = keypair.params
    y, e2, v = id_commit(keypair.A, p, prover_seed, nonce)
    c = id_challenge(verifier_seed, p)
    z = id_respond(keypair.x if secret is None else secret, y, c, p.q)
    ok = id_check(keypair.A, keypair.u, v, z, c, p)
    return Transcript(v, c, z, y, e2, ok)


def encode_vec(vec: ModVec) -> bytes:
    return b"".join(int(t).to_bytes(COEFF_BYTES, "big") for t in vec)


def decode_vec(data: bytes, length: int, q: int) -> ModVec:
    if len(data) != COEFF_BYTES * length:
        raise InvalidInputError(f"expected {COEFF_BYTES * length} bytes for a length-{length} vector")
    vals = [int.from_bytes(data[i:i + COEFF_BYTES], "big") for i in range(0, len(data), COEFF_BYTES)]
    if any(t >= q for t in vals):
        raise InvalidInputError("vector entry not reduced mod q")
    return np.array(vals, dtype=np.int64)


def fs_challenge(v: ModVec, message: bytes, params: LatticeParams = DEFAULT_PARAMS) -> int:
    h = sha256(encode_vec(v) + message)
    return int.from_bytes(h[:CHALLENGE_BYTES], "big") % params.c_max


@dataclass(frozen=True, eq=False)
class LatticeSignature:
    c: int
    z: ModVec
    v: ModVec

    def to_bytes(self) -> bytes:
        return self.c.to_bytes(CHALLENGE_BYTES, "big") + encode_vec(self.z) + encode_vec(self.v)

    @classmethod
    def from_bytes(cls, data: bytes, params: LatticeParams = DEFAULT_PARAMS) -> LatticeSignature:
        if len(data) != signature_size(params):
            raise InvalidInputError(f"lattice signature must be {signature_size(params)} bytes")
        c = int.from_bytes(data[:CHALLENGE_BYTES], "big")
        zs = CHALLENGE_BYTES + COEFF_BYTES * params.n
        return cls(c, decode_vec(data[CHALLENGE_BYTES:zs], params.n, params.q),
                   decode_vec(data[zs:], params.m, params.q))

    def __eq__(self, other):
        if not isinstance(other, LatticeSignature):
            return NotImplemented
        return self.to_bytes() == other.to_bytes()


def signature_size(params: LatticeParams = DEFAULT_PARAMS) -> int:
    return CHALLENGE_BYTES + COEFF_BYTES * (params.n + params.m)


def public_size(params: LatticeParams = DEFAULT_PARAMS) -> int:
    return 32 + COEFF_BYTES * params.m


def fs_sign(keypair: LatticeKeyPair, params: LatticeParams, message: bytes, nonce_seed: Seed,
            secret: ModVec | None = None) -> LatticeSignature:
    # the commitment nonce depends on the message, so one nonce_seed never
    # reuses y across two different messages
    nonce = int.from_bytes(sha256(check_seed(nonce_seed) + message)[:4], "big")
    y, _e2, v = id_commit(keypair.A, params, nonce_seed, nonce)
    c = fs_challenge(v, message, params)
    z = id_respond(keypair.x if secret is None else secret, y, c, params.q)
    return LatticeSignature(c, z, v)


def fs_verify(A: ModMatrix, u: ModVec, params: LatticeParams, message: bytes, sig: LatticeSignature) -> bool:
    try:
        if sig.c != fs_challenge(sig.v, message, params):
            return False
        return id_check(A, u, sig.v, sig.z, sig.c, params)
    except InvalidInputError:
        return False


def public_from_bytes(data: bytes, params: LatticeParams = DEFAULT_PARAMS) -> tuple[ModMatrix, ModVec]:
    """Expand a serialized public key into (A, u)."""
    if len(data) != public_size(params):
        raise InvalidInputError(f"lattice public key must be {public_size(params)} bytes")
    return sample_matrix(data[:32], params), decode_vec(data[32:], params.m, params.q)
