"""Textbook RSA signatures, the trapdoor baseline.

``S = H^d mod N`` and verification checks ``S^e mod N == H`` where ``H`` is
SHA-256 of the message read as a big-endian integer reduced mod ``N``.

No padding, no CRT, no constant-time arithmetic. Unpadded RSA signatures are
multiplicatively malleable; never use this outside a classroom.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidInputError, ParameterError
from .hashes import Seed, check_seed, prg_expand, sha256
from .numtheory import egcd, is_probable_prime, mod_inverse, mod_pow

E_DEFAULT = 0x010001
E_FALLBACK = 17
MIN_BITS = 32
MAX_BITS = 4096
MR_ROUNDS = 40

TAG_PRIME = 0x50
TAG_WITNESS = 0x57


@dataclass(frozen=True)
class RsaKeyPair:
    p: int
    q: int
    N: int
    phi: int
    e: int
    d: int

    def public_bytes(self) -> bytes:
        return f"N={self.N}\ne={self.e}\n".encode()

    def secret_bytes(self) -> bytes:
        return f"N={self.N}\ne={self.e}\nd={self.d}\np={self.p}\nq={self.q}\n".encode()

    @classmethod
    def from_secret_bytes(cls, data: bytes) -> RsaKeyPair:
        f = parse_fields(data, ("N", "e", "d", "p", "q"))
        key = keypair_from_primes(f["p"], f["q"], f["e"])
        if key.N != f["N"] or key.d != f["d"]:
            raise InvalidInputError("stored RSA fields are inconsistent")
        return key


@dataclass(frozen=True)
class RsaSignature:
    S: int

    def to_bytes(self) -> bytes:
        return str(self.S).encode()

    @classmethod
    def from_bytes(cls, data: bytes) -> RsaSignature:
        text = data.decode("ascii", errors="replace").strip()
        if not text.isdigit():
            raise InvalidInputError("RSA signature must be a decimal integer")
        return cls(int(text))


def parse_fields(data: bytes, names: tuple[str, ...]) -> dict[str, int]:
    """Parse ``name=decimal`` lines."""
    out = {}
    try:
        for line in data.decode("ascii").splitlines():
            if not line.strip():
                continue
            k, _, val = line.partition("=")
            out[k.strip()] = int(val.strip())
    except (UnicodeDecodeError, ValueError) as exc:
        raise InvalidInputError(f"malformed RSA key text: {exc}") from None
    missing = [k for k in names if k not in out]
    if missing:
        raise InvalidInputError(f"RSA key text lacks fields {missing}")
    return {k: out[k] for k in names}


def public_from_bytes(data: bytes) -> tuple[int, int]:
    f = parse_fields(data, ("N", "e"))
    return f["e"], f["N"]


def keypair_from_primes(p: int, q: int, e: int = E_DEFAULT) -> RsaKeyPair:
    if p == q:
        raise ParameterError("p and q must differ")
    phi = (p - 1) * (q - 1)
    if egcd(e, phi)[0] != 1:
        raise ParameterError(f"e={e} is not invertible modulo phi")
    return RsaKeyPair(p, q, p * q, phi, e, mod_inverse(e, phi))


class _SeedStream:
    """Deterministic integers drawn from prg_expand blocks."""

    def __init__(self, seed: Seed, tag: int):
        self.seed, self.tag, self.ctr = seed, tag, 0

    def bits(self, k: int) -> int:
        nbytes = (k + 7) // 8
        buf = b""
        while len(buf) < nbytes:
            buf += prg_expand(self.seed, self.tag, self.ctr)
            self.ctr += 1
        return int.from_bytes(buf[:nbytes], "big") >> (8 * nbytes - k)

    def randint(self, lo: int, hi: int) -> int:
        span = hi - lo + 1
        k = span.bit_length()
        while True:
            r = self.bits(k)
            if r < span:
                return lo + r


def _random_prime(bits: int, cands: _SeedStream, witnesses: _SeedStream) -> int:
    while True:
        # top two bits set so p*q has exactly 2*bits bits
        n = cands.bits(bits) | (3 << (bits - 2)) | 1
        if is_probable_prime(n, MR_ROUNDS, randint=witnesses.randint):
            return n


def rsa_keygen(bits: int, seed: Seed) -> RsaKeyPair:
    if not MIN_BITS <= bits <= MAX_BITS or bits % 2:
        raise ParameterError(f"bits must be even and in [{MIN_BITS}, {MAX_BITS}], got {bits}")
    seed = check_seed(seed)
    cands = _SeedStream(seed, TAG_PRIME)
    witnesses = _SeedStream(seed, TAG_WITNESS)
    half = bits // 2
    while True:
        p = _random_prime(half, cands, witnesses)
        q = _random_prime(half, cands, witnesses)
        if p == q:
            continue
        phi = (p - 1) * (q - 1)
        for e in (E_DEFAULT, E_FALLBACK):
            if egcd(e, phi)[0] == 1:
                return keypair_from_primes(p, q, e)


def message_representative(message: bytes, N: int) -> int:
    return int.from_bytes(sha256(message), "big") % N


def rsa_sign_int(key: RsaKeyPair, h: int) -> RsaSignature:
    return RsaSignature(mod_pow(h, key.d, key.N))


def rsa_sign(key: RsaKeyPair, message: bytes) -> RsaSignature:
    return rsa_sign_int(key, message_representative(message, key.N))


def rsa_verify(e: int, N: int, message: bytes, sig: RsaSignature) -> bool:
    if not 0 <= sig.S < N:
        return False
    return mod_pow(sig.S, e, N) == message_representative(message, N)


def fermat_check(a: int, p: int) -> bool:
    """a^(p-1) == 1 (mod p); holds for every prime p and 1 <= a < p."""
    return mod_pow(a, p - 1, p) == 1
