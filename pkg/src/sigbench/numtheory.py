"""Integer arithmetic used by the RSA and lattice code."""
from __future__ import annotations

from typing import Callable, Iterable

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


def mod_pow(base: int, exponent: int, modulus: int) -> int:
    """Left-to-right square-and-multiply."""
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    if exponent < 0:
        raise ValueError("negative exponents are not supported")
    if modulus == 1:
        return 0
    base %= modulus
    result = 1
    for bit in bin(exponent)[2:]:
        result = result * result % modulus
        if bit == "1":
            result = result * base % modulus
    return result


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b == g == gcd(a, b)."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_s, s = s, old_s - quot * s
        old_t, t = t, old_t - quot * t
    return old_r, old_s, old_t


def mod_inverse(a: int, m: int) -> int:
    g, s, _ = egcd(a % m, m)
    if g != 1:
        raise ValueError(f"{a} has no inverse modulo {m}")
    return s % m


def is_probable_prime(n: int, rounds: int = 40, bases: Iterable[int] | None = None,
                      randint: Callable[[int, int], int] | None = None) -> bool:
    """Miller-Rabin.

    Witnesses come from ``bases`` if given, else from ``randint(lo, hi)``,
    else the first ``rounds`` primes (deterministic; exact below 3.3e24).
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1

    if bases is None:
        if randint is not None:
            bases = [randint(2, n - 2) for _ in range(rounds)]
        else:
            bases = _SMALL_PRIMES[:rounds]

    for a in bases:
        a %= n
        if a in (0, 1, n - 1):
            continue
        x = mod_pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True
