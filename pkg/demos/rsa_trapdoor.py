#!/usr/bin/env python3
"""Textbook RSA as the trapdoor baseline.

Toy sizes, no padding. Run: python3 demos/rsa_trapdoor.py
"""
import hashlib

from sigbench.numtheory import is_probable_prime
from sigbench.rsa import fermat_check, rsa_keygen, rsa_sign, rsa_verify

seed = hashlib.sha256(b"demo rsa").digest()
key = rsa_keygen(256, seed)
print("p =", key.p)
print("q =", key.q)
print("N bits:", key.N.bit_length(), " e =", key.e)
print("e*d mod phi =", key.e * key.d % key.phi)

msg = b"transfer 10 coins to bob"
sig = rsa_sign(key, msg)
print("signature verifies:", rsa_verify(key.e, key.N, msg, sig))
print("other message verifies:", rsa_verify(key.e, key.N, msg + b"0", sig))

# the trapdoor rests on a^(p-1) = 1 mod p
p = 101
print("Fermat holds for every base mod", p, ":", all(fermat_check(a, p) for a in range(1, p)))
print("is 2**61-1 prime?", is_probable_prime(2**61 - 1))
