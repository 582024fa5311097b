#!/usr/bin/env python3
"""Lamport and Winternitz one-time signatures, plus the chain forgery.

Run: python3 demos/lamport_and_wots.py
"""
import hashlib

from sigbench.hashes import sha256
from sigbench.lamport import lamport_keygen, lamport_sign, lamport_verify
from sigbench.wots import (
    extend_signature, forgeable, wots_keygen, wots_sign, wots_sign_digest,
    wots_verify, wots_verify_digest,
)

seed = hashlib.sha256(b"demo ots").digest()

pk, sk = lamport_keygen(seed)
sig = lamport_sign(sk, b"hello")
print("Lamport public key bytes:", len(pk.to_bytes()))
print("Lamport signature bytes: ", len(sig.to_bytes()))
print("Lamport verifies:", lamport_verify(pk, b"hello", sig))

pk, sk = wots_keygen(seed)
sig = wots_sign(sk, b"hello")
print("WOTS signature bytes:", len(sig.to_bytes()), " verifies:", wots_verify(pk, b"hello", sig))

# Each revealed element sits 256 - N hashes down its chain. Anyone can hash
# further, which lowers N. So a signature on digest d also signs any digest
# whose bytes are all <= those of d.
signed = sha256(b"pay alice 5")
target = bytes(b // 2 for b in signed)
sig = wots_sign_digest(sk, signed)
forged = extend_signature(sig, signed, target)
print()
print("signed digest:", signed.hex())
print("target digest:", target.hex())
print("forgeable without checksum:", forgeable(target, signed))
print("forged signature accepted:", wots_verify_digest(pk, target, forged))

# The checksum encodes sum(255 - N); lowering any N raises it, which would
# need walking a checksum chain backwards.
cpk, csk = wots_keygen(seed, True)
attempt = extend_signature(wots_sign_digest(csk, signed), signed, target)
print("forgeable with checksum:", forgeable(target, signed, True))
print("checksum-mode attempt accepted:", wots_verify_digest(cpk, target, attempt))
