#!/usr/bin/env python3
"""Many one-time keys under one 32-byte Merkle root.

Run: python3 demos/merkle_many_time.py
"""
import dataclasses
import hashlib

from sigbench.errors import KeyExhaustedError
from sigbench.merkle import mmt_keygen, mmt_sign, mmt_verify

kp = mmt_keygen(hashlib.sha256(b"demo merkle").digest(), 3)
root = kp.public_key()
print("root:", root.hex(), " capacity:", kp.capacity)

for i in range(kp.capacity):
    msg = b"message %d" % i
    sig, kp = mmt_sign(kp, msg)
    print(f"leaf {sig.leaf_index}: {len(sig.to_bytes())} bytes, verifies={mmt_verify(root, msg, sig)}")

try:
    mmt_sign(kp, b"one too many")
except KeyExhaustedError as exc:
    print("ninth signature refused:", exc)

# moving a signature to another index breaks the authentication path
sig0, _ = mmt_sign(mmt_keygen(hashlib.sha256(b"demo merkle").digest(), 3), b"m")
moved = dataclasses.replace(sig0, leaf_index=1)
print("signature replayed at leaf 1 verifies:", mmt_verify(root, b"m", moved))
