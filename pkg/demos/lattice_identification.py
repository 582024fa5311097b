#!/usr/bin/env python3
"""Lattice identification, its Fiat-Shamir signature, and why it leaks.

Run: python3 demos/lattice_identification.py
"""
import hashlib

import numpy as np

from sigbench.lattice import (
    DEFAULT_PARAMS as P, centered, fs_sign, fs_verify, lattice_keygen,
    residual, run_identification, sample_short,
)


def seed(label):
    return hashlib.sha256(label.encode()).digest()


kp = lattice_keygen(P, seed("demo lattice"))
print(f"q={P.q} n={P.n} m={P.m} eta={P.eta} c_max={P.c_max} bound={P.bound}")
print("secret x:", centered(kp.x, P.q))

tr = run_identification(kp, seed("prover"), seed("verifier"))
r = residual(kp.A, kp.u, tr.v, tr.z, tr.c, P.q)
print("honest round: c =", tr.c, " accepted =", tr.accepted, " max|r| =", int(np.abs(r).max()))

accepted = 0
for t in range(200):
    fake = sample_short(seed(f"fake {t}"), 0x58, P.n, P.eta, P.q)
    accepted += run_identification(kp, seed(f"p{t}"), seed(f"v{t}"), nonce=t, secret=fake).accepted
print("impostor rounds accepted:", accepted, "/ 200")

sig = fs_sign(kp, P, b"signed text", seed("nonce"))
print("signature verifies:", fs_verify(kp.A, kp.u, P, b"signed text", sig))
print("altered text verifies:", fs_verify(kp.A, kp.u, P, b"signed text.", sig))

# No rejection sampling: z = c x + y with tiny y, so rounding z / c recovers x.
for i in range(50):
    s = fs_sign(kp, P, b"leak %d" % i, seed("nonce"))
    if s.c > 2 * P.eta:
        guess = np.rint(centered(s.z, P.q) / s.c).astype(int)
        print(f"from one signature with c={s.c}:", guess)
        print("recovered x exactly:", np.array_equal(np.mod(guess, P.q), kp.x))
        break
