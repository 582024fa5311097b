"""Exit criteria. Each test prints one PASS/FAIL line in the pytest summary.

Run alone with ``pytest tests/test_acceptance.py -v``.
"""
import hashlib
import os
import random
import subprocess
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest
from hypothesis import HealthCheck, assume, given, settings, strategies as st

from sigbench import api, keystore
from sigbench.errors import KeyExhaustedError
from sigbench.hashes import sha256
from sigbench.lamport import lamport_keygen, lamport_sign, lamport_verify
from sigbench.lattice import (
    DEFAULT_PARAMS, LatticeSignature, centered, fs_sign, fs_verify, lattice_keygen,
    residual, run_identification, sample_short,
)
from sigbench.merkle import mmt_keygen, mmt_sign, mmt_verify
from sigbench.rsa import fermat_check, rsa_keygen
from sigbench.sizes import REFERENCE_ROWS
from sigbench.wots import (
    extend_signature, forgeable, wots_keygen, wots_sign, wots_sign_digest,
    wots_verify, wots_verify_digest,
)

from conftest import seed_of
from oracles import center_ref

RESULTS: list[str] = []
P = DEFAULT_PARAMS


@contextmanager
def criterion(number: int, title: str, limit_s: float):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        RESULTS.append(f"[{number:>2}] FAIL  {title}  ({elapsed:.2f}s / {limit_s:g}s)  {type(exc).__name__}: {exc}")
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < limit_s
    RESULTS.append(f"[{number:>2}] {'PASS' if ok else 'FAIL'}  {title}  ({elapsed:.2f}s / {limit_s:g}s)")
    assert ok, f"criterion {number} took {elapsed:.2f}s, limit {limit_s}s"


def steps_between(start: bytes, target: bytes, limit: int = 257) -> int:
    """Count SHA-256 applications from start to target by walking the chain."""
    d = start
    for k in range(limit):
        if d == target:
            return k
        d = hashlib.sha256(d).digest()
    raise AssertionError("target not on chain")


def test_01_lamport_sizes():
    with criterion(1, "Lamport signature 8192 B, public key 512 digests = 16384 B", 1.0):
        pk, sk = lamport_keygen(seed_of("acc1"))
        sig = lamport_sign(sk, b"acceptance")
        assert len(sig.to_bytes()) == 8192
        assert len(pk.a_hashes) + len(pk.b_hashes) == 512
        assert len(pk.to_bytes()) == 16384
        assert lamport_verify(pk, b"acceptance", sig)


def test_02_wots_chain_conservation():
    with criterion(2, "WOTS sign (256-N) + verify (N) hashes = 256 per chain, 100 messages", 5.0):
        pk, sk = wots_keygen(seed_of("acc2"))
        rng = random.Random(2)
        for _ in range(100):
            msg = rng.randbytes(rng.randrange(1, 64))
            sig = wots_sign(sk, msg)
            assert wots_verify(pk, msg, sig)
            for i, n in enumerate(sha256(msg)):
                signed = steps_between(sk.chains[i], sig.elements[i])
                verified = steps_between(sig.elements[i], pk.chain_ends[i])
                assert signed == 256 - n and verified == n
                assert signed + verified == 256


def test_03_wots_malleability():
    plain_pk, plain_sk = wots_keygen(seed_of("acc3"))
    cs_pk, cs_sk = wots_keygen(seed_of("acc3"), True)
    counts = {"forged": 0, "blocked": 0}

    @settings(max_examples=100, deadline=None, derandomize=True,
              suppress_health_check=[HealthCheck.too_slow])
    @given(st.binary(min_size=32, max_size=32), st.data())
    def prop(signed, data):
        lowered = bytes(data.draw(st.integers(0, n)) for n in signed)
        assume(lowered != signed)
        assert forgeable(lowered, signed)
        forged = extend_signature(wots_sign_digest(plain_sk, signed), signed, lowered)
        assert wots_verify_digest(plain_pk, lowered, forged)
        counts["forged"] += 1
        assert not forgeable(lowered, signed, True)
        attempt = extend_signature(wots_sign_digest(cs_sk, signed), signed, lowered)
        assert not wots_verify_digest(cs_pk, lowered, attempt)
        counts["blocked"] += 1

    with criterion(3, "plain WOTS forgery accepted; same construction rejected with checksum", 5.0):
        prop()
        assert counts["forged"] >= 90 and counts["forged"] == counts["blocked"]


def test_04_merkle_h3():
    with criterion(4, "Merkle h=3: 8 signatures verify against a 32-byte root, 9th errors", 10.0):
        kp = mmt_keygen(seed_of("acc4"), 3)
        root = kp.public_key()
        assert len(root) == 32
        for i in range(8):
            msg = b"leaf %d" % i
            sig, kp = mmt_sign(kp, msg)
            assert sig.leaf_index == i
            assert mmt_verify(root, msg, sig)
        with pytest.raises(KeyExhaustedError):
            mmt_sign(kp, b"ninth")


def test_05_rsa_trapdoor():
    with criterion(5, "RSA (H^d)^e = H for 50 keys at 128 bits; Fermat for all primes <= 101", 30.0):
        rng = random.Random(5)
        for i in range(50):
            k = rsa_keygen(128, seed_of(f"acc5-{i}"))
            assert k.N == k.p * k.q and k.phi == (k.p - 1) * (k.q - 1)
            assert k.e * k.d % k.phi == 1
            h = int.from_bytes(rng.randbytes(32), "big") % k.N
            assert pow(pow(h, k.d, k.N), k.e, k.N) == h
        primes = [p for p in range(2, 102) if all(p % d for d in range(2, p))]
        assert len(primes) == 26
        for p in primes:
            assert all(fermat_check(a, p) for a in range(1, p))


def test_06_lattice_completeness():
    with criterion(6, "1000 honest transcripts pass; residual = -(c*e1 + e2); zero-error r = 0", 10.0):
        worst = 0
        for k in range(10):
            kp = lattice_keygen(P, seed_of(f"acc6-key{k}"))
            e1 = [int(t) for t in centered(kp.e1, P.q)]
            for t in range(100):
                tr = run_identification(kp, seed_of(f"acc6-p{k}-{t}"), seed_of(f"acc6-v{k}-{t}"), nonce=t)
                assert tr.accepted
                r = residual(kp.A, kp.u, tr.v, tr.z, tr.c, P.q)
                e2 = [int(t) for t in centered(tr.e2, P.q)]
                assert [int(t) for t in r] == [center_ref(-(tr.c * a + b), P.q) for a, b in zip(e1, e2)]
                worst = max(worst, int(np.abs(r).max()))
        assert worst <= P.c_max * P.eta + P.eta
        noerr = P.__class__(with_errors=False)
        kp = lattice_keygen(noerr, seed_of("acc6-noerr"))
        for t in range(100):
            tr = run_identification(kp, seed_of(f"acc6-np{t}"), seed_of(f"acc6-nv{t}"), nonce=t)
            assert tr.accepted
            assert not residual(kp.A, kp.u, tr.v, tr.z, tr.c, P.q).any()


def test_07_fiat_shamir():
    with criterion(7, "100 FS roundtrips; tampering message, c, z or v always rejected", 10.0):
        kp = lattice_keygen(P, seed_of("acc7"))
        rng = np.random.default_rng(7)
        for i in range(100):
            msg = b"fs message %d" % i
            sig = fs_sign(kp, P, msg, seed_of(f"acc7-n{i}"))
            assert fs_verify(kp.A, kp.u, P, msg, sig)
            assert not fs_verify(kp.A, kp.u, P, msg + b"x", sig)
            dc = int(rng.integers(1, P.c_max))
            assert not fs_verify(kp.A, kp.u, P, msg, LatticeSignature((sig.c + dc) % P.c_max, sig.z, sig.v))
            z = sig.z.copy()
            j = rng.integers(P.n)
            z[j] = (z[j] + rng.integers(1, P.q)) % P.q
            assert not fs_verify(kp.A, kp.u, P, msg, LatticeSignature(sig.c, z, sig.v))
            v = sig.v.copy()
            j = rng.integers(P.m)
            v[j] = (v[j] + rng.integers(1, P.q)) % P.q
            assert not fs_verify(kp.A, kp.u, P, msg, LatticeSignature(sig.c, sig.z, v))


def test_08_impostor_rejection():
    with criterion(8, "wrong-secret provers and signers pass <= 1% of 1000 trials each", 10.0):
        kp = lattice_keygen(P, seed_of("acc8"))
        interactive = signed = 0
        for t in range(1000):
            fake = sample_short(seed_of(f"acc8-fake{t}"), 0x58, P.n, P.eta, P.q)
            if np.array_equal(fake, kp.x):
                continue
            tr = run_identification(kp, seed_of(f"acc8-p{t}"), seed_of(f"acc8-v{t}"), nonce=t, secret=fake)
            interactive += tr.accepted
            msg = b"impostor %d" % t
            sig = fs_sign(kp, P, msg, seed_of(f"acc8-n{t}"), secret=fake)
            signed += fs_verify(kp.A, kp.u, P, msg, sig)
        RESULTS.append(f"     impostor pass counts: interactive {interactive}/1000, signatures {signed}/1000")
        assert interactive <= 10 and signed <= 10


def _cli(*args, env=None):
    return subprocess.run([sys.executable, "-m", "sigbench", *map(str, args)],
                          capture_output=True, text=True, env=dict(os.environ, **(env or {})))


def test_09_cli_end_to_end(tmp_path):
    with criterion(9, "CLI keygen/sign/verify for every scheme; exit codes 0/1/2/3; SPHINCS+ reference rows", 60.0):
        msg = tmp_path / "m"
        msg.write_bytes(b"cli acceptance")
        other = tmp_path / "o"
        other.write_bytes(b"cli acceptance?")
        for scheme in api.SCHEMES:
            key = tmp_path / f"{scheme}.key"
            sig = tmp_path / f"{scheme}.sig"
            assert _cli("keygen", "--scheme", scheme, "--seed", "07" * 32, "--out", key).returncode == 0
            assert _cli("sign", key, msg, "--out", sig).returncode == 0
            assert _cli("verify", f"{key}.pub", msg, sig).returncode == 0
            assert _cli("verify", f"{key}.pub", other, sig).returncode == 1
            trunc = tmp_path / f"{scheme}.trunc"
            trunc.write_bytes(sig.read_bytes()[:1])
            assert _cli("verify", f"{key}.pub", msg, trunc).returncode == 2
            if keystore.load_record(key).uses_max == 1:
                assert _cli("sign", key, msg, "--out", tmp_path / "again").returncode == 3
        assert _cli("keygen", "--scheme", "bogus-scheme", "--out", tmp_path / "b").returncode == 2
        out = _cli("sizes", "--format", "csv").stdout
        for row in ("SPHINCS+ SHA-256 128-bit, 32, 64, 17088",
                    "SPHINCS+ SHA-256 192-bit, 48, 96, 35664",
                    "SPHINCS+ SHA-256 256-bit, 64, 128, 49856"):
            assert row in out
        table = _cli("sizes").stdout
        for n in ("17088", "35664", "49856"):
            assert n in table


def test_10_table1_is_reference_only():
    with criterion(10, "SPHINCS+ sizes embedded as labelled reference data, not measured", 1.0):
        assert [(r.public_key_bytes, r.secret_key_bytes, r.signature_bytes, r.security_level)
                for r in REFERENCE_ROWS] == [
            (32, 64, 17088, "1 (128-bit)"), (48, 96, 35664, "3 (192-bit)"), (64, 128, 49856, "5 (256-bit)")]
        assert all(r.source == "published reference" for r in REFERENCE_ROWS)
