import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from sigbench.errors import InvalidInputError, ParameterError
from sigbench.hashes import sha256
from sigbench.lattice import (
    DEFAULT_PARAMS, LatticeParams, LatticeSignature, centered, fs_challenge, fs_sign,
    fs_verify, id_challenge, id_check, id_commit, id_respond, keypair_from_components,
    lattice_keygen, public_from_bytes, public_size, residual, run_identification,
    signature_size,
)

from conftest import seed_of
from oracles import center_ref, matvec_ref

P = DEFAULT_PARAMS
NOERR = dataclasses.replace(P, with_errors=False)


@pytest.fixture(scope="module")
def kp():
    return lattice_keygen(P, seed_of("lattice"))


def test_default_params():
    assert (P.q, P.n, P.m, P.eta, P.c_max) == (3329, 16, 24, 1, 256)
    assert P.bound == 257 and 4 * P.bound < P.q


@pytest.mark.parametrize("kw", [
    dict(q=3328), dict(q=65537), dict(eta=0), dict(c_max=0), dict(n=0),
    dict(q=1021),  # bound 257 >= 1021/4
])
def test_bad_params(kw):
    with pytest.raises(ParameterError):
        LatticeParams(**kw)


def test_centered():
    q = 17
    v = np.arange(q)
    c = centered(v, q)
    assert list(c) == [center_ref(int(t), q) for t in v]
    assert c.min() == -8 and c.max() == 8


def test_keygen_contract(kp):
    assert kp.A.shape == (P.m, P.n)
    assert np.all((kp.A >= 0) & (kp.A < P.q))
    assert list(kp.u) == [(a + e) % P.q for a, e in zip(matvec_ref(kp.A, kp.x, P.q), kp.e1)]
    assert np.abs(centered(kp.x, P.q)).max() <= P.eta
    assert np.abs(centered(kp.e1, P.q)).max() <= P.eta
    again = lattice_keygen(P, seed_of("lattice"))
    assert np.array_equal(again.A, kp.A) and np.array_equal(again.u, kp.u)


def test_short_sampler_covers_interval():
    p = LatticeParams(eta=2, c_max=100)
    k = lattice_keygen(p, seed_of("eta2"))
    vals = set(centered(np.concatenate([k.x, k.e1]), p.q).tolist())
    assert vals == {-2, -1, 0, 1, 2}


def test_zero_error_regime():
    k = lattice_keygen(NOERR, seed_of("noerr"))
    assert not k.e1.any()
    assert list(k.u) == matvec_ref(k.A, k.x, P.q)


def test_zero_secret_gives_zero_public(kp):
    z = keypair_from_components(kp.A, np.zeros(P.n), np.zeros(P.m))
    assert not z.u.any()
    with pytest.raises(InvalidInputError):
        keypair_from_components(kp.A, np.zeros(P.n + 1), np.zeros(P.m))


def test_commit(kp):
    s = seed_of("commit")
    y, e2, v = id_commit(kp.A, P, s, 0)
    assert list(v) == [(a + e) % P.q for a, e in zip(matvec_ref(kp.A, y, P.q), e2)]
    y0, e20, v0 = id_commit(kp.A, NOERR, s, 0)
    assert not e20.any() and list(v0) == matvec_ref(kp.A, y0, P.q)
    assert not np.mod(kp.A @ np.zeros(P.n, dtype=np.int64), P.q).any()


def test_commit_nonces_distinct(kp):
    s = seed_of("nonces")
    seen = set()
    for nonce in range(10):
        y, _, v = id_commit(kp.A, P, s, nonce)
        seen.add((y.tobytes(), v.tobytes()))
    assert len(seen) == 10


def test_challenge_range_and_coverage():
    draws = [id_challenge(seed_of(f"ch{i}")) for i in range(10_000)]
    assert all(0 <= c < P.c_max for c in draws)
    assert len(set(draws)) >= 0.95 * P.c_max
    assert id_challenge(seed_of("ch0")) == draws[0]


def test_respond():
    assert list(id_respond([1, 2], [3, 4], 5, 17)) == [8, 14]
    y = np.array([5, 6, 7])
    assert list(id_respond([1, 2, 3], y, 0, 17)) == [5, 6, 7]
    assert list(id_respond([0, 0, 0], y, 9, 17)) == [5, 6, 7]
    with pytest.raises(InvalidInputError):
        id_respond([1, 2], [1, 2, 3], 1, 17)


@settings(max_examples=50)
@given(st.integers(0, 3328), st.integers(0, 3328), st.lists(st.integers(0, 3328), min_size=4, max_size=4),
       st.lists(st.integers(0, 3328), min_size=4, max_size=4))
def test_response_linearity(c1, c2, x, y):
    q = P.q
    lhs = id_respond(x, y, (c1 + c2) % q, q)
    rhs = id_respond(x, id_respond(x, y, c2, q), c1, q)
    assert np.array_equal(lhs, rhs)


def test_check_exact_without_errors():
    k = lattice_keygen(NOERR, seed_of("exact"))
    t = run_identification(k, seed_of("p"), seed_of("v"))
    assert t.accepted
    assert not residual(k.A, k.u, t.v, t.z, t.c, P.q).any()


def test_residual_equals_error_combination(kp):
    for i in range(50):
        t = run_identification(kp, seed_of(f"p{i}"), seed_of(f"v{i}"))
        r = residual(kp.A, kp.u, t.v, t.z, t.c, P.q)
        expect = [center_ref(-(t.c * int(a) + int(b)), P.q) for a, b in
                  zip(centered(kp.e1, P.q), centered(t.e2, P.q))]
        assert list(r) == expect
        assert np.abs(r).max() <= t.c * P.eta + P.eta
        assert t.accepted


def test_random_response_rejected(kp):
    rng = np.random.default_rng(5)
    y, _, v = id_commit(kp.A, P, seed_of("rand"), 0)
    passes = sum(
        id_check(kp.A, kp.u, v, rng.integers(0, P.q, P.n), int(rng.integers(1, P.c_max)), P)
        for _ in range(100)
    )
    assert passes == 0


def test_check_dimension_mismatch(kp):
    with pytest.raises(InvalidInputError):
        id_check(kp.A, kp.u, kp.u, np.zeros(P.n + 1, dtype=np.int64), 1, P)


def test_fs_roundtrip_and_determinism(kp):
    ns = seed_of("nonce")
    sig = fs_sign(kp, P, b"hello", ns)
    assert sig.c == fs_challenge(sig.v, b"hello", P)
    assert fs_verify(kp.A, kp.u, P, b"hello", sig)
    assert fs_sign(kp, P, b"hello", ns) == sig
    assert int(sha256(b"".join(int(t).to_bytes(2, "big") for t in sig.v) + b"hello")[:4].hex(), 16) % 256 == sig.c


def test_fs_messages_give_different_challenges(kp):
    ns = seed_of("nonce")
    cs = {fs_sign(kp, P, f"m{i}".encode(), ns).c for i in range(10)}
    assert len(cs) >= 9


def test_challenge_binding(kp):
    rng = np.random.default_rng(9)
    base = fs_sign(kp, P, b"bind", seed_of("bind"))
    changed = 0
    for i in range(1000):
        v = base.v.copy()
        j = rng.integers(P.m)
        v[j] = (v[j] + rng.integers(1, P.q)) % P.q
        changed += fs_challenge(v, b"bind", P) != base.c
    assert changed >= 990
    changed = sum(fs_challenge(base.v, b"bind%d" % i, P) != base.c for i in range(1000))
    assert changed >= 990


def test_signature_serialization(kp):
    sig = fs_sign(kp, P, b"ser", seed_of("ser"))
    blob = sig.to_bytes()
    assert len(blob) == signature_size(P) == 4 + 2 * 16 + 2 * 24
    assert LatticeSignature.from_bytes(blob) == sig
    with pytest.raises(InvalidInputError):
        LatticeSignature.from_bytes(blob[:-1])
    with pytest.raises(InvalidInputError):
        LatticeSignature.from_bytes(blob[:4] + b"\xff\xff" + blob[6:])


def test_public_bytes(kp):
    pub = kp.public_bytes()
    assert len(pub) == public_size(P) == 32 + 48
    A, u = public_from_bytes(pub)
    assert np.array_equal(A, kp.A) and np.array_equal(u, kp.u)


def test_impostor_signatures_rarely_verify(kp):
    fake = lattice_keygen(P, seed_of("fake")).x
    ok = sum(
        fs_verify(kp.A, kp.u, P, b"m%d" % i, fs_sign(kp, P, b"m%d" % i, seed_of("imp"), secret=fake))
        for i in range(300)
    )
    assert ok <= 3  # c == 0 happens with probability 1/256


@pytest.mark.educational
def test_secret_leaks_without_rejection_sampling(kp):
    # |y| <= eta, so z / c rounds to x once c > 2*eta
    for i in range(20):
        sig = fs_sign(kp, P, b"leak%d" % i, seed_of("leak"))
        if sig.c > 2 * P.eta:
            est = np.rint(centered(sig.z, P.q) / sig.c).astype(np.int64)
            assert np.array_equal(np.mod(est, P.q), kp.x)
            return
    pytest.fail("no signature with a large enough challenge")


@pytest.mark.educational
def test_small_challenge_space_allows_grinding(kp):
    # with c_max = 256 a reused (c, z, v) fits some other message after ~256 tries
    sig = fs_sign(kp, P, b"pay 1", seed_of("grind"))
    for i in range(5000):
        other = b"pay %d" % (1000 + i)
        if fs_challenge(sig.v, other, P) == sig.c:
            assert fs_verify(kp.A, kp.u, P, other, sig)
            return
    pytest.fail("no challenge collision in 5000 tries")
