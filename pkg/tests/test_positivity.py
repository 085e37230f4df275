import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orbijet.positivity import (
    HermitianTensor,
    RankOneFactor,
    bilinear_square,
    evaluate,
    factor_span_rank,
    fourier_identity_check,
    griffiths_minimum,
    is_griffiths_semipositive,
    is_nakano_semipositive,
    random_griffiths_tensor,
    random_strong_factors,
    reconstruct,
    reconstruction_error,
    sandwich_check,
    strong_decomposition,
    tautological_example,
    trace_E,
)


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def dense_form(theta, w):
    """Oracle: flatten to an (n r)x(n r) matrix and evaluate w^T M conj(w)."""
    n, r = theta.n, theta.r
    M = np.zeros((n * r, n * r), dtype=complex)
    for i in range(n):
        for j in range(n):
            for l in range(r):
                for m in range(r):
                    M[i * r + l, j * r + m] = theta.coeffs[i, j, l, m]
    v = np.asarray(w).reshape(n * r)
    return v @ M @ v.conj()


def test_evaluate_examples():
    rng = np.random.default_rng(0)
    w = crandn(rng, 3, 2)
    assert evaluate(HermitianTensor.identity(3, 2), w) == pytest.approx(np.sum(np.abs(w) ** 2))
    theta = HermitianTensor.product(np.diag([2.0, 3.0]), np.eye(2))
    assert evaluate(theta, np.outer([1, 0], [1, 0])) == pytest.approx(2.0)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_evaluate_matches_dense_oracle(n, r, seed):
    rng = np.random.default_rng(seed)
    theta = random_griffiths_tensor(n, r, rng)
    w = crandn(rng, n, r)
    val = evaluate(theta, w)
    assert abs(np.imag(dense_form(theta, w))) < 1e-9 * (1 + abs(val))
    assert val == pytest.approx(np.real(dense_form(theta, w)), rel=1e-10, abs=1e-10)


def test_hermitian_symmetry_enforced():
    c = np.zeros((1, 1, 2, 2), dtype=complex)
    c[0, 0, 0, 1] = 1.0
    with pytest.raises(ValueError):
        HermitianTensor(c)


def test_trace_E_examples():
    rng = np.random.default_rng(1)
    G = crandn(rng, 3, 3)
    omega = G @ G.conj().T
    assert np.allclose(trace_E(HermitianTensor.product(omega, np.eye(4))), 4 * omega)
    alpha, psi = crandn(rng, 3), crandn(rng, 2)
    f = RankOneFactor(alpha, psi)
    expected = np.sum(np.abs(psi) ** 2) * np.outer(alpha, alpha.conj())
    assert np.allclose(trace_E(f.tensor()), expected)
    assert np.allclose(trace_E(HermitianTensor.identity(3, 5)), 5 * np.eye(3))


def test_trace_E_linear():
    rng = np.random.default_rng(2)
    a, b = random_griffiths_tensor(2, 3, rng), random_griffiths_tensor(2, 3, rng)
    assert np.allclose(trace_E(a + b * 2.5), trace_E(a) + 2.5 * trace_E(b))


def test_nakano_examples():
    assert is_nakano_semipositive(HermitianTensor.identity(2, 3))
    # flattened matrix with eigenvalue -1
    M = np.diag([1.0, -1.0, 2.0, 3.0]).astype(complex)
    assert not is_nakano_semipositive(HermitianTensor.from_matrix(M, 2, 2))
    rng = np.random.default_rng(3)
    theta = HermitianTensor.from_factors(random_strong_factors(3, 2, 4, rng), 3, 2)
    assert is_nakano_semipositive(theta)


def test_griffiths_examples():
    assert is_griffiths_semipositive(tautological_example(2), rng=0)
    assert not is_nakano_semipositive(tautological_example(2))
    neg = -HermitianTensor.identity(2, 2)
    val, xi, u = griffiths_minimum(neg, rng=0)
    assert val < 0 and not is_griffiths_semipositive(neg, rng=0)
    # the witness is sound: evaluate at xi (x) u
    assert evaluate(neg, np.outer(xi, u)) == pytest.approx(val)
    rng = np.random.default_rng(4)
    nak = HermitianTensor.from_factors(random_strong_factors(2, 3, 3, rng), 2, 3)
    assert is_griffiths_semipositive(nak, rng=1)


def test_griffiths_detects_hidden_negativity():
    rng = np.random.default_rng(5)
    theta = random_griffiths_tensor(3, 3, rng)
    xi, u = crandn(rng, 3), crandn(rng, 3)
    xi, u = xi / np.linalg.norm(xi), u / np.linalg.norm(u)
    bump = RankOneFactor(xi.conj(), u.conj()).tensor()  # |<xi,.>|^2 |<u,.>|^2 peak at xi (x) u
    shifted = theta - bump * (evaluate(theta, np.outer(xi.conj(), u.conj())) + 1.0)
    assert not is_griffiths_semipositive(shifted, rng=2)


def test_strong_decomposition_examples():
    omega = np.diag([1.0, 2.0])
    theta = HermitianTensor.product(omega, np.eye(3))
    factors = strong_decomposition(theta)
    assert np.allclose(reconstruct(factors, 2, 3).coeffs, 4 * theta.coeffs)
    assert strong_decomposition(HermitianTensor.zeros(2, 2)) == []
    with pytest.raises(ValueError):
        strong_decomposition(-HermitianTensor.identity(2, 2))


@pytest.mark.parametrize("q", [3, 4, 5])
def test_strong_decomposition_random(q):
    rng = np.random.default_rng(q)
    for _ in range(10):
        n, r = (int(v) for v in rng.integers(1, 5, size=2))
        theta = random_griffiths_tensor(n, r, rng)
        factors = strong_decomposition(theta, q=q)
        target = theta + HermitianTensor.product(trace_E(theta), np.eye(r))
        assert reconstruction_error(factors, target) < 1e-9
        rebuilt = reconstruct(factors, n, r)
        assert is_nakano_semipositive(rebuilt, tol=1e-9)
        assert factor_span_rank(factors) <= n * r


@settings(max_examples=60, deadline=None)
@given(st.integers(3, 5), st.integers(1, 3), st.integers(0, 2**32 - 1))
def test_fourier_identity(q, r, seed):
    rng = np.random.default_rng(seed)
    x, y = crandn(rng, r), crandn(rng, r)
    for lam in range(r):
        for mu in range(r):
            ok, res = fourier_identity_check(x, y, lam, mu, q)
            assert ok and res < 1e-9


def test_fourier_identity_examples():
    e = np.eye(2)
    assert fourier_identity_check(e[0], e[0], 0, 0, 3)[0]
    assert fourier_identity_check(e[0], e[1], 0, 1, 3)[0]
    with pytest.raises(ValueError):
        fourier_identity_check(e[0], e[0], 0, 0, 2)


@pytest.mark.parametrize("mode", ["a", "c"])
def test_sandwich_examples(mode):
    omega = np.array([[2.0, 1.0], [1.0, 2.0]])
    for theta in (HermitianTensor.product(omega, np.eye(2)), HermitianTensor.identity(2, 3),
                  tautological_example(2), bilinear_square(np.array([[1.0, 2j], [0.5, 1.0]]))):
        rep = sandwich_check(theta, mode)
        assert rep.passed, rep
        assert is_nakano_semipositive(reconstruct(rep.lower_factors, theta.n, theta.r), tol=1e-9)


def test_sandwich_mode_b_negative_tensor():
    rep = sandwich_check(-tautological_example(3), "b")
    assert rep.passed


def test_tautological_example():
    theta = tautological_example(2)
    e = np.eye(2)
    assert evaluate(theta, np.outer(e[0], e[1])) == pytest.approx(0)
    assert evaluate(theta, np.outer(e[0], e[0])) == pytest.approx(1)
    rng = np.random.default_rng(7)
    for n in (2, 3, 4):
        theta = tautological_example(n)
        xi, u = crandn(rng, n), crandn(rng, n)
        assert evaluate(theta, np.outer(xi, u)) == pytest.approx(abs(np.vdot(u, xi)) ** 2, rel=1e-12)
        assert np.linalg.matrix_rank(theta.form_at_u(u), tol=1e-10) == 1


def test_json_round_trip():
    rng = np.random.default_rng(8)
    theta = random_griffiths_tensor(2, 3, rng)
    text = theta.to_json()
    data = json.loads(text)
    assert data["n"] == 2 and data["r"] == 3
    assert all(len(row) == 6 for row in data["coeffs"])
    back = HermitianTensor.from_json(text)
    assert np.allclose(back.coeffs, theta.coeffs, atol=0, rtol=0)
    data["coeffs"].append([0, 1, 0, 0, 5.0, 0.0])  # breaks symmetry
    with pytest.raises(ValueError):
        HermitianTensor.from_json(json.dumps(data))
