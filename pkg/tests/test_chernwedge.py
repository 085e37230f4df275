import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from orbijet.chernwedge import (
    elementary_symmetric,
    elementary_symmetric_all,
    lemma23_inequality_check,
    lemma23_lhs,
    mixed_discriminant,
    mixed_discriminant_batch,
    morse_index_count,
    relative_eigenvalues,
)


def rand_herm(rng, n, psd=False):
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return G @ G.conj().T if psd else (G + G.conj().T) / 2


def test_mixed_discriminant_examples():
    assert mixed_discriminant(np.eye(2), np.eye(2)) == pytest.approx(2)
    assert mixed_discriminant(np.array([[3.5]])) == pytest.approx(3.5)
    a, b, c, d = 2.0, 3.0, 5.0, 7.0
    assert mixed_discriminant(np.diag([a, b]), np.diag([c, d])) == pytest.approx(a * d + b * c)
    assert mixed_discriminant([np.eye(3)] * 3) == pytest.approx(6)
    with pytest.raises(ValueError):
        mixed_discriminant(np.eye(2), np.eye(3))


def test_mixed_discriminant_polarization_and_symmetry():
    rng = np.random.default_rng(0)
    for n in range(1, 5):
        A = rand_herm(rng, n)
        assert mixed_discriminant([A] * n) == pytest.approx(math.factorial(n) * np.linalg.det(A).real, rel=1e-10, abs=1e-10)
        mats = [rand_herm(rng, n) for _ in range(n)]
        base = mixed_discriminant(mats)
        assert mixed_discriminant(mats[::-1]) == pytest.approx(base, rel=1e-9, abs=1e-9)
        # multilinear in the first slot
        B = rand_herm(rng, n)
        lhs = mixed_discriminant([2 * mats[0] + B] + mats[1:])
        assert lhs == pytest.approx(2 * base + mixed_discriminant([B] + mats[1:]), rel=1e-9, abs=1e-9)


def test_mixed_discriminant_monotone_on_psd():
    rng = np.random.default_rng(1)
    for n in range(1, 5):
        mats = [rand_herm(rng, n, psd=True) for _ in range(n)]
        inc = rand_herm(rng, n, psd=True)
        assert mixed_discriminant([mats[0] + inc] + mats[1:]) >= mixed_discriminant(mats) - 1e-9


def test_mixed_discriminant_batch_agrees():
    rng = np.random.default_rng(2)
    stacks = [np.stack([rand_herm(rng, 3) for _ in range(5)]) for _ in range(3)]
    batch = mixed_discriminant_batch(stacks)
    for s in range(5):
        assert batch[s] == pytest.approx(mixed_discriminant([m[s] for m in stacks]), rel=1e-10, abs=1e-10)


def test_elementary_symmetric():
    assert elementary_symmetric([1, 1], 2) == 1
    assert elementary_symmetric([2, 3], 1) == 5
    assert elementary_symmetric([2, 3], 0) == 1
    with pytest.raises(ValueError):
        elementary_symmetric([1], 2)


@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), max_size=7))
def test_elementary_symmetric_product_identity(lam):
    assert sum(elementary_symmetric_all(lam)) == math.prod((1 + x for x in lam), start=Fraction(1))


def test_lemma23_examples():
    ok, lhs = lemma23_inequality_check([Fraction(1, 2), Fraction(1, 2)], 0, exact=True)
    assert ok and lhs == Fraction(3, 4)
    ok, lhs = lemma23_inequality_check([2, 1, 3], 0, exact=True)
    assert ok and lhs == 1
    assert lemma23_lhs([Fraction(1, 3)], 1) == Fraction(1, 3) - 1 + Fraction(2, 3)


@settings(max_examples=300)
@given(st.lists(st.fractions(min_value=0, max_value=3, max_denominator=12), min_size=1, max_size=5))
def test_lemma23_exact_property(lam):
    for q in range(len(lam) + 1):
        ok, lhs = lemma23_inequality_check(lam, q, exact=True)
        assert ok, (lam, q, lhs)


def test_lemma23_float_mode_random():
    rng = np.random.default_rng(3)
    for _ in range(2000):
        n = int(rng.integers(1, 6))
        lam = rng.uniform(0, 3, n)
        for q in range(n + 1):
            assert lemma23_inequality_check(lam, q)[0]


def test_lemma23_rejects_negative():
    with pytest.raises(ValueError):
        lemma23_inequality_check([-1, 2], 0)


def test_morse_index_count():
    rng = np.random.default_rng(4)
    alpha = rand_herm(rng, 3, psd=True) + np.eye(3)
    assert np.allclose(morse_index_count(alpha, np.zeros((3, 3))), 1)
    assert np.allclose(morse_index_count(alpha, alpha), 0, atol=1e-10)
    assert np.allclose(morse_index_count(alpha, 2 * alpha), -1)
    with pytest.raises(ValueError):
        morse_index_count(np.diag([1.0, -1.0]), np.eye(2))


def test_wedge_specializations_match_symmetric_functions():
    # n a^{n-1} ^ b = sigma_1 a^n and eta^n = prod(1 - lambda) a^n, eta = a - b
    rng = np.random.default_rng(5)
    for n in range(1, 5):
        alpha = rand_herm(rng, n, psd=True) + 0.5 * np.eye(n)
        beta = rand_herm(rng, n, psd=True)
        lam = relative_eigenvalues(alpha, beta)
        top = mixed_discriminant([alpha] * n)
        mixed = n * mixed_discriminant([alpha] * (n - 1) + [beta])
        assert mixed / top == pytest.approx(elementary_symmetric(list(lam), 1), rel=1e-9)
        eta_n = mixed_discriminant([alpha - beta] * n)
        assert eta_n / top == pytest.approx(np.prod(1 - lam), rel=1e-8, abs=1e-9)
        # q = 1: 1[lambda_2 < 1] prod(1 - lambda) >= 1 - sigma_1
        indicator = 1.0 if n == 1 or lam[1] < 1 else 0.0
        assert indicator * eta_n / top >= (top - mixed) / top - 1e-9
