"""Wedge products of (1,1)-forms and the symmetric-function Morse kernel.

A (1,1)-form on ``C^n`` is represented by its Hermitian coefficient matrix.
The top wedge ``a_1 ^ ... ^ a_n`` is identified with the mixed discriminant
``D(A_1, ..., A_n)``, normalized so that ``D(I, ..., I) = n!``:

* ``n = 1``: ``D(A) = A[0, 0]``;
* ``n = 2``: ``D(A, B) = A00 B11 + A11 B00 - A01 B10 - A10 B01``.

With this convention ``C(n, j) a^{n-j} ^ b^j = sigma_j(lambda) a^n`` where
``lambda`` are the eigenvalues of ``b`` relative to ``a``.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.linalg

from ._rational import as_rational

__all__ = [
    "mixed_discriminant",
    "mixed_discriminant_batch",
    "elementary_symmetric",
    "elementary_symmetric_all",
    "lemma23_lhs",
    "lemma23_inequality_check",
    "morse_index_count",
    "relative_eigenvalues",
]


def mixed_discriminant(*mats) -> float | complex:
    """Coefficient of ``t_1 ... t_n`` in ``det(t_1 A_1 + ... + t_n A_n)``.

    Inclusion-exclusion over subsets, ``O(2^n n^3)``.  Accepts either the
    matrices as separate arguments or a single sequence of them.
    """
    if len(mats) == 1 and not isinstance(mats[0], np.ndarray):
        mats = tuple(mats[0])
    A = [np.atleast_2d(np.asarray(m)) for m in mats]
    n = len(A)
    if n == 0:
        return 1.0
    for m in A:
        if m.shape != (n, n):
            raise ValueError(f"need {n} matrices of shape ({n}, {n}), got {m.shape}")
    total = 0.0
    for size in range(1, n + 1):
        sign = (-1) ** (n - size)
        for subset in itertools.combinations(range(n), size):
            total += sign * np.linalg.det(sum(A[i] for i in subset))
    if np.iscomplexobj(total) and abs(np.imag(total)) <= 1e-12 * (1 + abs(total)):
        return float(np.real(total))
    return total


def mixed_discriminant_batch(mats) -> np.ndarray:
    """Vectorized :func:`mixed_discriminant` over a leading sample axis.

    ``mats`` is a sequence of ``n`` arrays of shape ``(S, n, n)``; returns the
    ``S`` mixed discriminants (complex).
    """
    A = [np.asarray(m) for m in mats]
    n = len(A)
    if n == 0:
        raise ValueError("need at least one matrix stack")
    S = A[0].shape[0]
    for m in A:
        if m.shape != (S, n, n):
            raise ValueError(f"each stack must have shape ({S}, {n}, {n}), got {m.shape}")
    total = np.zeros(S, dtype=complex)
    for size in range(1, n + 1):
        sign = (-1) ** (n - size)
        for subset in itertools.combinations(range(n), size):
            total += sign * np.linalg.det(sum(A[i] for i in subset))
    return total


def elementary_symmetric_all(values: Sequence) -> list:
    """``[e_0, e_1, ..., e_n]`` of ``values``; exact for Fractions and ints."""
    e = [1] + [0] * len(values)
    for i, v in enumerate(values, start=1):
        for j in range(i, 0, -1):
            e[j] = e[j] + e[j - 1] * v
    return e


def elementary_symmetric(lam: Sequence, j: int):
    """``sigma_j(lam)``; ``sigma_0 = 1``."""
    if not 0 <= j <= len(lam):
        raise ValueError(f"need 0 <= j <= {len(lam)}")
    return elementary_symmetric_all(list(lam))[j]


def lemma23_lhs(lam: Sequence, q: int):
    """``sum_{j<=q} (-1)^{q-j} sigma_j - 1[lam_{q+1} < 1] (-1)^q prod (1 - lam_j)``.

    ``lam`` is sorted in decreasing order first; for ``q = n`` the missing
    ``lam_{n+1}`` is taken as 0, so the indicator is 1.
    """
    lam = sorted(lam, reverse=True)
    n = len(lam)
    if not 0 <= q <= n:
        raise ValueError(f"need 0 <= q <= n = {n}")
    e = elementary_symmetric_all(lam)
    total = sum((-1) ** (q - j) * e[j] for j in range(q + 1))
    nxt = lam[q] if q < n else 0
    if nxt < 1:
        prod = 1
        for x in lam:
            prod = prod * (1 - x)
        total = total - (-1) ** q * prod
    return total


def lemma23_inequality_check(lam: Sequence, q: int, exact: bool = False, tol: float = 1e-12):
    """Return ``(passed, lhs)`` for the Morse symmetric-function inequality.

    In exact mode the entries are converted to Fractions and the test is
    ``lhs >= 0``; otherwise ``lhs >= -tol``.
    """
    if any(x < 0 for x in lam):
        raise ValueError("eigenvalues must be non-negative")
    if exact:
        lhs = lemma23_lhs([as_rational(x) for x in lam], q)
        return lhs >= 0, lhs
    lhs = float(lemma23_lhs([float(x) for x in lam], q))
    return lhs >= -tol, lhs


def relative_eigenvalues(alpha, beta) -> np.ndarray:
    """Eigenvalues of ``beta`` with respect to ``alpha`` (``alpha > 0``), descending."""
    alpha = np.asarray(alpha, dtype=complex)
    beta = np.asarray(beta, dtype=complex)
    try:
        vals = scipy.linalg.eigh(beta, alpha, eigvals_only=True)
    except np.linalg.LinAlgError:
        raise ValueError("alpha must be positive definite") from None
    return np.sort(vals)[::-1]


def morse_index_count(alpha, beta) -> np.ndarray:
    """Eigenvalues ``1 - lambda_i`` of ``alpha - beta`` relative to ``alpha``, ascending.

    The number of negative entries is the Morse index of ``alpha - beta``.
    """
    alpha = np.asarray(alpha, dtype=complex)
    if np.linalg.eigvalsh(alpha)[0] <= 0:
        raise ValueError("alpha must be positive definite")
    return np.sort(1.0 - relative_eigenvalues(alpha, beta))
