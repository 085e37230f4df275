"""Combinatorics of Green-Griffiths jet bundles.

Weighted partitions index the graded pieces
``S^{l_1}V* (x) S^{l_2}V* (x) ... (x) S^{l_k}V*`` of ``E_{k,m}V*``, with
``l_1 + 2 l_2 + ... + k l_k = m``.  Orbifold monomials carry an extra pole
part ``f_1^{-b_1} ... f_p^{-b_p}`` that is admissible when every pole order is
bounded by ``sum_s alpha_{s,j} (1 - s/rho_j)_+``.

All counts are exact Python integers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ._rational import as_ramification, positive_part_one_minus

__all__ = [
    "WeightedPartition",
    "OrbifoldMonomial",
    "weighted_partitions",
    "graded_dim",
    "jet_space_dim",
    "monomial_admissible",
    "pole_bound",
    "count_admissible_monomials",
]


@dataclass(frozen=True)
class WeightedPartition:
    """A k-tuple ``(l_1, ..., l_k)`` with ``sum s*l_s = weight``."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 0 for p in self.parts):
            raise ValueError("parts must be non-negative")

    @property
    def order(self) -> int:
        return len(self.parts)

    @property
    def weight(self) -> int:
        return sum(s * l for s, l in enumerate(self.parts, start=1))


@dataclass(frozen=True)
class OrbifoldMonomial:
    """Monomial ``prod_j f_j^{-beta_j} prod_{s,j} (f_j^{(s)})^{alpha[s][j]}``.

    ``alpha`` is a k x r table of exponents (row s-1 is the derivative order
    s), ``beta`` holds the pole orders on the first ``p`` coordinates and
    ``rho`` the matching ramification numbers (``math.inf`` for log poles).
    """

    alpha: tuple[tuple[int, ...], ...]
    beta: tuple[int, ...]
    rho: tuple

    def __post_init__(self):
        alpha = tuple(tuple(int(a) for a in row) for row in self.alpha)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", tuple(int(b) for b in self.beta))
        object.__setattr__(self, "rho", tuple(as_ramification(x) for x in self.rho))
        if not alpha:
            raise ValueError("alpha needs at least one row (k >= 1)")
        r = len(alpha[0])
        if any(len(row) != r for row in alpha):
            raise ValueError("alpha must be rectangular")
        if any(a < 0 for row in alpha for a in row) or any(b < 0 for b in self.beta):
            raise ValueError("exponents must be non-negative")
        if len(self.beta) != len(self.rho):
            raise ValueError("beta and rho must have the same length")
        if len(self.beta) > r:
            raise ValueError("at most r pole components (p <= r)")

    @property
    def order(self) -> int:
        return len(self.alpha)

    @property
    def rank(self) -> int:
        return len(self.alpha[0])

    @property
    def degree(self) -> int:
        return sum(s * sum(row) for s, row in enumerate(self.alpha, start=1))


def weighted_partitions(k: int, m: int) -> list[WeightedPartition]:
    """All ``(l_1..l_k)`` with ``sum s*l_s = m``.

    Ordered lexicographically on the reversed tuple ``(l_k, ..., l_1)``, so
    ``weighted_partitions(2, 3)`` gives ``(3, 0)`` then ``(1, 1)``.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if m < 0:
        return []
    out: list[tuple[int, ...]] = []

    def rec(s: int, remaining: int, tail: tuple[int, ...]):
        # tail holds (l_{s+1}, ..., l_k)
        if s == 1:
            out.append((remaining,) + tail)
            return
        for ls in range(remaining // s + 1):
            rec(s - 1, remaining - s * ls, (ls,) + tail)

    rec(k, m, ())
    out.sort(key=lambda t: t[::-1])
    return [WeightedPartition(t) for t in out]


@lru_cache(maxsize=None)
def _sym_dim(l: int, r: int) -> int:
    return math.comb(l + r - 1, r - 1)


def graded_dim(k: int, m: int, r: int) -> int:
    """Rank of the graded bundle of ``E_{k,m}V*`` for ``rank V = r``.

    Equal to the coefficient of ``t^m`` in ``prod_{s<=k} (1 - t^s)^{-r}``.
    """
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    if m < 0:
        return 0
    total = 0
    for wp in weighted_partitions(k, m):
        term = 1
        for l in wp.parts:
            term *= _sym_dim(l, r)
        total += term
    return total


def jet_space_dim(n: int, r: int, k: int) -> int:
    """Dimension ``n + k r - 1`` of the projectivized jet bundle ``X_k(V)``."""
    if n < 1 or r < 1 or k < 1:
        raise ValueError("n, r, k must be >= 1")
    return n + k * r - 1


def pole_bound(column: Sequence[int], rho) -> Fraction:
    """``sum_s alpha_s (1 - s/rho)_+`` for one coordinate's exponent column."""
    rho = as_ramification(rho)
    return sum(
        (a * positive_part_one_minus(s, rho) for s, a in enumerate(column, start=1)),
        Fraction(0),
    )


def monomial_admissible(mono: OrbifoldMonomial) -> bool:
    """True when every pole order obeys the orbifold multiplicity condition."""
    for j, (b, rho) in enumerate(zip(mono.beta, mono.rho)):
        column = [row[j] for row in mono.alpha]
        if b > pole_bound(column, rho):
            return False
    return True


def _column_counts(k: int, m: int, rho) -> list[int]:
    """For w = 0..m: number of (alpha column, beta) pairs of column weight w.

    ``rho=None`` means the coordinate carries no pole (beta absent).
    """
    counts = [0] * (m + 1)

    def rec(s: int, remaining: int, bound: Fraction):
        if s > k:
            w = m - remaining
            counts[w] += 1 if rho is None else math.floor(bound) + 1
            return
        coeff = Fraction(1) if rho is None else positive_part_one_minus(s, rho)
        for a in range(remaining // s + 1):
            rec(s + 1, remaining - s * a, bound + a * coeff)

    rec(1, m, Fraction(0))
    return counts


def count_admissible_monomials(k: int, r: int, p: int, m: int, rho: Sequence) -> int:
    """Number of admissible orbifold monomials of weighted degree ``m``.

    This counts generating monomials ``(alpha, beta)``, not the dimension of
    the space they span; linear relations are not taken into account.
    """
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    if p > r:
        raise ValueError("p must be <= r")
    rho = [as_ramification(x) for x in rho]
    if len(rho) != p:
        raise ValueError("rho must have p entries")
    if any(x <= 1 for x in rho):
        raise ValueError("ramification numbers must be > 1")
    if m < 0:
        return 0
    # the count factorizes over coordinates; convolve column generating series
    series = [1] + [0] * m
    for j in range(r):
        col = _column_counts(k, m, rho[j] if j < p else None)
        new = [0] * (m + 1)
        for a, ca in enumerate(series):
            if ca:
                for b in range(m - a + 1):
                    new[a + b] += ca * col[b]
        series = new
    return series[m]

