"""Closed-form moments on unit spheres and weighted simplices.

The simplex measure ``nu_{k,r}`` has density proportional to
``(x_1 ... x_k)^(r-1)`` on the standard simplex, i.e. it is the
Dirichlet(r, ..., r) law.  ``mu`` is the unitary invariant probability
measure on the unit sphere of ``C^r``.

Everything except :func:`gg_prefactor` is returned as an exact
:class:`~fractions.Fraction`.  The samplers take an explicit
:class:`numpy.random.Generator` so parallel callers can use independent
streams.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from ._rational import harmonic

__all__ = [
    "simplex_moment",
    "sphere_power_moment",
    "sphere_product_moment",
    "fiber_volume",
    "harmonic_weight",
    "gg_prefactor",
    "sample_simplex",
    "sample_sphere",
]

_f = math.factorial


def simplex_moment(p: Sequence[int], k: int, r: int) -> Fraction:
    """``int x_1^{p_1} ... x_k^{p_k} d nu_{k,r}(x)``.

    Equals ``(kr-1)!/(r-1)!^k * prod (p_s+r-1)! / (|p|+kr-1)!``.
    """
    p = [int(x) for x in p]
    if len(p) != k:
        raise ValueError(f"multi-index has length {len(p)}, expected k={k}")
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    if any(x < 0 for x in p):
        raise ValueError("multi-index entries must be non-negative")
    num = _f(k * r - 1)
    for ps in p:
        num *= _f(ps + r - 1)
    den = _f(r - 1) ** k * _f(sum(p) + k * r - 1)
    return Fraction(num, den)


def sphere_power_moment(p: int, r: int) -> Fraction:
    """``int |u_1|^{2p} d mu(u) = p!(r-1)!/(p+r-1)!`` on ``S^{2r-1}``."""
    if p < 0 or r < 1:
        raise ValueError("need p >= 0 and r >= 1")
    return Fraction(_f(p) * _f(r - 1), _f(p + r - 1))


def sphere_product_moment(p: int, r: int) -> Fraction:
    """``int |u_1|^2 ... |u_p|^2 d mu(u) = (r-1)!/(p+r-1)!``, for ``p <= r``."""
    if r < 1 or p < 0:
        raise ValueError("need p >= 0 and r >= 1")
    if p > r:
        raise ValueError(f"product moment needs p <= r (got p={p}, r={r})")
    return Fraction(_f(r - 1), _f(p + r - 1))


def fiber_volume(k: int, r: int) -> Fraction:
    """Volume ``1/k!^r`` of a fiber of the weighted projective jet bundle."""
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    return Fraction(1, _f(k) ** r)


def harmonic_weight(k: int, r: int) -> Fraction:
    """``(1 + 1/2 + ... + 1/k) / (k r)``, the expected jet curvature weight."""
    if k < 1 or r < 1:
        raise ValueError("k and r must be >= 1")
    return harmonic(k) / (k * r)


def gg_prefactor(n: int, r: int, k: int, m: int) -> float:
    """Leading coefficient ``m^{n+kr-1}/(n+kr-1)! (log k)^n/(n! k!^r)``.

    Double precision only, since ``log k`` is irrational.  Evaluated in log
    space so large ``m`` or ``k`` do not overflow the intermediate factorials.
    """
    if k < 2:
        raise ValueError("k must be >= 2 so that log k > 0")
    if m < 1:
        raise ValueError("m must be >= 1")
    if n < 1 or r < 1:
        raise ValueError("n and r must be >= 1")
    d = n + k * r - 1
    log_val = (
        d * math.log(m)
        - math.lgamma(d + 1)
        + n * math.log(math.log(k))
        - math.lgamma(n + 1)
        - r * math.lgamma(k + 1)
    )
    return math.exp(log_val)


def sample_simplex(k: int, r: float, size: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``size`` points from ``nu_{k,r}`` (normalized Gamma(r) variates)."""
    g = rng.standard_gamma(r, size=(size, k))
    return g / g.sum(axis=1, keepdims=True)


def sample_sphere(r: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``size`` unit vectors of ``C^r`` from the unitary invariant law."""
    z = rng.standard_normal((size, r)) + 1j * rng.standard_normal((size, r))
    return z / np.linalg.norm(z, axis=1, keepdims=True)
