"""Exact-rational helpers shared by the closed-form modules.

Rationals are :class:`fractions.Fraction`.  Ramification numbers may also be
``math.inf`` (logarithmic components); the helpers below keep every
expression involving them exact.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

INF = math.inf


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions, ``"p/q"`` strings and floats (exactly)."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        if not math.isfinite(x):
            raise ValueError(f"not a finite rational: {x!r}")
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


def as_ramification(x):
    """A rational > 0 or ``math.inf``; accepts ``"inf"``/``"oo"``/``"∞"``."""
    if isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "oo", "∞"):
        return INF
    if isinstance(x, float) and math.isinf(x):
        if x < 0:
            raise ValueError("ramification cannot be -inf")
        return INF
    return as_rational(x)


def is_inf(x) -> bool:
    return isinstance(x, float) and math.isinf(x)


def reciprocal(rho) -> Fraction:
    """``1/rho`` with ``1/inf = 0``."""
    return Fraction(0) if is_inf(rho) else 1 / as_rational(rho)


def positive_part_one_minus(s, rho) -> Fraction:
    """``(1 - s/rho)_+``; equals 1 for ``rho = inf``."""
    if is_inf(rho):
        return Fraction(1)
    v = 1 - Fraction(s) / rho
    return v if v > 0 else Fraction(0)


def ramification_at_order(rho, s: int):
    """Ramification ``max(rho/s, 1)`` of the order-s divisor."""
    if is_inf(rho):
        return INF
    return max(as_rational(rho) / s, Fraction(1))


def harmonic(k: int) -> Fraction:
    """``1 + 1/2 + ... + 1/k``."""
    return sum((Fraction(1, s) for s in range(1, k + 1)), Fraction(0))


def fmt_rational(x) -> str:
    """Render as ``"p/q"`` (or ``"p"``, ``"inf"``) for JSON output."""
    if is_inf(x):
        return "inf"
    x = as_rational(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def to_float(x) -> float:
    if is_inf(x):
        return INF
    return float(x)
