"""Effective existence criteria for orbifold jet differentials.

Every quantity is exact (:class:`~fractions.Fraction`) except the asymptotic
form of ``c_n``.  Degrees and Chern numbers are expressed in units of a fixed
ample class ``A``: ``c_1(Delta_j) = d_j A``, ``c_1(V*) = lambda_V A``, and
``gamma_V`` is the Griffiths threshold of ``gamma A (x) Id - Theta_V``.

Orbifold data follow the order-``s`` convention: the component with
ramification ``rho`` behaves at jet order ``s`` like one with ramification
``max(rho/s, 1)``, and its contribution ``1 - 1/rho^(s)`` equals
``(1 - s/rho)_+``.

All criteria are strict inequalities ``lhs > rhs`` and are sufficient
conditions only.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Iterator, Sequence

from ._rational import (
    INF,
    as_ramification,
    as_rational,
    fmt_rational,
    harmonic,
    is_inf,
    positive_part_one_minus,
    ramification_at_order,
    reciprocal,
    to_float,
)
from .chernwedge import elementary_symmetric_all

__all__ = [
    "OrbifoldSpec",
    "CriterionReport",
    "EULER_GAMMA",
    "cn",
    "cn_asymptotic",
    "cn_ratio_bound",
    "morse_lower_M",
    "morse_upper_Mprime",
    "check_criterion_716",
    "check_compact",
    "check_example_718",
    "example_718_threshold",
    "check_log_pn",
    "check_thm08_a",
    "check_thm08_a_prime",
    "check_27N",
    "check_thm08_b",
    "check_29_prime",
    "check_29N",
    "check_thm08_b_prime",
    "binomial_lower_bound_check",
    "compositions",
    "MAX_REFINED_COMPONENTS",
    "MAX_REFINED_DIM",
]

EULER_GAMMA = 0.5772156649015329

MAX_REFINED_COMPONENTS = 20
MAX_REFINED_DIM = 6

GAMMA_MODES = ("exact", "coarse", "pn-preset")

_f = math.factorial


@dataclass(frozen=True)
class OrbifoldSpec:
    """Directed orbifold data ``(n, r, k, (d_j, rho_j), gamma_V, lambda_V, tau)``.

    ``gamma_mode`` selects the curvature shifts ``gamma_s``:

    * ``"exact"``: ``max(max_j d_j/rho_j^(s), gamma_V)``;
    * ``"coarse"``: ``max(s max_j d_j/rho_j, gamma_V)``;
    * ``"pn-preset"``: ``s t`` with ``t = max(max_j d_j/rho_j, 2)``, the
      choice used for projective space.
    """

    n: int
    r: int
    k: int
    components: tuple = ()
    gamma_V: Fraction = Fraction(0)
    lambda_V: Fraction = Fraction(0)
    tau: Fraction = Fraction(0)
    gamma_mode: str = "exact"

    def __post_init__(self):
        comps = tuple((as_rational(d), as_ramification(rho)) for d, rho in self.components)
        object.__setattr__(self, "components", comps)
        for name in ("gamma_V", "lambda_V", "tau"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        for name in ("n", "r", "k"):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or v < 1:
                raise ValueError(f"{name} must be an integer >= 1, got {v!r}")
            object.__setattr__(self, name, int(v))
        for j, (d, rho) in enumerate(comps):
            if d < 0:
                raise ValueError(f"components[{j}].d must be >= 0, got {d}")
            if not rho > 1:
                raise ValueError(f"components[{j}].rho must be > 1, got {fmt_rational(rho)}")
        if self.gamma_V < 0:
            raise ValueError("gamma_V must be >= 0")
        if self.tau < 0:
            raise ValueError("tau must be >= 0")
        if self.gamma_mode not in GAMMA_MODES:
            raise ValueError(f"gamma_mode must be one of {GAMMA_MODES}")

    @classmethod
    def projective(cls, n: int, k: int, components=(), tau=0, gamma_mode: str = "exact") -> "OrbifoldSpec":
        """``V = T_{P^n}``, ``A = O(1)``: ``r = n``, ``gamma_V = 2``, ``lambda_V = -n-1``."""
        return cls(n=n, r=n, k=k, components=tuple(components), gamma_V=2,
                   lambda_V=-n - 1, tau=tau, gamma_mode=gamma_mode)

    @property
    def N(self) -> int:
        return len(self.components)

    @property
    def is_projective(self) -> bool:
        return self.r == self.n and self.gamma_V == 2 and self.lambda_V == -self.n - 1

    @property
    def t(self) -> Fraction:
        """``max(max_j d_j/rho_j, 2)``."""
        return max([d * reciprocal(rho) for d, rho in self.components] + [Fraction(2)])

    def gamma(self, s: int) -> Fraction:
        if self.gamma_mode == "pn-preset":
            return s * self.t
        if self.gamma_mode == "coarse":
            m = max([d * reciprocal(rho) for d, rho in self.components], default=Fraction(0))
            return max(s * m, self.gamma_V)
        return max([d * reciprocal(ramification_at_order(rho, s)) for d, rho in self.components]
                   + [self.gamma_V])

    def orbifold_degree(self, s: int) -> Fraction:
        """``sum_j d_j (1 - 1/rho_j^(s))``."""
        return sum((d * positive_part_one_minus(s, rho) for d, rho in self.components), Fraction(0))

    def trace_degree(self, s: int) -> Fraction:
        """``r gamma_s + lambda_V + sum_j d_j (1 - 1/rho_j^(s))``."""
        return self.r * self.gamma(s) + self.lambda_V + self.orbifold_degree(s)


@dataclass
class CriterionReport:
    criterion_id: str
    satisfied: bool
    lhs: Fraction
    rhs: Fraction
    margin: Fraction
    variant: str = ""
    notes: list = field(default_factory=list)

    @classmethod
    def compare(cls, criterion_id: str, lhs, rhs, variant: str = "", notes=()) -> "CriterionReport":
        lhs, rhs = as_rational(lhs), as_rational(rhs)
        margin = (lhs - rhs) / max(Fraction(1), abs(rhs))
        return cls(criterion_id, lhs > rhs, lhs, rhs, margin, variant, list(notes))

    def to_dict(self) -> dict:
        return {
            "criterion_id": self.criterion_id,
            "variant": self.variant,
            "satisfied": self.satisfied,
            "lhs": fmt_rational(self.lhs),
            "rhs": fmt_rational(self.rhs),
            "margin": fmt_rational(self.margin),
            "lhs_float": to_float(self.lhs),
            "rhs_float": to_float(self.rhs),
            "margin_float": to_float(self.margin),
            "notes": list(self.notes),
        }


# -- the constant c_n ------------------------------------------------------

def cn(n: int) -> Fraction:
    """``n (n^2+n-1) n! (1 + 1/2 + ... + 1/n + 1/n^3)^(n-1)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return n * (n * n + n - 1) * _f(n) * (harmonic(n) + Fraction(1, n**3)) ** (n - 1)


def cn_asymptotic(n: int) -> float:
    """``sqrt(2 pi) n^(n+7/2) e^(-n) (gamma + log n)^(n-1)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    log_val = 0.5 * math.log(2 * math.pi) + (n + 3.5) * math.log(n) - n
    base = EULER_GAMMA + math.log(n)
    return math.exp(log_val) * base ** (n - 1)


def cn_ratio_bound(n: int) -> float:
    """Upper bound ``exp((1/2)(1-1/n)/(gamma+log n) + 13/(12n) - 1/n^2)`` on ``c_n / asymptotic``."""
    return math.exp(0.5 * (1 - 1 / n) / (EULER_GAMMA + math.log(n)) + 13 / (12 * n) - 1 / n**2)


# -- Morse integral bounds ---------------------------------------------------

def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """All ``parts``-tuples of non-negative integers summing to ``total``."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _lower_710(spec: OrbifoldSpec) -> Fraction:
    n, r, k = spec.n, spec.r, spec.k
    if k < n:
        raise ValueError(f"the product lower bound needs k >= n (k={k}, n={n})")
    prod = Fraction(1)
    for s in range(1, n + 1):
        prod *= spec.trace_degree(s)
    return Fraction(_f(k * r - 1), _f(n + k * r - 1)) * prod


def _component_weight(spec: OrbifoldSpec, d, rho, s: int, q: int) -> Fraction:
    rho_s = ramification_at_order(rho, s)
    w = d * positive_part_one_minus(s, rho)
    if w == 0:
        return w
    r = spec.r
    return (w * Fraction(_f(r - 1), _f(q + r - 1))
            * (spec.gamma(s) - d * reciprocal(rho_s)) ** (q - 1))


def _lower_712(spec: OrbifoldSpec, normalize_simplex: bool = False, multi_indices=None) -> Fraction:
    n, r, k = spec.n, spec.r, spec.k
    if spec.N > MAX_REFINED_COMPONENTS:
        raise ValueError(f"refined bound limited to N <= {MAX_REFINED_COMPONENTS} components")
    if n > MAX_REFINED_DIM:
        raise ValueError(f"refined bound limited to n <= {MAX_REFINED_DIM}")
    gam = [None] + [spec.gamma(s) for s in range(1, k + 1)]
    ps = compositions(n, k) if multi_indices is None else multi_indices
    total = Fraction(0)
    for p in ps:
        p = tuple(p)
        if len(p) != k or sum(p) != n:
            raise ValueError(f"multi-index {p} must have length k={k} and sum n={n}")
        coef = Fraction(1, math.prod(s ** p[s - 1] for s in range(1, k + 1)))
        # DP over components; state holds (|J_s|, sum_{j in J_s} q_j) for each s
        zero = tuple((0, 0) for _ in range(k))
        states = {zero: Fraction(1)}
        for d, rho in spec.components:
            new = defaultdict(Fraction, states)
            for state, val in states.items():
                for s in range(1, k + 1):
                    cnt, used = state[s - 1]
                    for q in range(1, p[s - 1] - used + 1):
                        w = _component_weight(spec, d, rho, s, q)
                        if w == 0:
                            continue
                        nxt = list(state)
                        nxt[s - 1] = (cnt + 1, used + q)
                        new[tuple(nxt)] += val * w
            states = new
        inner = Fraction(0)
        for state, val in states.items():
            term = val
            for s in range(1, k + 1):
                cnt, used = state[s - 1]
                free = p[s - 1] - used
                term *= (_f(cnt) * Fraction(_f(free + r - 1), _f(free))
                         * (gam[s] - spec.gamma_V) ** free)
            inner += term
        total += coef * inner
    out = Fraction(_f(n) * _f(k * r - 1), _f(n + k * r - 1)) * total
    if normalize_simplex:
        out /= _f(r - 1) ** k
    return out


def _lower_712_k1(spec: OrbifoldSpec) -> Fraction:
    n, r = spec.n, spec.r
    if spec.k != 1:
        raise ValueError("the k = 1 specialization needs k == 1")
    if spec.N < n:
        raise ValueError(f"the k = 1 specialization needs N >= n (N={spec.N}, n={n})")
    vals = [d * positive_part_one_minus(1, rho) for d, rho in spec.components]
    e_n = elementary_symmetric_all(vals)[n]
    return (Fraction(_f(n) * _f(r - 1), _f(n + r - 1))
            * Fraction(_f(n) * _f(r - 1), r**n) * e_n)


def morse_lower_M(spec: OrbifoldSpec, variant: str = "7.12", normalize_simplex: bool = False,
                  multi_indices=None) -> Fraction:
    """Lower bound for ``M_{n,k}`` in units of ``A^n``.

    ``variant``:

    * ``"7.10"``: ``(kr-1)!/(n+kr-1)! prod_{s<=n} trace_degree(s)``, needs
      ``k >= n``;
    * ``"7.12"``: sum over multi-indices ``p`` with ``|p| = n``, disjoint
      component families ``J_1 .. J_k`` and multiplicities ``q_j >= 1``,
      evaluated by dynamic programming over components;
    * ``"7.12-1"``: the ``k = 1`` term with ``|J| = n`` and ``q_j = 1``.

    ``normalize_simplex=True`` divides the refined bound by ``(r-1)!^k``, the
    Dirichlet normalization of the simplex moments that the closed form
    leaves out; the default keeps the closed form.  ``multi_indices``
    restricts the refined sum to the given ``p``.
    """
    if variant == "7.10":
        return _lower_710(spec)
    if variant == "7.12":
        return _lower_712(spec, normalize_simplex, multi_indices)
    if variant == "7.12-1":
        return _lower_712_k1(spec)
    raise ValueError(f"unknown lower-bound variant {variant!r}")


def _complete_homogeneous(xs: Sequence[Fraction], m: int) -> Fraction:
    """``h_m(xs) = sum_{|p|=m} prod xs_s^{p_s}``."""
    h = [Fraction(1)] + [Fraction(0)] * m
    for x in xs:
        for deg in range(1, m + 1):
            h[deg] += x * h[deg - 1]
    return h[m]


def morse_upper_Mprime(spec: OrbifoldSpec, variant: str = "7.14-2") -> Fraction:
    """Upper bound for ``M'_{n,k}`` in units of ``A^n``.

    With ``a_s = trace_degree(s)`` and ``G = sum_s gamma_s/s + tau``:

    * ``"7.14-2"``: ``n!(kr-1)!/(n+kr-2)! G (sum_s a_s/s)^(n-1)``;
    * ``"7.14-1"``: same prefactor times ``G sum_{|p|=n-1} prod (a_s/s)^p_s``.
    """
    n, r, k = spec.n, spec.r, spec.k
    pref = Fraction(_f(n) * _f(k * r - 1), _f(n + k * r - 2))
    G = sum((spec.gamma(s) / s for s in range(1, k + 1)), Fraction(0)) + spec.tau
    xs = [spec.trace_degree(s) / s for s in range(1, k + 1)]
    if variant == "7.14-2":
        return pref * G * sum(xs, Fraction(0)) ** (n - 1)
    if variant == "7.14-1":
        return pref * G * _complete_homogeneous(xs, n - 1)
    raise ValueError(f"unknown upper-bound variant {variant!r}")


def check_criterion_716(spec: OrbifoldSpec, lower: str = "7.12", upper: str = "7.14-1",
                        normalize_simplex: bool = False) -> CriterionReport:
    """Sufficient condition ``M_{n,k} - M'_{n,k} > 0`` with the chosen bounds."""
    M = morse_lower_M(spec, lower, normalize_simplex=normalize_simplex)
    Mp = morse_upper_Mprime(spec, upper)
    return CriterionReport.compare("7.16", M, Mp, variant=f"{lower}/{upper}")


# -- compact and logarithmic cases ---------------------------------------------

def check_compact(n: int, r: int, k: int, gamma_V, lambda_V) -> CriterionReport:
    """``lambda_V > n! (sum_{s<=k} 1/s)^n gamma_V - r gamma_V`` (needs ``k >= n``)."""
    if k < n:
        raise ValueError(f"compact criterion needs k >= n (k={k}, n={n})")
    g = as_rational(gamma_V)
    rhs = _f(n) * harmonic(k) ** n * g - r * g
    return CriterionReport.compare("7.17", lambda_V, rhs)


def example_718_threshold(n: int, k: int) -> Fraction:
    """``2 n! (sum_{s<=k} 1/s)^n - n + 2``: smooth hypersurfaces of larger degree qualify."""
    return 2 * _f(n) * harmonic(k) ** n - n + 2


def check_example_718(n: int, k: int, d) -> CriterionReport:
    """Compact criterion for a degree-``d`` hypersurface of ``P^{n+1}`` with ``V = T_X``."""
    rep = check_compact(n, n, k, 2, as_rational(d) - n - 2)
    rep.criterion_id = "7.18"
    return rep


def check_log_pn(n: int, k: int, d_total) -> CriterionReport:
    """``d > 2 n! (sum_{s<=k} 1/s)^n - n + 1`` for a log divisor of degree ``d`` on ``P^n``."""
    if k < n:
        raise ValueError(f"logarithmic criterion needs k >= n (k={k}, n={n})")
    rhs = 2 * _f(n) * harmonic(k) ** n - n + 1
    return CriterionReport.compare("7.21", d_total, rhs)


# -- orbifolds on projective space -------------------------------------------

def _prod_one_minus(n: int, rho) -> Fraction:
    out = Fraction(1)
    for s in range(1, n + 1):
        out *= 1 - s * reciprocal(rho)
    return out


def _check_rho_above_n(n: int, rho):
    if not rho > n:
        raise ValueError(f"need rho > n (rho={fmt_rational(rho)}, n={n})")


def check_thm08_a(spec: OrbifoldSpec, rho=None) -> CriterionReport:
    """``sum_j d_j min(min_j rho_j/d_j, 1/2) prod_{s<=n}(1 - s/rho) > c_n``.

    ``rho`` is a common lower bound of the ``rho_j`` (defaults to their
    minimum) and must exceed ``n``; needs ``k >= n``.
    """
    n = spec.n
    if spec.k < n:
        raise ValueError(f"needs k >= n (k={spec.k}, n={n})")
    if spec.N < 1:
        raise ValueError("needs at least one component")
    rho_min = min(r_ for _, r_ in spec.components)
    rho = rho_min if rho is None else as_ramification(rho)
    if rho > rho_min:
        raise ValueError("rho must be a lower bound of every rho_j")
    _check_rho_above_n(n, rho)
    ratios = [r_ / d for d, r_ in spec.components if d > 0 and not is_inf(r_)]
    inv_t = min(ratios + [Fraction(1, 2)])
    total_d = sum((d for d, _ in spec.components), Fraction(0))
    lhs = total_d * inv_t * _prod_one_minus(n, rho)
    return CriterionReport.compare("7.27", lhs, cn(n))


def _equal_component_args(n, N, d, rho):
    d = as_rational(d)
    rho = as_ramification(rho)
    if N < 0 or int(N) != N:
        raise ValueError("N must be a non-negative integer")
    return int(N), d, rho


def check_thm08_a_prime(n: int, k: int, N: int, d, rho) -> CriterionReport:
    """``N min(rho, d) prod_{s<=n}(1 - s/rho) > 2 c_n`` (needs ``k >= n``, ``rho > n``)."""
    N, d, rho = _equal_component_args(n, N, d, rho)
    if k < n:
        raise ValueError(f"needs k >= n (k={k}, n={n})")
    _check_rho_above_n(n, rho)
    lhs = N * min(rho, d) * _prod_one_minus(n, rho)
    return CriterionReport.compare("0.8a'", lhs, 2 * cn(n))


def check_27N(n: int, k: int, N: int, d, rho) -> CriterionReport:
    """``N min(rho, d/2) prod_{s<=n}(1 - s/rho) > c_n`` (needs ``k >= n``, ``rho > n``)."""
    N, d, rho = _equal_component_args(n, N, d, rho)
    if k < n:
        raise ValueError(f"needs k >= n (k={k}, n={n})")
    _check_rho_above_n(n, rho)
    lhs = N * min(rho, d / 2) * _prod_one_minus(n, rho)
    return CriterionReport.compare("7.27N", lhs, cn(n))


def check_thm08_b(spec: OrbifoldSpec) -> CriterionReport:
    """``e_n(d_j(1-1/rho_j)) > (2n-1) t (n t - n - 1 + sum_j d_j(1-1/rho_j))^(n-1)``.

    ``e_n`` is the elementary symmetric polynomial (sum over ``|J| = n``) and
    ``t = max(max_j d_j/rho_j, 2)``.  Needs ``N >= n``.
    """
    n = spec.n
    if spec.N < n:
        raise ValueError(f"needs N >= n (N={spec.N}, n={n})")
    vals = [d * positive_part_one_minus(1, rho) for d, rho in spec.components]
    lhs = elementary_symmetric_all(vals)[n]
    t = spec.t
    rhs = (2 * n - 1) * t * (n * t - n - 1 + sum(vals, Fraction(0))) ** (n - 1)
    return CriterionReport.compare("7.29", lhs, rhs)


def check_29_prime(n: int, N: int, d, rho) -> CriterionReport:
    """``min(rho, d/2) C(N, n) (1 - 1/rho)^n > (2n-1)(N+n)^(n-1)``."""
    N, d, rho = _equal_component_args(n, N, d, rho)
    if N < n:
        raise ValueError(f"needs N >= n (N={N}, n={n})")
    lhs = min(rho, d / 2) * math.comb(N, n) * (1 - reciprocal(rho)) ** n
    return CriterionReport.compare("7.29'", lhs, (2 * n - 1) * (N + n) ** (n - 1))


def check_29N(n: int, N: int, d, rho) -> CriterionReport:
    """``N min(rho, d/2) (1 - 1/rho)^n > 2^(n-1) (2n-1) n^n`` (needs ``N >= n``)."""
    N, d, rho = _equal_component_args(n, N, d, rho)
    if N < n:
        raise ValueError(f"needs N >= n (N={N}, n={n})")
    lhs = N * min(rho, d / 2) * (1 - reciprocal(rho)) ** n
    return CriterionReport.compare("7.29N", lhs, 2 ** (n - 1) * (2 * n - 1) * n**n)


def check_thm08_b_prime(n: int, N: int, d, rho) -> CriterionReport:
    """``N min(rho, d) (1 - 1/rho)^n > 2^n (2n-1) n^n`` (needs ``N >= n``).

    Stated with ``min(rho, d)`` and ``2^n``; the ``min(rho, d/2)`` / ``2^(n-1)``
    form is :func:`check_29N`, which this one implies.
    """
    N, d, rho = _equal_component_args(n, N, d, rho)
    if N < n:
        raise ValueError(f"needs N >= n (N={N}, n={n})")
    lhs = N * min(rho, d) * (1 - reciprocal(rho)) ** n
    return CriterionReport.compare(
        "0.8b'", lhs, 2**n * (2 * n - 1) * n**n,
        notes=["stated with min(rho, d) and 2^n(2n-1)n^n; 7.29N uses min(rho, d/2) and 2^(n-1)(2n-1)n^n"],
    )


def binomial_lower_bound_check(N: int, n: int) -> bool:
    """Exact check of ``C(N, n) >= (N/n)^n`` for ``0 < n <= N``."""
    if not 0 < n <= N:
        raise ValueError("need 0 < n <= N")
    return math.comb(N, n) >= Fraction(N, n) ** n
