"""Monte-Carlo and exact verification of the sphere/simplex integral inequalities.

Every statistical verdict uses a ``4 sigma`` guard band: a check *fails* only
when the estimate violates an exact bound by more than four standard errors;
a point-estimate violation inside the band is *inconclusive*.

Sampling is split into chunks, each driven by its own ``SeedSequence``
child, and the per-chunk sums are reduced in chunk order.  Results therefore
do not depend on the worker count (``ORBIJET_THREADS``).

Besides the Monte-Carlo estimators, the integrals of products of linear
forms have exact values: monomials are orthogonal for ``mu`` with
``int |u^a|^2 dmu = a!(r-1)!/(|a|+r-1)!``.  :func:`exact_I` and
:func:`exact_511_lhs` use this and serve as oracles.
"""

from __future__ import annotations

import math
import os
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .chernwedge import mixed_discriminant, mixed_discriminant_batch
from .moments import sample_simplex, sample_sphere, simplex_moment, sphere_power_moment, sphere_product_moment
from .positivity import HermitianTensor, RankOneFactor, trace_E

__all__ = [
    "LinearFormSet",
    "SampleConfig",
    "Estimate",
    "CheckRecord",
    "monte_carlo",
    "verdict",
    "exact_I",
    "exact_511_lhs",
    "estimate_I",
    "check_58_bounds",
    "check_58_equality",
    "check_511",
    "check_remark512",
    "landau_vs_star_constants",
    "check_513a",
    "check_513b",
    "check_515_trace",
    "check_515_tautological",
    "dirichlet_vs_exact",
    "sphere_power_vs_exact",
    "sphere_product_vs_exact",
    "explore_58_min_constant",
    "SUITES",
    "run_suite",
    "derive_seed",
]

GUARD = 4.0
_f = math.factorial


@dataclass(frozen=True)
class LinearFormSet:
    """Linear forms ``l_j(u) = sum_i forms[j, i] u_i`` on ``C^r``."""

    forms: np.ndarray
    r: int

    def __init__(self, forms, r: int | None = None):
        arr = np.asarray(forms, dtype=complex)
        if arr.ndim == 1:
            arr = arr[None, :]
        if arr.size == 0:
            if r is None:
                raise ValueError("r is required for an empty form set")
            arr = np.zeros((0, r), dtype=complex)
        if arr.ndim != 2:
            raise ValueError("forms must be a (p, r) array")
        if r is not None and arr.shape[1] != r:
            raise ValueError(f"forms have {arr.shape[1]} columns, expected r={r}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("form coefficients must be finite")
        object.__setattr__(self, "forms", arr)
        object.__setattr__(self, "r", arr.shape[1])

    @property
    def p(self) -> int:
        return self.forms.shape[0]

    def norms2(self) -> np.ndarray:
        return np.sum(np.abs(self.forms) ** 2, axis=1)

    def norm_product(self) -> float:
        return float(np.prod(self.norms2()))

    def values(self, u: np.ndarray) -> np.ndarray:
        """``(S, p)`` array of ``l_j(u_s)``."""
        return u @ self.forms.T

    def scaled(self, c) -> "LinearFormSet":
        return LinearFormSet(self.forms * np.asarray(c, dtype=complex)[:, None], self.r)

    def rotated(self, U) -> "LinearFormSet":
        """Forms ``l_j o U^{-1}`` for unitary ``U``."""
        return LinearFormSet(self.forms @ np.asarray(U).conj().T, self.r)


def _as_forms(forms, r=None) -> LinearFormSet:
    return forms if isinstance(forms, LinearFormSet) else LinearFormSet(forms, r)


@dataclass(frozen=True)
class SampleConfig:
    samples: int = 100_000
    seed: int = 0
    batch: int = 50_000
    threads: int | None = None

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.batch < 1:
            raise ValueError("batch must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")

    def workers(self) -> int:
        if self.threads is not None:
            return max(1, int(self.threads))
        env = os.environ.get("ORBIJET_THREADS")
        return max(1, int(env)) if env else 1

    def chunk_sizes(self) -> list[int]:
        full, rest = divmod(self.samples, self.batch)
        return [self.batch] * full + ([rest] if rest else [])


@dataclass
class Estimate:
    mean: np.ndarray | float
    stderr: np.ndarray | float
    samples: int


def monte_carlo(integrand: Callable[[np.ndarray], np.ndarray],
                draw: Callable[[int, np.random.Generator], np.ndarray],
                cfg: SampleConfig) -> Estimate:
    """Sample mean and standard error of ``integrand(draw(size, rng))``.

    ``integrand`` may return ``(S,)`` or ``(S, m)``; several columns evaluated
    on the same draws give common-random-number estimates.
    """
    sizes = cfg.chunk_sizes()
    children = np.random.SeedSequence(cfg.seed).spawn(len(sizes))

    def work(i):
        rng = np.random.default_rng(children[i])
        v = np.real(np.asarray(integrand(draw(sizes[i], rng))))
        return v.sum(axis=0), (v * v).sum(axis=0)

    workers = cfg.workers()
    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(workers) as ex:
            parts = list(ex.map(work, range(len(sizes))))
    else:
        parts = [work(i) for i in range(len(sizes))]
    s1 = parts[0][0]
    s2 = parts[0][1]
    for a, b in parts[1:]:
        s1 = s1 + a
        s2 = s2 + b
    n = cfg.samples
    mean = s1 / n
    if n > 1:
        var = np.maximum((s2 - n * mean * mean) / (n - 1), 0.0)
        se = np.sqrt(var / n)
    else:
        se = np.full_like(mean, np.inf)
    if np.ndim(mean) == 0:
        return Estimate(float(mean), float(se), n)
    return Estimate(mean, se, n)


def _sphere_draw(r):
    return lambda size, rng: sample_sphere(r, size, rng)


def verdict(est: float, se: float, lo=None, hi=None, guard: float = GUARD, atol: float = 1e-12) -> str:
    """``fail`` beyond the guard band, ``inconclusive`` inside it, else ``pass``.

    Exact computations (``se == 0``) only get a rounding allowance ``atol``.
    When ``lo == hi`` the bounds are an identity and the check becomes
    agreement within the guard band.
    """
    if lo is not None and hi is not None and lo == hi:
        return _agreement(est, se, lo, guard, atol)
    rounding = atol * (1.0 + abs(est))
    tol = guard * se + rounding
    if lo is not None and est < lo - tol:
        return "fail"
    if hi is not None and est > hi + tol:
        return "fail"
    if (lo is not None and est < lo - rounding) or (hi is not None and est > hi + rounding):
        return "inconclusive"
    return "pass"


def _agreement(est: float, se: float, target: float, guard: float = GUARD, atol: float = 1e-12) -> str:
    return "pass" if abs(est - target) <= guard * se + atol * (1.0 + abs(target)) else "fail"


@dataclass
class CheckRecord:
    check_id: str
    estimate: float
    stderr: float
    bound_lo: float | None
    bound_hi: float | None
    verdict: str
    seed: int | None
    samples: int
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = {
            "check_id": self.check_id,
            "estimate": _jsonable(self.estimate),
            "stderr": _jsonable(self.stderr),
            "bound_lo": _jsonable(self.bound_lo),
            "bound_hi": _jsonable(self.bound_hi),
            "verdict": self.verdict,
            "seed": self.seed,
            "samples": self.samples,
        }
        if self.extra:
            d["extra"] = self.extra
        return d


def _jsonable(x):
    if x is None:
        return None
    x = float(x)
    return x if math.isfinite(x) else repr(x)


# -- exact sphere integrals of polynomials ------------------------------------

def _poly_linear(vec) -> dict:
    r = len(vec)
    out = {}
    for i, c in enumerate(vec):
        if c != 0:
            e = [0] * r
            e[i] = 1
            out[tuple(e)] = complex(c)
    return out


def _poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return out


def _poly_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return out


def _sphere_norm2(poly: dict, r: int) -> float:
    """``int |P(u)|^2 dmu`` on ``S^{2r-1}``."""
    total = 0.0
    for e, c in poly.items():
        deg = sum(e)
        w = math.prod(_f(x) for x in e) * _f(r - 1) / _f(deg + r - 1)
        total += abs(c) ** 2 * w
    return total


def exact_I(forms) -> float:
    """``int |l_1(u)|^2 ... |l_p(u)|^2 dmu(u)`` computed exactly (in floats)."""
    F = _as_forms(forms)
    poly = {(0,) * F.r: 1.0}
    for row in F.forms:
        poly = _poly_mul(poly, _poly_linear(row))
    return _sphere_norm2(poly, F.r)


def _coef_511(k: int, p: int, r: int) -> float:
    return _f(k + r - 2) * _f(p - k) / _f(r - 2)


def exact_511_lhs(primed_forms) -> float:
    """``sum_k (k+r-2)!(p-k)!/(r-2)! int |s_k(l'(u'))|^2`` over ``S^{2r-3}``."""
    F = _as_forms(primed_forms)
    rp, p = F.r, F.p
    r = rp + 1
    zero = (0,) * rp
    e = [{zero: 1.0}] + [{} for _ in range(p)]
    for row in F.forms:
        lin = _poly_linear(row)
        for j in range(p, 0, -1):
            e[j] = _poly_add(e[j], _poly_mul(e[j - 1], lin))
    return sum(_coef_511(k, p, r) * _sphere_norm2(e[k], rp) for k in range(p + 1))


# -- product bounds ------------------------------------------------------------

def _58_bounds(F: LinearFormSet) -> tuple[float, float]:
    p, r = F.p, F.r
    base = _f(r - 1) / _f(p + r - 1) * F.norm_product()
    return base, _f(p) * base


def estimate_I(forms, cfg: SampleConfig) -> Estimate:
    """Unbiased estimate of ``int prod_j |l_j(u)|^2 dmu`` with its standard error."""
    F = _as_forms(forms)
    return monte_carlo(lambda u: np.prod(np.abs(F.values(u)) ** 2, axis=1), _sphere_draw(F.r), cfg)


def check_58_bounds(forms, cfg: SampleConfig, check_id: str = "lemma58") -> CheckRecord:
    """Both product bounds ``(r-1)!/(p+r-1)! prod|l|^2 <= I <= p! (r-1)!/(p+r-1)! prod|l|^2``."""
    F = _as_forms(forms)
    lo, hi = _58_bounds(F)
    est = estimate_I(F, cfg)
    return CheckRecord(check_id, est.mean, est.stderr, lo, hi,
                       verdict(est.mean, est.stderr, lo, hi), cfg.seed, cfg.samples)


def check_58_equality(forms, cfg: SampleConfig, which: str, check_id: str | None = None) -> CheckRecord:
    """Tightness of the upper (proportional forms) or lower (orthogonal, ``p <= r``) bound.

    Passes iff the estimate is within ``4 sigma`` of the bound; the relative
    gap is reported in ``extra``.
    """
    F = _as_forms(forms)
    lo, hi = _58_bounds(F)
    if which not in ("upper", "lower"):
        raise ValueError("which must be 'upper' or 'lower'")
    target = hi if which == "upper" else lo
    est = estimate_I(F, cfg)
    return CheckRecord(check_id or f"lemma58-{which}-eq", est.mean, est.stderr, target, target,
                       _agreement(est.mean, est.stderr, target), cfg.seed, cfg.samples,
                       {"relative_gap": abs(est.mean - target) / target if target else 0.0})


def _esym_columns(vals: np.ndarray) -> np.ndarray:
    S, p = vals.shape
    e = np.zeros((S, p + 1), dtype=complex)
    e[:, 0] = 1
    for j in range(p):
        e[:, 1:j + 2] = e[:, 1:j + 2] + e[:, 0:j + 1] * vals[:, j:j + 1]
    return e


def check_511(primed_forms, cfg: SampleConfig | None = None, check_id: str = "eq511") -> CheckRecord:
    """Lower bound ``LHS >= prod_j (1 + |l'_j|^2)`` with ``l'_j`` on ``C^{r-1}``.

    ``cfg=None`` evaluates the left side exactly instead of sampling
    ``S^{2r-3}``.
    """
    F = _as_forms(primed_forms)
    rp, p = F.r, F.p
    if rp < 1:
        raise ValueError("need r >= 2, i.e. primed forms on C^{r-1} with r-1 >= 1")
    r = rp + 1
    rhs = float(np.prod(1.0 + F.norms2()))
    if cfg is None:
        lhs = exact_511_lhs(F)
        hi = rhs if p <= 1 else None
        return CheckRecord(check_id, lhs, 0.0, rhs, hi, verdict(lhs, 0.0, rhs, hi), None, 0,
                           {"mode": "exact"})
    coef = np.array([_coef_511(k, p, r) for k in range(p + 1)])

    def integrand(u):
        e = _esym_columns(F.values(u))
        return np.abs(e) ** 2 @ coef

    est = monte_carlo(integrand, _sphere_draw(rp), cfg)
    hi = rhs if p <= 1 else None  # equality for p = 0, 1
    return CheckRecord(check_id, est.mean, est.stderr, rhs, hi,
                       verdict(est.mean, est.stderr, rhs, hi), cfg.seed, cfg.samples)


def _gauss_rational(z) -> tuple[Fraction, Fraction]:
    if isinstance(z, tuple):
        return Fraction(z[0]), Fraction(z[1])
    z = complex(z)
    return Fraction(z.real), Fraction(z.imag)


def landau_vs_star_constants(p: int) -> tuple[int, int]:
    """``(2^p, min_k k!(p-k)!)``: the Landau constant beats the other from ``p = 7`` on."""
    return 2**p, min(_f(k) * _f(p - k) for k in range(p + 1))


def check_remark512(roots: Sequence, check_id: str = "remark512") -> CheckRecord:
    """Exact check of ``prod(1+|a_j|^2) <= sum_k k!(p-k)! |s_k|^2`` and of its Landau form.

    Roots are complex numbers (converted exactly from their float parts) or
    ``(re, im)`` pairs of rationals.  ``s_k`` are the elementary symmetric
    functions of the roots, i.e. the coefficients of ``prod (z - a_j)`` up to
    sign.
    """
    a = [_gauss_rational(z) for z in roots]
    if not a:
        raise ValueError("roots must be non-empty")
    p = len(a)
    zero = (Fraction(0), Fraction(0))
    e = [(Fraction(1), Fraction(0))] + [zero] * p
    for (x, y) in a:
        for j in range(p, 0, -1):
            u, v = e[j - 1]
            e[j] = (e[j][0] + u * x - v * y, e[j][1] + u * y + v * x)
    abs2 = [re * re + im * im for re, im in e]
    lhs = math.prod((1 + x * x + y * y for x, y in a), start=Fraction(1))
    star = sum((_f(k) * _f(p - k) * abs2[k] for k in range(p + 1)), Fraction(0))
    landau = 2**p * sum(abs2, Fraction(0))
    star_ok, landau_ok = lhs <= star, lhs <= landau
    tighter = "equal" if star == landau else ("landau" if landau < star else "star")
    return CheckRecord(
        check_id, float(lhs), 0.0, None, float(min(star, landau)),
        "pass" if star_ok and landau_ok else "fail", None, 0,
        {"p": p, "lhs": _fmt(lhs), "rhs_star": _fmt(star), "rhs_landau": _fmt(landau),
         "star_holds": star_ok, "landau_holds": landau_ok, "tighter": tighter},
    )


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- curvature-form integrals -------------------------------------------------

def _forms_at_u(coeffs: np.ndarray, u: np.ndarray) -> np.ndarray:
    """``(S, n, n)`` stack of ``<theta(u), u>``."""
    return np.einsum("ijlm,sl,sm->sij", coeffs, u, u.conj())


def _tensor_from_certificate(item, n=None, r=None) -> HermitianTensor:
    if isinstance(item, HermitianTensor):
        raise TypeError("strong positivity needs an explicit list of RankOneFactor, not a bare tensor")
    factors = list(item)
    if not factors or not all(isinstance(f, RankOneFactor) for f in factors):
        raise TypeError("each certificate must be a non-empty list of RankOneFactor")
    n = n or len(factors[0].alpha)
    r = r or len(factors[0].psi)
    return HermitianTensor.from_factors(factors, n, r)


def _prop513_setup(tensors, forms, p, k):
    n = tensors[0].n
    r = tensors[0].r
    if any(t.n != n or t.r != r for t in tensors):
        raise ValueError("all tensors must share (n, r)")
    F = LinearFormSet(np.zeros((0, r)), r) if forms is None else _as_forms(forms, r)
    if F.p != k:
        raise ValueError(f"got {F.p} linear forms, expected k={k}")
    if p - k != n:
        raise ValueError(f"need dim T = p - k (n={n}, p={p}, k={k})")
    return F, n, r


def _prop513_integrand(coeffs_list, F):
    def integrand(u):
        mats = [_forms_at_u(c, u) for c in coeffs_list]
        d = mixed_discriminant_batch(mats)
        if F.p:
            d = d * np.prod(np.abs(F.values(u)) ** 2, axis=1)
        return np.real(d)
    return integrand


def check_513a(certificates: Sequence, forms, p: int, k: int, cfg: SampleConfig,
               check_id: str = "prop513a") -> CheckRecord:
    """Two-sided bound for strongly positive ``theta_1 .. theta_{p-k}``.

    ``certificates[i]`` is the list of :class:`RankOneFactor` whose sum is
    ``theta_i``.  The integral of ``prod |l_j(u)|^2 D(<theta_i(u), u>)`` must
    lie between ``c prod|l_j|^2 D(Tr theta_i)`` for ``c = (r-1)!/(p+r-1)!``
    and ``p! c``.
    """
    tensors = [_tensor_from_certificate(c) for c in certificates]
    F, n, r = _prop513_setup(tensors, forms, p, k)
    D_tr = float(np.real(mixed_discriminant([trace_E(t) for t in tensors])))
    base = _f(r - 1) / _f(p + r - 1) * F.norm_product() * D_tr
    est = monte_carlo(_prop513_integrand([t.coeffs for t in tensors], F), _sphere_draw(r), cfg)
    return CheckRecord(check_id, est.mean, est.stderr, base, _f(p) * base,
                       verdict(est.mean, est.stderr, base, _f(p) * base), cfg.seed, cfg.samples)


def check_513b(theta: HermitianTensor, forms, p: int, k: int, cfg: SampleConfig,
               check_id: str = "prop513b") -> CheckRecord:
    """Upper bound ``int prod|l_j|^2 D(<theta(u),u>, ...) <= p!(r-1)!/(p+r-1)! prod|l_j|^2 D(Tr theta, ...)``."""
    F, n, r = _prop513_setup([theta], forms, p, k)
    T = trace_E(theta)
    D_tr = float(np.real(mixed_discriminant([T] * n)))
    hi = _f(p) * _f(r - 1) / _f(p + r - 1) * F.norm_product() * D_tr
    est = monte_carlo(_prop513_integrand([theta.coeffs] * n, F), _sphere_draw(r), cfg)
    lo = hi if p == 1 else None  # trace identity
    return CheckRecord(check_id, est.mean, est.stderr, lo, hi,
                       verdict(est.mean, est.stderr, lo, hi), cfg.seed, cfg.samples)


def check_515_trace(theta: HermitianTensor, cfg: SampleConfig, xi=None, guard: float = 3.0,
                    check_id: str = "remark515-trace") -> CheckRecord:
    """``int <theta(u), u>(xi) dmu = Tr theta(xi) / r`` within ``guard`` standard errors.

    ``xi`` defaults to the normalized all-ones vector of ``C^n``.
    """
    n, r = theta.n, theta.r
    xi = np.ones(n) / math.sqrt(n) if xi is None else np.asarray(xi, dtype=complex)
    target = float(np.real(xi.conj() @ trace_E(theta).T @ xi)) / r
    # Q(xi) = sum_ij Q_ij xi_i conj(xi_j)
    integrand = lambda u: np.real(np.einsum("sij,i,j->s", _forms_at_u(theta.coeffs, u), xi, xi.conj()))
    est = monte_carlo(integrand, _sphere_draw(r), cfg)
    return CheckRecord(check_id, est.mean, est.stderr, target, target,
                       _agreement(est.mean, est.stderr, target, guard), cfg.seed, cfg.samples)


def check_515_tautological(n: int, copies: int, cfg: SampleConfig, atol: float = 1e-12,
                           check_id: str | None = None) -> CheckRecord:
    """``<theta(u), u>`` is rank one for the tautological tensor, so its wedge powers vanish.

    Reports the largest ``|D(Q, ..., Q, I, ..., I)|`` (``copies`` copies of
    ``Q = <theta(u), u>``) over the sampled ``u``; passes iff it is below
    ``atol`` and every sampled ``Q`` has numerical rank one.
    """
    from .positivity import tautological_example

    if not 2 <= copies <= n:
        raise ValueError("need 2 <= copies <= n")
    theta = tautological_example(n)
    rng = np.random.default_rng(cfg.seed)
    u = sample_sphere(n, cfg.samples, rng)
    Q = _forms_at_u(theta.coeffs, u)
    eye = np.broadcast_to(np.eye(n), Q.shape)
    D = mixed_discriminant_batch([Q] * copies + [eye] * (n - copies))
    ev = np.linalg.eigvalsh(Q)
    ranks = np.sum(ev > 1e-10 * np.max(np.abs(ev), axis=1, keepdims=True), axis=1)
    worst = float(np.max(np.abs(D)))
    ok = worst <= atol and bool(np.all(ranks == 1))
    return CheckRecord(check_id or f"remark515-rank[n={n},copies={copies}]", worst, 0.0, None, atol,
                       "pass" if ok else "fail", cfg.seed, cfg.samples,
                       {"max_rank": int(ranks.max()), "min_rank": int(ranks.min())})


# -- measure moments ----------------------------------------------------------

def dirichlet_vs_exact(p: Sequence[int], k: int, r: int, cfg: SampleConfig,
                       check_id: str | None = None) -> CheckRecord:
    """Monte-Carlo simplex moment against :func:`moments.simplex_moment`."""
    p = [int(x) for x in p]
    exact = float(simplex_moment(p, k, r))
    pa = np.asarray(p)
    est = monte_carlo(lambda x: np.prod(x ** pa, axis=1),
                      lambda size, rng: sample_simplex(k, r, size, rng), cfg)
    return CheckRecord(check_id or f"dirichlet[p={tuple(p)},k={k},r={r}]", est.mean, est.stderr,
                       exact, exact, _agreement(est.mean, est.stderr, exact), cfg.seed, cfg.samples)


def sphere_power_vs_exact(p: int, r: int, cfg: SampleConfig, check_id: str | None = None) -> CheckRecord:
    exact = float(sphere_power_moment(p, r))
    est = monte_carlo(lambda u: np.abs(u[:, 0]) ** (2 * p), _sphere_draw(r), cfg)
    return CheckRecord(check_id or f"sphere-power[p={p},r={r}]", est.mean, est.stderr, exact, exact,
                       _agreement(est.mean, est.stderr, exact), cfg.seed, cfg.samples)


def sphere_product_vs_exact(p: int, r: int, cfg: SampleConfig, check_id: str | None = None) -> CheckRecord:
    exact = float(sphere_product_moment(p, r))
    est = monte_carlo(lambda u: np.prod(np.abs(u[:, :p]) ** 2, axis=1), _sphere_draw(r), cfg)
    return CheckRecord(check_id or f"sphere-product[p={p},r={r}]", est.mean, est.stderr, exact, exact,
                       _agreement(est.mean, est.stderr, exact), cfg.seed, cfg.samples)


def explore_58_min_constant(r: int, p: int, trials: int, seed: int,
                            check_id: str | None = None) -> CheckRecord:
    """Empirical minimum of ``I / prod|l_j|^2`` over random Gaussian forms.

    Exploratory only: the optimal constant for ``p > r`` is not known.  The
    record's lower bound is the proven ``(r-1)!/(p+r-1)!``.
    """
    rng = np.random.default_rng(seed)
    best = math.inf
    for _ in range(trials):
        F = LinearFormSet(rng.standard_normal((p, r)) + 1j * rng.standard_normal((p, r)))
        best = min(best, exact_I(F) / F.norm_product())
    lo = _f(r - 1) / _f(p + r - 1)
    return CheckRecord(check_id or f"explore58[r={r},p={p}]", best, 0.0, lo, None,
                       verdict(best, 0.0, lo), seed, trials,
                       {"exploratory": True, "upper_constant": _f(p) * lo})


# -- named suites --------------------------------------------------------------

def derive_seed(seed: int, name: str, index: int) -> int:
    """Deterministic 64-bit seed for check ``index`` of suite ``name``."""
    ss = np.random.SeedSequence([seed, zlib.crc32(name.encode()), index])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def _random_forms(rng, p, r):
    return LinearFormSet(rng.standard_normal((p, r)) + 1j * rng.standard_normal((p, r)))


def _suite_moments(seed, samples):
    out = []
    cases = [((1, 0), 2, 2), ((2, 1), 2, 2), ((1, 1, 2), 3, 3), ((4,), 1, 3), ((0, 0), 2, 3)]
    for i, (p, k, r) in enumerate(cases):
        out.append(dirichlet_vs_exact(p, k, r, SampleConfig(samples, derive_seed(seed, "moments", i))))
    for j, (p, r) in enumerate([(1, 2), (2, 3), (4, 4)]):
        out.append(sphere_power_vs_exact(p, r, SampleConfig(samples, derive_seed(seed, "moments", 100 + j))))
    for j, (p, r) in enumerate([(2, 2), (3, 4)]):
        out.append(sphere_product_vs_exact(p, r, SampleConfig(samples, derive_seed(seed, "moments", 200 + j))))
    return out


def _suite_lemma58(seed, samples, count=20):
    out = []
    rng = np.random.default_rng(derive_seed(seed, "lemma58", -1 % 2**32))
    for i in range(count):
        r = int(rng.integers(1, 5))
        p = int(rng.integers(1, 7))
        F = _random_forms(rng, p, r)
        out.append(check_58_bounds(F, SampleConfig(samples, derive_seed(seed, "lemma58", i)),
                                   f"lemma58[random-{i},p={p},r={r}]"))
    prop = LinearFormSet([[1, 0, 0]] * 3)
    ortho = LinearFormSet(np.eye(3))
    out.append(check_58_equality(prop, SampleConfig(samples, derive_seed(seed, "lemma58", 1000)), "upper"))
    out.append(check_58_equality(ortho, SampleConfig(samples, derive_seed(seed, "lemma58", 1001)), "lower"))
    return out


def _suite_eq511(seed, samples, count=10):
    out = []
    rng = np.random.default_rng(derive_seed(seed, "eq511", -1 % 2**32))
    for i in range(count):
        r = int(rng.integers(2, 5))
        p = int(rng.integers(1, 6))
        F = _random_forms(rng, p, r - 1)
        out.append(check_511(F, SampleConfig(samples, derive_seed(seed, "eq511", i)),
                             f"eq511[random-{i},p={p},r={r}]"))
        out.append(check_511(F, None, f"eq511-exact[random-{i},p={p},r={r}]"))
    return out


def _suite_remark512(seed, samples, count=100):
    rng = np.random.default_rng(derive_seed(seed, "remark512", 0))
    out = []
    for i in range(count):
        p = int(rng.integers(1, 11))
        roots = rng.standard_normal(p) + 1j * rng.standard_normal(p)
        out.append(check_remark512(roots, f"remark512[random-{i},p={p}]"))
    landau, star = landau_vs_star_constants(7)
    out.append(CheckRecord("remark512-constants[p=7]", float(landau), 0.0, None, float(star),
                           "pass" if landau < star else "fail", None, 0))
    return out


def _suite_prop513(seed, samples, count=5):
    from .positivity import random_griffiths_tensor, random_strong_factors

    out = []
    rng = np.random.default_rng(derive_seed(seed, "prop513", -1 % 2**32))
    for i in range(count):
        r = int(rng.integers(1, 4))
        n = int(rng.integers(1, 3))
        k = int(rng.integers(0, 3))
        certs = [random_strong_factors(n, r, 2, rng) for _ in range(n)]
        F = _random_forms(rng, k, r) if k else None
        cfg = SampleConfig(samples, derive_seed(seed, "prop513", i))
        out.append(check_513a(certs, F, n + k, k, cfg, f"prop513a[random-{i},n={n},r={r},k={k}]"))
        theta = random_griffiths_tensor(n, r, rng)
        cfg = SampleConfig(samples, derive_seed(seed, "prop513", 100 + i))
        out.append(check_513b(theta, F, n + k, k, cfg, f"prop513b[random-{i},n={n},r={r},k={k}]"))
    return out


def _suite_remark515(seed, samples):
    from .positivity import tautological_example

    out = []
    for i, n in enumerate((2, 3)):
        out.append(check_515_tautological(n, 2, SampleConfig(min(samples, 10_000), derive_seed(seed, "remark515", i))))
        out.append(check_515_trace(tautological_example(n), SampleConfig(samples, derive_seed(seed, "remark515", 10 + i)),
                                   check_id=f"remark515-trace[n={n}]"))
    return out


def _suite_fourier(seed, samples, count=100):
    from .positivity import fourier_identity_check

    rng = np.random.default_rng(derive_seed(seed, "fourier", 0))
    out = []
    for i in range(count):
        q = int(rng.integers(3, 6))
        r = int(rng.integers(1, 4))
        x = rng.standard_normal(r) + 1j * rng.standard_normal(r)
        y = rng.standard_normal(r) + 1j * rng.standard_normal(r)
        lam, mu = (int(v) for v in rng.integers(0, r, size=2))
        ok, res = fourier_identity_check(x, y, lam, mu, q)
        out.append(CheckRecord(f"fourier[{i},q={q},r={r}]", res, 0.0, None, 1e-9,
                               "pass" if ok else "fail", None, 0))
    return out


def _suite_sandwich(seed, samples, count=10):
    from .positivity import random_griffiths_tensor, sandwich_check

    rng = np.random.default_rng(derive_seed(seed, "sandwich", 0))
    out = []
    for i in range(count):
        n, r = (int(v) for v in rng.integers(1, 5, size=2))
        theta = random_griffiths_tensor(n, r, rng)
        for mode in ("a", "c"):
            rep = sandwich_check(theta, mode)
            err = max(rep.lower_error, rep.upper_error)
            out.append(CheckRecord(f"sandwich-{mode}[{i},n={n},r={r}]", float(err), 0.0, None, 1e-9,
                                   "pass" if rep.passed else "fail", None, 0))
    return out


def _suite_lemma23(seed, samples, count=500):
    from .chernwedge import lemma23_inequality_check

    rng = np.random.default_rng(derive_seed(seed, "lemma23", 0))
    fails = 0
    worst = math.inf
    for _ in range(count):
        n = int(rng.integers(1, 6))
        lam = [Fraction(int(a), int(b)) for a, b in zip(rng.integers(0, 40, n), rng.integers(1, 20, n))]
        for q in range(n + 1):
            ok, lhs = lemma23_inequality_check(lam, q, exact=True)
            fails += not ok
            worst = min(worst, float(lhs))
    return [CheckRecord("lemma23[exact]", worst, 0.0, 0.0, None, "pass" if fails == 0 else "fail", None, count,
                        {"failures": fails})]


def _suite_explore58(seed, samples):
    return [explore_58_min_constant(r, p, 200, derive_seed(seed, "explore58", 10 * r + p))
            for r, p in ((2, 3), (2, 4), (3, 4))]


SUITES: dict[str, Callable[[int, int], list[CheckRecord]]] = {
    "moments": _suite_moments,
    "lemma58": _suite_lemma58,
    "eq511": _suite_eq511,
    "remark512": _suite_remark512,
    "prop513": _suite_prop513,
    "remark515": _suite_remark515,
    "fourier": _suite_fourier,
    "sandwich": _suite_sandwich,
    "lemma23": _suite_lemma23,
    "explore58": _suite_explore58,
}


def run_suite(name: str, seed: int, samples: int) -> list[CheckRecord]:
    if name not in SUITES:
        raise KeyError(f"unknown check suite {name!r}; known: {', '.join(SUITES)}")
    return SUITES[name](seed, samples)
