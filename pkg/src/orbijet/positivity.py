"""Hermitian tensors on ``T (x) E`` and the Griffiths / Nakano / strong cones.

A tensor ``theta`` is stored through its coefficients ``c[i, j, l, m]`` so that

    theta(w, w') = sum_{i,j,l,m} c[i,j,l,m] * w[i,l] * conj(w'[j,m]),

with the Hermitian symmetry ``conj(c[i,j,l,m]) == c[j,i,m,l]``.  The usual
``1/(2 pi)`` curvature normalization is dropped everywhere: every statement
handled here is homogeneous in ``theta``.

Hermitian forms on ``T`` (or ``E``) are plain ``(d, d)`` arrays ``Q`` read as
``Q(x) = sum_ij Q[i,j] x_i conj(x_j)``.  A rank-one factor ``alpha (x) psi``
acts by ``w -> sum alpha_i psi_l w[i,l]`` and contributes
``c[i,j,l,m] = alpha_i conj(alpha_j) psi_l conj(psi_m)``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "HermitianTensor",
    "RankOneFactor",
    "evaluate",
    "trace_E",
    "is_nakano_semipositive",
    "griffiths_minimum",
    "is_griffiths_semipositive",
    "strong_decomposition",
    "reconstruct",
    "reconstruction_error",
    "factor_span_rank",
    "fourier_identity_check",
    "sandwich_check",
    "SandwichReport",
    "tautological_example",
    "bilinear_square",
    "random_griffiths_tensor",
    "random_strong_factors",
    "psd_factor",
]


class HermitianTensor:
    """Hermitian form on ``T (x) E`` with ``dim T = n`` and ``dim E = r``."""

    def __init__(self, coeffs, check: bool = True, atol: float = 1e-10):
        c = np.asarray(coeffs, dtype=complex)
        if c.ndim != 4 or c.shape[0] != c.shape[1] or c.shape[2] != c.shape[3]:
            raise ValueError(f"coefficients must have shape (n, n, r, r), got {c.shape}")
        if check:
            defect = np.max(np.abs(c - c.conj().transpose(1, 0, 3, 2)), initial=0.0)
            scale = max(1.0, np.max(np.abs(c), initial=0.0))
            if defect > atol * scale:
                raise ValueError(f"coefficients are not Hermitian (defect {defect:.3g})")
        self.coeffs = c

    @property
    def n(self) -> int:
        return self.coeffs.shape[0]

    @property
    def r(self) -> int:
        return self.coeffs.shape[2]

    # constructors

    @classmethod
    def zeros(cls, n: int, r: int) -> "HermitianTensor":
        return cls(np.zeros((n, n, r, r), dtype=complex), check=False)

    @classmethod
    def identity(cls, n: int, r: int) -> "HermitianTensor":
        return cls.product(np.eye(n), np.eye(r))

    @classmethod
    def product(cls, omega, h=None) -> "HermitianTensor":
        """``omega (x) h``; ``h`` defaults to the identity metric."""
        omega = np.asarray(omega, dtype=complex)
        if h is None:
            raise TypeError("pass the metric h explicitly, e.g. np.eye(r)")
        return cls(np.einsum("ij,lm->ijlm", omega, np.asarray(h, dtype=complex)))

    @classmethod
    def from_matrix(cls, M, n: int, r: int) -> "HermitianTensor":
        """Inverse of :meth:`matrix`."""
        M = np.asarray(M, dtype=complex)
        return cls(M.reshape(n, r, n, r).transpose(0, 2, 1, 3))

    @classmethod
    def from_factors(cls, factors: Iterable["RankOneFactor"], n: int, r: int) -> "HermitianTensor":
        c = np.zeros((n, n, r, r), dtype=complex)
        for f in factors:
            c += f.coeffs()
        return cls(c, check=False)

    # views

    def matrix(self) -> np.ndarray:
        """Flattened ``(n r, n r)`` Hermitian matrix indexed by ``(i, l), (j, m)``."""
        n, r = self.n, self.r
        return self.coeffs.transpose(0, 2, 1, 3).reshape(n * r, n * r)

    def form_at_u(self, u) -> np.ndarray:
        """Hermitian form ``<theta(u), u>`` on ``T``: ``xi -> theta(xi (x) u)``."""
        u = np.asarray(u, dtype=complex)
        return np.einsum("ijlm,l,m->ij", self.coeffs, u, u.conj())

    def form_at_xi(self, xi) -> np.ndarray:
        """Hermitian form on ``E``: ``u -> theta(xi (x) u)``."""
        xi = np.asarray(xi, dtype=complex)
        return np.einsum("ijlm,i,j->lm", self.coeffs, xi, xi.conj())

    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    # arithmetic

    def __add__(self, other):
        if not isinstance(other, HermitianTensor):
            return NotImplemented
        _check_dims(self, other)
        return HermitianTensor(self.coeffs + other.coeffs, check=False)

    def __sub__(self, other):
        if not isinstance(other, HermitianTensor):
            return NotImplemented
        _check_dims(self, other)
        return HermitianTensor(self.coeffs - other.coeffs, check=False)

    def __neg__(self):
        return HermitianTensor(-self.coeffs, check=False)

    def __mul__(self, a):
        a = float(a)
        return HermitianTensor(a * self.coeffs, check=False)

    __rmul__ = __mul__

    def __repr__(self):
        return f"HermitianTensor(n={self.n}, r={self.r})"

    # JSON

    def to_json(self, atol: float = 0.0) -> str:
        """``{"n", "r", "coeffs": [[i, j, lambda, mu, re, im], ...]}``, 0-based."""
        entries = []
        for idx in zip(*np.nonzero(np.abs(self.coeffs) > atol)):
            v = self.coeffs[idx]
            entries.append([int(i) for i in idx] + [float(v.real), float(v.imag)])
        return json.dumps({"n": self.n, "r": self.r, "coeffs": entries})

    @classmethod
    def from_json(cls, text: str, atol: float = 1e-10) -> "HermitianTensor":
        data = json.loads(text)
        n, r = int(data["n"]), int(data["r"])
        c = np.zeros((n, n, r, r), dtype=complex)
        for entry in data["coeffs"]:
            i, j, l, m, re, im = entry
            c[i, j, l, m] = complex(re, im)
        return cls(c, check=True, atol=atol)


def _check_dims(a: HermitianTensor, b: HermitianTensor):
    if (a.n, a.r) != (b.n, b.r):
        raise ValueError(f"dimension mismatch: (n, r) = {(a.n, a.r)} vs {(b.n, b.r)}")


@dataclass(frozen=True)
class RankOneFactor:
    """Linear form ``alpha (x) psi`` on ``T (x) E``; contributes ``|alpha (x) psi|^2``."""

    alpha: np.ndarray
    psi: np.ndarray

    def apply(self, w) -> complex:
        w = np.asarray(w, dtype=complex).reshape(len(self.alpha), len(self.psi))
        return complex(self.alpha @ w @ self.psi)

    def coeffs(self) -> np.ndarray:
        a, p = self.alpha, self.psi
        return np.einsum("i,j,l,m->ijlm", a, a.conj(), p, p.conj())

    def tensor(self) -> HermitianTensor:
        return HermitianTensor(self.coeffs(), check=False)


def evaluate(theta: HermitianTensor, w, w2=None) -> complex | float:
    """``theta(w, w2)``; with ``w2`` omitted returns the real number ``theta(w, w)``."""
    n, r = theta.n, theta.r
    w = np.asarray(w, dtype=complex)
    if w.size != n * r:
        raise ValueError(f"vector has {w.size} entries, expected n*r = {n * r}")
    w = w.reshape(n, r)
    if w2 is None:
        return float(np.einsum("ijlm,il,jm->", theta.coeffs, w, w.conj()).real)
    w2 = np.asarray(w2, dtype=complex)
    if w2.size != n * r:
        raise ValueError(f"vector has {w2.size} entries, expected n*r = {n * r}")
    return complex(np.einsum("ijlm,il,jm->", theta.coeffs, w, w2.reshape(n, r).conj()))


def trace_E(theta: HermitianTensor) -> np.ndarray:
    """Partial trace ``(Tr_E theta)[i, j] = sum_l c[i, j, l, l]``."""
    return np.einsum("ijll->ij", theta.coeffs)


def is_nakano_semipositive(theta: HermitianTensor, tol: float = 1e-10) -> bool:
    """Smallest eigenvalue of the flattened matrix is ``>= -tol``."""
    if tol < 0:
        raise ValueError("tol must be >= 0")
    return bool(np.linalg.eigvalsh(theta.matrix())[0] >= -tol)


def _min_eig(Q):
    vals, vecs = np.linalg.eigh(Q)
    # the minimizing argument of x -> sum Q_ij x_i conj(x_j) is conj(v)
    return vals[0], vecs[:, 0].conj()


def _rng(rng) -> np.random.Generator:
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(0 if rng is None else rng)


def griffiths_minimum(theta: HermitianTensor, restarts: int = 50, rng=None, max_iter: int = 200):
    """Heuristic minimum of ``theta(xi (x) u)`` over unit ``xi``, ``u``.

    Alternates exact eigen-minimizations in ``xi`` (fixed ``u``) and in ``u``
    (fixed ``xi``) from random starts.  Returns ``(value, xi, u)`` where
    ``value == evaluate(theta, outer(xi, u))``.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    rng = _rng(rng)
    r = theta.r
    best = (np.inf, None, None)
    for _ in range(restarts):
        u = rng.standard_normal(r) + 1j * rng.standard_normal(r)
        u /= np.linalg.norm(u)
        prev = np.inf
        for _ in range(max_iter):
            _, xi = _min_eig(theta.form_at_u(u))
            val, u = _min_eig(theta.form_at_xi(xi))
            if prev - val <= 1e-14 * (1.0 + abs(val)):
                break
            prev = val
        value = evaluate(theta, np.outer(xi, u))
        if value < best[0]:
            best = (value, xi, u)
    return best


def is_griffiths_semipositive(theta: HermitianTensor, tol: float = 1e-8, restarts: int = 50, rng=None) -> bool:
    """Best-effort Griffiths test.

    ``False`` is certified by an explicit witness (see
    :func:`griffiths_minimum`); ``True`` only means none was found.
    Nakano-semipositive tensors are accepted without a search.
    """
    if is_nakano_semipositive(theta, tol):
        return True
    value, _, _ = griffiths_minimum(theta, restarts=restarts, rng=rng)
    return bool(value >= -tol)


def psd_factor(Q, tol: float = 1e-8) -> list[np.ndarray]:
    """Vectors ``a_k`` with ``Q(x) = sum_k |sum_i a_k[i] x_i|^2``.

    Eigenvalues in ``[-tol, 0]`` are clamped to zero; anything below
    ``-tol`` raises ``ValueError``.
    """
    vals, vecs = np.linalg.eigh(np.asarray(Q, dtype=complex))
    if vals.size and vals[0] < -tol:
        raise ValueError(f"form is not positive semidefinite (eigenvalue {vals[0]:.3g})")
    return [np.sqrt(v) * vecs[:, k] for k, v in enumerate(vals) if v > 0]


def _characters(q: int, r: int) -> np.ndarray:
    roots = np.exp(2j * np.pi * np.arange(q) / q)
    return np.array([roots[list(idx)] for idx in itertools.product(range(q), repeat=r)])


def strong_decomposition(theta: HermitianTensor, q: int = 3, tol: float = 1e-8) -> list[RankOneFactor]:
    """Rank-one factors whose squares sum to ``theta + Tr_E(theta) (x) h``.

    Uses discrete Fourier analysis over ``U_q^r``: for each character ``chi``
    the form ``xi -> q^-r theta(xi (x) e_chi)`` is split into squares
    ``|l(xi)|^2`` giving factors ``l (x) conj(chi)``; the diagonal forms
    ``xi -> theta(xi (x) e_l)`` give factors ``l' (x) e_l``.  Raises
    ``ValueError`` if one of those forms has an eigenvalue below ``-tol``,
    i.e. when ``theta`` is not Griffiths semipositive.
    """
    if q < 3:
        raise ValueError("q must be >= 3")
    n, r = theta.n, theta.r
    factors: list[RankOneFactor] = []
    weight = float(q) ** (-r)
    for chi in _characters(q, r):
        F = weight * theta.form_at_u(chi)
        try:
            vecs = psd_factor(F, tol)
        except ValueError as exc:
            raise ValueError(f"theta is not Griffiths semipositive: {exc}") from None
        psi = chi.conj()
        factors.extend(RankOneFactor(a, psi) for a in vecs)
    eye = np.eye(r, dtype=complex)
    for lam in range(r):
        G = theta.coeffs[:, :, lam, lam]
        try:
            vecs = psd_factor(G, tol)
        except ValueError as exc:
            raise ValueError(f"theta is not Griffiths semipositive: {exc}") from None
        factors.extend(RankOneFactor(a, eye[lam]) for a in vecs)
    return factors


def reconstruct(factors: Sequence[RankOneFactor], n: int, r: int) -> HermitianTensor:
    return HermitianTensor.from_factors(factors, n, r)


def reconstruction_error(factors: Sequence[RankOneFactor], target: HermitianTensor) -> float:
    """Relative Frobenius distance between ``sum |f|^2`` and ``target``."""
    diff = np.linalg.norm(reconstruct(factors, target.n, target.r).coeffs - target.coeffs)
    scale = target.norm()
    return float(diff / scale) if scale > 0 else float(diff)


def factor_span_rank(factors: Sequence[RankOneFactor], tol: float = 1e-9) -> int:
    """Rank of the span of the ``alpha (x) psi`` in ``T* (x) E*``.

    Full rank ``n r`` is what strict strong positivity asks for; no claim is
    made that :func:`strong_decomposition` reaches it.
    """
    if not factors:
        return 0
    rows = np.array([np.outer(f.alpha, f.psi).ravel() for f in factors])
    return int(np.linalg.matrix_rank(rows, tol=tol))


def fourier_identity_check(x, y, lam: int, mu: int, q: int = 3, tol: float = 1e-9):
    """Check the discrete Fourier inversion over ``U_q^r`` for ``(lam, mu)``.

    Returns ``(passed, residual)`` with the residual relative to
    ``1 + |rhs|``.  Indices are 0-based.
    """
    if q < 3:
        raise ValueError("q must be >= 3")
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    r = len(x)
    chis = _characters(q, r)
    xh = chis.conj() @ x
    yh = chis.conj() @ y
    lhs = np.sum(xh * yh.conj() * chis[:, lam] * chis[:, mu].conj()) / q**r
    rhs = x[lam] * np.conj(y[mu]) if lam != mu else np.vdot(y, x)
    residual = float(abs(lhs - rhs) / (1.0 + abs(rhs)))
    return residual < tol, residual


@dataclass
class SandwichReport:
    mode: str
    passed: bool
    lower_target: HermitianTensor
    upper_target: HermitianTensor
    lower_factors: list = field(default_factory=list)
    upper_factors: list = field(default_factory=list)
    lower_error: float = float("nan")
    upper_error: float = float("nan")
    message: str = ""


def _product_factors(Q, r: int, tol: float) -> list[RankOneFactor]:
    eye = np.eye(r, dtype=complex)
    return [RankOneFactor(a, eye[l]) for a in psd_factor(Q, tol) for l in range(r)]


def sandwich_check(theta: HermitianTensor, mode: str = "a", tau=None, q: int = 3,
                   tol: float = 1e-8, rtol: float = 1e-9) -> SandwichReport:
    """Build strong certificates for the two-sided bounds on ``theta``.

    mode ``"a"`` (``theta >=_G 0``)::

        -Tr_E(theta) (x) h  <=_S  theta  <=_S  r Tr_E(theta) (x) h

    mode ``"b"`` is mode ``"a"`` applied to ``-theta`` (``theta <=_G 0``).

    mode ``"c"`` (``+-theta <=_G tau (x) h``)::

        -(2r+1) tau (x) h  <=_S  theta  <=_S  (2r+1) tau (x) h

    ``tau`` defaults to ``s Id`` with ``s`` the spectral norm of the
    flattened matrix, which always satisfies the hypothesis.

    Each certificate is a list of rank-one factors whose squares sum to the
    gap between ``theta`` and the bound; it is rebuilt and compared against
    the gap at relative Frobenius tolerance ``rtol``.
    """
    n, r = theta.n, theta.r
    tr = trace_E(theta)
    eye_r = np.eye(r)
    if mode == "a":
        lower_target = theta + HermitianTensor.product(tr, eye_r)
        upper_target = HermitianTensor.product(r * tr, eye_r) - theta
        lower = strong_decomposition(theta, q, tol)
        upper = strong_decomposition(HermitianTensor.product(tr, eye_r) - theta, q, tol)
    elif mode == "b":
        rep = sandwich_check(-theta, "a", q=q, tol=tol, rtol=rtol)
        # bounds for -theta swap roles once negated back
        return SandwichReport("b", rep.passed, rep.upper_target, rep.lower_target,
                              rep.upper_factors, rep.lower_factors,
                              rep.upper_error, rep.lower_error, rep.message)
    elif mode == "c":
        if tau is None:
            s = float(np.linalg.norm(theta.matrix(), 2))
            tau = s * np.eye(n)
        tau = np.asarray(tau, dtype=complex)
        tau_h = HermitianTensor.product(tau, eye_r)
        lower_target = theta + (2 * r + 1) * tau_h
        upper_target = (2 * r + 1) * tau_h - theta
        lower = strong_decomposition(tau_h + theta, q, tol) + _product_factors(r * tau - tr, r, tol)
        upper = strong_decomposition(tau_h - theta, q, tol) + _product_factors(r * tau + tr, r, tol)
    else:
        raise ValueError(f"unknown mode {mode!r}; expected 'a', 'b' or 'c'")
    lo_err = reconstruction_error(lower, lower_target)
    up_err = reconstruction_error(upper, upper_target)
    passed = lo_err <= rtol and up_err <= rtol
    return SandwichReport(mode, passed, lower_target, upper_target, lower, upper, lo_err, up_err)


def tautological_example(n: int) -> HermitianTensor:
    """Tensor on ``C^n (x) C^n`` with ``theta(xi (x) u) = |<xi, u>|^2``.

    Griffiths semipositive but not Nakano semipositive; its forms
    ``<theta(u), u>`` all have rank one.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    return bilinear_square(np.eye(n))


def bilinear_square(P) -> HermitianTensor:
    """Tensor ``theta(xi (x) u) = |xi^T P conj(u)|^2`` for an ``n x r`` matrix ``P``.

    Coefficients ``c[i,j,l,m] = P[i,m] conj(P[j,l])``; always Griffiths
    semipositive, generally not Nakano semipositive.
    """
    P = np.asarray(P, dtype=complex)
    return HermitianTensor(np.einsum("im,jl->ijlm", P, P.conj()), check=False)


def random_strong_factors(n: int, r: int, count: int, rng) -> list[RankOneFactor]:
    rng = _rng(rng)
    return [
        RankOneFactor(
            rng.standard_normal(n) + 1j * rng.standard_normal(n),
            rng.standard_normal(r) + 1j * rng.standard_normal(r),
        )
        for _ in range(count)
    ]


def random_griffiths_tensor(n: int, r: int, rng=None, squares: int = 2, strong: int = 2,
                            product_weight: float = 0.1) -> HermitianTensor:
    """Random Griffiths-semipositive tensor.

    Sum of ``squares`` bilinear squares (usually breaking Nakano positivity),
    ``strong`` rank-one strong factors and ``product_weight * omega (x) h``
    with ``omega`` random positive semidefinite.  Each summand is Griffiths
    semipositive, hence so is the sum.
    """
    rng = _rng(rng)
    c = np.zeros((n, n, r, r), dtype=complex)
    for _ in range(squares):
        P = rng.standard_normal((n, r)) + 1j * rng.standard_normal((n, r))
        c += bilinear_square(P).coeffs
    for f in random_strong_factors(n, r, strong, rng):
        c += f.coeffs()
    if product_weight:
        G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        c += product_weight * np.einsum("ij,lm->ijlm", G @ G.conj().T, np.eye(r))
    return HermitianTensor(c, check=False)
