import json
import math

import numpy as np
import pytest
from scipy.stats import unitary_group

from orbijet.mcverify import (
    SUITES,
    CheckRecord,
    LinearFormSet,
    SampleConfig,
    check_511,
    check_513a,
    check_513b,
    check_515_tautological,
    check_515_trace,
    check_58_bounds,
    check_58_equality,
    check_remark512,
    derive_seed,
    dirichlet_vs_exact,
    estimate_I,
    exact_511_lhs,
    exact_I,
    explore_58_min_constant,
    landau_vs_star_constants,
    monte_carlo,
    run_suite,
    sphere_power_vs_exact,
    sphere_product_vs_exact,
    verdict,
)
from orbijet.moments import sample_sphere
from orbijet.positivity import (
    HermitianTensor,
    RankOneFactor,
    random_griffiths_tensor,
    random_strong_factors,
    tautological_example,
)

CFG = SampleConfig(samples=100_000, seed=7)


def random_forms(rng, p, r):
    return LinearFormSet(rng.standard_normal((p, r)) + 1j * rng.standard_normal((p, r)))


def within(est, target, se, k=4.0):
    return abs(est - target) <= k * se + 1e-12


def test_single_form_moment():
    est = estimate_I([[1, 0]], CFG)
    assert within(est.mean, 0.5, est.stderr, 3)


@pytest.mark.parametrize("p,r", [(2, 2), (3, 2), (3, 4)])
def test_proportional_forms_reach_upper_bound(p, r):
    forms = np.zeros((p, r))
    forms[:, 0] = 1
    rec = check_58_equality(forms, CFG, "upper")
    assert rec.bound_hi == pytest.approx(math.factorial(p) * math.factorial(r - 1) / math.factorial(p + r - 1))
    assert rec.verdict == "pass"


@pytest.mark.parametrize("p,r", [(1, 3), (2, 3), (3, 3), (2, 4)])
def test_orthonormal_forms_reach_lower_bound(p, r):
    rec = check_58_equality(np.eye(r)[:p], CFG, "lower")
    assert rec.verdict == "pass"


def test_orthonormal_extended_has_slack():
    r = 2
    forms = np.vstack([np.eye(r), [[1 / math.sqrt(2), 1j / math.sqrt(2)]]])
    F = LinearFormSet(forms)
    lo = math.factorial(r - 1) / math.factorial(F.p + r - 1) * F.norm_product()
    assert exact_I(F) > 1.2 * lo
    assert check_58_bounds(F, CFG).verdict == "pass"


def test_bounds_on_random_form_sets():
    rng = np.random.default_rng(1)
    for i in range(40):
        F = random_forms(rng, int(rng.integers(1, 7)), int(rng.integers(1, 5)))
        rec = check_58_bounds(F, SampleConfig(20_000, i))
        assert rec.verdict == "pass", rec.to_dict()
        assert rec.bound_lo <= exact_I(F) * (1 + 1e-12) and exact_I(F) <= rec.bound_hi * (1 + 1e-12)


def test_exact_integral_matches_monte_carlo():
    rng = np.random.default_rng(2)
    for i in range(10):
        F = random_forms(rng, int(rng.integers(1, 5)), int(rng.integers(1, 4)))
        est = estimate_I(F, SampleConfig(50_000, i))
        assert within(est.mean, exact_I(F), est.stderr)


def test_unitary_invariance():
    rng = np.random.default_rng(3)
    for i in range(5):
        r = int(rng.integers(2, 5))
        F = random_forms(rng, 3, r)
        G = F.rotated(unitary_group.rvs(r, random_state=i))
        assert exact_I(G) == pytest.approx(exact_I(F), rel=1e-10)
        a = estimate_I(F, SampleConfig(50_000, 10 + i))
        b = estimate_I(G, SampleConfig(50_000, 20 + i))
        assert abs(a.mean - b.mean) <= 3 * math.hypot(a.stderr, b.stderr)


def test_scaling_on_same_stream():
    rng = np.random.default_rng(4)
    F = random_forms(rng, 3, 3)
    c = np.array([2.0, 0.5j, 1 - 1j])
    a = estimate_I(F, CFG)
    b = estimate_I(F.scaled(c), CFG)
    factor = float(np.prod(np.abs(c) ** 2))
    assert b.mean == pytest.approx(factor * a.mean, rel=1e-12)
    assert b.stderr == pytest.approx(factor * a.stderr, rel=1e-9)


def test_form_set_validation():
    with pytest.raises(ValueError):
        LinearFormSet([[np.inf, 0]])
    with pytest.raises(ValueError):
        LinearFormSet(np.zeros((0, 2)))
    assert LinearFormSet(np.zeros((0, 2)), r=2).p == 0
    with pytest.raises(ValueError):
        SampleConfig(samples=0)


# -- eq511 ----------------------------------------------------------------------

def test_511_zero_forms():
    for p in range(0, 5):
        rec = check_511(np.zeros((p, 2)) if p else LinearFormSet(np.zeros((0, 2)), 2))
        assert rec.estimate == pytest.approx(math.factorial(p))
        assert rec.bound_lo == 1
        assert rec.verdict == "pass"


def test_511_single_form_is_equality():
    rng = np.random.default_rng(5)
    for r in (2, 3, 4):
        F = random_forms(rng, 1, r - 1)
        assert exact_511_lhs(F) == pytest.approx(1 + F.norms2()[0], rel=1e-12)
        assert check_511(F, SampleConfig(20_000, r)).verdict == "pass"


def test_511_random_sets():
    rng = np.random.default_rng(6)
    for i in range(30):
        F = random_forms(rng, int(rng.integers(1, 6)), int(rng.integers(1, 4)))
        assert check_511(F).verdict == "pass"
        rec = check_511(F, SampleConfig(20_000, i))
        assert rec.verdict == "pass"
        assert within(rec.estimate, exact_511_lhs(F), rec.stderr)


def test_511_needs_r_at_least_2():
    with pytest.raises(ValueError):
        check_511(LinearFormSet(np.zeros((0, 0)), 0))


# -- polynomial roots ---------------------------------------------------------------

def test_remark512_zero_roots():
    for p in (1, 4, 7):
        rec = check_remark512([0] * p)
        assert rec.extra["lhs"] == "1"
        assert rec.extra["rhs_star"] == str(math.factorial(p))
        assert rec.verdict == "pass"


def test_remark512_constants():
    assert landau_vs_star_constants(7) == (128, 144)
    for p in range(1, 7):
        two_p, star = landau_vs_star_constants(p)
        assert two_p >= star
    for p in range(7, 15):
        two_p, star = landau_vs_star_constants(p)
        assert two_p < star


def test_remark512_random_roots():
    rng = np.random.default_rng(8)
    for _ in range(200):
        p = int(rng.integers(1, 11))
        scale = 10.0 ** rng.uniform(-2, 2)
        rec = check_remark512(scale * (rng.standard_normal(p) + 1j * rng.standard_normal(p)))
        assert rec.extra["star_holds"] and rec.extra["landau_holds"]
    rec = check_remark512(rng.standard_normal(7) + 1j * rng.standard_normal(7))
    assert rec.extra["tighter"] in ("landau", "star", "equal")


def test_remark512_exact_pairs():
    rec = check_remark512([(1, 0), (0, 1)])
    # (z-1)(z-i): s = 1, -(1+i), i
    assert rec.extra["lhs"] == "4"
    assert rec.extra["rhs_star"] == str(2 + 2 + 2)
    assert rec.extra["rhs_landau"] == str(4 * (1 + 2 + 1))
    with pytest.raises(ValueError):
        check_remark512([])


# -- curvature integrals -----------------------------------------------------------

def product_certificate(n, r):
    return [RankOneFactor(np.eye(n)[i], np.eye(r)[l]) for i in range(n) for l in range(r)]


def test_513a_product_tensor():
    for n, r in [(1, 2), (2, 2), (2, 3)]:
        rec = check_513a([product_certificate(n, r)] * n, None, n, 0, CFG)
        assert rec.verdict == "pass", rec.to_dict()


def test_513a_single_tensor_is_trace_identity():
    rng = np.random.default_rng(9)
    r = 3
    certs = [random_strong_factors(1, r, 3, rng)]
    rec = check_513a(certs, None, 1, 0, CFG)
    assert rec.bound_lo == pytest.approx(rec.bound_hi)
    assert within(rec.estimate, rec.bound_lo, rec.stderr)


def test_513a_random_certified():
    rng = np.random.default_rng(10)
    for i in range(10):
        r = int(rng.integers(1, 4))
        n = int(rng.integers(1, 3))
        k = int(rng.integers(0, 3))
        certs = [random_strong_factors(n, r, 2, rng) for _ in range(n)]
        F = random_forms(rng, k, r) if k else None
        rec = check_513a(certs, F, n + k, k, SampleConfig(20_000, i))
        assert rec.verdict in ("pass", "inconclusive"), rec.to_dict()
        assert rec.verdict == "pass"


def test_513a_rejects_uncertified():
    theta = HermitianTensor.identity(2, 2)
    with pytest.raises(TypeError):
        check_513a([theta, theta], None, 2, 0, CFG)
    with pytest.raises(ValueError):
        check_513a([product_certificate(2, 2)] * 2, None, 3, 0, CFG)


def test_513b_tautological_vanishes():
    rec = check_513b(tautological_example(2), None, 2, 0, CFG)
    assert abs(rec.estimate) < 1e-12
    assert rec.verdict == "pass"


def test_513b_random_griffiths():
    rng = np.random.default_rng(11)
    for i in range(8):
        n, r, k = int(rng.integers(1, 3)), int(rng.integers(1, 4)), int(rng.integers(0, 2))
        theta = random_griffiths_tensor(n, r, rng)
        F = random_forms(rng, k, r) if k else None
        assert check_513b(theta, F, n + k, k, SampleConfig(20_000, i)).verdict == "pass"


def test_513b_monotone_along_psd_directions():
    rng = np.random.default_rng(12)
    for i in range(5):
        theta = random_griffiths_tensor(2, 3, rng)
        F = random_forms(rng, 1, 3)
        base = check_513b(theta, F, 3, 1, SampleConfig(20_000, i)).estimate
        for f in random_strong_factors(2, 3, 3, rng):
            theta = theta + f.tensor()
            est = check_513b(theta, F, 3, 1, SampleConfig(20_000, i)).estimate
            assert est >= base * (1 - 1e-12)
            base = est


def test_515_trace_identity():
    rng = np.random.default_rng(13)
    assert check_515_trace(tautological_example(3), CFG).verdict == "pass"
    theta = random_griffiths_tensor(2, 3, rng)
    assert check_515_trace(theta, CFG, xi=[1, 1j]).verdict == "pass"


def test_515_tautological_rank_one():
    for n in (2, 3, 4):
        for copies in range(2, n + 1):
            rec = check_515_tautological(n, copies, SampleConfig(2_000, n))
            assert rec.verdict == "pass"
            assert rec.extra["max_rank"] == 1
    with pytest.raises(ValueError):
        check_515_tautological(3, 1, CFG)


# -- moments -------------------------------------------------------------------

def test_dirichlet_examples():
    assert dirichlet_vs_exact((1, 0), 2, 3, CFG).bound_lo == pytest.approx(0.5)
    rec = dirichlet_vs_exact((0, 0, 0), 3, 2, CFG)
    assert rec.estimate == 1.0 and rec.verdict == "pass"
    for p, k, r in [((2, 1), 2, 2), ((1, 1, 2), 3, 3), ((4,), 1, 2)]:
        assert dirichlet_vs_exact(p, k, r, CFG).verdict == "pass"


def test_sphere_moment_records():
    for p, r in [(1, 1), (2, 3), (3, 2)]:
        assert sphere_power_vs_exact(p, r, CFG).verdict == "pass"
    for p, r in [(1, 2), (2, 2), (3, 4)]:
        assert sphere_product_vs_exact(p, r, CFG).verdict == "pass"


def test_explore_constant_above_proven_bound():
    rec = explore_58_min_constant(2, 4, 50, seed=1)
    assert rec.estimate >= rec.bound_lo
    assert rec.extra["exploratory"]


# -- verdict policy, determinism ----------------------------------------------------

def test_verdict_policy():
    assert verdict(1.0, 0.1, 0.5, 2.0) == "pass"
    assert verdict(0.45, 0.1, 0.5, 2.0) == "inconclusive"
    assert verdict(0.0, 0.1, 0.5, 2.0) == "fail"
    assert verdict(2.3, 0.1, 0.5, 2.0) == "inconclusive"
    assert verdict(2.5, 0.1, 0.5, 2.0) == "fail"
    assert verdict(1.0, 0.0, 1.0 + 1e-14, None) == "pass"
    assert verdict(1.0, 0.1, 1.2, 1.2) == "pass"
    assert verdict(1.0, 0.01, 1.2, 1.2) == "fail"


def test_monte_carlo_independent_of_thread_count(monkeypatch):
    F = LinearFormSet([[1, 2j, 0], [0.5, 0, 1]])
    draw = lambda size, rng: sample_sphere(3, size, rng)
    integrand = lambda u: np.prod(np.abs(F.values(u)) ** 2, axis=1)
    one = monte_carlo(integrand, draw, SampleConfig(40_000, 3, batch=7_000, threads=1))
    four = monte_carlo(integrand, draw, SampleConfig(40_000, 3, batch=7_000, threads=4))
    assert (one.mean, one.stderr) == (four.mean, four.stderr)
    monkeypatch.setenv("ORBIJET_THREADS", "3")
    assert SampleConfig().workers() == 3
    env = monte_carlo(integrand, draw, SampleConfig(40_000, 3, batch=7_000))
    assert (env.mean, env.stderr) == (one.mean, one.stderr)


def test_record_json_shape():
    rec = check_58_bounds([[1, 0]], SampleConfig(1_000, 5))
    d = rec.to_dict()
    assert set(d) >= {"check_id", "estimate", "stderr", "bound_lo", "bound_hi", "verdict", "seed", "samples"}
    json.dumps(d)
    assert isinstance(rec, CheckRecord)


def test_derive_seed_is_stable():
    assert derive_seed(42, "lemma58", 0) == derive_seed(42, "lemma58", 0)
    assert derive_seed(42, "lemma58", 0) != derive_seed(42, "lemma58", 1)
    assert derive_seed(42, "lemma58", 0) != derive_seed(43, "lemma58", 0)


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suites_pass_and_repeat(name):
    a = [r.to_dict() for r in run_suite(name, 42, 10_000)]
    b = [r.to_dict() for r in run_suite(name, 42, 10_000)]
    assert json.dumps(a) == json.dumps(b)
    assert a
    assert not [r for r in a if r["verdict"] == "fail"]


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suite("nope", 0, 10)
