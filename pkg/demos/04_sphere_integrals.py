"""
Products of linear forms on the unit sphere
===========================================

For linear forms ``l_1 .. l_p`` on ``C^r`` the integral of
``|l_1(u)|^2 ... |l_p(u)|^2`` over the unit sphere lies between
``(r-1)!/(p+r-1)!`` and ``p!`` times that, in units of ``prod |l_j|^2``.
We estimate it by Monte Carlo, compare with the exact value, and look at
the two equality cases.
"""

import numpy as np

from orbijet.mcverify import (
    LinearFormSet,
    SampleConfig,
    check_58_bounds,
    check_58_equality,
    exact_I,
    explore_58_min_constant,
)

rng = np.random.default_rng(0)
forms = LinearFormSet(rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2)))
cfg = SampleConfig(samples=200_000, seed=1)

rec = check_58_bounds(forms, cfg)
print(f"estimate {rec.estimate:.5f} +- {rec.stderr:.5f}   exact {exact_I(forms):.5f}")
print(f"bounds   [{rec.bound_lo:.5f}, {rec.bound_hi:.5f}]  -> {rec.verdict}")

# proportional forms sit on the upper bound, orthonormal ones (p <= r) on the lower
print(check_58_equality(np.ones((3, 1)) * [1, 0, 0], cfg, "upper").extra)
print(check_58_equality(np.eye(3), cfg, "lower").extra)

# for p > r the best lower constant is unknown; random search shows the gap
rec = explore_58_min_constant(r=2, p=4, trials=200, seed=3)
print(f"smallest ratio seen {rec.estimate:.5f}, proven constant {rec.bound_lo:.5f}")
