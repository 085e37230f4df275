"""
Degree thresholds for smooth hypersurfaces
==========================================

For a smooth hypersurface complement the general Morse-inequality
criterion reduces to a single inequality in the degree ``d``.  We locate the
first degree where it holds, in the compact setting and for the logarithmic
pair, and confirm the compact criterion flips at the same place.
"""

from orbijet.criteria import check_compact, check_example_718, check_log_pn, example_718_threshold

n = k = 2
print("threshold for the orbifold hypersurface:", example_718_threshold(n, k))

# scan degrees; every report carries exact lhs/rhs values
for d in range(7, 12):
    orb = check_example_718(n, k, d)
    log = check_log_pn(n, k, d)
    print(f"d={d:>2}  orbifold {orb.satisfied!s:5}  log {log.satisfied!s:5}  "
          f"(lhs {orb.lhs}, rhs {orb.rhs})")

# the compact criterion with gamma_V = 2 and lambda_V = d - n - 2 reproduces the same flip
for n in range(1, 5):
    thr = example_718_threshold(n, n)
    first = next(d for d in range(1, 10_000) if check_compact(n, n, n, 2, d - n - 2).satisfied)
    print(f"n={n}: threshold {thr}, compact criterion first holds at d={first}")
