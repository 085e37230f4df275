"""
Orbifold divisors on projective space
=====================================

An orbifold structure on ``P^n`` is a list of components ``(d_j, rho_j)``:
a hypersurface of degree ``d_j`` with ramification ``rho_j`` (``inf`` for
a logarithmic component).  Here we compare the general Morse bounds with
the simplified criteria on one example, then ask how many components of a
given type are needed.
"""

from orbijet.criteria import (
    OrbifoldSpec,
    check_27N,
    check_criterion_716,
    check_thm08_a,
    check_thm08_b,
    morse_lower_M,
    morse_upper_Mprime,
)

spec = OrbifoldSpec.projective(n=2, k=1, components=[(100, 50), (100, 50)])
print("t =", spec.t, " gamma_1 =", spec.gamma(1))

# two lower bounds and two upper bounds; all exact rationals
for variant in ("7.12", "7.12-1"):
    print(f"M  via {variant:7}:", morse_lower_M(spec, variant))
for variant in ("7.14-1", "7.14-2"):
    print(f"M' via {variant:7}:", morse_upper_Mprime(spec, variant))

def show(rep):
    verdict = "holds" if rep.satisfied else "fails"
    print(f"{rep.criterion_id:>5} {rep.variant:12} {verdict}: {rep.lhs} vs {rep.rhs}")


show(check_criterion_716(spec))
# the subset-sum criterion for k = 1
show(check_thm08_b(spec))

# with k = n = 2 the componentwise criterion needs N copies of (50, 25)
for N in (1, 2, 3):
    print(N, "components:", check_27N(2, 2, N, 50, 25).satisfied,
          check_thm08_a(OrbifoldSpec.projective(2, 2, [(50, 25)] * N)).lhs)
