"""
Griffiths, Nakano and strong positivity
=======================================

A Hermitian tensor on ``T (x) E`` can be positive on decomposable vectors
(Griffiths) without being positive as a matrix (Nakano).  The standard
example pairs a vector with its own dual.  Adding the partial trace repairs
this, and the sum can be written explicitly as a sum of squares of
decomposable linear forms.
"""

import numpy as np

from orbijet.positivity import (
    HermitianTensor,
    griffiths_minimum,
    is_nakano_semipositive,
    reconstruction_error,
    strong_decomposition,
    tautological_example,
    trace_E,
)

theta = tautological_example(3)
value, xi, u = griffiths_minimum(theta, rng=np.random.default_rng(0))
print(f"Griffiths minimum: {abs(value):.1e}")
print("Nakano semipositive:", is_nakano_semipositive(theta))

# theta + Tr_E(theta) (x) h is a sum of |alpha (x) psi|^2
target = theta + HermitianTensor.product(trace_E(theta), np.eye(3))
factors = strong_decomposition(theta)
print(len(factors), "rank-one factors, relative error", reconstruction_error(factors, target))

# <theta(u), u> has rank one, so its wedge square vanishes
Q = theta.form_at_u(u)
print("eigenvalues of <theta(u), u>:", np.round(np.linalg.eigvalsh(Q), 12))
