"""Exact evaluation of orbifold jet-differential existence criteria.

Submodules:

* :mod:`orbijet.jetcombi` -- weighted partitions, graded dimensions, admissible monomials
* :mod:`orbijet.moments` -- sphere and simplex moments, samplers
* :mod:`orbijet.positivity` -- Hermitian curvature tensors, Griffiths/Nakano/strong positivity
* :mod:`orbijet.chernwedge` -- mixed discriminants and the Morse symmetric-function kernel
* :mod:`orbijet.criteria` -- the existence criteria in exact rational arithmetic
* :mod:`orbijet.mcverify` -- Monte-Carlo and exact verification harness
* :mod:`orbijet.cli` -- the ``orbijet`` command
"""

__version__ = "0.1.0"

from .criteria import CriterionReport, OrbifoldSpec, cn  # noqa: E402
from .positivity import HermitianTensor, RankOneFactor  # noqa: E402

__all__ = ["__version__", "CriterionReport", "OrbifoldSpec", "cn", "HermitianTensor", "RankOneFactor"]
