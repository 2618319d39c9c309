"""Exact computations with finite-dimensional commutative algebras.

Kahler differentials, torsion brackets and low-degree Hochschild homology
over Q and F_p, plus a small script language to drive them.
"""

from .linalg import Field, Matrix, Subspace
from .algebra import (
    Algebra,
    Hom,
    Ideal,
    make_hom,
    product,
    quotient_by_ideal,
    quotient_presentation,
    subalgebra_generated,
    truncated_poly,
)
from .differentials import induced_map, kaehler
from .torsion import tau_bracket
from .hochschild import hh, hh_relative

__version__ = "0.1.0"

__all__ = [
    "Field", "Matrix", "Subspace", "Algebra", "Hom", "Ideal", "make_hom",
    "product", "quotient_by_ideal", "quotient_presentation",
    "subalgebra_generated", "truncated_poly", "induced_map", "kaehler",
    "tau_bracket", "hh", "hh_relative",
]
