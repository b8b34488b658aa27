"""Exact computations for finite-dimensional Hom-preLie algebras.

Structure constants, axiom checks, low-degree homology with coefficients in a
Hom-co-representation, and universal (alpha-)central extensions, over the
rationals or a prime field.
"""

from .exactlin import GF, QQ, Matrix, QuotientSpace, Subspace, kernel_image, quotient_space, rref
from .algebra import HomPreLieAlgebra, Morphism, check_axioms, check_morphism, derived_subspaces
from .errors import HomPreLieError, InvariantViolation, MalformedInput, PreconditionFailed

__all__ = [
    "GF",
    "QQ",
    "HomPreLieAlgebra",
    "HomPreLieError",
    "InvariantViolation",
    "MalformedInput",
    "Matrix",
    "Morphism",
    "PreconditionFailed",
    "QuotientSpace",
    "Subspace",
    "check_axioms",
    "check_morphism",
    "derived_subspaces",
    "kernel_image",
    "quotient_space",
    "rref",
]

__version__ = "0.1.0"
