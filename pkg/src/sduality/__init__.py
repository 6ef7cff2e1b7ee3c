"""Exact canonical self-duality of B = k[x_1..x_n]/(f_1..f_n)."""

from .algebra import (
    AlgebraElement,
    HypothesisError,
    NotFiniteError,
    NotSquareError,
    QuotientAlgebra,
    TensorElement,
    build_algebra,
)
from .duality import (
    DualityData,
    DualityFailure,
    compute_duality,
    full_identity_suite,
    theta_linearity_check,
    verify_ideal_identities,
)
from .forms import BilinearForm, FormInvariants, diagonalize, invariants
from .groebner import buchberger
from .polyring import GREVLEX, LEX, PolyRing, Polynomial, parse_poly
from .scalar import GF, QQ, field_from_descriptor

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "BilinearForm", "DualityData", "DualityFailure", "FormInvariants",
    "GF", "GREVLEX", "HypothesisError", "LEX", "NotFiniteError", "NotSquareError",
    "PolyRing", "Polynomial", "QQ", "QuotientAlgebra", "TensorElement", "buchberger",
    "build_algebra", "compute_duality", "diagonalize", "field_from_descriptor",
    "full_identity_suite", "invariants", "parse_poly", "theta_linearity_check", "verify_ideal_identities",
]
