"""Exact mediated triangle transport over bounded complexes of rational vector spaces."""

from .cxcore import BoundedComplex, ChainMap, Triangle, cone, homology_dims, shift
from .errors import DimensionError, MTTError, ParseError, ValidationError, WiringError
from .homcx import LaurentPoly, hom_complex, poincare
from .mtt import (InheritedPackage, MTTDatum, StatePackage, graded_matrix,
                  inherited_package, interaction_polynomial)
from .ratlin import RatMatrix
from .transport import TransportKernel, apply, certify_exactness, compose

__version__ = "0.1.0"

__all__ = [
    "BoundedComplex", "ChainMap", "Triangle", "cone", "homology_dims", "shift",
    "DimensionError", "MTTError", "ParseError", "ValidationError", "WiringError",
    "LaurentPoly", "hom_complex", "poincare",
    "InheritedPackage", "MTTDatum", "StatePackage", "graded_matrix",
    "inherited_package", "interaction_polynomial",
    "RatMatrix", "TransportKernel", "apply", "certify_exactness", "compose",
]
