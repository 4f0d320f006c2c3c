"""paramkit: exact parameter tests, limit closures and Koszul data
over explicit quotient rings, with an HTTP service and CLI front end."""

__version__ = "0.1.0"

from .errors import ParamkitError
from .parser import make_ring, parse_poly
from .polyring import FieldSpec, MonomialOrder, Polynomial, RingPresentation

__all__ = [
    "ParamkitError",
    "make_ring",
    "parse_poly",
    "FieldSpec",
    "MonomialOrder",
    "Polynomial",
    "RingPresentation",
    "__version__",
]
