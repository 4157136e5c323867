"""Exact computer algebra for knot differential graded algebras.

Braid words act on a free noncommutative algebra; the package builds the
resulting DGAs over Z[la^, mu^, U^], verifies d^2 = 0, counts and
enumerates finite-field augmentations, computes linearized homology via
Smith normal form, and eliminates chord variables to produce augmentation
polynomials.
"""

__version__ = "0.1.0"

from .braid import BraidWord, parse_braid
from .dga import DGA, build_dga, check_d_squared, specialize
from .errors import DomainError, KchError, ResourceRefused

__all__ = [
    "BraidWord",
    "DGA",
    "DomainError",
    "KchError",
    "ResourceRefused",
    "__version__",
    "build_dga",
    "check_d_squared",
    "parse_braid",
    "specialize",
]
