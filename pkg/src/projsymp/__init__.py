"""Exact and numerical verification of the residue symplectic form on
projective structures of a genus-2 curve, with a character-variety
counterpart computed by Fox calculus."""

__version__ = "0.1.0"

from .errors import ProjSympError  # noqa: F401
from .exact import LaurentSeries, Polynomial, RationalFunction, RationalMatrix  # noqa: F401
from .riemann import Curve, PointSpec, Section  # noqa: F401
