"""Exact computations for meromorphic flat bundles.

Submodules:

- :mod:`meroflat.algebra` and :mod:`meroflat.expr`: Laurent-Puiseux polynomials over Q
- :mod:`meroflat.goodness`: good sets of irregular values, bad loci, pullbacks
- :mod:`meroflat.partitions`: partitions, symmetric products, Lagrangian cycles
- :mod:`meroflat.covers`: spectral covers and Newton-Puiseux expansion
- :mod:`meroflat.connections`: formal models and Deligne-Malgrange lattices
- :mod:`meroflat.invariants`: parabolic degrees, Chern bookkeeping, slope bounds
- :mod:`meroflat.cli`: batch front end
"""
from .algebra import LaurentPuiseuxPoly, format_poly, rational
from .errors import DomainError, MeroflatError, ParseError, ResourceError
from .expr import parse

__version__ = "0.1.0"

__all__ = [
    "LaurentPuiseuxPoly", "format_poly", "rational", "parse",
    "MeroflatError", "DomainError", "ParseError", "ResourceError", "__version__",
]
