"""Curvature of metric charts and Coulomb's law on closed spherical spaces."""

from . import errors, fields, gauss, geodesy, geometry, poisson
from .errors import NonNeutralSource

__all__ = ["errors", "fields", "gauss", "geodesy", "geometry", "poisson", "NonNeutralSource"]
__version__ = "0.1.0"
