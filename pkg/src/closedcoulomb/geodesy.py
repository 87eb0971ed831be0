"""Conversions between intrinsic angles, embedding coordinates and radii on S^2 and S^3.

Field laws key on the geodesic radius ``r``. The reduced radius
``r' = R sin(r / R)`` folds back past the equator, so it is never used to
locate a point on the far hemisphere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadAngle, OutOfRange

TWO_PI = 2.0 * math.pi


def normalize_angles(theta: float, phi: float) -> tuple:
    """Canonical (theta, phi) with theta in [0, pi] and phi in [0, 2 pi).

    A polar angle outside [0, pi] is reflected through the pole, which
    shifts the azimuth by pi.
    """
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise BadAngle(f"non-finite angle ({theta!r}, {phi!r})")
    theta = math.fmod(theta, TWO_PI)
    if theta < 0:
        theta += TWO_PI
    if theta > math.pi:
        theta = TWO_PI - theta
        phi += math.pi
    phi = math.fmod(phi, TWO_PI)
    if phi < 0:
        phi += TWO_PI
    if phi >= TWO_PI:
        phi = 0.0
    return theta, phi


@dataclass(frozen=True)
class EmbeddingPoint:
    """Point of S^2 (x, y, z) or S^3 (x, y, z, tau) in its Euclidean embedding."""

    coords: tuple
    R: float

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=float)
        if c.shape not in ((3,), (4,)):
            raise ValueError(f"embedding needs 3 or 4 coordinates, got {c.shape}")
        if abs(float(c @ c) - self.R**2) > 1e-12 * self.R**2:
            raise ValueError(f"point {c.tolist()} is not on the sphere of radius {self.R}")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coords, dtype=float)


@dataclass(frozen=True)
class RadialCoordinates:
    r: float
    r_prime: float
    r_dprime: float
    chi: float

    @classmethod
    def from_geodesic(cls, r: float, R: float) -> "RadialCoordinates":
        rp = reduced_from_geodesic(r, R)
        return cls(r=float(r), r_prime=rp, r_dprime=rp / R, chi=float(r) / R)


def _check_polar(name: str, value: float):
    if not math.isfinite(value) or value < 0.0 or value > math.pi:
        raise BadAngle(f"{name} must lie in [0, pi], got {value!r}")


def embed_s2(theta: float, phi: float, R: float) -> EmbeddingPoint:
    _check_polar("theta", theta)
    if not math.isfinite(phi):
        raise BadAngle(f"phi must be finite, got {phi!r}")
    st = math.sin(theta)
    return EmbeddingPoint((R * st * math.cos(phi), R * st * math.sin(phi), R * math.cos(theta)), R)


def embed_s3(chi: float, theta: float, phi: float, R: float) -> EmbeddingPoint:
    """(chi, theta, phi) -> (x, y, z, tau) with tau = R cos chi along the pole axis."""
    if not (R > 0 and math.isfinite(R)):
        raise ValueError(f"R must be positive, got {R!r}")
    _check_polar("chi", chi)
    _check_polar("theta", theta)
    if not math.isfinite(phi):
        raise BadAngle(f"phi must be finite, got {phi!r}")
    sc, st = math.sin(chi), math.sin(theta)
    return EmbeddingPoint(
        (
            R * sc * st * math.cos(phi),
            R * sc * st * math.sin(phi),
            R * sc * math.cos(theta),
            R * math.cos(chi),
        ),
        R,
    )


def geodesic_from_reduced(r_prime, R):
    """Geodesic radius from reduced radius: ``R * arcsin(r' / R)``.

    Only the northern hemisphere is reachable; the result lies in [0, pi R / 2].
    """
    rp = np.asarray(r_prime, dtype=float)
    if np.any(rp < 0) or np.any(rp > R) or not np.all(np.isfinite(rp)):
        raise OutOfRange(f"reduced radius must lie in [0, R={R}], got {r_prime!r}")
    out = R * np.arcsin(rp / R)
    return float(out) if out.ndim == 0 else out


def reduced_from_geodesic(r, R):
    """``R * sin(r / R)`` for ``0 <= r <= pi R``; two-to-one past the equator."""
    ra = np.asarray(r, dtype=float)
    if np.any(ra < 0) or np.any(ra > math.pi * R) or not np.all(np.isfinite(ra)):
        raise OutOfRange(f"geodesic radius must lie in [0, pi R], got {r!r}")
    out = R * np.sin(ra / R)
    return float(out) if out.ndim == 0 else out


def great_circle_distance(p1, p2, R: float) -> float:
    """Arc length between two (theta, phi) points on a sphere of radius R.

    Evaluated as ``atan2(|u1 x u2|, u1 . u2)`` on unit vectors, which equals
    ``R * arccos(cos t1 cos t2 + sin t1 sin t2 cos(f1 - f2))`` but stays
    accurate for nearly coincident or antipodal points.
    """
    u1 = embed_s2(*normalize_angles(*p1), 1.0).as_array()
    u2 = embed_s2(*normalize_angles(*p2), 1.0).as_array()
    return R * math.atan2(float(np.linalg.norm(np.cross(u1, u2))), float(u1 @ u2))
