"""Analytic field and potential laws on flat space, S^2 and S^3, and charge bookkeeping.

Magnitudes are signed along the outward radial direction from the
north-pole charge (r-hat in flat space, theta-hat on S^2, chi-hat on S^3).
All functions broadcast over ``r``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import NonNeutralizable, PoleSingularity, ZeroDistance
from .geometry.chart import DOMAIN_MARGIN, get_chart

__all__ = [
    "PointCharge",
    "ChargeSystem",
    "FieldSample",
    "assert_neutral",
    "charge_for_scale",
    "field_flat_2d",
    "field_flat_3d",
    "field_sphere2",
    "field_sphere3",
    "potential_sphere2",
    "sample_field",
]


def _scalar_or_array(x):
    x = np.asarray(x, dtype=float)
    return float(x) if x.ndim == 0 else x


def charge_for_scale(scale: float, dim: int, epsilon0: float = 1.0) -> float:
    """Charge q whose Coulomb prefactor equals ``scale``.

    ``dim=2``: q / (2 pi eps0) = scale; ``dim=3``: q / (4 pi eps0) = scale.
    """
    if dim == 2:
        return scale * 2.0 * math.pi * epsilon0
    if dim == 3:
        return scale * 4.0 * math.pi * epsilon0
    raise ValueError(f"dim must be 2 or 3, got {dim}")


def _check_flat(r):
    r = np.asarray(r, dtype=float)
    if np.any(r <= 0):
        raise ZeroDistance("field point coincides with the charge (r <= 0)")
    return r


def _check_sphere(r, R, margin):
    r = np.asarray(r, dtype=float)
    if not R > 0:
        raise ValueError(f"R must be positive, got {R!r}")
    x = r / R
    if np.any(x < margin) or np.any(x > math.pi - margin):
        raise PoleSingularity(
            f"geodesic radius within {margin:g} rad of a pole (r/R must lie in [{margin:g}, pi - {margin:g}])"
        )
    return x


def field_flat_2d(q, r, epsilon0: float = 1.0):
    r = _check_flat(r)
    return _scalar_or_array(q / (2.0 * math.pi * epsilon0 * r))


def field_flat_3d(q, r, epsilon0: float = 1.0):
    r = _check_flat(r)
    return _scalar_or_array(q / (4.0 * math.pi * epsilon0 * r * r))


def field_sphere2(q, r, R, epsilon0: float = 1.0, margin: float = DOMAIN_MARGIN):
    """q / (2 pi eps0 R sin(r/R)) for the +q/-q pole pair on a 2-sphere."""
    x = _check_sphere(r, R, margin)
    return _scalar_or_array(q / (2.0 * math.pi * epsilon0 * R * np.sin(x)))


def field_sphere3(q, r, R, epsilon0: float = 1.0, margin: float = DOMAIN_MARGIN):
    """q / (4 pi eps0 R^2 sin^2(r/R)) for the +q/-q pole pair on a 3-sphere."""
    x = _check_sphere(r, R, margin)
    return _scalar_or_array(q / (4.0 * math.pi * epsilon0 * R * R * np.sin(x) ** 2))


def potential_sphere2(q, r, R, epsilon0: float = 1.0, margin: float = DOMAIN_MARGIN):
    """Zero-mean potential of the S^2 pole pair: -(q / 2 pi eps0) ln tan(r / 2R)."""
    x = _check_sphere(r, R, margin)
    return _scalar_or_array(-q / (2.0 * math.pi * epsilon0) * np.log(np.tan(0.5 * x)))


# ---------------------------------------------------------------------------
# charges

_POLES = ("north", "south")


@dataclass(frozen=True)
class PointCharge:
    q: float
    pole: str = "north"
    chart_id: str = "sphere2:1"
    epsilon0: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.q) and self.q != 0.0):
            raise ValueError(f"charge must be finite and nonzero, got {self.q!r}")
        if self.pole not in _POLES:
            raise ValueError(f"pole must be 'north' or 'south', got {self.pole!r}")
        get_chart(self.chart_id)

    @property
    def antipode(self) -> str:
        return "south" if self.pole == "north" else "north"


@dataclass(frozen=True)
class ChargeSystem:
    """Charges on one chart; ``implied_images`` are filled in by :func:`assert_neutral`."""

    charges: tuple = ()
    implied_images: tuple = ()
    chart_id: str = "sphere2:1"

    def __post_init__(self):
        object.__setattr__(self, "charges", tuple(self.charges))
        object.__setattr__(self, "implied_images", tuple(self.implied_images))
        for c in self.all_charges():
            if c.chart_id != self.chart_id:
                raise ValueError(f"charge on {c.chart_id!r} in a system on {self.chart_id!r}")

    def all_charges(self):
        return self.charges + self.implied_images

    def pole_total(self, pole: str) -> float:
        return math.fsum(c.q for c in self.all_charges() if c.pole == pole)

    @property
    def total_charge(self) -> float:
        return self.pole_total("north") + self.pole_total("south")


def assert_neutral(system: ChargeSystem, rel_tol: float = 1e-12) -> ChargeSystem:
    """Complete ``system`` with antipodal images so that its total charge is zero.

    A pole that carries no declared charge receives the opposite of the
    other pole's total. When both poles are declared their totals must
    already cancel (to ``rel_tol``), otherwise NonNeutralizable.
    """
    chart = get_chart(system.chart_id)
    if not chart.closed:
        raise ValueError(f"{system.chart_id} is not a closed chart; there are no antipodal images")
    declared = {p: [c for c in system.charges if c.pole == p] for p in _POLES}
    totals = {p: math.fsum(c.q for c in declared[p]) for p in _POLES}
    if declared["north"] and declared["south"]:
        scale = max(abs(c.q) for c in system.charges)
        if abs(totals["north"] + totals["south"]) > rel_tol * scale:
            raise NonNeutralizable(
                f"declared pole totals {totals['north']!r} (north) and {totals['south']!r} (south) "
                "do not cancel; the antipodal images would conflict"
            )
        return ChargeSystem(system.charges, (), system.chart_id)
    images = []
    for p in _POLES:
        if declared[p]:
            eps0 = declared[p][0].epsilon0
            images.append(PointCharge(-totals[p], "south" if p == "north" else "north", system.chart_id, eps0))
    return ChargeSystem(system.charges, tuple(images), system.chart_id)


# ---------------------------------------------------------------------------
# samples

_DIRECTION = {"flat2": "r_hat", "flat3": "r_hat", "sphere2": "theta_hat", "sphere3": "chi_hat"}


@dataclass(frozen=True)
class FieldSample:
    r: float
    magnitude: float
    direction: str
    chart_id: str


def sample_field(chart_id: str, q: float, radii: Iterable[float], epsilon0: float = 1.0) -> list:
    """Evaluate the built-in law that applies to ``chart_id`` on a list of radii."""
    kind, _, arg = chart_id.partition(":")
    r = np.asarray(list(radii), dtype=float)
    if kind == "flat2":
        mag = field_flat_2d(q, r, epsilon0)
    elif kind == "flat3":
        mag = field_flat_3d(q, r, epsilon0)
    elif kind in ("sphere2", "sphere3"):
        R = get_chart(chart_id).params["R"]
        law = field_sphere2 if kind == "sphere2" else field_sphere3
        mag = law(q, r, R, epsilon0)
    else:
        raise ValueError(f"no field law for chart {chart_id!r}")
    mag = np.atleast_1d(mag)
    return [FieldSample(float(a), float(b), _DIRECTION[kind], chart_id) for a, b in zip(r, mag)]
