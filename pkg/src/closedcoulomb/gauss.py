"""Gauss's-law flux quadrature over latitude circles (S^2) and constant-chi shells (S^3).

The normal points toward increasing theta / chi, away from the north-pole
charge, so the expected flux is that charge over eps0 whichever side of
the equator the contour sits on.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import BadContour
from .fields import field_flat_2d, field_flat_3d, field_sphere2, field_sphere3
from .geometry.chart import DOMAIN_MARGIN, get_chart

RadialField = Callable[[np.ndarray], np.ndarray]

DEFAULT_NODES = 64


@dataclass(frozen=True)
class FluxResult:
    enclosed_label: str
    contour_parameter: float
    measure: float
    flux: float
    expected: float

    @property
    def deviation(self) -> float:
        return self.flux - self.expected

    @property
    def relative_deviation(self) -> float:
        return abs(self.deviation) / abs(self.expected) if self.expected else abs(self.deviation)


def _check_angle(name, value, margin):
    if not (margin < value < math.pi - margin):
        raise BadContour(f"{name} = {value!r} lies within {margin:g} of a pole")


def _trapezoid_circle(n: int):
    # periodic trapezoid rule: equal weights, spectrally accurate for smooth periodic data
    if n < 1:
        raise BadContour(f"need at least one node, got {n}")
    phi = 2.0 * math.pi * np.arange(n) / n
    return phi, np.full(n, 2.0 * math.pi / n)


def _gauss_legendre_polar(n: int):
    if n < 1:
        raise BadContour(f"need at least one node, got {n}")
    x, w = np.polynomial.legendre.leggauss(n)
    theta = 0.5 * math.pi * (x + 1.0)
    return theta, 0.5 * math.pi * w


def _circle_flux(field_values: np.ndarray, radius: float, n_nodes: int):
    _, w = _trapezoid_circle(n_nodes)
    dl = radius * w
    return float(np.sum(field_values * dl)), float(np.sum(dl))


def _shell_flux(field_values, shell_radius: float, n_theta: int, n_phi: int):
    theta, wt = _gauss_legendre_polar(n_theta)
    _, wp = _trapezoid_circle(n_phi)
    dA = shell_radius**2 * np.outer(np.sin(theta) * wt, wp)
    return float(np.sum(field_values * dA)), float(np.sum(dA))


def flux_latitude_s2(
    field: RadialField,
    q: float,
    R: float,
    theta0: float,
    n_nodes: int = DEFAULT_NODES,
    epsilon0: float = 1.0,
    margin: float = DOMAIN_MARGIN,
) -> FluxResult:
    """Flux of a geodesic-radial field through the latitude circle theta = theta0."""
    _check_angle("theta0", theta0, margin)
    _trapezoid_circle(n_nodes)
    values = np.broadcast_to(np.asarray(field(np.full(n_nodes, R * theta0)), dtype=float), (n_nodes,))
    flux, measure = _circle_flux(values, R * math.sin(theta0), n_nodes)
    return FluxResult("north", theta0, measure, flux, q / epsilon0)


def flux_shell_s3(
    field: RadialField,
    q: float,
    R: float,
    chi0: float,
    n_theta: int = DEFAULT_NODES,
    n_phi: int = DEFAULT_NODES,
    epsilon0: float = 1.0,
    margin: float = DOMAIN_MARGIN,
) -> FluxResult:
    """Flux through the 2-sphere chi = chi0, area element R^2 sin^2 chi0 sin theta dtheta dphi."""
    _check_angle("chi0", chi0, margin)
    shape = (n_theta, n_phi)
    _gauss_legendre_polar(n_theta)
    _trapezoid_circle(n_phi)
    values = np.broadcast_to(np.asarray(field(np.full(shape, R * chi0)), dtype=float), shape)
    flux, measure = _shell_flux(values, R * math.sin(chi0), n_theta, n_phi)
    return FluxResult("north", chi0, measure, flux, q / epsilon0)


def flux_circle_flat(field: RadialField, q, r, n_nodes=DEFAULT_NODES, epsilon0=1.0) -> FluxResult:
    if not r > 0:
        raise BadContour(f"radius must be positive, got {r!r}")
    values = np.broadcast_to(np.asarray(field(np.full(n_nodes, r)), dtype=float), (n_nodes,))
    flux, measure = _circle_flux(values, r, n_nodes)
    return FluxResult("origin", r, measure, flux, q / epsilon0)


def flux_sphere_flat(field: RadialField, q, r, n_theta=DEFAULT_NODES, n_phi=DEFAULT_NODES, epsilon0=1.0):
    if not r > 0:
        raise BadContour(f"radius must be positive, got {r!r}")
    shape = (n_theta, n_phi)
    values = np.broadcast_to(np.asarray(field(np.full(shape, r)), dtype=float), shape)
    flux, measure = _shell_flux(values, r, n_theta, n_phi)
    return FluxResult("origin", r, measure, flux, q / epsilon0)


@dataclass(frozen=True)
class ScanReport:
    chart: str
    results: tuple = ()

    @property
    def max_abs_deviation(self) -> float:
        return max((abs(r.deviation) for r in self.results), default=0.0)

    @property
    def max_rel_deviation(self) -> float:
        return max((r.relative_deviation for r in self.results), default=0.0)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["parameter", "measure", "flux", "expected", "deviation"])
        for r in self.results:
            w.writerow([f"{v:.12g}" for v in (r.contour_parameter, r.measure, r.flux, r.expected, r.deviation)])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"flux scan on {self.chart}: {len(self.results)} contours"]
        for r in self.results:
            lines.append(
                f"  param={r.contour_parameter:.6f}  measure={r.measure:.9g}  "
                f"flux={r.flux:.12g}  deviation={r.deviation:+.3e}"
            )
        lines.append(f"max_abs_deviation = {self.max_abs_deviation:.3e}")
        lines.append(f"max_rel_deviation = {self.max_rel_deviation:.3e}")
        return "\n".join(lines) + "\n"


def flux_invariance_scan(
    chart: str,
    q: float,
    R: float | None = None,
    parameters: Sequence[float] = (),
    epsilon0: float = 1.0,
    n_nodes: int = DEFAULT_NODES,
) -> ScanReport:
    """Flux of the analytic field through each contour in ``parameters``.

    ``chart`` is ``sphere2``, ``sphere3``, ``flat2`` or ``flat3``, optionally
    with a radius suffix (``sphere2:3``) that is used when ``R`` is None.
    Sphere parameters are theta0 / chi0; flat parameters are radii.
    """
    kind, _, arg = chart.partition(":")
    if kind in ("sphere2", "sphere3"):
        if R is None:
            if not arg:
                raise ValueError(f"{chart}: radius missing")
            R = get_chart(chart).params["R"]
    results = []
    for p in parameters:
        p = float(p)
        if kind == "sphere2":
            res = flux_latitude_s2(lambda r: field_sphere2(q, r, R, epsilon0), q, R, p, n_nodes, epsilon0)
        elif kind == "sphere3":
            res = flux_shell_s3(lambda r: field_sphere3(q, r, R, epsilon0), q, R, p, n_nodes, n_nodes, epsilon0)
        elif kind == "flat2":
            res = flux_circle_flat(lambda r: field_flat_2d(q, r, epsilon0), q, p, n_nodes, epsilon0)
        elif kind == "flat3":
            res = flux_sphere_flat(lambda r: field_flat_3d(q, r, epsilon0), q, p, n_nodes, n_nodes, epsilon0)
        else:
            raise ValueError(f"no flux scan for chart {chart!r}")
        results.append(res)
    label = f"{kind}:{R:g}" if kind.startswith("sphere") else kind
    return ScanReport(label, tuple(results))
