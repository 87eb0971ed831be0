"""Coordinate charts: metric evaluators with validity boxes, plus the built-in registry."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from ..errors import OutOfDomain, SingularMetric

#: Margin (radians, or chart units) kept away from coordinate singularities.
DOMAIN_MARGIN = 1e-3
#: Determinant threshold below which a metric is treated as singular.
SINGULAR_DET = 1e-14

MetricFn = Callable[[np.ndarray], np.ndarray]


def _symmetric_from_upper(m: np.ndarray) -> np.ndarray:
    # mirror the upper triangle over the first two axes; exact symmetry by construction
    m = np.asarray(m, dtype=float)
    d = m.shape[0]
    out = np.array(m, copy=True)
    for i in range(d):
        for j in range(i):
            out[i, j] = m[j, i]
    return out


@dataclass(frozen=True)
class MetricChart:
    """A coordinate chart with its metric.

    ``domain`` holds one open interval per coordinate; infinite bounds are
    allowed (e.g. for azimuths, which are periodic and never singular).
    Singular ends get ``margin`` added to them: the usable box is
    ``(lo + margin, hi - margin)`` for finite ``lo``/``hi``.

    ``dg`` and ``d2g``, when given, return ``dg[i, j, k] = d_k g_ij`` and
    ``d2g[i, j, k, l] = d_k d_l g_ij``; they take precedence over finite
    differences.
    """

    chart_id: str
    coord_names: tuple
    domain: tuple
    g: MetricFn
    dg: Optional[MetricFn] = None
    d2g: Optional[MetricFn] = None
    signature: tuple = ()
    margin: float = DOMAIN_MARGIN
    closed: bool = False
    exact_ricci_scalar: Optional[float] = None
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if len(self.coord_names) != len(self.domain):
            raise ValueError("coord_names and domain must have the same length")
        if len(self.coord_names) < 1:
            raise ValueError("a chart needs at least one coordinate")
        if not self.signature:
            object.__setattr__(self, "signature", (1,) * len(self.coord_names))
        if len(self.signature) != self.dimension or any(s not in (1, -1) for s in self.signature):
            raise ValueError(f"bad signature {self.signature!r}")

    @property
    def dimension(self) -> int:
        return len(self.coord_names)

    def bounds(self):
        """Usable (lo, hi) per coordinate, margins applied."""
        out = []
        for lo, hi in self.domain:
            lo = lo + self.margin if np.isfinite(lo) else lo
            hi = hi - self.margin if np.isfinite(hi) else hi
            out.append((lo, hi))
        return out

    def contains(self, point) -> bool:
        p = np.asarray(point, dtype=float)
        if p.shape != (self.dimension,) or not np.all(np.isfinite(p)):
            return False
        return all(lo < x < hi for x, (lo, hi) in zip(p, self.bounds()))

    def check_point(self, point) -> np.ndarray:
        p = np.asarray(point, dtype=float)
        if p.shape != (self.dimension,):
            raise OutOfDomain(
                f"{self.chart_id}: expected {self.dimension} coordinates, got shape {p.shape}"
            )
        if not self.contains(p):
            raise OutOfDomain(f"{self.chart_id}: point {p.tolist()} outside {self.bounds()}")
        return p

    def without_derivatives(self) -> "MetricChart":
        """Same chart with the analytic derivatives dropped (forces finite differences)."""
        return dataclasses.replace(self, dg=None, d2g=None)

    def sample_interior(self, rng: np.random.Generator, n: int, inset: float = 0.1, span: float = 5.0):
        """Uniform random points kept ``inset`` away from every finite boundary.

        Infinite sides are truncated at ``+-span`` (or ``lo + span``).
        """
        cols = []
        for lo, hi in self.domain:
            a = lo + inset if np.isfinite(lo) else -span
            b = hi - inset if np.isfinite(hi) else (a + span if np.isfinite(lo) else span)
            cols.append(rng.uniform(a, b, size=n))
        return np.stack(cols, axis=1)


def metric_at(chart: MetricChart, point) -> np.ndarray:
    p = chart.check_point(point)
    return _symmetric_from_upper(chart.g(p))


def inverse_metric_at(chart: MetricChart, point) -> np.ndarray:
    g = metric_at(chart, point)
    det = np.linalg.det(g)
    if abs(det) < SINGULAR_DET:
        raise SingularMetric(f"{chart.chart_id}: det g = {det:.3e} at {np.asarray(point).tolist()}")
    ginv = np.linalg.inv(g)
    return 0.5 * (ginv + ginv.T)


def pullback_metric(chart: MetricChart, point_map, jacobian, point) -> np.ndarray:
    """Metric of ``chart`` expressed in new coordinates ``u``.

    ``point_map(u)`` gives the chart coordinates and ``jacobian(u)`` the
    matrix ``dx^a / du^i``. Returns ``J^T g(x(u)) J``.
    """
    u = np.asarray(point, dtype=float)
    J = np.asarray(jacobian(u), dtype=float)
    g = metric_at(chart, point_map(u))
    return J.T @ g @ J


# ---------------------------------------------------------------------------
# built-in charts

_INF = np.inf


def flat_chart(d: int) -> MetricChart:
    eye = np.eye(d)
    names = ("x", "y", "z", "w")[:d] if d <= 4 else tuple(f"x{i}" for i in range(d))
    return MetricChart(
        chart_id=f"flat{d}",
        coord_names=names,
        domain=((-_INF, _INF),) * d,
        g=lambda p: eye.copy(),
        dg=lambda p: np.zeros((d, d, d)),
        d2g=lambda p: np.zeros((d, d, d, d)),
        exact_ricci_scalar=0.0,
    )


def polar3_chart() -> MetricChart:
    """Flat 3-space in spherical coordinates (r, theta, phi)."""

    def g(p):
        r, th, _ = p
        return np.diag([1.0, r * r, (r * np.sin(th)) ** 2])

    def dg(p):
        r, th, _ = p
        s, c = np.sin(th), np.cos(th)
        out = np.zeros((3, 3, 3))
        out[1, 1, 0] = 2 * r
        out[2, 2, 0] = 2 * r * s * s
        out[2, 2, 1] = 2 * r * r * s * c
        return out

    def d2g(p):
        r, th, _ = p
        s, c = np.sin(th), np.cos(th)
        out = np.zeros((3, 3, 3, 3))
        out[1, 1, 0, 0] = 2.0
        out[2, 2, 0, 0] = 2 * s * s
        out[2, 2, 0, 1] = out[2, 2, 1, 0] = 4 * r * s * c
        out[2, 2, 1, 1] = 2 * r * r * np.cos(2 * th)
        return out

    return MetricChart(
        chart_id="polar3",
        coord_names=("r", "theta", "phi"),
        domain=((0.0, _INF), (0.0, np.pi), (-_INF, _INF)),
        g=g,
        dg=dg,
        d2g=d2g,
        exact_ricci_scalar=0.0,
    )


def sphere2_chart(R: float) -> MetricChart:
    """2-sphere of radius R, coordinates (theta, phi): g = R^2 diag(1, sin^2 theta)."""
    R = _positive_radius(R)
    R2 = R * R

    def g(p):
        th = p[0]
        return np.array([[R2, 0.0], [0.0, R2 * np.sin(th) ** 2]])

    def dg(p):
        out = np.zeros((2, 2, 2))
        out[1, 1, 0] = R2 * np.sin(2 * p[0])
        return out

    def d2g(p):
        out = np.zeros((2, 2, 2, 2))
        out[1, 1, 0, 0] = 2 * R2 * np.cos(2 * p[0])
        return out

    return MetricChart(
        chart_id=f"sphere2:{R:g}",
        coord_names=("theta", "phi"),
        domain=((0.0, np.pi), (-_INF, _INF)),
        g=g,
        dg=dg,
        d2g=d2g,
        closed=True,
        exact_ricci_scalar=2.0 / R2,
        params={"R": R},
    )


def sphere3_chart(R: float) -> MetricChart:
    """3-sphere of radius R, coordinates (chi, theta, phi)."""
    R = _positive_radius(R)
    R2 = R * R

    def g(p):
        chi, th, _ = p
        sc2 = np.sin(chi) ** 2
        return R2 * np.diag([1.0, sc2, sc2 * np.sin(th) ** 2])

    def dg(p):
        chi, th, _ = p
        sc, st = np.sin(chi), np.sin(th)
        out = np.zeros((3, 3, 3))
        out[1, 1, 0] = R2 * np.sin(2 * chi)
        out[2, 2, 0] = R2 * np.sin(2 * chi) * st * st
        out[2, 2, 1] = R2 * sc * sc * np.sin(2 * th)
        return out

    def d2g(p):
        chi, th, _ = p
        sc, st = np.sin(chi), np.sin(th)
        out = np.zeros((3, 3, 3, 3))
        out[1, 1, 0, 0] = 2 * R2 * np.cos(2 * chi)
        out[2, 2, 0, 0] = 2 * R2 * np.cos(2 * chi) * st * st
        out[2, 2, 0, 1] = out[2, 2, 1, 0] = R2 * np.sin(2 * chi) * np.sin(2 * th)
        out[2, 2, 1, 1] = 2 * R2 * sc * sc * np.cos(2 * th)
        return out

    return MetricChart(
        chart_id=f"sphere3:{R:g}",
        coord_names=("chi", "theta", "phi"),
        domain=((0.0, np.pi), (0.0, np.pi), (-_INF, _INF)),
        g=g,
        dg=dg,
        d2g=d2g,
        closed=True,
        exact_ricci_scalar=6.0 / R2,
        params={"R": R},
    )


def frw_chart(R: float, k: int) -> MetricChart:
    """Spatial slice of the FRW metric at frozen scale factor R.

    Coordinates (r'', theta, phi) with
    g = R^2 diag(1 / (1 - k r''^2), r''^2, r''^2 sin^2 theta).
    For k = +1 this is the 3-sphere written in reduced radius.
    """
    R = _positive_radius(R)
    if k not in (-1, 0, 1):
        raise ValueError(f"k must be -1, 0 or +1, got {k!r}")
    R2 = R * R

    def g(p):
        x, th, _ = p
        return R2 * np.diag([1.0 / (1.0 - k * x * x), x * x, (x * np.sin(th)) ** 2])

    def dg(p):
        x, th, _ = p
        st = np.sin(th)
        out = np.zeros((3, 3, 3))
        out[0, 0, 0] = R2 * 2 * k * x / (1.0 - k * x * x) ** 2
        out[1, 1, 0] = R2 * 2 * x
        out[2, 2, 0] = R2 * 2 * x * st * st
        out[2, 2, 1] = R2 * x * x * np.sin(2 * th)
        return out

    def d2g(p):
        x, th, _ = p
        st = np.sin(th)
        a = 1.0 - k * x * x
        out = np.zeros((3, 3, 3, 3))
        out[0, 0, 0, 0] = R2 * (2 * k / a**2 + 8 * k * k * x * x / a**3)
        out[1, 1, 0, 0] = 2 * R2
        out[2, 2, 0, 0] = 2 * R2 * st * st
        out[2, 2, 0, 1] = out[2, 2, 1, 0] = 2 * R2 * x * np.sin(2 * th)
        out[2, 2, 1, 1] = 2 * R2 * x * x * np.cos(2 * th)
        return out

    return MetricChart(
        chart_id=f"frw:{R:g}:{k:+d}",
        coord_names=("r''", "theta", "phi"),
        domain=((0.0, 1.0 if k == 1 else _INF), (0.0, np.pi), (-_INF, _INF)),
        g=g,
        dg=dg,
        d2g=d2g,
        exact_ricci_scalar=6.0 * k / R2,
        params={"R": R, "k": k},
    )


def _positive_radius(R) -> float:
    R = float(R)
    if not (np.isfinite(R) and R > 0):
        raise ValueError(f"radius must be positive and finite, got {R!r}")
    return R


def _parse_float(text: str) -> float:
    if "/" in text:
        num, den = text.split("/", 1)
        return float(num) / float(den)
    return float(text)


def get_chart(chart_id: str) -> MetricChart:
    """Look up a built-in chart by id.

    Recognised ids: ``flat2``, ``flat3``, ``polar3``, ``sphere2:R``,
    ``sphere3:R``, ``frw:R:k``. Radii may be written as fractions (``1/2``).
    """
    parts = chart_id.strip().split(":")
    name, args = parts[0], parts[1:]
    try:
        if name in ("flat2", "flat3") and not args:
            return flat_chart(int(name[-1]))
        if name == "polar3" and not args:
            return polar3_chart()
        if name == "sphere2" and len(args) == 1:
            return sphere2_chart(_parse_float(args[0]))
        if name == "sphere3" and len(args) == 1:
            return sphere3_chart(_parse_float(args[0]))
        if name == "frw" and len(args) == 2:
            return frw_chart(_parse_float(args[0]), int(args[1]))
    except ValueError as exc:
        raise ValueError(f"bad chart id {chart_id!r}: {exc}") from None
    raise ValueError(f"unknown chart id {chart_id!r}")


BUILTIN_IDS: Sequence[str] = ("flat2", "flat3", "polar3", "sphere2:R", "sphere3:R", "frw:R:k")
