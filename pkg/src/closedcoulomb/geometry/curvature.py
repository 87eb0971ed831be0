"""Christoffel symbols, Riemann and Ricci tensors from a metric chart.

Index conventions (all arrays dense, row-major):

* ``gamma_first[i, j, k]``  = Gamma_{i,jk}
* ``gamma_second[i, j, k]`` = Gamma^i_{jk}
* ``riemann[i, j, k, l]``   = R^i_{jkl}
  = d_k Gamma^i_{lj} - d_l Gamma^i_{kj} + Gamma^m_{lj} Gamma^i_{km} - Gamma^m_{jk} Gamma^i_{lm}
* ``riemann_lowered[i, j, k, l]`` = g_{im} R^m_{jkl}
* ``ricci[i, j]`` = R^k_{ikj}, so a sphere has positive scalar curvature.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import DimensionMismatch
from .chart import MetricChart, inverse_metric_at, metric_at
from .derivatives import DEFAULT_STEP, DEFAULT_STEP2, partials_of_metric, second_partials_of_metric


def _first_kind(dg: np.ndarray) -> np.ndarray:
    # Gamma_{i,jk} = 1/2 (d_k g_ij + d_j g_ki - d_i g_jk), dg[a, b, c] = d_c g_ab
    return 0.5 * (dg + np.einsum("kij->ijk", dg) - np.einsum("jki->ijk", dg))


def christoffel_first(chart: MetricChart, point, step: float = DEFAULT_STEP) -> np.ndarray:
    return _first_kind(partials_of_metric(chart, point, step))


def christoffel_second(chart: MetricChart, point, step: float = DEFAULT_STEP) -> np.ndarray:
    ginv = inverse_metric_at(chart, point)
    return np.einsum("il,ljk->ijk", ginv, christoffel_first(chart, point, step))


@dataclass(frozen=True)
class CurvatureReport:
    chart_id: str
    point: np.ndarray
    metric: np.ndarray
    inverse_metric: np.ndarray
    gamma_first: np.ndarray
    gamma_second: np.ndarray
    riemann: np.ndarray
    riemann_lowered: np.ndarray
    ricci: np.ndarray
    ricci_scalar: float
    independent_count: int

    @property
    def dimension(self) -> int:
        return self.metric.shape[0]

    @property
    def gauss_curvature(self) -> float:
        if self.dimension != 2:
            raise DimensionMismatch(f"Gauss curvature needs d = 2, chart has d = {self.dimension}")
        return 0.5 * self.ricci_scalar


def curvature_report(
    chart: MetricChart, point, step: float = DEFAULT_STEP, step2: float = DEFAULT_STEP2
) -> CurvatureReport:
    """Evaluate the whole curvature pipeline at one point."""
    p = chart.check_point(point)
    g = metric_at(chart, p)
    ginv = inverse_metric_at(chart, p)
    dg = partials_of_metric(chart, p, step)
    d2g = second_partials_of_metric(chart, p, step, step2)

    g1 = _first_kind(dg)
    g2 = np.einsum("il,ljk->ijk", ginv, g1)

    # d_m Gamma^i_{jk} = (d_m g^{il}) Gamma_{l,jk} + g^{il} d_m Gamma_{l,jk}
    dginv = -np.einsum("ia,abm,bl->ilm", ginv, dg, ginv)
    dg1 = 0.5 * (d2g + np.einsum("kijm->ijkm", d2g) - np.einsum("jkim->ijkm", d2g))
    dg2 = np.einsum("ilm,ljk->ijkm", dginv, g1) + np.einsum("il,ljkm->ijkm", ginv, dg1)

    riem = (
        np.einsum("iljk->ijkl", dg2)
        - np.einsum("ikjl->ijkl", dg2)
        + np.einsum("mlj,ikm->ijkl", g2, g2)
        - np.einsum("mjk,ilm->ijkl", g2, g2)
    )
    lowered = np.einsum("im,mjkl->ijkl", g, riem)
    ricci = np.einsum("kikj->ij", riem)
    scalar = float(np.einsum("ij,ij->", ginv, ricci))
    return CurvatureReport(
        chart_id=chart.chart_id,
        point=p,
        metric=g,
        inverse_metric=ginv,
        gamma_first=g1,
        gamma_second=g2,
        riemann=riem,
        riemann_lowered=lowered,
        ricci=ricci,
        ricci_scalar=scalar,
        independent_count=independent_component_count(chart.dimension),
    )


def riemann(chart: MetricChart, point, **kw):
    """Mixed and fully lowered Riemann tensors ``(R^i_{jkl}, R_{ijkl})``."""
    rep = curvature_report(chart, point, **kw)
    return rep.riemann, rep.riemann_lowered


def ricci_tensor(chart: MetricChart, point, **kw) -> np.ndarray:
    return curvature_report(chart, point, **kw).ricci


def ricci_scalar(chart: MetricChart, point, **kw) -> float:
    return curvature_report(chart, point, **kw).ricci_scalar


def gauss_curvature(chart: MetricChart, point, **kw) -> float:
    if chart.dimension != 2:
        raise DimensionMismatch(f"Gauss curvature needs d = 2, {chart.chart_id} has d = {chart.dimension}")
    return curvature_report(chart, point, **kw).gauss_curvature


def independent_component_count(d: int) -> int:
    """Number of algebraically independent Riemann components in d dimensions."""
    d = int(d)
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    return d * d * (d * d - 1) // 12
