"""Finite-difference engine for metric derivatives.

First derivatives use the five-point central stencil (fourth order); the
stencil reaches ``2 * step`` from the evaluation point. Second derivatives
are nested first differences. Analytic derivatives registered on the chart
always win.
"""

from __future__ import annotations

import numpy as np

from ..errors import StepTooLarge
from .chart import MetricChart, _symmetric_from_upper, metric_at

DEFAULT_STEP = 1e-4
DEFAULT_STEP2 = 1e-3

_OFFSETS = (2.0, 1.0, -1.0, -2.0)
_WEIGHTS = (-1.0, 8.0, -8.0, 1.0)


def _central(f, chart: MetricChart, p: np.ndarray, step: float) -> np.ndarray:
    """Stack of d/dx^k f(p) along a new last axis."""
    if not (step > 0 and np.isfinite(step)):
        raise ValueError(f"step must be positive, got {step!r}")
    d = chart.dimension
    out = None
    for k in range(d):
        acc = None
        for off, w in zip(_OFFSETS, _WEIGHTS):
            q = p.copy()
            q[k] += off * step
            if not chart.contains(q):
                raise StepTooLarge(
                    f"{chart.chart_id}: stencil with step {step:g} leaves the domain "
                    f"along {chart.coord_names[k]} at {p.tolist()}"
                )
            term = w * f(q)
            acc = term if acc is None else acc + term
        acc = acc / (12.0 * step)
        if out is None:
            out = np.empty(acc.shape + (d,))
        out[..., k] = acc
    return out


def partials_of_metric(chart: MetricChart, point, step: float = DEFAULT_STEP) -> np.ndarray:
    """``dg[i, j, k] = d_k g_ij`` at ``point``.

    Uses the chart's analytic ``dg`` when present (``step`` is then ignored).
    """
    p = chart.check_point(point)
    if chart.dg is not None:
        return _symmetric_from_upper(chart.dg(p))
    dg = _central(lambda q: metric_at(chart, q), chart, p, step)
    return _symmetric_from_upper(dg)


def second_partials_of_metric(
    chart: MetricChart, point, step: float = DEFAULT_STEP, step2: float = DEFAULT_STEP2
) -> np.ndarray:
    """``d2g[i, j, k, l] = d_k d_l g_ij``.

    Analytic ``d2g`` if registered; otherwise one more central difference of
    the first partials. Without analytic ``dg`` both nesting levels use
    ``step2``.
    """
    p = chart.check_point(point)
    if chart.d2g is not None:
        d2 = np.asarray(chart.d2g(p), dtype=float)
    else:
        inner = step if chart.dg is not None else step2
        d2 = _central(lambda q: partials_of_metric(chart, q, inner), chart, p, step2)
    d2 = 0.5 * (d2 + d2.swapaxes(2, 3))
    return _symmetric_from_upper(d2)
