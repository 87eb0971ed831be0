"""Metric charts and the curvature pipeline."""

from .chart import (
    DOMAIN_MARGIN,
    SINGULAR_DET,
    MetricChart,
    flat_chart,
    frw_chart,
    get_chart,
    inverse_metric_at,
    metric_at,
    polar3_chart,
    pullback_metric,
    sphere2_chart,
    sphere3_chart,
)
from .curvature import (
    CurvatureReport,
    christoffel_first,
    christoffel_second,
    curvature_report,
    gauss_curvature,
    independent_component_count,
    ricci_scalar,
    ricci_tensor,
    riemann,
)
from .derivatives import DEFAULT_STEP, DEFAULT_STEP2, partials_of_metric, second_partials_of_metric

__all__ = [
    "DEFAULT_STEP",
    "DEFAULT_STEP2",
    "DOMAIN_MARGIN",
    "SINGULAR_DET",
    "CurvatureReport",
    "MetricChart",
    "christoffel_first",
    "christoffel_second",
    "curvature_report",
    "flat_chart",
    "frw_chart",
    "gauss_curvature",
    "get_chart",
    "independent_component_count",
    "inverse_metric_at",
    "metric_at",
    "partials_of_metric",
    "polar3_chart",
    "pullback_metric",
    "ricci_scalar",
    "ricci_tensor",
    "riemann",
    "second_partials_of_metric",
    "sphere2_chart",
    "sphere3_chart",
]
