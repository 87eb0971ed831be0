"""Command-line front end.

Exit codes: 0 success, 1 usage or domain error, 2 NonNeutralSource.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import fields, gauss, poisson
from .errors import BadGrid, ClosedSpaceError, NonNeutralSource
from .geometry import curvature_report, get_chart

EXIT_OK, EXIT_USAGE, EXIT_PHYSICS = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class RunConfig:
    chart_id: str
    R: float
    q_scale: float = 1.0
    grid_n: int = 400
    r_min_frac: float = 0.01
    r_max_frac: float = 0.99
    l_max: int = 512
    out: str | None = None
    fmt: str = "csv"

    def __post_init__(self):
        if self.grid_n < 2:
            raise BadGrid(f"grid needs at least 2 points, got {self.grid_n}")
        if not (0.0 < self.r_min_frac < self.r_max_frac < 1.0):
            raise BadGrid(
                f"grid fractions must satisfy 0 < r_min < r_max < 1, got {self.r_min_frac}, {self.r_max_frac}"
            )
        if not (self.R > 0 and math.isfinite(self.R)):
            raise BadGrid(f"radius must be positive, got {self.R}")

    def radii(self) -> np.ndarray:
        """Geodesic radii strictly inside (0, pi R)."""
        span = math.pi * self.R
        return np.linspace(self.r_min_frac * span, self.r_max_frac * span, self.grid_n)


def fmt12(v: float) -> str:
    return f"{v:.12g}"


def write_atomic(path: str | os.PathLike | None, text: str) -> None:
    """Write ``text`` to ``path`` via temp file + rename; stdout when path is None."""
    if path is None:
        sys.stdout.write(text)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def profile_csv(r, e_modified, e_coulomb) -> str:
    lines = ["r,E_modified,E_coulomb"]
    lines += [f"{fmt12(a)},{fmt12(b)},{fmt12(c)}" for a, b, c in zip(r, e_modified, e_coulomb)]
    return "\n".join(lines) + "\n"


def _resolve_chart(chart: str, radius: float | None) -> str:
    kind, _, arg = chart.partition(":")
    if kind in ("sphere2", "sphere3") and not arg:
        if radius is None:
            raise UsageError(f"chart {chart!r} needs a radius (use {kind}:R or --radius)")
        return f"{kind}:{radius!r}"
    if kind == "frw" and arg.count(":") == 0 and radius is not None:
        return f"frw:{radius!r}:{arg}" if arg else f"frw:{radius!r}:1"
    return chart


# ---------------------------------------------------------------------------
# curvature


def _curvature_points(chart, args) -> list:
    if args.point:
        return [np.array([float(v) for v in s.split(",")]) for s in args.point]
    # default: sweep the first coordinate, park the rest mid-box
    n = args.grid_n or 10
    bounds = []
    for lo, hi in chart.domain:
        a = lo + 0.1 if np.isfinite(lo) else -1.0
        b = hi - 0.1 if np.isfinite(hi) else (a + 1.0 if np.isfinite(lo) else 1.0)
        bounds.append((a, b))
    base = np.array([0.5 * (a + b) for a, b in bounds])
    pts = []
    for x in np.linspace(bounds[0][0], bounds[0][1], n):
        p = base.copy()
        p[0] = x
        pts.append(p)
    return pts


def cmd_curvature(args) -> int:
    chart = get_chart(_resolve_chart(args.chart, args.radius))
    engine = chart if args.analytic else chart.without_derivatives()
    reports = [curvature_report(engine, p) for p in _curvature_points(chart, args)]
    exact = chart.exact_ricci_scalar
    d = chart.dimension
    if args.format == "csv":
        head = list(chart.coord_names) + [
            "ricci_scalar",
            "ricci_scalar_exact",
            "ricci_scalar_delta",
            "gauss_curvature",
            "max_abs_christoffel",
            "max_abs_riemann",
        ]
        lines = [",".join(head)]
        for rep in reports:
            row = [fmt12(x) for x in rep.point]
            row.append(fmt12(rep.ricci_scalar))
            row.append(fmt12(exact) if exact is not None else "")
            row.append(fmt12(rep.ricci_scalar - exact) if exact is not None else "")
            row.append(fmt12(rep.gauss_curvature) if d == 2 else "")
            row.append(fmt12(np.max(np.abs(rep.gamma_second))))
            row.append(fmt12(np.max(np.abs(rep.riemann_lowered))))
            lines.append(",".join(row))
        write_atomic(args.out, "\n".join(lines) + "\n")
        return EXIT_OK

    names = chart.coord_names
    out = [f"chart {chart.chart_id} (d={d}, independent Riemann components n={reports[0].independent_count})"]
    for rep in reports:
        out.append("point " + ", ".join(f"{n}={fmt12(x)}" for n, x in zip(names, rep.point)))
        for i in range(d):
            for j in range(d):
                for k in range(j, d):
                    v = rep.gamma_second[i, j, k]
                    if abs(v) > 1e-12:
                        out.append(f"  Gamma^{names[i]}_{names[j]}{names[k]} = {fmt12(v)}")
        for i in range(d):
            for j in range(i + 1, d):
                for k in range(d):
                    for l in range(k + 1, d):
                        v = rep.riemann_lowered[i, j, k, l]
                        if abs(v) > 1e-12 and (i, j) <= (k, l):
                            out.append(f"  R_{names[i]}{names[j]}{names[k]}{names[l]} = {fmt12(v)}")
        for i in range(d):
            out.append("  Ricci[" + names[i] + "] = " + " ".join(fmt12(v) for v in rep.ricci[i]))
        out.append(f"  ricci_scalar = {fmt12(rep.ricci_scalar)}")
        if exact is not None:
            out.append(f"  ricci_scalar_delta = {rep.ricci_scalar - exact:+.3e}")
        if d == 2:
            out.append(f"  gauss_curvature = {fmt12(rep.gauss_curvature)}")
    write_atomic(args.out, "\n".join(out) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# field / figure3


def field_profile(chart_id: str, cfg: RunConfig):
    """(r, E_modified, E_coulomb) for the law matching ``chart_id``, in q-scale units."""
    kind = chart_id.partition(":")[0]
    r = cfg.radii()
    if kind in ("sphere3", "flat3"):
        q = fields.charge_for_scale(cfg.q_scale, 3)
        flat = fields.field_flat_3d(q, r)
        mod = fields.field_sphere3(q, r, cfg.R) if kind == "sphere3" else flat
    elif kind in ("sphere2", "flat2"):
        q = fields.charge_for_scale(cfg.q_scale, 2)
        flat = fields.field_flat_2d(q, r)
        mod = fields.field_sphere2(q, r, cfg.R) if kind == "sphere2" else flat
    else:
        raise UsageError(f"no field law for chart {chart_id!r}")
    return r, np.atleast_1d(mod), np.atleast_1d(flat)


def _config(args, chart_id, R, **kw) -> RunConfig:
    return RunConfig(
        chart_id=chart_id,
        R=R,
        q_scale=args.q_scale,
        grid_n=args.grid_n or 400,
        r_min_frac=args.r_min_frac,
        r_max_frac=args.r_max_frac,
        out=args.out,
        fmt=args.format,
        **kw,
    )


def cmd_field(args) -> int:
    chart_id = _resolve_chart(args.chart, args.radius)
    chart = get_chart(chart_id)
    R = chart.params.get("R", args.radius if args.radius is not None else 1.0)
    cfg = _config(args, chart_id, R)
    r, mod, flat = field_profile(chart_id, cfg)
    if cfg.fmt == "csv":
        write_atomic(cfg.out, profile_csv(r, mod, flat))
    else:
        lines = [f"field profile on {chart_id}, q-scale {cfg.q_scale:g}"]
        lines += [f"  r={fmt12(a)}  E_modified={fmt12(b)}  E_coulomb={fmt12(c)}" for a, b, c in zip(r, mod, flat)]
        write_atomic(cfg.out, "\n".join(lines) + "\n")
    return EXIT_OK


def figure3_name(R: float) -> str:
    return f"figure3_R{R:g}.csv"


def cmd_figure3(args) -> int:
    if args.out is None:
        raise UsageError("figure3 needs --out DIR (one CSV per radius)")
    radii = [_parse_radius(s) for s in args.radii.split(",")]
    for R in radii:
        if not R > 0:
            raise BadGrid(f"radius must be positive, got {R}")
    outdir = Path(args.out)
    for R in radii:
        cfg = _config(args, f"sphere3:{R!r}", R)
        r, mod, flat = field_profile(f"sphere3:{R!r}", cfg)
        write_atomic(outdir / figure3_name(R), profile_csv(r, mod, flat))
    return EXIT_OK


def _parse_radius(text: str) -> float:
    text = text.strip()
    if "/" in text:
        a, b = text.split("/", 1)
        return float(a) / float(b)
    return float(text)


# ---------------------------------------------------------------------------
# flux


def cmd_flux(args) -> int:
    chart_id = _resolve_chart(args.chart, args.radius)
    kind = chart_id.partition(":")[0]
    n = args.grid_n or 50
    if kind in ("sphere2", "sphere3"):
        params = np.linspace(0.1, math.pi - 0.1, n)
        R = get_chart(chart_id).params["R"]
        q = fields.charge_for_scale(args.q_scale, 2 if kind == "sphere2" else 3)
    elif kind in ("flat2", "flat3"):
        params = np.linspace(0.1, 10.0, n)
        R = None
        q = fields.charge_for_scale(args.q_scale, 2 if kind == "flat2" else 3)
    else:
        raise UsageError(f"no flux scan for chart {chart_id!r}")
    report = gauss.flux_invariance_scan(chart_id, q, R, params)
    text = report.to_csv() if args.format == "csv" else report.to_text()
    write_atomic(args.out, text)
    summary = f"max_abs_deviation={report.max_abs_deviation:.3e} max_rel_deviation={report.max_rel_deviation:.3e}\n"
    (sys.stderr if args.out is None else sys.stdout).write(summary)
    return EXIT_OK


# ---------------------------------------------------------------------------
# poisson


def cmd_poisson(args) -> int:
    R = args.radius if args.radius is not None else 1.0
    cfg = _config(args, f"sphere2:{R!r}", R, l_max=args.lmax or 512)
    q = fields.charge_for_scale(cfg.q_scale, 2)
    source = poisson.expand_pole_pair(q, R, cfg.l_max)
    if args.inject_monopole:
        c = np.array(source.coeffs)
        c[0] = args.inject_monopole
        source = source.with_coeffs(c)
    pot = poisson.solve_poisson(source)
    if args.spectrum_out:
        write_atomic(args.spectrum_out, pot.to_csv())

    r = cfg.radii()
    e_spec = poisson.eval_field_theta(pot, r / R, spectral_filter=args.filter)
    write_atomic(cfg.out, profile_csv(r, e_spec, fields.field_flat_2d(q, r)))

    th = np.linspace(math.pi / 4, 3 * math.pi / 4, 201)
    err = np.max(np.abs(poisson.eval_field_theta(pot, th, spectral_filter=args.filter) / fields.field_sphere2(q, R * th, R) - 1))
    flux = gauss.flux_latitude_s2(
        lambda rr: poisson.eval_field_theta(pot, rr / R, spectral_filter=args.filter), q, R, math.pi / 2
    )
    summary = (
        f"l_max={cfg.l_max} R={R:g} filter={args.filter} monopole={source.monopole.real:.3e}\n"
        f"max_rel_field_error[pi/4,3pi/4]={err:.3e}\n"
        f"flux_equator={flux.flux:.12g} expected={flux.expected:.12g} rel_dev={flux.relative_deviation:.3e}\n"
    )
    (sys.stderr if cfg.out is None else sys.stdout).write(summary)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="closedcoulomb", description="Curvature and Coulomb's law on closed spherical spaces.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, chart_default):
        sp.add_argument("--chart", default=chart_default, help="chart id, e.g. sphere2:1, sphere3:3, flat3")
        sp.add_argument("--radius", type=_parse_radius, default=None, help="radius R (fills sphere2/sphere3 ids)")
        sp.add_argument("--grid-n", type=int, default=None, help="number of grid points")
        sp.add_argument("--lmax", type=int, default=None, help="maximum harmonic degree")
        sp.add_argument("--out", default=None, help="output path (directory for figure3); stdout if omitted")
        sp.add_argument("--format", choices=("csv", "text"), default="csv")
        sp.add_argument("--q-scale", type=float, default=1.0, help="q/(2 pi eps0) in 2D, q/(4 pi eps0) in 3D")
        sp.add_argument("--r-min-frac", type=float, default=0.01, help="grid start as a fraction of pi R")
        sp.add_argument("--r-max-frac", type=float, default=0.99, help="grid end as a fraction of pi R")

    sp = sub.add_parser("curvature", help="Christoffel, Riemann, Ricci and Gauss curvature table")
    common(sp, "sphere2:1")
    sp.add_argument("--point", action="append", help="comma-separated chart coordinates (repeatable)")
    sp.add_argument("--analytic", action="store_true", help="use registered analytic derivatives")
    sp.set_defaults(func=cmd_curvature)

    sp = sub.add_parser("field", help="field profile of the modified and flat laws")
    common(sp, "sphere3:1")
    sp.set_defaults(func=cmd_field)

    sp = sub.add_parser("flux", help="Gauss's-law flux scan over contours")
    common(sp, "sphere2:1")
    sp.set_defaults(func=cmd_flux)

    sp = sub.add_parser("poisson", help="spectral Poisson solve for the pole pair on S^2")
    common(sp, "sphere2")
    sp.add_argument("--spectrum-out", default=None, help="write the potential spectrum CSV (l,m,re,im)")
    sp.add_argument("--filter", choices=("exponential", "lanczos", "none"), default="exponential")
    sp.add_argument("--inject-monopole", type=float, default=0.0, help="overwrite c_00 of the source")
    sp.set_defaults(func=cmd_poisson)

    sp = sub.add_parser("figure3", help="S^3 field vs Coulomb's law, one CSV per radius")
    common(sp, "sphere3")
    sp.add_argument("--radii", default="0.5,1,3", help="comma-separated radii")
    sp.set_defaults(func=cmd_figure3)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NonNeutralSource as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PHYSICS
    except (UsageError, ClosedSpaceError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
