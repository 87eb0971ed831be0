"""Spectral Poisson solver on the 2-sphere.

Surface charge density and potential are expanded in orthonormal spherical
harmonics (unit-sphere inner product, Condon-Shortley phase). On a sphere of
radius R the Laplace-Beltrami eigenvalues are -l(l+1)/R^2, so

    potential_lm = R^2 * source_lm / (eps0 * l (l + 1)),   l >= 1.

The l = 0 mode has eigenvalue zero. A source with a nonzero monopole, i.e.
nonzero total charge, has no solution at all; :func:`solve_poisson` raises
NonNeutralSource for it.

Point charges are projected exactly: a unit charge at (theta, phi) has
coefficients conj(Y_lm(theta, phi)) / R^2.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.special import sph_harm_y

from .errors import NonNeutralSource, NotConverged, PoleSingularity
from .geometry.chart import DOMAIN_MARGIN

#: Solvability gate on |c_00|.
MONOPOLE_TOL = 1e-12

_KINDS = ("source", "potential")


@dataclass(frozen=True, eq=False)
class HarmonicSpectrum:
    """Coefficients of a real field on a sphere of radius ``radius``.

    ``coeffs`` has shape ``(l_max + 1,)`` on the axisymmetric path (m = 0
    only) or ``(l_max + 1, 2 l_max + 1)`` with column ``m + l_max``.
    """

    l_max: int
    coeffs: np.ndarray
    kind: str = "source"
    radius: float = 1.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"kind must be one of {_KINDS}, got {self.kind!r}")
        if int(self.l_max) != self.l_max or self.l_max < 0:
            raise ValueError(f"l_max must be a non-negative integer, got {self.l_max!r}")
        if not self.radius > 0:
            raise ValueError(f"radius must be positive, got {self.radius!r}")
        c = np.array(self.coeffs, dtype=complex)
        L = self.l_max
        if c.shape == (L + 1,):
            if np.any(np.abs(c.imag) > 1e-12 * max(1.0, np.abs(c).max(initial=0.0))):
                raise ValueError("m = 0 coefficients of a real field must be real")
            c = c.real.astype(complex)
        elif c.shape == (L + 1, 2 * L + 1):
            l_idx = np.arange(L + 1)[:, None]
            m_idx = np.arange(-L, L + 1)[None, :]
            if np.any(c[np.abs(m_idx) > l_idx] != 0):
                raise ValueError("coefficients with |m| > l must be zero")
            m = np.arange(-L, L + 1)
            mirrored = ((-1.0) ** np.abs(m))[None, :] * np.conj(c[:, ::-1])
            scale = max(1.0, float(np.abs(c).max(initial=0.0)))
            if np.any(np.abs(c - mirrored) > 1e-12 * scale):
                raise ValueError("coefficients violate c_{l,-m} = (-1)^m conj(c_{l,m}); not a real field")
        else:
            raise ValueError(f"coeffs shape {c.shape} does not match l_max = {L}")
        if self.kind == "potential" and abs(c.flat[0 if c.ndim == 1 else L]) != 0:
            raise ValueError("potential spectra carry the zero-mean gauge: c_00 must be 0")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def axisymmetric(self) -> bool:
        return self.coeffs.ndim == 1

    def coeff(self, l: int, m: int = 0) -> complex:
        if not (0 <= l <= self.l_max and abs(m) <= l):
            raise IndexError(f"(l, m) = ({l}, {m}) outside the spectrum")
        if self.axisymmetric:
            return complex(self.coeffs[l]) if m == 0 else 0j
        return complex(self.coeffs[l, m + self.l_max])

    @property
    def monopole(self) -> complex:
        return self.coeff(0, 0)

    @property
    def total_charge(self) -> float:
        """Surface integral of a source: R^2 * sqrt(4 pi) * c_00."""
        return float(self.radius**2 * math.sqrt(4 * math.pi) * self.monopole.real)

    def zonal(self) -> np.ndarray:
        """Real m = 0 coefficients, l = 0..l_max."""
        return (self.coeffs if self.axisymmetric else self.coeffs[:, self.l_max]).real.copy()

    def is_zonal(self) -> bool:
        if self.axisymmetric:
            return True
        rest = np.delete(self.coeffs, self.l_max, axis=1)
        return not np.any(rest)

    def with_coeffs(self, coeffs, kind=None) -> "HarmonicSpectrum":
        return HarmonicSpectrum(self.l_max, coeffs, kind or self.kind, self.radius)

    @classmethod
    def from_nonnegative_m(cls, l_max: int, positive, kind="source", radius=1.0) -> "HarmonicSpectrum":
        """Build a full real-field spectrum from its ``m >= 0`` half.

        ``positive[l, m]`` for ``0 <= m <= l``; the m = 0 column is taken as real.
        """
        pos = np.asarray(positive, dtype=complex)
        L = l_max
        full = np.zeros((L + 1, 2 * L + 1), dtype=complex)
        for l in range(L + 1):
            full[l, L] = pos[l, 0].real
            for m in range(1, l + 1):
                full[l, L + m] = pos[l, m]
                full[l, L - m] = (-1) ** m * np.conj(pos[l, m])
        return cls(L, full, kind, radius)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["l", "m", "re", "im"])
        for l in range(self.l_max + 1):
            ms = [0] if self.axisymmetric else range(-l, l + 1)
            for m in ms:
                c = self.coeff(l, m)
                w.writerow([l, m, repr(float(c.real)), repr(float(c.imag))])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, kind="source", radius=1.0) -> "HarmonicSpectrum":
        rows = list(csv.DictReader(io.StringIO(text)))
        if not rows:
            raise ValueError("empty spectrum CSV")
        entries = [(int(r["l"]), int(r["m"]), complex(float(r["re"]), float(r["im"]))) for r in rows]
        L = max(l for l, _, _ in entries)
        if all(m == 0 for _, m, _ in entries):
            c = np.zeros(L + 1, dtype=complex)
            for l, _, v in entries:
                c[l] = v
        else:
            c = np.zeros((L + 1, 2 * L + 1), dtype=complex)
            for l, m, v in entries:
                c[l, m + L] = v
        return cls(L, c, kind, radius)


def _ylm0_norm(l):
    return np.sqrt((2.0 * np.asarray(l) + 1.0) / (4.0 * math.pi))


def expand_pole_pair(q: float, R: float, l_max: int) -> HarmonicSpectrum:
    """Source spectrum of +q at the north pole and -q at the south pole.

    Only odd l survive: c_l0 = q sqrt((2l+1)/4pi) (1 - (-1)^l) / R^2.
    """
    if l_max < 1:
        raise ValueError(f"l_max must be >= 1, got {l_max}")
    l = np.arange(l_max + 1)
    odd = (l % 2 == 1).astype(float)
    c = q * _ylm0_norm(l) * 2.0 * odd / (R * R)
    return HarmonicSpectrum(l_max, c.astype(complex), "source", R)


def expand_point_charges(charges: Iterable, R: float, l_max: int) -> HarmonicSpectrum:
    """Source spectrum of arbitrary point charges ``(q, theta, phi)``.

    Not restricted to neutral sets; feed the result to :func:`solve_poisson`
    to see the gate reject a net charge.
    """
    L = l_max
    full = np.zeros((L + 1, 2 * L + 1), dtype=complex)
    ls = np.arange(L + 1)
    for q, theta, phi in charges:
        for m in range(-L, L + 1):
            valid = ls >= abs(m)
            y = sph_harm_y(ls[valid], m, theta, phi)
            full[valid, m + L] += q * np.conj(y) / (R * R)
    return HarmonicSpectrum(L, full, "source", R)


def _eigen_factor(l_max: int, R: float, epsilon0: float) -> np.ndarray:
    l = np.arange(l_max + 1, dtype=float)
    fac = np.zeros_like(l)
    fac[1:] = R * R / (epsilon0 * l[1:] * (l[1:] + 1.0))
    return fac


def solve_poisson(source: HarmonicSpectrum, epsilon0: float = 1.0) -> HarmonicSpectrum:
    """Potential spectrum for ``-eps0 * Laplacian(phi) = source``, zero-mean gauge."""
    if source.kind != "source":
        raise ValueError(f"expected a source spectrum, got kind={source.kind!r}")
    if abs(source.monopole) > MONOPOLE_TOL:
        raise NonNeutralSource(source.monopole)
    fac = _eigen_factor(source.l_max, source.radius, epsilon0)
    c = source.coeffs * (fac if source.axisymmetric else fac[:, None])
    return source.with_coeffs(c, kind="potential")


def apply_laplace_beltrami(potential: HarmonicSpectrum, epsilon0: float = 1.0) -> HarmonicSpectrum:
    """Forward operator: source = -eps0 * Laplacian(phi), mode by mode."""
    if potential.kind != "potential":
        raise ValueError(f"expected a potential spectrum, got kind={potential.kind!r}")
    l = np.arange(potential.l_max + 1, dtype=float)
    lam = epsilon0 * l * (l + 1.0) / potential.radius**2
    c = potential.coeffs * (lam if potential.axisymmetric else lam[:, None])
    return potential.with_coeffs(c, kind="source")


# ---------------------------------------------------------------------------
# evaluation along a meridian


def filter_weights(l_max: int, name: str = "exponential") -> np.ndarray:
    """Spectral filter sigma(l) applied to the partial sums.

    ``none``: plain truncation. ``lanczos``: sinc(l / (l_max + 1)).
    ``exponential``: exp(-36 (l / l_max)^8), which falls to machine epsilon
    at l_max and leaves the low modes untouched.
    """
    l = np.arange(l_max + 1, dtype=float)
    if name == "none":
        return np.ones_like(l)
    if name == "lanczos":
        return np.sinc(l / (l_max + 1.0))
    if name == "exponential":
        return np.exp(-36.0 * (l / max(l_max, 1)) ** 8)
    raise ValueError(f"unknown filter {name!r}")


def _check_thetas(thetas, margin):
    th = np.atleast_1d(np.asarray(thetas, dtype=float))
    if np.any(th < margin) or np.any(th > math.pi - margin):
        raise PoleSingularity(f"theta within {margin:g} rad of a pole")
    return th


def _zonal_sums(coeffs: np.ndarray, theta: np.ndarray):
    """Sum_l c_l Y_l0(theta) and its theta-derivative, by the Legendre recurrence."""
    x = np.cos(theta)
    s = np.sin(theta)
    p_prev = np.ones_like(x)  # P_0
    p = x.copy()  # P_1
    val = coeffs[0] * _ylm0_norm(0) * p_prev
    dval = np.zeros_like(x)
    for l in range(1, len(coeffs)):
        if coeffs[l] != 0.0:
            n = _ylm0_norm(l)
            val = val + coeffs[l] * n * p
            # d/dtheta P_l(cos theta) = l (cos theta P_l - P_{l-1}) / sin theta
            dval = dval + coeffs[l] * n * l * (x * p - p_prev) / s
        p_prev, p = p, ((2 * l + 1) * x * p - l * p_prev) / (l + 1)
    return val, dval


def _zonal_filtered(potential: HarmonicSpectrum, spectral_filter: str, l_max=None):
    if not potential.is_zonal():
        raise ValueError("meridian profiles need an axisymmetric spectrum (m = 0 only)")
    c = potential.zonal()
    L = potential.l_max if l_max is None else l_max
    return c[: L + 1] * filter_weights(L, spectral_filter)


def _profile(potential, thetas, spectral_filter, tail_tol, margin, which):
    th = _check_thetas(thetas, margin)
    R = potential.radius

    def evaluate(L):
        val, dval = _zonal_sums(_zonal_filtered(potential, spectral_filter, L), th)
        return val if which == "potential" else -dval / R

    out = evaluate(potential.l_max)
    if tail_tol is not None:
        half = evaluate(max(potential.l_max // 2, 1))
        scale = float(np.max(np.abs(out))) or 1.0
        tail = float(np.max(np.abs(out - half))) / scale
        if tail > tail_tol:
            raise NotConverged(f"{which} tail estimate {tail:.3e} exceeds {tail_tol:.3e}")
    return out


def eval_theta_profile(
    potential: HarmonicSpectrum,
    thetas,
    spectral_filter: str = "exponential",
    tail_tol: float | None = None,
    margin: float = DOMAIN_MARGIN,
) -> np.ndarray:
    """Potential along a meridian at polar angles ``thetas``.

    With ``tail_tol`` set, the result is compared with the expansion cut at
    l_max // 2 and NotConverged is raised if they differ by more than
    ``tail_tol`` relative to the profile's maximum.
    """
    return _profile(potential, thetas, spectral_filter, tail_tol, margin, "potential")


def eval_field_theta(
    potential: HarmonicSpectrum,
    thetas,
    spectral_filter: str = "exponential",
    tail_tol: float | None = None,
    margin: float = DOMAIN_MARGIN,
) -> np.ndarray:
    """Field component along theta-hat, -(1/R) d(phi)/d(theta)."""
    return _profile(potential, thetas, spectral_filter, tail_tol, margin, "field")
