"""Independent reference computations used by the tests.

Nothing here imports the package under test.
"""

import math

import numpy as np
import sympy as sp
from scipy.integrate import quad


def symbolic_curvature(metric, coords):
    """Christoffel symbols (2nd kind), lowered Riemann and Ricci scalar, by sympy.

    Returns numpy-callable functions of the coordinates.
    """
    g = sp.Matrix(metric)
    ginv = sp.simplify(g.inv())
    d = len(coords)
    gam = [[[sp.simplify(sum(ginv[i, l] * (sp.diff(g[l, j], coords[k]) + sp.diff(g[l, k], coords[j])
                                            - sp.diff(g[j, k], coords[l])) for l in range(d)) / 2)
             for k in range(d)] for j in range(d)] for i in range(d)]
    riem = sp.MutableDenseNDimArray.zeros(d, d, d, d)
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for l in range(d):
                    expr = sp.diff(gam[i][l][j], coords[k]) - sp.diff(gam[i][k][j], coords[l])
                    expr += sum(gam[m][l][j] * gam[i][k][m] - gam[m][j][k] * gam[i][l][m] for m in range(d))
                    riem[i, j, k, l] = sp.simplify(expr)
    low = sp.MutableDenseNDimArray.zeros(d, d, d, d)
    for i, j, k, l in np.ndindex(d, d, d, d):
        low[i, j, k, l] = sp.simplify(sum(g[i, m] * riem[m, j, k, l] for m in range(d)))
    ricci = sp.Matrix(d, d, lambda i, j: sum(riem[k, i, k, j] for k in range(d)))
    scalar = sp.simplify(sum(ginv[i, j] * ricci[i, j] for i in range(d) for j in range(d)))
    f_gam = sp.lambdify(coords, sp.Array(gam), "numpy")
    f_low = sp.lambdify(coords, low.as_immutable(), "numpy")
    f_scalar = sp.lambdify(coords, scalar, "numpy")
    return (lambda *p: np.array(f_gam(*p), dtype=float),
            lambda *p: np.array(f_low(*p), dtype=float),
            lambda *p: float(f_scalar(*p)))


def sphere2_symbolic(R):
    th, ph = sp.symbols("theta phi")
    return symbolic_curvature([[R**2, 0], [0, R**2 * sp.sin(th) ** 2]], (th, ph))


def sphere3_symbolic(R):
    chi, th, ph = sp.symbols("chi theta phi")
    s = sp.sin(chi) ** 2
    return symbolic_curvature(
        [[R**2, 0, 0], [0, R**2 * s, 0], [0, 0, R**2 * s * sp.sin(th) ** 2]], (chi, th, ph)
    )


def arc_length_quadrature(r_prime, R):
    """Integral of 1 / sqrt(1 - x^2 / R^2) from 0 to r' with the endpoint singularity as a weight."""
    if r_prime == 0:
        return 0.0
    # 1/sqrt(1 - x^2/R^2) = R / sqrt(R + x) * (R - x)^(-1/2)
    val, _ = quad(lambda x: R / math.sqrt(R + x), 0.0, R, weight="alg", wvar=(0.0, -0.5)) if r_prime == R else \
        quad(lambda x: 1.0 / math.sqrt(1.0 - (x / R) ** 2), 0.0, r_prime, epsabs=1e-13, epsrel=1e-13, limit=200)
    return val


def gaussian_cap_pair_l1(width):
    """l = 1 coefficient of a normalised Gaussian cap at the north pole minus its mirror at the south."""
    f = lambda t: np.exp(-t * t / (2 * width * width))
    norm = quad(lambda t: 2 * np.pi * f(t) * np.sin(t), 0, np.pi, epsabs=1e-15, limit=400)[0]
    y10 = lambda t: math.sqrt(3 / (4 * math.pi)) * np.cos(t)
    return quad(
        lambda t: 2 * np.pi * (f(t) - f(np.pi - t)) / norm * y10(t) * np.sin(t),
        0, np.pi, epsabs=1e-15, limit=400, points=[width, np.pi - width],
    )[0]


def central_derivative(f, x, h=1e-5):
    return (f(x + h) - f(x - h)) / (2 * h)


def fit_power_law(x, y):
    """Least-squares slope and prefactor of log y against log x."""
    slope, intercept = np.polyfit(np.log(x), np.log(y), 1)
    return slope, math.exp(intercept)
