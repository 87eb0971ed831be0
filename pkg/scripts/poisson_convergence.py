"""Spectral pole-pair field against the closed form, per truncation and filter."""

import argparse
import math

import numpy as np

from closedcoulomb.fields import charge_for_scale, field_sphere2
from closedcoulomb.poisson import eval_field_theta, expand_pole_pair, solve_poisson


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lmax", default="64,128,256,512")
    ap.add_argument("--filters", default="none,lanczos,exponential")
    ap.add_argument("--radius", type=float, default=1.0)
    args = ap.parse_args()

    R = args.radius
    q = charge_for_scale(1.0, 2)
    th = np.linspace(math.pi / 4, 3 * math.pi / 4, 401)
    exact = field_sphere2(q, R * th, R)
    filters = args.filters.split(",")

    print("l_max," + ",".join(f"max_rel_err_{f}" for f in filters))
    for L in map(int, args.lmax.split(",")):
        pot = solve_poisson(expand_pole_pair(q, R, L))
        errs = [np.max(np.abs(eval_field_theta(pot, th, spectral_filter=f) / exact - 1)) for f in filters]
        print(f"{L}," + ",".join(f"{e:.3e}" for e in errs))


if __name__ == "__main__":
    main()
