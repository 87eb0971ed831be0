"""Fit the small-distance correction E_S2/E_flat - 1 ~ a (r/R)^p."""

import argparse

import numpy as np

from closedcoulomb.fields import charge_for_scale, field_flat_2d, field_flat_3d, field_sphere2, field_sphere3


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--radius", type=float, default=1.0)
    ap.add_argument("--xmin", type=float, default=1e-4)
    ap.add_argument("--xmax", type=float, default=1e-2)
    ap.add_argument("--n", type=int, default=21)
    args = ap.parse_args()

    R = args.radius
    x = np.logspace(np.log10(args.xmin), np.log10(args.xmax), args.n)
    r = x * R
    for label, curved, flat, dim in (
        ("S2", field_sphere2, field_flat_2d, 2),
        ("S3", field_sphere3, field_flat_3d, 3),
    ):
        q = charge_for_scale(1.0, dim)
        excess = curved(q, r, R, margin=0.0) / flat(q, r) - 1
        p, log_a = np.polyfit(np.log(x), np.log(excess), 1)
        print(f"{label}: exponent {p:.5f}, coefficient {np.exp(log_a):.6f}")


if __name__ == "__main__":
    main()
