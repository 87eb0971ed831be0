"""Write the closed-space vs flat field profiles for R = 1/2, 1, 3 and summarise them."""

import argparse
import csv
from pathlib import Path

from closedcoulomb.cli import main as cli_main


def summarise(path):
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    ratios = [float(r["E_modified"]) / float(r["E_coulomb"]) for r in rows]
    return len(rows), min(ratios), max(ratios)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="figure3_out")
    ap.add_argument("--radii", default="0.5,1,3")
    ap.add_argument("--grid-n", default="400")
    args = ap.parse_args()

    out = Path(args.out)
    code = cli_main(["figure3", "--radii", args.radii, "--grid-n", args.grid_n, "--out", str(out)])
    if code:
        return code
    for path in sorted(out.glob("figure3_R*.csv")):
        n, lo, hi = summarise(path)
        print(f"{path.name}: {n} rows, E_modified/E_coulomb in [{lo:.6g}, {hi:.6g}]")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
