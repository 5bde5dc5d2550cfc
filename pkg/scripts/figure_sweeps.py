"""Write the CSV grids behind the bound surfaces and the nodal line.

Usage: python3 scripts/figure_sweeps.py [--out DIR] [--steps N] [--jobs J]

Files written to DIR (default ./sweeps):
  classification.csv  mu1 = mu2 grid against mu, with the mu/(mu1 mu2) column
  purity_bounds.csv   E_min and E_max over (mu1, mu2, mu)
  relative_error.csv  symmetric states at mu = 0.5, with the mu/mu_i column
  entropic_p4.csv     symmetric p = 4 entropic bounds over (s_marginal, s_global)
  nodal_p4.csv        the p = 4 nodal line
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from cventangle import cli

SWEEPS = {
    "classification.csv": ["sweep", "--symmetric", "--mu1-range", "0.05,1", "--mu-range", "0.0025,1"],
    "purity_bounds.csv": ["sweep", "--physical-only", "--mu1-range", "0.05,1", "--mu2-range", "0.05,1", "--mu-range", "0.0025,1"],
    "relative_error.csv": ["sweep", "--symmetric", "--physical-only", "--mu1-range", "0.05,0.7071", "--mu-range", "0.5"],
    "entropic_p4.csv": ["sweep", "--p", "4", "--s-marginal-range", "0.02,0.32", "--s-global-range", "0.01,0.33"],
    "nodal_p4.csv": ["nodal", "--p", "4"],
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", type=Path, default=Path("sweeps"))
    parser.add_argument("--steps", type=int, default=40)
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args(argv)
    args.out.mkdir(parents=True, exist_ok=True)
    for name, command in SWEEPS.items():
        extra = ["--grid-steps", str(args.steps)] if command[0] == "nodal" else ["--steps", str(args.steps)]
        if command[0] == "sweep":
            extra += ["--jobs", str(args.jobs)]
        with open(args.out / name, "w", newline="") as fh:
            code = cli.run(command + extra, fh)
        if code != 0:
            return code
        print(f"wrote {args.out / name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
