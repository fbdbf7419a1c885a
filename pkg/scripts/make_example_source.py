#!/usr/bin/env python3
"""Write an example source pair (plus.bin / minus.csv) for the solve study.

Usage: python scripts/make_example_source.py out_dir [--nt 32 --nx 32 --ny 32]
"""

import argparse
import pathlib

import numpy as np

from vsheet import GridSpec, fileio
from vsheet.cli import builtin_sources


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("out_dir", type=pathlib.Path)
    ap.add_argument("--nt", type=int, default=32)
    ap.add_argument("--nx", type=int, default=32)
    ap.add_argument("--ny", type=int, default=32)
    ap.add_argument("--Ly", type=float, default=20.0)
    args = ap.parse_args()

    grid = GridSpec(
        nt=args.nt, nx=args.nx, ny=args.ny,
        Lt=2 * np.pi, Lx=2 * np.pi, Ly=args.Ly, gamma=1.0,
    )
    raw_p, raw_m = builtin_sources(grid)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    fileio.write_source_bin(args.out_dir / "plus.bin", raw_p, grid)
    fileio.write_source_csv(args.out_dir / "minus.csv", raw_m, grid)
    print(f"wrote {args.out_dir / 'plus.bin'} and {args.out_dir / 'minus.csv'}")
    print(f"grid: nt={grid.nt} nx={grid.nx} ny={grid.ny} Ly={grid.Ly} gamma={grid.gamma}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
