#!/usr/bin/env python3
"""Print the stability diagram over a Mach sweep as an ASCII table.

Usage: python scripts/stability_diagram.py [--m-min 0.5] [--m-max 3.5] [--step 0.1]
"""

import argparse
import math

from vsheet.cli import stability_diagram


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m-min", type=float, default=0.5)
    ap.add_argument("--m-max", type=float, default=3.5)
    ap.add_argument("--step", type=float, default=0.1)
    ap.add_argument("--c", type=float, default=1.0)
    args = ap.parse_args()

    rows = stability_diagram(args.c, args.m_min, args.m_max, args.step)
    print(f"{'mach':>6}  {'regime':<14} {'root constant':>14}")
    for mach, regime, y in rows:
        ytxt = "-" if math.isnan(y) else f"{y:.10f}"
        print(f"{mach:6.3f}  {regime:<14} {ytxt:>14}")
    flips = [rows[i + 1][0] for i in range(len(rows) - 1) if rows[i][1] != rows[i + 1][1]]
    if flips:
        print(f"\nregime changes entering mach = {', '.join(f'{m:g}' for m in flips)}"
              f"  (sqrt(2) = {math.sqrt(2):.6f})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
