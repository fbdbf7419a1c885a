#!/usr/bin/env python3
"""Print the certified sandwich/weight constants from a dense hemisphere scan.

Usage: python scripts/dense_constants.py [--n 1000000] [--mach 2.0] [--seed 0]
"""

import argparse

from vsheet import (
    PhysicalParams,
    SampleStrategy,
    certify_sandwich,
    certify_simple_root,
    certify_weight_bounds,
    sample_hemisphere,
)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1_000_000)
    ap.add_argument("--mach", type=float, default=2.0)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    params = PhysicalParams(v=args.mach, c=1.0)
    sample = sample_hemisphere(
        args.n, SampleStrategy.STRATIFIED_NEAR_ROOTS, 1e-6, params, seed=args.seed
    )
    certs = [certify_sandwich(sample, params)]
    certs += certify_weight_bounds(sample, params)
    certs.append(certify_simple_root(params))
    width = max(len(c.ratio_name) for c in certs)
    for cert in certs:
        print(
            f"{cert.ratio_name:<{width}}  "
            f"min {cert.empirical_min:.9g}  max {cert.empirical_max:.9g}  "
            f"n {cert.sample_size}  {'PASS' if cert.passed else 'FAIL'}"
        )
    print()
    print("suggested norm constants (mach", args.mach, "):")
    sandwich = certs[0]
    gamma_lo = next(c for c in certs if c.ratio_name == "weight_over_gamma")
    lam_hi = next(c for c in certs if c.ratio_name == "weight_over_lambda")
    print(f"  |Sigma| / (|sigma| Lambda) in [{sandwich.empirical_min:.6g}, {sandwich.empirical_max:.6g}]")
    print(f"  gamma||u||_s <= {1.0 / gamma_lo.empirical_min:.9g} * ||u||_(s,sigma)")
    print(f"  ||u||_(s,sigma) <= {lam_hi.empirical_max:.9g} * ||u||_(s+1)")
    return 0 if all(c.passed for c in certs) else 1


if __name__ == "__main__":
    raise SystemExit(main())
