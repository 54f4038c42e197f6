"""Randomized checks: non-evasive complexes, chi cross-validation, Wormald divisibility."""

from __future__ import annotations

import argparse
import json

from evasive.experiments import (ChiCheckConfig, ComplexSuiteConfig, WormaldConfig,
                                 chi_crosscheck, complex_suite, wormald_suite)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--complexes", type=int, default=200)
    ap.add_argument("--mixed", action="store_true",
                    help="interleave vertex-extension complexes with cone towers")
    ap.add_argument("--properties", type=int, default=100)
    ap.add_argument("--max-n", type=int, default=8, help="largest regular graph order")
    ap.add_argument("--out")
    args = ap.parse_args()

    results = {
        "complexes": complex_suite(ComplexSuiteConfig(seed=args.seed, complexes=args.complexes,
                                                          mixed=args.mixed)),
        "chi": chi_crosscheck(ChiCheckConfig(seed=args.seed, properties=args.properties)),
        "wormald": wormald_suite(WormaldConfig(max_n=args.max_n)),
    }
    for name, res in results.items():
        print(f"{name:10s} checked {res['checked']:4d}  {'ok' if res['ok'] else 'FAILED'}"
              f"  ({res['seconds']:.2f}s)")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(results, fh, indent=1, sort_keys=True, default=str)
    return 0 if all(r["ok"] for r in results.values()) else 1


if __name__ == "__main__":
    raise SystemExit(main())
