"""Exact query complexity of every monotone graph property on n vertices."""

from __future__ import annotations

import argparse
import json
import os
import time
from dataclasses import asdict, dataclass

from evasive.querygame import verify_primepower


@dataclass
class Config:
    n: int = 4
    workers: int = 1
    out: str | None = None


def parse() -> Config:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, choices=(4, 5), default=4)
    ap.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    ap.add_argument("--out")
    return Config(**vars(ap.parse_args()))


def main():
    cfg = parse()
    start = time.perf_counter()
    rep = verify_primepower(cfg.n, workers=cfg.workers)
    elapsed = time.perf_counter() - start
    print(f"n={rep.n}: {rep.classes} classes, {rep.properties} monotone properties")
    print(f"nontrivial evasive: {rep.evasive}/{rep.nontrivial}, trivial values {rep.trivial_values}")
    print(f"failures: {len(rep.failures)}  ({elapsed:.1f}s)")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), **asdict(rep), "seconds": round(elapsed, 3)},
                      fh, indent=1, sort_keys=True)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
