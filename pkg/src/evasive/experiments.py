"""Batch experiments behind the scripts and the acceptance suite.

Each experiment takes a small dataclass config and returns a plain dict so
the scripts can dump it as JSON.
"""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass
from functools import wraps

from .enumeration import connected_regular_graphs
from .graphs import aut_group_size, to_graph6, wormald_bound
from .properties import chi_by_classes, property_complex, random_property
from .simplicial import (betti_mod_p, boundary_of_simplex, euler_characteristic, is_non_evasive,
                         random_cone_tower, random_non_evasive)


@dataclass
class ComplexSuiteConfig:
    seed: int = 0
    complexes: int = 200
    max_vertices: int = 12
    primes: tuple[int, ...] = (2, 3, 5)
    boundary_sizes: tuple[int, ...] = (3, 4, 5)
    # interleave vertex-extension complexes with the cone towers
    mixed: bool = False


@dataclass
class ChiCheckConfig:
    seed: int = 0
    properties: int = 100
    ns: tuple[int, ...] = (4, 5)


@dataclass
class WormaldConfig:
    max_n: int = 8


def _timed(fn):
    @wraps(fn)
    def run(cfg):
        start = time.perf_counter()
        out = fn(cfg)
        out["config"] = asdict(cfg)
        out["seconds"] = round(time.perf_counter() - start, 3)
        return out
    return run


@_timed
def complex_suite(cfg: ComplexSuiteConfig) -> dict:
    """Random non-evasive complexes must have chi = 1, vanish in homology and
    pass the recursion; boundaries of simplices must fail it."""
    rng = random.Random(cfg.seed)
    failures = []
    for i in range(cfg.complexes):
        if cfg.mixed and i % 2:
            k = random_non_evasive(rng, rng.randint(1, cfg.max_vertices))
        else:
            k = random_cone_tower(rng, cfg.max_vertices)
        chi = euler_characteristic(k)
        betti = {p: betti_mod_p(k, p).reduced for p in cfg.primes}
        ok = chi == 1 and is_non_evasive(k) and not any(any(b) for b in betti.values())
        if not ok:
            failures.append({"index": i, "facets": str(k), "chi": chi, "betti": betti})
    boundaries = {n: is_non_evasive(boundary_of_simplex(range(n))) for n in cfg.boundary_sizes}
    for n, verdict in boundaries.items():
        if verdict:
            failures.append({"boundary": n, "reason": "boundary judged non-evasive"})
    return {"checked": cfg.complexes, "boundaries": boundaries, "failures": failures,
            "ok": not failures}


@_timed
def chi_crosscheck(cfg: ChiCheckConfig) -> dict:
    """Class-sum chi against face enumeration on random monotone properties."""
    rng = random.Random(cfg.seed)
    failures = []
    for i in range(cfg.properties):
        n = cfg.ns[i % len(cfg.ns)]
        prop = random_property(rng, n)
        by_classes = chi_by_classes(prop)
        by_faces = euler_characteristic(property_complex(prop))
        if by_classes != by_faces:
            failures.append({"n": n, "generators": [to_graph6(g) for g in prop.generators],
                             "classes": by_classes, "faces": by_faces})
    return {"checked": cfg.properties, "failures": failures, "ok": not failures}


@_timed
def wormald_suite(cfg: WormaldConfig) -> dict:
    rows = []
    for r, g in connected_regular_graphs(cfg.max_n):
        aut = aut_group_size(g)
        bound = wormald_bound(g)
        ok = bound % aut == 0 and (r >= 3 or (r * g.n) % aut == 0)
        rows.append({"graph6": to_graph6(g), "degree": r, "aut": aut, "bound": bound, "ok": ok})
    return {"graphs": rows, "checked": len(rows), "ok": all(r["ok"] for r in rows)}
