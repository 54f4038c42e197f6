"""Command-line entry point: ``evasive <subcommand> [options]``.

Every subcommand prints a short human summary, or with ``--json`` a report
that follows ``report_schema.json``.  Exit status is 0 when all checks pass,
1 when a verification fails and 2 on usage or cap errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from typing import Callable

from . import __version__
from .enumeration import connected_regular_graphs, graph_classes
from .graphs import (Graph, aut_group_size, canonical_form, is_regular, parse_graph, to_graph6,
                     wormald_bound)
from .groups import (GeneratedGroup, OliverWitness, affine_group, double_pcycle_group, edge_orbits,
                     matching_oliver_group, parse_cycles, type1_group, type37_group,
                     verify_oliver_witness)
from .properties import (chi_by_classes, class_poset, down_sets, dual_ideal, ideal_sum_mod,
                         property_complex, property_from_generators, verify_d3,
                         verify_d5_smallest)
from .simplicial import betti_mod_p, euler_characteristic, is_non_evasive, read_facets

SCHEMA_VERSION = "1.0"


class UsageError(Exception):
    pass


def _graphs(texts: list[str], n: int | None) -> list[Graph]:
    out = [parse_graph(t, n) for t in texts]
    sizes = {g.n for g in out}
    if len(sizes) > 1:
        raise UsageError(f"graphs have different vertex counts {sorted(sizes)}")
    return out


# --------------------------------------------------------------------------
# subcommands; each returns (checks, results, evidence, summary lines) where
# checks maps a check name to its outcome

def cmd_aut(args):
    rows = []
    for g in _graphs(args.graphs, args.n):
        aut = aut_group_size(g)
        rows.append({"graph": to_graph6(g), "n": g.n, "m": g.m, "aut": aut,
                     "class_size": math.factorial(g.n) // aut,
                     "canonical": to_graph6(canonical_form(g))})
    lines = [f"{r['graph']}: |Aut| = {r['aut']}, |[G]| = {r['class_size']}" for r in rows]
    return {}, {"graphs": rows}, {}, lines


def _named_group(name: str) -> OliverWitness:
    kind, _, arg = name.partition(":")
    table: dict[str, Callable[..., OliverWitness]] = {
        "matching": matching_oliver_group, "double": double_pcycle_group,
    }
    if kind == "type1":
        return type1_group()
    if kind == "type37":
        return type37_group()
    if kind == "affine":
        parts = [int(x) for x in arg.split(",")] if arg else []
        return affine_group(*parts)
    if kind in table and arg:
        return table[kind](int(arg))
    raise UsageError(f"unknown group {name!r}; use type1, type37, affine:p[,r], "
                     "matching:p or double:p")


def cmd_orbits(args):
    witness = None
    if args.group:
        witness = _named_group(args.group)
        group = witness.group
    elif args.gen:
        if args.degree is None:
            raise UsageError("--degree is required with --gen")
        group = GeneratedGroup(args.degree, list(parse_cycles(c, args.degree) for c in args.gen))
    else:
        raise UsageError("give --group or at least one --gen")
    orbits = edge_orbits(group, group.degree)
    rows = [{"size": o.m, "graph6": to_graph6(o), "regular": is_regular(o),
             "edges": [list(e) for e in o.edge_list()]} for o in orbits]
    results = {"degree": group.degree, "order": group.order,
               "generators": [str(g) for g in group.generators], "orbits": rows}
    checks = {}
    if witness is not None:
        checks["oliver_witness"] = verify_oliver_witness(witness)
    lines = [f"group of order {group.order} on {group.degree} points, {len(rows)} edge orbits"]
    lines += [f"  size {r['size']:3d}  {r['graph6']}" for r in rows]
    return checks, results, {}, lines


def cmd_chi(args):
    gens = _graphs(args.graphs, args.n)
    prop = property_from_generators(gens[0].n, gens)
    chi = chi_by_classes(prop)
    results = {"n": prop.n, "generators": [to_graph6(g) for g in prop.generators], "chi": chi}
    checks = {}
    if args.check:
        faces = euler_characteristic(property_complex(prop))
        results["chi_faces"] = faces
        checks["class_sum_equals_face_count"] = faces == chi
    lines = [f"chi = {chi}" + (f" (face count {results['chi_faces']})" if args.check else "")]
    return checks, results, {}, lines


def cmd_complexity(args):
    from .querygame import QueryGame, as_oracle
    gens = _graphs(args.graphs, args.n)
    prop = property_from_generators(gens[0].n, gens)
    n, member = as_oracle(prop)
    game = QueryGame(n, member)
    value = game.value()
    total = n * (n - 1) // 2
    results = {"n": n, "generators": [to_graph6(g) for g in prop.generators],
               "complexity": value, "pairs": total, "evasive": value == total}
    if args.strategy:
        results["strategy"] = game.strategy()
    lines = [f"c(P) = {value} of {total} pairs: {'evasive' if value == total else 'not evasive'}"]
    return {}, results, {}, lines


def cmd_nonevasive(args):
    text = sys.stdin.read() if args.facets == "-" else open(args.facets).read()
    k = read_facets(text)
    verdict = is_non_evasive(k)
    results = {"vertices": len(k.vertices), "facets": len(k.facets),
               "non_evasive": verdict, "chi": euler_characteristic(k)}
    if args.betti:
        results["betti"] = {str(p): betti_mod_p(k, p).reduced for p in args.betti}
    checks = {}
    if verdict:
        # non-evasive complexes are contractible
        checks["chi_is_one"] = results["chi"] == 1
        for p, b in results.get("betti", {}).items():
            checks[f"acyclic_mod_{p}"] = not any(b)
    lines = [f"{'non-evasive' if verdict else 'evasive'}, chi = {results['chi']}"]
    return checks, results, {}, lines


def _scan_results(rep) -> dict:
    return {"n": rep.n, "scanned": rep.scanned,
            "observed": [to_graph6(g) for g in rep.observed],
            "predicted": [to_graph6(g) for g in rep.predicted],
            "counterexamples": [{k: (to_graph6(v) if isinstance(v, Graph) else v) for k, v in c.items()}
                                for c in rep.counterexamples]}


def cmd_classify_p(args):
    rep = verify_d3(args.p)
    lines = [f"{rep.scanned} graphs on {args.p} vertices, {len(rep.observed)} classes with "
             f"p not dividing |[G]|, {len(rep.counterexamples)} counterexamples"]
    return {"classification": rep.ok}, _scan_results(rep), {}, lines


def cmd_classify_2p(args):
    if args.p != 3:
        raise UsageError("exhaustive 2p scan is limited to p = 3 (graphs on 6 vertices)")
    rep = verify_d5_smallest()
    lines = [f"{rep.scanned} graphs on 6 vertices, {len(rep.observed)} classes with 9 | |Aut|, "
             f"{len(rep.counterexamples)} counterexamples"]
    return {"classification": rep.ok}, _scan_results(rep), {}, lines


def cmd_ideals(args):
    if args.n is None:
        from .tenvertex import ideal_names, ideals10
        rep = ideals10()
        ideals = {str(k): sorted(ideal_names(d)) for k, d in sorted(rep.ideals.items())}
        results = {"n": 10, "p": 5, "down_sets": rep.all_down_sets, "ideals": ideals,
                   "unmatched": [sorted(s) for s in rep.unmatched], "duality": rep.duality_ok}
        lines = [f"{rep.all_down_sets} down-sets, {len(ideals)} with chi = 1 mod 5"]
        lines += [f"  I{k}: {', '.join(v)}" for k, v in ideals.items()]
        checks = {"nine_ideals": not rep.unmatched and not rep.missing,
                  "independent_count": rep.all_down_sets == rep.independent_count,
                  "duality": rep.duality_ok}
        return checks, results, {}, lines
    if args.n > 5:
        raise UsageError("full class posets are supported for n <= 5")
    poset = class_poset(graph_classes(args.n))
    full = (1 << len(poset)) - 1
    # the void and the full property are excluded; the rest dualize to each other
    good = [d for d in down_sets(poset, max_elements=len(poset))
            if d.mask not in (0, full) and ideal_sum_mod(poset, d, args.p) == 1 % args.p]
    names = [to_graph6(g) for g in poset.classes]
    ideals = [[names[i] for i in d.members()] for d in good]
    dual_closed = {d.mask for d in good} == {dual_ideal(poset, d).mask for d in good}
    results = {"n": args.n, "p": args.p, "classes": names, "ideals": ideals,
               "closed_under_duality": dual_closed}
    lines = [f"{len(good)} down-sets with chi = 1 mod {args.p} over {len(poset)} classes"]
    return {"closed_under_duality": dual_closed}, results, {}, lines


def cmd_wormald(args):
    if args.graphs:
        graphs = [(is_regular(g), g) for g in _graphs(args.graphs, args.n)]
    else:
        graphs = connected_regular_graphs(args.max_n)
    rows, ok = [], True
    for r, g in graphs:
        aut = aut_group_size(g)
        bound = wormald_bound(g)
        row = {"graph6": to_graph6(g), "n": g.n, "degree": r, "aut": aut, "bound": bound,
               "divides": bound % aut == 0}
        if r < 3:
            row["divides_rn"] = (r * g.n) % aut == 0
        ok &= row["divides"] and row.get("divides_rn", True)
        rows.append(row)
    lines = [f"{len(rows)} connected regular graphs, all divisibility checks "
             f"{'hold' if ok else 'FAIL'}"]
    return {"divisibility": ok}, {"graphs": rows}, {}, lines


def cmd_verify10(args):
    from .tenvertex import report
    rep = report(trace=args.trace)
    evidence = {}
    if args.trace:
        evidence = {"verdicts": {k: v.pop("evidence") for k, v in rep["verdicts"].items()},
                    "hasse_witnesses": rep.pop("hasse_witnesses")}
    rep.pop("ok")
    checks = {"table": all(r["matches_published"] for r in rep["table"]),
              "hasse": rep["covers_match_published"], "ideals": rep["ideals_match_published"],
              "type37": rep["verdicts"]["3,7"]["status"] == "eliminated",
              "type19": rep["verdicts"]["1,9"]["status"] == "eliminated"}
    lines = [f"table matches: {all(r['matches_published'] for r in rep['table'])}",
             f"Hasse covers match: {rep['covers_match_published']}",
             f"ideals match: {rep['ideals_match_published']} ({rep['down_sets_total']} down-sets)",
             f"eliminated types: {rep['eliminated']}, open: {rep['open']}"]
    return checks, rep, evidence, lines


def cmd_verify_primepower(args):
    from .querygame import verify_primepower
    rep = verify_primepower(args.n, workers=args.threads)
    results = {"n": rep.n, "classes": rep.classes, "properties": rep.properties,
               "nontrivial": rep.nontrivial, "evasive": rep.evasive,
               "trivial_values": rep.trivial_values, "failures": rep.failures}
    lines = [f"{rep.properties} monotone properties on {rep.n} vertices, "
             f"{rep.evasive}/{rep.nontrivial} nontrivial ones evasive"]
    return {"all_evasive": rep.ok}, results, {}, lines


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--trace", action="store_true", help="include evidence traces")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                        help="worker processes for batch runs (default: all cores)")

    parser = argparse.ArgumentParser(prog="evasive", description=__doc__.splitlines()[0],
                                     parents=[common])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("aut", cmd_aut, "automorphism group size and class size")
    p.add_argument("graphs", nargs="+", help="graph6 strings or edge lists like 0-1,1-2")
    p.add_argument("--n", type=int, help="vertex count for edge lists")

    p = add("orbits", cmd_orbits, "edge orbits of a permutation group")
    p.add_argument("--group", help="type1, type37, affine:p[,r], matching:p or double:p")
    p.add_argument("--gen", action="append", help='generator in cycle notation, e.g. "(0 5)(1 2)"')
    p.add_argument("--degree", type=int)

    p = add("chi", cmd_chi, "Euler characteristic of a monotone property")
    p.add_argument("graphs", nargs="+", help="generators of the property")
    p.add_argument("--n", type=int)
    p.add_argument("--check", action="store_true", help="also count faces (n <= 6)")

    p = add("complexity", cmd_complexity, "exact decision-tree complexity (n <= 6)")
    p.add_argument("graphs", nargs="+", help="generators of the property")
    p.add_argument("--n", type=int)
    p.add_argument("--strategy", action="store_true", help="emit the optimal decision tree")

    p = add("nonevasive", cmd_nonevasive, "non-evasiveness of a complex in facet-list format")
    p.add_argument("facets", help="facet file, or - for standard input")
    p.add_argument("--betti", type=int, action="append", metavar="P",
                   help="also report reduced Betti numbers mod P")

    p = add("classify-p", cmd_classify_p, "classes on p vertices with p not dividing |[G]|")
    p.add_argument("--p", type=int, choices=(3, 5), required=True)

    p = add("classify-2p", cmd_classify_2p, "classes on 2p vertices with p^2 dividing |Aut|")
    p.add_argument("--p", type=int, default=3)

    p = add("ideals", cmd_ideals, "order ideals with chi = 1 mod p")
    p.add_argument("--n", type=int, help="use the full class poset on n vertices instead")
    p.add_argument("--p", type=int, default=5)

    p = add("wormald", cmd_wormald, "automorphism divisibility for connected regular graphs")
    p.add_argument("graphs", nargs="*")
    p.add_argument("--n", type=int)
    p.add_argument("--max-n", type=int, default=8)

    add("verify-10", cmd_verify10, "the ten-vertex table, poset, ideals and eliminations")

    p = add("verify-primepower", cmd_verify_primepower, "evasiveness of all monotone properties")
    p.add_argument("--n", type=int, choices=(4, 5), default=4)
    return parser


def make_report(args, checks: dict, results: dict, evidence: dict, wall: float) -> dict:
    inputs = {k: v for k, v in sorted(vars(args).items())
              if k not in ("func", "json", "trace", "threads", "command")}
    rep = {"schema_version": SCHEMA_VERSION, "version": __version__, "command": args.command,
           "inputs": inputs, "ok": all(checks.values()), "checks": checks, "results": results,
           "wall_time_s": round(wall, 3)}
    if args.trace:
        rep["evidence"] = evidence
    return rep


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        checks, results, evidence, lines = args.func(args)
    except (UsageError, ValueError, OSError) as exc:
        print(f"evasive {args.command}: error: {exc}", file=sys.stderr)
        return 2
    wall = time.perf_counter() - start
    ok = all(checks.values())
    failed = [name for name, passed in checks.items() if not passed]
    if args.json:
        print(json.dumps(make_report(args, checks, results, evidence, wall), sort_keys=True, indent=1))
    else:
        for line in lines:
            print(line)
        if args.trace and evidence:
            print(json.dumps(evidence, sort_keys=True, indent=1))
        print("OK" if ok else "FAILED")
    if failed:
        print(f"evasive {args.command}: failed checks: {', '.join(failed)}", file=sys.stderr)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
