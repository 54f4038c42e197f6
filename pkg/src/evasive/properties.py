"""Monotone graph properties, their complexes, and Euler characteristics
counted by isomorphism classes."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations, permutations
from typing import Iterable, Sequence

import numpy as np

from .enumeration import graph_classes, lex_key_to_graph, scan_all_graphs
from .graphs import (Graph, GraphError, aut_group_size, canonical_form, circulant_cycles,
                     complement, complete_graph, disjoint_union, empty_graph,
                     is_spanning_subgraph_iso, join, num_pairs, pair_index, index_pair)
from .simplicial import SimplicialComplex

MAX_COMPLEX_N = 6
MAX_POSET = 20
DOWNSET_CAP = 10 ** 6


class PropertyError(ValueError):
    pass


# --------------------------------------------------------------------------
# properties

@dataclass(frozen=True)
class MonotoneProperty:
    n: int
    generators: tuple[Graph, ...]

    def __contains__(self, g: Graph) -> bool:
        return contains(self, g)


def property_from_generators(n: int, graphs: Iterable[Graph]) -> MonotoneProperty:
    """Keep the maximal graphs (up to isomorphism) as canonical generators."""
    canon = []
    for g in graphs:
        if g.n != n:
            raise PropertyError(f"generator on {g.n} vertices, expected {n}")
        canon.append(canonical_form(g))
    canon = sorted(set(canon), key=lambda g: (-g.m, g.edges))
    kept: list[Graph] = []
    for g in canon:
        if not any(is_spanning_subgraph_iso(g, h) for h in kept):
            kept.append(g)
    return MonotoneProperty(n, tuple(sorted(kept, key=lambda g: (g.m, g.edges))))


def random_property(rng, n: int, max_generators: int = 3) -> MonotoneProperty:
    """Nonempty property generated by a few uniformly random graphs on n vertices."""
    total = num_pairs(n)
    gens = [Graph(n, rng.getrandbits(total)) for _ in range(rng.randint(1, max_generators))]
    return property_from_generators(n, gens)


def contains(prop: MonotoneProperty, g: Graph) -> bool:
    if g.n != prop.n:
        raise PropertyError("vertex-count mismatch")
    return any(is_spanning_subgraph_iso(g, h) for h in prop.generators)


def is_trivial(prop: MonotoneProperty) -> bool:
    full = complete_graph(prop.n)
    return not prop.generators or any(h == full for h in prop.generators)


def dual_property(prop: MonotoneProperty) -> MonotoneProperty:
    """P* = {G : complement(G) not in P}, for n small enough to list classes."""
    members = [g for g in graph_classes(prop.n) if not contains(prop, complement(g))]
    return property_from_generators(prop.n, members)


def membership_table(prop: MonotoneProperty) -> np.ndarray:
    """Boolean membership for every edge bitset (n <= 6)."""
    keys, _ = scan_all_graphs(prop.n)
    inside = set()
    for key in np.unique(keys):
        if contains(prop, lex_key_to_graph(prop.n, int(key))):
            inside.add(int(key))
    return np.isin(keys, np.fromiter(inside, dtype=np.int64, count=len(inside)))


def _relabelings(g: Graph) -> set[int]:
    return {g.relabel(p).edges for p in permutations(range(g.n))}


def property_complex(prop: MonotoneProperty) -> SimplicialComplex:
    """Complex on the vertex pairs whose faces are the members' edge sets."""
    if prop.n > MAX_COMPLEX_N:
        raise PropertyError(f"property complex supports n <= {MAX_COMPLEX_N}")
    if not prop.generators:
        raise PropertyError("empty property has no complex")
    universe = tuple(index_pair(k) for k in range(num_pairs(prop.n)))
    masks: set[int] = set()
    for h in prop.generators:
        masks |= _relabelings(h)
    return SimplicialComplex.from_masks(universe, masks)


# --------------------------------------------------------------------------
# classes and Euler characteristic

@dataclass(frozen=True)
class IsoClass:
    representative: Graph
    size: int
    aut: int

    @property
    def edge_count(self) -> int:
        return self.representative.m

    @property
    def signed_size(self) -> int:
        return (-1) ** (self.edge_count - 1) * self.size


def iso_class(g: Graph) -> IsoClass:
    aut = aut_group_size(g)
    return IsoClass(canonical_form(g), math.factorial(g.n) // aut, aut)


def enumerate_iso_classes(prop: MonotoneProperty) -> list[IsoClass]:
    """Classes with at least one edge contained in the property."""
    if prop.n > 7:
        raise PropertyError("class enumeration supports n <= 7")
    return [iso_class(g) for g in graph_classes(prop.n) if g.m > 0 and contains(prop, g)]


def chi_by_classes(prop: MonotoneProperty) -> int:
    if prop.n > MAX_COMPLEX_N:
        raise PropertyError(f"chi_by_classes supports n <= {MAX_COMPLEX_N}")
    return sum(c.signed_size for c in enumerate_iso_classes(prop))


@lru_cache(maxsize=4096)
def contribution(g: Graph) -> int:
    """Signed term (-1)^(m-1) |[G]| of the class sum."""
    return (-1) ** (g.m - 1) * (math.factorial(g.n) // aut_group_size(g))


def contribution_mod_p(g: Graph, p: int) -> int:
    return contribution(g) % p


def signed_residue(r: int, p: int) -> int:
    """Representative of r mod p nearest zero, e.g. 3 mod 5 -> -2."""
    r %= p
    return r - p if r > p // 2 else r


# --------------------------------------------------------------------------
# classification of graphs on p and 2p vertices

def special_classes_p(p: int) -> list[Graph]:
    """The empty graph and all C(s1,...,sl), deduplicated by canonical form."""
    if p not in (3, 5, 7):
        raise PropertyError("p must be 3, 5 or 7")
    half = (p - 1) // 2
    out = {canonical_form(empty_graph(p))}
    for k in range(1, half + 1):
        for steps in combinations(range(1, half + 1), k):
            out.add(canonical_form(circulant_cycles(p, steps)))
    return sorted(out, key=lambda g: (g.m, g.edges))


@dataclass
class ScanReport:
    n: int
    scanned: int
    observed: list[Graph]
    predicted: list[Graph]
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def verify_d3(p: int) -> ScanReport:
    """Scan all graphs on p vertices; p must fail to divide |[G]| exactly on the
    empty graph and the circulant unions."""
    if p not in (3, 5):
        raise PropertyError("exhaustive D3 scan supports p in {3, 5}")
    keys, aut = scan_all_graphs(p)
    sizes = math.factorial(p) // aut
    observed = {int(k) for k in np.unique(keys[sizes % p != 0])}
    return _compare(p, len(keys), observed, special_classes_p(p))


def d5_predicted(p: int) -> list[Graph]:
    base = special_classes_p(p)
    out = set()
    for g1 in base:
        for g2 in base:
            out.add(canonical_form(disjoint_union(g1, g2)))
            out.add(canonical_form(join(g1, g2)))
    return sorted(out, key=lambda g: (g.m, g.edges))


def verify_d5_smallest() -> ScanReport:
    """All 2^15 graphs on 6 vertices: 9 divides |Aut| exactly on unions and joins
    of two graphs from the p = 3 classification."""
    p, n = 3, 6
    keys, aut = scan_all_graphs(n)
    observed = {int(k) for k in np.unique(keys[aut % (p * p) == 0])}
    report = _compare(n, len(keys), observed, d5_predicted(p))
    sizes = math.factorial(n) // aut
    mismatch = np.nonzero((aut % (p * p) == 0) != (sizes % p != 0))[0]
    for idx in mismatch[:10]:
        report.counterexamples.append({"edges": int(idx), "reason": "p^2 | Aut differs from p !| [G]"})
    return report


def _compare(n: int, scanned: int, observed_keys: set[int], predicted: list[Graph]) -> ScanReport:
    from .enumeration import graph_to_lex_key
    pred_keys = {graph_to_lex_key(g) for g in predicted}
    report = ScanReport(n, scanned,
                        [lex_key_to_graph(n, k) for k in sorted(observed_keys)], predicted)
    for k in sorted(observed_keys - pred_keys):
        report.counterexamples.append({"graph": lex_key_to_graph(n, k), "reason": "observed, not predicted"})
    for k in sorted(pred_keys - observed_keys):
        report.counterexamples.append({"graph": lex_key_to_graph(n, k), "reason": "predicted, not observed"})
    return report


# --------------------------------------------------------------------------
# class posets and order ideals

@dataclass
class ClassPoset:
    classes: list[Graph]
    leq: list[list[bool]]  # leq[i][j]: class i is a spanning subgraph of class j
    covers: list[tuple[int, int]]
    witnesses: dict[tuple[int, int], list[int]] = field(default_factory=dict)

    def __len__(self):
        return len(self.classes)

    @cached_property
    def lower_covers(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.classes]
        for lo, hi in self.covers:
            out[hi].append(lo)
        return out

    def index_of(self, g: Graph) -> int:
        c = canonical_form(g)
        return self.classes.index(c)

    @cached_property
    def complement_map(self) -> list[int]:
        return [self.index_of(complement(g)) for g in self.classes]


def class_poset(classes: Sequence[Graph], max_size: int = 64) -> ClassPoset:
    from .graphs import find_subgraph_embedding
    if len(classes) > max_size:
        raise PropertyError(f"poset of {len(classes)} classes exceeds cap {max_size}")
    reps = [canonical_form(g) for g in classes]
    if len(set(reps)) != len(reps):
        raise PropertyError("classes are not pairwise non-isomorphic")
    k = len(reps)
    leq = [[i == j for j in range(k)] for i in range(k)]
    witnesses = {}
    for i in range(k):
        for j in range(k):
            if i != j and reps[i].m < reps[j].m:
                w = find_subgraph_embedding(reps[i], reps[j])
                if w is not None:
                    leq[i][j] = True
                    witnesses[(i, j)] = w
    covers = [
        (i, j) for i in range(k) for j in range(k)
        if i != j and leq[i][j]
        and not any(leq[i][t] and leq[t][j] for t in range(k) if t not in (i, j))
    ]
    return ClassPoset(reps, leq, covers, witnesses)


@dataclass(frozen=True)
class DownSet:
    mask: int

    def members(self) -> list[int]:
        return [i for i in range(self.mask.bit_length()) if self.mask >> i & 1]


def is_down_set(poset: ClassPoset, mask: int) -> bool:
    return all(mask >> lo & 1 for lo, hi in poset.covers if mask >> hi & 1)


def down_sets(poset: ClassPoset, max_elements: int = MAX_POSET,
              cap: int = DOWNSET_CAP) -> list[DownSet]:
    """All downward-closed subsets, by deciding elements in a linear extension."""
    if len(poset) > max_elements:
        raise PropertyError(f"poset has {len(poset)} elements, cap is {max_elements}")
    k = len(poset)
    order = sorted(range(k), key=lambda i: (sum(poset.leq[t][i] for t in range(k)), i))
    lows = poset.lower_covers
    out: list[int] = []

    def rec(pos: int, mask: int):
        if pos == k:
            out.append(mask)
            if len(out) > cap:
                raise PropertyError(f"more than {cap} down-sets")
            return
        i = order[pos]
        rec(pos + 1, mask)
        if all(mask >> lo & 1 for lo in lows[i]):
            rec(pos + 1, mask | 1 << i)

    rec(0, 0)
    return [DownSet(m) for m in sorted(out, key=lambda m: (m.bit_count(), m))]


def count_down_sets(poset: ClassPoset) -> int:
    """Independent count: a down-set either omits a minimal element x (then
    omits everything above x) or contains it and recurses on the rest."""
    k = len(poset)

    def rec(alive: int) -> int:
        if alive == 0:
            return 1
        x = next(i for i in range(k) if alive >> i & 1
                 and not any(alive >> t & 1 and poset.leq[t][i] and t != i for t in range(k)))
        above = sum(1 << t for t in range(k) if poset.leq[x][t])
        return rec(alive & ~above) + rec(alive & ~(1 << x))

    return rec((1 << k) - 1)


def ideal_sum_mod(poset: ClassPoset, ideal: DownSet, p: int) -> int:
    """Class sum of chi mod p; the edgeless class is the empty face and is skipped."""
    return sum(contribution_mod_p(poset.classes[i], p) for i in ideal.members()
               if poset.classes[i].m > 0) % p


def ideals_with_chi_one(poset: ClassPoset, p: int) -> list[DownSet]:
    return [d for d in down_sets(poset) if ideal_sum_mod(poset, d, p) == 1 % p]


def dual_ideal(poset: ClassPoset, ideal: DownSet) -> DownSet:
    """{[G] : [complement G] not in the ideal}."""
    comp = poset.complement_map
    mask = 0
    for i in range(len(poset)):
        if not ideal.mask >> comp[i] & 1:
            mask |= 1 << i
    return DownSet(mask)
