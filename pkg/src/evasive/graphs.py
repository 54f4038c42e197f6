"""Graphs on at most 16 vertices stored as edge bitsets.

Pair {i, j} with i < j lives at bit ``j*(j-1)//2 + i`` (colex order), which is
also the bit order used by graph6.  Everything that searches over vertex
relabelings (automorphisms, canonical forms, subgraph embeddings) is capped
at ``MAX_SEARCH_N`` vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Iterable, Sequence

MAX_N = 16
MAX_SEARCH_N = 10
MAX_SCAN_N = 7


class GraphError(ValueError):
    """Invalid graph input or a graph outside the supported size range."""


def pair_index(i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def index_pair(idx: int) -> tuple[int, int]:
    """Inverse of :func:`pair_index`."""
    j = int((1 + math.isqrt(1 + 8 * idx)) // 2)
    while j * (j - 1) // 2 > idx:
        j -= 1
    while (j + 1) * j // 2 <= idx:
        j += 1
    return idx - j * (j - 1) // 2, j


@dataclass(frozen=True)
class Graph:
    n: int
    edges: int = 0

    def __post_init__(self):
        if not 2 <= self.n <= MAX_N:
            raise GraphError(f"vertex count {self.n} outside [2, {MAX_N}]")
        if self.edges < 0 or self.edges >> num_pairs(self.n):
            raise GraphError("edge bitset has bits beyond n(n-1)/2")

    @property
    def m(self) -> int:
        return self.edges.bit_count()

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as a vertex bitmask."""
        rows = [0] * self.n
        for i, j in self.edge_list():
            rows[i] |= 1 << j
            rows[j] |= 1 << i
        return tuple(rows)

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and (self.edges >> pair_index(i, j)) & 1 == 1

    def edge_list(self) -> list[tuple[int, int]]:
        out = []
        bits = self.edges
        while bits:
            low = bits & -bits
            out.append(index_pair(low.bit_length() - 1))
            bits ^= low
        return out

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image of the graph under ``v -> perm[v]``."""
        bits = 0
        for i, j in self.edge_list():
            bits |= 1 << pair_index(perm[i], perm[j])
        return Graph(self.n, bits)

    def is_subgraph_of(self, other: "Graph") -> bool:
        """Labelled containment of edge sets."""
        return self.n == other.n and self.edges & ~other.edges == 0

    def __or__(self, other: "Graph") -> "Graph":
        if self.n != other.n:
            raise GraphError("vertex counts differ")
        return Graph(self.n, self.edges | other.edges)

    def __str__(self):
        return f"Graph(n={self.n}, m={self.m}, {to_graph6(self)})"


def make_graph(n: int, pairs: Iterable[Sequence[int]]) -> Graph:
    if not 2 <= n <= MAX_N:
        raise GraphError(f"vertex count {n} outside [2, {MAX_N}]")
    bits = 0
    for pair in pairs:
        i, j = pair
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise GraphError(f"bad pair {pair!r} for n={n}")
        bits |= 1 << pair_index(i, j)
    return Graph(n, bits)


def empty_graph(n: int) -> Graph:
    return Graph(n, 0)


def complete_graph(n: int) -> Graph:
    return Graph(n, (1 << num_pairs(n)) - 1)


def cycle_graph(n: int) -> Graph:
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int, length: int | None = None) -> Graph:
    """Path through vertices 0..length on n vertices (default spans all)."""
    length = n - 1 if length is None else length
    return make_graph(n, [(i, i + 1) for i in range(length)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return make_graph(10, outer + spokes + inner)


def complement(g: Graph) -> Graph:
    return Graph(g.n, ((1 << num_pairs(g.n)) - 1) ^ g.edges)


def _shifted(g: Graph, offset: int, n: int) -> int:
    bits = 0
    for i, j in g.edge_list():
        bits |= 1 << pair_index(i + offset, j + offset)
    return bits


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    n = g1.n + g2.n
    if n > MAX_N:
        raise GraphError(f"combined size {n} exceeds {MAX_N}")
    return Graph(n, g1.edges | _shifted(g2, g1.n, n))


def join(g1: Graph, g2: Graph) -> Graph:
    n = g1.n + g2.n
    bits = disjoint_union(g1, g2).edges
    for i in range(g1.n):
        for j in range(g1.n, n):
            bits |= 1 << pair_index(i, j)
    return Graph(n, bits)


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise GraphError("both sides need at least one vertex")
    return make_graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def embed(g: Graph, n: int, vertices: Sequence[int]) -> Graph:
    """Place ``g`` on ``n`` vertices, sending its vertex k to ``vertices[k]``."""
    return make_graph(n, [(vertices[i], vertices[j]) for i, j in g.edge_list()])


_SMALL_PRIMES = (3, 5, 7, 11, 13)


def circulant_cycles(p: int, steps: Iterable[int]) -> Graph:
    """C(s1, ..., sl): edges {x, x+s mod p} for every x and every step s."""
    steps = sorted(set(steps))
    if p not in _SMALL_PRIMES:
        raise GraphError(f"p={p} is not an odd prime in {_SMALL_PRIMES}")
    if not steps or any(not 1 <= s <= (p - 1) // 2 for s in steps):
        raise GraphError(f"steps {steps} must be a non-empty subset of 1..{(p - 1) // 2}")
    return make_graph(p, [(x, (x + s) % p) for s in steps for x in range(p)])


# --------------------------------------------------------------------------
# graph6

def to_graph6(g: Graph) -> str:
    if g.n > 62:
        raise GraphError("graph6 short form supports n <= 62 only")
    total = num_pairs(g.n)
    out = [chr(g.n + 63)]
    for start in range(0, total, 6):
        chunk = 0
        for k in range(6):
            chunk <<= 1
            idx = start + k
            if idx < total and (g.edges >> idx) & 1:
                chunk |= 1
        out.append(chr(chunk + 63))
    return "".join(out)


def from_graph6(text: str) -> Graph:
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[len(">>graph6<<"):]
    if not text:
        raise GraphError("empty graph6 string")
    n = ord(text[0]) - 63
    if not 0 <= n <= 62:
        raise GraphError("graph6 size byte out of short-form range")
    total = num_pairs(n)
    body = text[1:]
    if len(body) != (total + 5) // 6:
        raise GraphError(f"graph6 body has {len(body)} bytes, expected {(total + 5) // 6}")
    bits = 0
    for pos, ch in enumerate(body):
        val = ord(ch) - 63
        if not 0 <= val < 64:
            raise GraphError(f"invalid graph6 character {ch!r}")
        for k in range(6):
            idx = pos * 6 + k
            if (val >> (5 - k)) & 1:
                if idx >= total:
                    raise GraphError("nonzero padding bits in graph6 string")
                bits |= 1 << idx
    return Graph(n, bits)


def parse_graph(text: str, n: int | None = None) -> Graph:
    """Accept graph6 or an inline edge list like ``"0-1,2-3"``."""
    text = text.strip()
    if "-" in text or (n is not None and text == ""):
        pairs = []
        for item in filter(None, (s.strip() for s in text.split(","))):
            a, b = item.split("-")
            pairs.append((int(a), int(b)))
        if n is None:
            n = max((max(p) for p in pairs), default=1) + 1
        return make_graph(n, pairs)
    return from_graph6(text)


# --------------------------------------------------------------------------
# structure

@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]

    @property
    def histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for d in self.degrees:
            hist[d] = hist.get(d, 0) + 1
        return dict(sorted(hist.items()))


def degree_profile(g: Graph) -> DegreeProfile:
    return DegreeProfile(tuple(g.degrees()))


def is_regular(g: Graph) -> int | None:
    degs = set(g.degrees())
    return degs.pop() if len(degs) == 1 else None


def component_vertex_sets(g: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for start in range(g.n):
        if seen >> start & 1:
            continue
        comp = frontier = 1 << start
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            new = g.adj[low.bit_length() - 1] & ~comp
            comp |= new
            frontier |= new
        seen |= comp
        comps.append([v for v in range(g.n) if comp >> v & 1])
    return comps


def is_connected(g: Graph) -> bool:
    return len(component_vertex_sets(g)) == 1


@dataclass(frozen=True)
class Component:
    vertices: tuple[int, ...]
    graph: Graph | None  # None for an isolated vertex (graphs need n >= 2)


def connected_components(g: Graph) -> list[Component]:
    """Components as induced subgraphs; ``vertices[k]`` is the original label of k."""
    out = []
    for verts in component_vertex_sets(g):
        if len(verts) == 1:
            out.append(Component(tuple(verts), None))
            continue
        pos = {v: k for k, v in enumerate(verts)}
        pairs = [(pos[i], pos[j]) for i, j in g.edge_list() if i in pos and j in pos]
        out.append(Component(tuple(verts), make_graph(len(verts), pairs)))
    return out


# --------------------------------------------------------------------------
# searches over relabelings

def _check_search_size(n: int, cap: int = MAX_SEARCH_N):
    if n > cap:
        raise GraphError(f"n={n} exceeds the search cap of {cap} vertices")


def _refine_colors(adjs: Sequence[int], n: int, init: Sequence) -> list[int]:
    """1-dimensional colour refinement; the result is invariant under isomorphism
    when ``init`` is."""
    colors = list(init)
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in range(n) if adjs[v] >> u & 1)))
            for v in range(n)
        ]
        table = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [table[s] for s in sigs]
        if len(table) == len(set(colors)):
            return new
        colors = new


def refined_colors(g: Graph) -> list[int]:
    return _refine_colors(g.adj, g.n, g.degrees())


def _joint_colors(g: Graph, h: Graph) -> tuple[list[int], list[int]]:
    """Refine colours of g and h together so that colour names are comparable."""
    n = g.n
    adjs = list(g.adj) + [row << n for row in h.adj]
    cols = _refine_colors(adjs, 2 * n, g.degrees() + h.degrees())
    return cols[:n], cols[n:]


def _search_order(g: Graph, colors: Sequence[int]) -> list[int]:
    """Vertices ordered so each one is as constrained as possible by earlier ones."""
    sizes: dict[int, int] = {}
    for c in colors:
        sizes[c] = sizes.get(c, 0) + 1
    order: list[int] = []
    placed = 0
    remaining = set(range(g.n))
    while remaining:
        v = min(remaining, key=lambda u: (-(g.adj[u] & placed).bit_count(),
                                          sizes[colors[u]], -g.adj[u].bit_count(), u))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)
    return order


def _is_twin(adj: Sequence[int], u: int, v: int) -> bool:
    """The transposition (u v) is an automorphism."""
    return adj[u] & ~(1 << v) == adj[v] & ~(1 << u)


def aut_group_size(g: Graph) -> int:
    """Number of permutations fixing the edge set, by pruned exhaustive search."""
    _check_search_size(g.n)
    n, adj = g.n, g.adj
    colors = refined_colors(g)
    order = _search_order(g, colors)

    # A suffix of the order that is one colour class, a clique or independent
    # set, and seen identically by every earlier vertex can be completed in
    # (n-k)! ways as soon as one completion works.
    homogeneous = [False] * n
    before = 0
    for k in range(n):
        rest = order[k:]
        rest_mask = sum(1 << v for v in rest)
        inner = {(adj[v] & rest_mask).bit_count() for v in rest}
        outer = {adj[v] & before for v in rest}
        homogeneous[k] = (len(outer) == 1 and len({colors[v] for v in rest}) == 1
                          and (inner == {0} or inner == {len(rest) - 1}))
        before |= 1 << order[k]

    image = [-1] * n
    used = 0

    def consistent(k: int, w: int) -> bool:
        v = order[k]
        for i in range(k):
            u = order[i]
            if (adj[v] >> u & 1) != (adj[w] >> image[u] & 1):
                return False
        return True

    def count(k: int) -> int:
        nonlocal used
        if k == n:
            return 1
        if homogeneous[k]:
            free = [w for w in range(n) if not used >> w & 1 and colors[w] == colors[order[k]]]
            if len(free) != n - k:
                return 0
            for v, w in zip(order[k:], free):
                image[v] = w
            ok = all(consistent(i, image[order[i]]) for i in range(k, n))
            for v in order[k:]:
                image[v] = -1
            return math.factorial(n - k) if ok else 0
        v = order[k]
        total = 0
        for w in range(n):
            if used >> w & 1 or colors[w] != colors[v] or not consistent(k, w):
                continue
            image[v] = w
            used |= 1 << w
            total += count(k + 1)
            used &= ~(1 << w)
            image[v] = -1
        return total

    return count(0)


def iso_class_size(g: Graph) -> int:
    aut = aut_group_size(g)
    size, rem = divmod(math.factorial(g.n), aut)
    assert rem == 0
    return size


def canonical_form(g: Graph) -> Graph:
    """Relabeling whose edge bits, read in index order, are lexicographically least.

    Branch and bound over the vertex that receives each new label.  Label j
    fixes exactly the bits of pairs (i, j), i < j, so prefixes compare blockwise.
    Branches that differ by a twin transposition give identical results and
    are skipped.
    """
    _check_search_size(g.n)
    n, adj = g.n, g.adj
    best: list[int] = []
    best_seq: list[int] = []
    seq: list[int] = []
    blocks: list[int] = []

    def block(v: int) -> int:
        val = 0
        for u in seq:
            val = (val << 1) | (adj[v] >> u & 1)
        return val

    def search(remaining: int):
        nonlocal best, best_seq
        j = len(seq)
        if j == n:
            if not best or blocks < best:
                best, best_seq = list(blocks), list(seq)
            return
        vals = {v: block(v) for v in range(n) if remaining >> v & 1}
        low = min(vals.values())
        blocks.append(low)
        if best and blocks > best[:j + 1]:
            blocks.pop()
            return
        kept: list[int] = []
        for v, val in vals.items():
            if val != low or any(_is_twin(adj, u, v) for u in kept):
                continue
            kept.append(v)
            seq.append(v)
            search(remaining & ~(1 << v))
            seq.pop()
            if blocks > best[:j + 1]:
                break
        blocks.pop()

    search((1 << n) - 1)
    inverse = [0] * n
    for new, old in enumerate(best_seq):
        inverse[old] = new
    return g.relabel(inverse)


def canonical_form_exhaustive(g: Graph) -> Graph:
    """Oracle for :func:`canonical_form`: scan all n! relabelings (n <= 7)."""
    _check_search_size(g.n, MAX_SCAN_N)
    best = None
    for perm in permutations(range(g.n)):
        img = g.relabel(perm)
        key = _lex_key(img)
        if best is None or key < best[0]:
            best = (key, img)
    return best[1]


def _lex_key(g: Graph) -> int:
    """Integer whose order equals lexicographic order of the bit sequence."""
    total = num_pairs(g.n)
    return int(format(g.edges, f"0{total}b")[::-1], 2) if total else 0


def aut_group_size_exhaustive(g: Graph) -> int:
    """Oracle: count fixed relabelings over all n! permutations (n <= 7)."""
    _check_search_size(g.n, MAX_SCAN_N)
    return sum(1 for perm in permutations(range(g.n)) if g.relabel(perm).edges == g.edges)


def _embed_search(g: Graph, h: Graph, exact: bool) -> list[int] | None:
    """Find perm with g.relabel(perm) contained in (or equal to, if exact) h."""
    if g.n != h.n:
        raise GraphError("graphs must have the same vertex count")
    _check_search_size(g.n)
    n = g.n
    if exact:
        if g.m != h.m or sorted(g.degrees()) != sorted(h.degrees()):
            return None
        cg, ch = _joint_colors(g, h)
        if sorted(cg) != sorted(ch):
            return None
    else:
        if g.m > h.m:
            return None
        dg, dh = sorted(g.degrees(), reverse=True), sorted(h.degrees(), reverse=True)
        if any(a > b for a, b in zip(dg, dh)):
            return None
        cg = ch = None
    gadj, hadj = g.adj, h.adj
    hdeg = h.degrees()
    order = _search_order(g, cg if cg else g.degrees())
    pos = {v: k for k, v in enumerate(order)}
    # twins in g: impose increasing images along the order to break symmetry
    twin_prev = [None] * n
    for k, v in enumerate(order):
        for u in order[:k]:
            if _is_twin(gadj, u, v):
                twin_prev[v] = u
    image = [-1] * n
    used = 0

    def ok(v: int, w: int) -> bool:
        if exact:
            if cg[v] != ch[w]:
                return False
        elif hdeg[w] < gadj[v].bit_count():
            return False
        for i in range(pos[v]):
            u = order[i]
            e_g = gadj[v] >> u & 1
            e_h = hadj[w] >> image[u] & 1
            if e_g and not e_h:
                return False
            if exact and e_h and not e_g:
                return False
        return True

    def search(k: int) -> bool:
        nonlocal used
        if k == n:
            return True
        v = order[k]
        lower = image[twin_prev[v]] if twin_prev[v] is not None else -1
        tried: list[int] = []
        for w in range(lower + 1, n):
            if used >> w & 1:
                continue
            if any(_is_twin(hadj, t, w) for t in tried):
                continue
            tried.append(w)
            if ok(v, w):
                image[v] = w
                used |= 1 << w
                if search(k + 1):
                    return True
                used &= ~(1 << w)
                image[v] = -1
        return False

    return list(image) if search(0) else None


def find_subgraph_embedding(g: Graph, h: Graph) -> list[int] | None:
    """A permutation sending g into h edge-wise, or None."""
    return _embed_search(g, h, exact=False)


def is_spanning_subgraph_iso(g: Graph, h: Graph) -> bool:
    return find_subgraph_embedding(g, h) is not None


def find_isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """A permutation with g.relabel(perm) == h, or None."""
    return _embed_search(g, h, exact=True)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    return find_isomorphism(g, h) is not None


# --------------------------------------------------------------------------
# divisibility facts

def _primes_upto(k: int) -> list[int]:
    return [p for p in range(2, k + 1) if all(p % q for q in range(2, math.isqrt(p) + 1))]


def wormald_bound(g: Graph) -> int:
    """r*n*prod p^beta over primes p <= r-1, beta = sum floor((n-2)/p^a) over p^a <= r-1."""
    r = is_regular(g)
    if r is None or r == 0:
        raise GraphError("graph must be regular of positive degree")
    if not is_connected(g):
        raise GraphError("graph must be connected")
    bound = r * g.n
    for p in _primes_upto(r - 1):
        beta = 0
        q = p
        while q <= r - 1:
            beta += (g.n - 2) // q
            q *= p
        bound *= p ** beta
    return bound


def check_wormald(g: Graph) -> tuple[int, int, bool]:
    """(|Aut|, bound, divides)."""
    aut = aut_group_size(g)
    bound = wormald_bound(g)
    return aut, bound, bound % aut == 0


def aut_from_components(g: Graph) -> int:
    """|Aut| as prod |Aut(H)|^k * k! over the distinct component types H."""
    groups: dict[object, list[int]] = {}
    for comp in connected_components(g):
        key = ("K1",) if comp.graph is None else (comp.graph.n, canonical_form(comp.graph).edges)
        aut = 1 if comp.graph is None else aut_group_size(comp.graph)
        groups.setdefault(key, [aut, 0])[1] += 1
    total = 1
    for aut, k in groups.values():
        total *= aut ** k * math.factorial(k)
    return total


def cycle_components(g: Graph) -> list[int] | None:
    """Sorted cycle lengths if g is 2-regular, else None."""
    if is_regular(g) != 2:
        return None
    return sorted(len(c) for c in component_vertex_sets(g))


def is_complete_bipartite(g: Graph, a: int, b: int) -> bool:
    """g is K_{a,b} iff its complement is K_a plus K_b with no edges between."""
    if a + b != g.n or g.m != a * b:
        return False
    comps = component_vertex_sets(complement(g))
    if sorted(map(len, comps)) != sorted((a, b)):
        return False
    return all(complement(g).adj[v].bit_count() == len(c) - 1 for c in comps for v in c)


def has_perfect_matching(g: Graph) -> list[tuple[int, int]] | None:
    """A perfect matching of g, found by matching the lowest free vertex first."""
    if g.n % 2:
        return None
    adj = g.adj

    def rec(free: int) -> list[tuple[int, int]] | None:
        if not free:
            return []
        low = free & -free
        u = low.bit_length() - 1
        options = adj[u] & free
        while options:
            bit = options & -options
            options ^= bit
            rest = rec(free & ~low & ~bit)
            if rest is not None:
                return [(u, bit.bit_length() - 1)] + rest
        return None

    return rec((1 << g.n) - 1)


def all_pairs(n: int) -> list[tuple[int, int]]:
    return list(combinations(range(n), 2))
