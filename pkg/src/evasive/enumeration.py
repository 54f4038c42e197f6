"""Exhaustive enumeration of small graphs.

``scan_all_graphs`` labels every graph on n <= 6 vertices with its canonical
key and automorphism count by applying all n! relabelings at once with
numpy.  It shares no code with the branch-and-bound search in ``graphs`` and
serves as its oracle.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations

import numpy as np

from .graphs import (Graph, GraphError, canonical_form, complement, is_connected,
                     num_pairs, pair_index)

MAX_FULL_SCAN_N = 6
MAX_CLASS_N = 7


def lex_key_to_graph(n: int, key: int) -> Graph:
    total = num_pairs(n)
    return Graph(n, int(format(key, f"0{total}b")[::-1], 2) if total else 0)


def graph_to_lex_key(g: Graph) -> int:
    total = num_pairs(g.n)
    return int(format(g.edges, f"0{total}b")[::-1], 2) if total else 0


@lru_cache(maxsize=None)
def scan_all_graphs(n: int) -> tuple[np.ndarray, np.ndarray]:
    """For every edge bitset 0..2^N-1 return (canonical lex key, |Aut|)."""
    if not 2 <= n <= MAX_FULL_SCAN_N:
        raise GraphError(f"full scan supports 2 <= n <= {MAX_FULL_SCAN_N}")
    total = num_pairs(n)
    graphs = np.arange(1 << total, dtype=np.int64)
    pairs = [(i, j) for j in range(n) for i in range(j)]
    rev = np.zeros_like(graphs)
    for b in range(total):
        rev |= ((graphs >> b) & 1) << (total - 1 - b)
    best = np.full_like(graphs, np.iinfo(np.int64).max)
    aut = np.zeros_like(graphs)
    for perm in permutations(range(n)):
        img = np.zeros_like(graphs)
        for b, (i, j) in enumerate(pairs):
            img |= ((graphs >> b) & 1) << (total - 1 - pair_index(perm[i], perm[j]))
        np.minimum(best, img, out=best)
        aut += img == rev
    return best, aut


@lru_cache(maxsize=None)
def graph_classes(n: int) -> tuple[Graph, ...]:
    """One canonical representative per isomorphism class, empty graph included,
    ordered by edge count then canonical key."""
    if n <= MAX_FULL_SCAN_N:
        keys, _ = scan_all_graphs(n)
        reps = [lex_key_to_graph(n, int(k)) for k in np.unique(keys)]
    elif n <= MAX_CLASS_N:
        reps = _classes_by_augmentation(n)
    else:
        raise GraphError(f"class enumeration supports n <= {MAX_CLASS_N}")
    return tuple(sorted(reps, key=lambda g: (g.m, graph_to_lex_key(g))))


def _classes_by_augmentation(n: int) -> list[Graph]:
    total = num_pairs(n)
    level = {canonical_form(Graph(n, 0))}
    out = list(level)
    for _ in range(total // 2):
        nxt = set()
        for g in level:
            free = ~g.edges & ((1 << total) - 1)
            while free:
                low = free & -free
                free ^= low
                nxt.add(canonical_form(Graph(n, g.edges | low)))
        out.extend(nxt)
        level = nxt
    # classes above half the edges are complements of those below
    seen = set(out)
    for g in list(out):
        c = canonical_form(complement(g))
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


def regular_graphs(n: int, r: int) -> list[Graph]:
    """All r-regular graphs on n vertices up to isomorphism (labelled search, practical for n <= 8)."""
    if n * r % 2 or r >= n:
        return []
    if 2 * r > n - 1:
        return sorted({canonical_form(complement(g)) for g in regular_graphs(n, n - 1 - r)},
                      key=graph_to_lex_key)
    found: set[Graph] = set()
    adj = [0] * n
    deg = [0] * n
    # vertex 0 may be taken adjacent to 1..r without loss of generality
    for v in range(1, r + 1):
        adj[0] |= 1 << v
        adj[v] |= 1
        deg[0] += 1
        deg[v] += 1

    def fill(u: int, start: int):
        if u == n:
            bits = 0
            for a in range(n):
                for b in range(a + 1, n):
                    if adj[a] >> b & 1:
                        bits |= 1 << pair_index(a, b)
            found.add(canonical_form(Graph(n, bits)))
            return
        need = r - deg[u]
        if need == 0:
            fill(u + 1, u + 2)
            return
        for v in range(max(start, u + 1), n):
            if deg[v] < r and not adj[u] >> v & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
                deg[u] += 1
                deg[v] += 1
                fill(u, v + 1)
                adj[u] &= ~(1 << v)
                adj[v] &= ~(1 << u)
                deg[u] -= 1
                deg[v] -= 1

    fill(0 if r == 0 else 1, 2)
    return sorted(found, key=graph_to_lex_key)


def connected_regular_graphs(max_n: int) -> list[tuple[int, Graph]]:
    """(degree, graph) for every connected regular graph of positive degree on <= max_n vertices."""
    out = []
    for n in range(2, max_n + 1):
        for r in range(1, n):
            for g in regular_graphs(n, r):
                if is_connected(g):
                    out.append((r, g))
    return out
