"""Abstract simplicial complexes stored by their facets.

Faces are bitmasks over an ordered vertex universe.  The vertex set of a
complex is the union of its facets, so a universe label that lies in no
facet is not a vertex.  The complex whose only face is the empty set has
facets ``{0}``; a complex with no faces at all is rejected.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np

from .groups import GeneratedGroup, point_orbits

FACE_CAP = 1 << 20
HOMOLOGY_CAP = 1 << 16
COLLAPSE_CAP = 24


class ComplexError(ValueError):
    pass


def _maximal(masks: Iterable[int]) -> frozenset[int]:
    uniq = sorted(set(masks), key=lambda m: -m.bit_count())
    kept: list[int] = []
    for m in uniq:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return frozenset(kept)


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _submasks(mask: int):
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class SimplicialComplex:
    universe: tuple
    facets: frozenset

    def __post_init__(self):
        if not self.facets:
            raise ComplexError("void complex (no faces at all)")
        full = (1 << len(self.universe)) - 1
        if any(f & ~full for f in self.facets):
            raise ComplexError("facet outside the universe")
        if _maximal(self.facets) != self.facets:
            raise ComplexError("facets must form an antichain")

    @classmethod
    def from_faces(cls, universe: Sequence[Hashable], faces: Iterable[Iterable[Hashable]]):
        pos = {v: k for k, v in enumerate(universe)}
        masks = []
        for face in faces:
            m = 0
            for v in face:
                if v not in pos:
                    raise ComplexError(f"label {v!r} not in universe")
                m |= 1 << pos[v]
            masks.append(m)
        return cls(tuple(universe), _maximal(masks))

    @classmethod
    def from_masks(cls, universe: Sequence[Hashable], masks: Iterable[int]):
        return cls(tuple(universe), _maximal(masks))

    @cached_property
    def vertex_mask(self) -> int:
        out = 0
        for f in self.facets:
            out |= f
        return out

    @property
    def vertices(self) -> list:
        return [self.universe[k] for k in _bits(self.vertex_mask)]

    @property
    def dimension(self) -> int:
        return max(f.bit_count() for f in self.facets) - 1

    def facet_labels(self) -> list[tuple]:
        return sorted(tuple(self.universe[k] for k in _bits(f)) for f in self.facets)

    def mask_of(self, labels: Iterable[Hashable]) -> int:
        pos = {v: k for k, v in enumerate(self.universe)}
        return sum(1 << pos[v] for v in labels)

    def contains_face(self, mask: int) -> bool:
        return any(mask & f == mask for f in self.facets)

    def face_count_bound(self) -> int:
        return sum(1 << f.bit_count() for f in self.facets)

    def faces(self, cap: int = FACE_CAP) -> set[int]:
        """All faces including the empty one."""
        if self.face_count_bound() > cap and len(self.facets) > 1:
            raise ComplexError(f"face enumeration exceeds cap of {cap}")
        if len(self.facets) == 1:
            (f,) = self.facets
            if 1 << f.bit_count() > cap:
                raise ComplexError(f"face enumeration exceeds cap of {cap}")
        out: set[int] = set()
        for f in self.facets:
            out.update(_submasks(f))
        return out

    def f_vector(self, cap: int = FACE_CAP) -> list[int]:
        counts = [0] * (self.dimension + 1)
        for face in self.faces(cap):
            if face:
                counts[face.bit_count() - 1] += 1
        return counts

    def relabeled(self, universe: Sequence[Hashable]) -> "SimplicialComplex":
        if len(universe) != len(self.universe):
            raise ComplexError("universe size mismatch")
        return SimplicialComplex(tuple(universe), self.facets)

    def __str__(self):
        return write_facets(self)


def simplex(labels: Sequence[Hashable]) -> SimplicialComplex:
    return SimplicialComplex(tuple(labels), frozenset([(1 << len(labels)) - 1]))


def boundary_of_simplex(labels: Sequence[Hashable]) -> SimplicialComplex:
    full = (1 << len(labels)) - 1
    return SimplicialComplex(tuple(labels), frozenset(full ^ (1 << k) for k in range(len(labels))))


def cone(k: SimplicialComplex, apex: Hashable) -> SimplicialComplex:
    if apex in k.universe:
        raise ComplexError(f"apex {apex!r} already in universe")
    bit = 1 << len(k.universe)
    return SimplicialComplex(k.universe + (apex,), frozenset(f | bit for f in k.facets))


def euler_characteristic(k: SimplicialComplex, cap: int = FACE_CAP) -> int:
    """Sum of (-1)^dim over the non-empty faces."""
    return sum(-1 if f.bit_count() % 2 == 0 else 1 for f in k.faces(cap) if f)


def _link_masks(facets: Iterable[int], bit: int) -> frozenset[int]:
    return _maximal(f & ~bit for f in facets if f & bit)


def _del_masks(facets: Iterable[int], bit: int) -> frozenset[int]:
    return _maximal(f & ~bit for f in facets)


def _vertex_bit(k: SimplicialComplex, v: Hashable) -> int:
    try:
        bit = 1 << k.universe.index(v)
    except ValueError:
        raise ComplexError(f"{v!r} not in universe") from None
    if not k.vertex_mask & bit:
        raise ComplexError(f"{v!r} is not a vertex of the complex")
    return bit


def link(k: SimplicialComplex, v: Hashable) -> SimplicialComplex:
    return SimplicialComplex(k.universe, _link_masks(k.facets, _vertex_bit(k, v)))


def deletion(k: SimplicialComplex, v: Hashable) -> SimplicialComplex:
    return SimplicialComplex(k.universe, _del_masks(k.facets, _vertex_bit(k, v)))


# --------------------------------------------------------------------------
# non-evasiveness

def _compress(facets: frozenset[int]) -> tuple[int, ...]:
    """Order-preserving relabeling of the vertex set onto 0..k-1."""
    verts = 0
    for f in facets:
        verts |= f
    pos = {b: i for i, b in enumerate(_bits(verts))}
    return tuple(sorted(sum(1 << pos[b] for b in _bits(f)) for f in facets))


def is_non_evasive(k: SimplicialComplex, cap: int = FACE_CAP) -> bool:
    """A point is non-evasive; otherwise some vertex must have non-evasive link
    and deletion.  ``{}`` (only the empty face) is not non-evasive."""
    if k.face_count_bound() > cap:
        raise ComplexError(f"complex exceeds face cap of {cap}")
    memo: dict[tuple[int, ...], bool] = {}

    def ne(facets: frozenset[int]) -> bool:
        if facets == frozenset([0]):
            return False
        if len(facets) == 1:
            return True  # a simplex, including a single point
        apex = -1
        for f in facets:
            apex &= f
        if apex:
            return True  # a cone
        key = _compress(facets)
        if key in memo:
            return memo[key]
        verts = 0
        for f in facets:
            verts |= f
        options = []
        for b in _bits(verts):
            bit = 1 << b
            lk, dl = _link_masks(facets, bit), _del_masks(facets, bit)
            if lk == frozenset([0]):
                continue  # isolated vertex: its link is not non-evasive
            options.append((len(lk) + len(dl), lk, dl))
        options.sort(key=lambda t: t[0])
        result = any(ne(lk) and ne(dl) for _, lk, dl in options)
        memo[key] = result
        return result

    return ne(k.facets)


# --------------------------------------------------------------------------
# fixed points of a group action

def preserves(group: GeneratedGroup, k: SimplicialComplex) -> bool:
    for g in group.generators:
        for f in k.facets:
            img = sum(1 << g(b) for b in _bits(f))
            if img not in k.facets:
                return False
    return True


def fixed_point_complex(k: SimplicialComplex, group: GeneratedGroup) -> SimplicialComplex:
    """Vertices are the group orbits that are faces; a set of such orbits is a
    face when their union is a face."""
    if group.degree != len(k.universe):
        raise ComplexError("group degree does not match the universe")
    if not preserves(group, k):
        raise ComplexError("group does not preserve the complex")
    orbits = [sum(1 << x for x in orb) for orb in point_orbits(group.generators, group.degree)]
    verts = [o for o in orbits if k.contains_face(o)]
    universe = tuple(tuple(k.universe[b] for b in _bits(o)) for o in verts)
    masks = []
    for f in k.facets:
        masks.append(sum(1 << i for i, o in enumerate(verts) if o & f == o))
    return SimplicialComplex(universe, _maximal(masks))


def is_connected_complex(k: SimplicialComplex) -> bool:
    verts = _bits(k.vertex_mask)
    if not verts:
        return False
    reach = 1 << verts[0]
    changed = True
    while changed:
        changed = False
        for f in k.facets:
            if f & reach and f & ~reach:
                reach |= f
                changed = True
    return reach & k.vertex_mask == k.vertex_mask


# --------------------------------------------------------------------------
# homology over GF(p)

@dataclass(frozen=True)
class BettiVector:
    prime: int
    reduced: tuple[int, ...]

    @property
    def acyclic(self) -> bool:
        return not any(self.reduced)


def rank_mod_p(mat: np.ndarray, p: int) -> int:
    a = np.array(mat, dtype=np.int64) % p
    rows, cols = a.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        nz = np.nonzero(a[rank:, c])[0]
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), -1, p)
        a[rank] = a[rank] * inv % p
        others = np.nonzero(a[:, c])[0]
        others = others[others != rank]
        if others.size:
            a[others] = (a[others] - np.outer(a[others, c], a[rank])) % p
        rank += 1
    return rank


def betti_mod_p(k: SimplicialComplex, p: int, cap: int = HOMOLOGY_CAP) -> BettiVector:
    """Reduced Betti numbers with coefficients in GF(p)."""
    faces = k.faces(cap)
    by_dim: dict[int, list[int]] = {}
    for f in faces:
        by_dim.setdefault(f.bit_count() - 1, []).append(f)
    for lst in by_dim.values():
        lst.sort()
    top = max(by_dim)
    ranks = {}
    for d in range(0, top + 1):
        # boundary from dimension d to d-1 (d-1 = -1 is the empty face)
        rows = by_dim.get(d - 1, [])
        cols = by_dim.get(d, [])
        if not rows or not cols:
            ranks[d] = 0
            continue
        index = {f: i for i, f in enumerate(rows)}
        mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
        for j, f in enumerate(cols):
            for sign, b in enumerate(_bits(f)):
                mat[index[f & ~(1 << b)], j] = 1 if sign % 2 == 0 else p - 1
        ranks[d] = rank_mod_p(mat, p)
    ranks[top + 1] = 0
    reduced = []
    for d in range(0, top + 1):
        reduced.append(len(by_dim.get(d, [])) - ranks[d] - ranks[d + 1])
    return BettiVector(p, tuple(reduced))


# --------------------------------------------------------------------------
# collapsibility by exhaustive search

def is_collapsible_exhaustive(k: SimplicialComplex, cap: int = COLLAPSE_CAP) -> bool:
    """Search all sequences of elementary collapses for one ending in a point."""
    faces = frozenset(f for f in k.faces(1 << 16) if f)
    if len(faces) > cap:
        raise ComplexError(f"{len(faces)} faces exceed the collapse cap of {cap}")
    dead: set[frozenset[int]] = set()

    def search(state: frozenset[int]) -> bool:
        if len(state) == 1:
            return True
        if state in dead:
            return False
        for tau in state:
            if tau.bit_count() < 2:
                continue
            for b in _bits(tau):
                sigma = tau & ~(1 << b)
                if sum(1 for f in state if f & sigma == sigma) == 2:
                    if search(state - {sigma, tau}):
                        return True
        dead.add(state)
        return False

    return search(faces)


# --------------------------------------------------------------------------
# text format and random examples

def write_facets(k: SimplicialComplex) -> str:
    lines = sorted(" ".join(str(v) for v in sorted(f, key=str)) for f in k.facet_labels())
    return "\n".join(lines) + "\n"


def read_facets(text: str) -> SimplicialComplex:
    facets = [line.split() for line in text.splitlines() if line.strip() and not line.startswith("#")]
    universe = sorted({v for f in facets for v in f}, key=lambda s: (len(s), s))
    if not facets:
        raise ComplexError("no facets given")
    return SimplicialComplex.from_faces(universe, facets)


def random_non_evasive(rng: random.Random, n_vertices: int) -> SimplicialComplex:
    """Grow a non-evasive complex one vertex at a time.

    Each new vertex v is attached along a cone L (a simplex, a point, or part of
    a vertex star) of the current complex, so lk(v) = L and del(v) is the
    previous complex; both are non-evasive by induction.
    """
    facets: set[int] = {1}
    for v in range(1, n_vertices):
        current = _maximal(facets)
        choice = rng.random()
        if choice < 0.25:
            w = rng.choice(_bits(_union(current)))
            base = [1 << w]
        elif choice < 0.5:
            f = rng.choice(sorted(current))
            sub = [b for b in _bits(f) if rng.random() < 0.7] or [_bits(f)[0]]
            base = [sum(1 << b for b in sub)]
        else:
            w = rng.choice(_bits(_union(current)))
            star = [f for f in sorted(current) if f >> w & 1]
            pick = [f for f in star if rng.random() < 0.6] or star[:1]
            base = pick
        facets = set(current) | {f | (1 << v) for f in base}
    return SimplicialComplex(tuple(range(n_vertices)), _maximal(facets))


def _union(facets: Iterable[int]) -> int:
    out = 0
    for f in facets:
        out |= f
    return out


def random_complex(rng: random.Random, n_vertices: int, n_facets: int) -> SimplicialComplex:
    masks = []
    for _ in range(n_facets):
        size = rng.randint(1, min(4, n_vertices))
        masks.append(sum(1 << b for b in rng.sample(range(n_vertices), size)))
    return SimplicialComplex(tuple(range(n_vertices)), _maximal(masks))


def random_cone_tower(rng: random.Random, max_vertices: int = 12) -> SimplicialComplex:
    """A random complex on a few vertices, coned one to three times."""
    apexes = rng.randint(1, 3)
    base_n = rng.randint(1, max(1, min(6, max_vertices - apexes)))
    k = random_complex(rng, base_n, rng.randint(1, 5))
    for a in range(apexes):
        k = cone(k, base_n + a)
    return k
