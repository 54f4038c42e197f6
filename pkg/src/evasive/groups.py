"""Permutation groups given by generators, their orbits on vertex pairs, small
finite fields, and the specific Oliver groups used against evasiveness."""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graphs import Graph, num_pairs, pair_index, index_pair

DEFAULT_CAP = 10 ** 6


class GroupError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise GroupError(f"not a permutation: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> "Permutation":
        images = list(range(degree))
        seen: set[int] = set()
        for cyc in cycles:
            for k, a in enumerate(cyc):
                if a in seen or not 0 <= a < degree:
                    raise GroupError(f"bad cycle entry {a}")
                seen.add(a)
                images[a] = cyc[(k + 1) % len(cyc)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """``(self * other)(x) = self(other(x))``."""
        return Permutation(tuple(self.images[i] for i in other.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cyc.append(x)
                seen[x] = True
                x = self.images[x]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles())) if not self.is_identity() else 1

    def __str__(self):
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"

    def act_on_graph(self, g: Graph) -> Graph:
        return g.relabel(self.images)

    def on_pairs(self) -> "Permutation":
        """Induced permutation of the n(n-1)/2 vertex pairs (colex indexed)."""
        n = self.degree
        return Permutation(tuple(
            pair_index(self.images[i], self.images[j])
            for i, j in (index_pair(k) for k in range(num_pairs(n)))
        ))


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as ``"(0 5)(1 6)"``; ``"()"`` is the identity."""
    text = text.strip()
    if _CYCLE_RE.sub("", text).strip():
        raise GroupError(f"cannot parse cycle notation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(text):
        parts = body.replace(",", " ").split()
        if parts:
            cycles.append([int(x) for x in parts])
    return Permutation.from_cycles(cycles, degree)


@dataclass
class GeneratedGroup:
    degree: int
    generators: list[Permutation]
    cap: int = DEFAULT_CAP
    _elements: frozenset[Permutation] | None = field(default=None, repr=False)

    def __post_init__(self):
        for g in self.generators:
            if g.degree != self.degree:
                raise GroupError("generator degree mismatch")

    @property
    def elements(self) -> frozenset[Permutation]:
        if self._elements is None:
            self._elements = _closure(self.generators, self.degree, self.cap)
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, perm: Permutation) -> bool:
        return perm in self.elements


def _closure(gens: Sequence[Permutation], degree: int, cap: int) -> frozenset[Permutation]:
    ident = Permutation.identity(degree)
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g * x
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise GroupError(f"group closure exceeds cap of {cap} elements")
                queue.append(y)
    return frozenset(seen)


def group_closure(gens: Sequence[Permutation], cap: int = DEFAULT_CAP,
                  degree: int | None = None) -> GeneratedGroup:
    if degree is None:
        if not gens:
            raise GroupError("degree required for an empty generator list")
        degree = gens[0].degree
    group = GeneratedGroup(degree, list(gens), cap)
    group.elements  # materialize now so cap errors surface here
    return group


def point_orbits(gens: Sequence[Permutation], degree: int) -> list[list[int]]:
    """Orbits of the generated group on {0..degree-1}, each sorted, by union-find."""
    parent = list(range(degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for x in range(degree):
            a, b = find(x), find(g(x))
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups: dict[int, list[int]] = {}
    for x in range(degree):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values())


def edge_orbits(group: GeneratedGroup, n: int) -> list[Graph]:
    """Orbits of the group on the two-element vertex subsets, as graphs."""
    if group.degree != n:
        raise GroupError(f"group degree {group.degree} != n={n}")
    pair_gens = [g.on_pairs() for g in group.generators]
    out = []
    for orbit in point_orbits(pair_gens, num_pairs(n)):
        out.append(Graph(n, sum(1 << k for k in orbit)))
    return out


def check_partition(orbits: Sequence[Graph], n: int) -> bool:
    seen = 0
    for g in orbits:
        if g.edges & seen:
            return False
        seen |= g.edges
    return seen == (1 << num_pairs(n)) - 1


def orbit_invariant(group: GeneratedGroup, g: Graph) -> bool:
    return all(p.act_on_graph(g) == g for p in group.generators)


# --------------------------------------------------------------------------
# finite fields

FROZEN_MODULI = {
    (2, 2): (1, 1, 1),      # x^2 + x + 1, low coefficient first
    (2, 3): (1, 1, 0, 1),   # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (3, 2): (1, 0, 1),      # x^2 + 1
}


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % q for q in range(2, math.isqrt(p) + 1))


class FiniteField:
    """GF(p^r); element k encodes the polynomial whose base-p digits (least
    significant first) are its coefficients."""

    def __init__(self, p: int, r: int = 1):
        if not _is_prime(p) or r < 1:
            raise GroupError(f"GF({p}^{r}) not supported")
        self.p, self.r = p, r
        self.q = p ** r
        if r == 1:
            self.modulus: tuple[int, ...] = (0, 1)
        elif (p, r) in FROZEN_MODULI:
            self.modulus = FROZEN_MODULI[(p, r)]
        else:
            raise GroupError(f"no frozen irreducible modulus for GF({p}^{r})")
        self._mul = [[self._slow_mul(a, b) for b in range(self.q)] for a in range(self.q)]

    def digits(self, a: int) -> list[int]:
        return [(a // self.p ** k) % self.p for k in range(self.r)]

    def from_digits(self, ds: Sequence[int]) -> int:
        return sum((d % self.p) * self.p ** k for k, d in enumerate(ds))

    def add(self, a: int, b: int) -> int:
        return self.from_digits([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        return self.from_digits([-x for x in self.digits(a)])

    def _slow_mul(self, a: int, b: int) -> int:
        if self.r == 1:
            return a * b % self.p
        prod = [0] * (2 * self.r - 1)
        for i, x in enumerate(self.digits(a)):
            for j, y in enumerate(self.digits(b)):
                prod[i + j] += x * y
        mod = self.modulus
        for deg in range(len(prod) - 1, self.r - 1, -1):
            c = prod[deg] % self.p
            if c:
                for k in range(self.r + 1):
                    prod[deg - self.r + k] -= c * mod[k]
        return self.from_digits(prod[:self.r])

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return next(b for b in range(1, self.q) if self._mul[a][b] == 1)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 1:
            x = self.mul(x, a)
            k += 1
        return k

    def primitive_element(self) -> int:
        return next(a for a in range(1, self.q) if self.element_order(a) == self.q - 1)


# --------------------------------------------------------------------------
# Oliver groups

@dataclass
class OliverWitness:
    group: GeneratedGroup
    normal_gens: list[Permutation]
    prime: int


def _is_power_of(x: int, p: int) -> bool:
    while x % p == 0:
        x //= p
    return x == 1


def verify_oliver_witness(w: OliverWitness) -> bool:
    """Normal p-subgroup with cyclic quotient, checked on the materialized groups."""
    big = w.group.elements
    sub = group_closure(w.normal_gens, w.group.cap, w.group.degree).elements
    if not sub <= big:
        return False
    if not _is_power_of(len(sub), w.prime):
        return False
    for g in w.group.generators:
        ginv = g.inverse()
        if any(g * h * ginv not in sub for h in w.normal_gens):
            return False
    index = len(big) // len(sub)
    if index == 1:
        return True
    for g in big:
        # order of g modulo the subgroup
        k, x = 1, g
        while x not in sub:
            x = x * g
            k += 1
            if k > index:
                break
        if k == index:
            return True
    return False


def affine_group(p: int, r: int = 1) -> OliverWitness:
    """All x -> a*x + b on GF(p^r), acting on points 0..p^r-1."""
    if not _is_prime(p):
        raise GroupError(f"{p} is not prime")
    q = p ** r
    if q > 16:
        raise GroupError(f"p^r = {q} exceeds 16")
    field_ = FiniteField(p, r)
    g = field_.primitive_element()
    scale = Permutation(tuple(field_.mul(g, x) for x in range(q)))
    translations = [
        Permutation(tuple(field_.add(x, p ** k) for x in range(q))) for k in range(r)
    ]
    group = GeneratedGroup(q, [scale] + translations)
    return OliverWitness(group, translations, p)


def _extend(perm: Permutation, degree: int, offset: int = 0) -> Permutation:
    images = list(range(degree))
    for i, j in enumerate(perm.images):
        images[offset + i] = offset + j
    return Permutation(tuple(images))


def affine_cyclic_product(p: int, r: int, t: int) -> OliverWitness:
    """Affine group on the first p^r points times a t-cycle on the last t."""
    q = p ** r
    if q + t > 16:
        raise GroupError(f"p^r + t = {q + t} exceeds 16")
    if t < 1:
        raise GroupError("t must be positive")
    if math.gcd(q - 1, t) != 1:
        raise GroupError(f"gcd(p^r - 1, t) = gcd({q - 1}, {t}) != 1: quotient not cyclic")
    base = affine_group(p, r)
    n = q + t
    gens = [_extend(g, n) for g in base.group.generators]
    if t > 1:
        gens.append(Permutation.from_cycles([list(range(q, n))], n))
    normal = [_extend(g, n) for g in base.normal_gens]
    return OliverWitness(GeneratedGroup(n, gens), normal, p)


def matching_oliver_group(p: int) -> OliverWitness:
    """<(i, p+i) for i < p, (0..p-1)(p..2p-1)>, with the transpositions as 2-subgroup."""
    n = 2 * p
    if n > 16:
        raise GroupError("2p exceeds 16")
    swaps = [Permutation.from_cycles([(i, p + i)], n) for i in range(p)]
    alpha = Permutation.from_cycles([list(range(p)), list(range(p, n))], n)
    return OliverWitness(GeneratedGroup(n, swaps + [alpha]), swaps, 2)


def double_pcycle_group(p: int) -> OliverWitness:
    """<(0 p)(1 p+1)..., (0..p-1), (p..2p-1)> with the two p-cycles as p-subgroup."""
    if p not in (3, 5, 7):
        raise GroupError("p must be 3, 5 or 7")
    n = 2 * p
    alpha = Permutation.from_cycles([(i, p + i) for i in range(p)], n)
    beta = Permutation.from_cycles([list(range(p))], n)
    gamma = Permutation.from_cycles([list(range(p, n))], n)
    return OliverWitness(GeneratedGroup(n, [alpha, beta, gamma]), [beta, gamma], p)


def type37_group() -> OliverWitness:
    return double_pcycle_group(5)


def type1_group() -> OliverWitness:
    """<(0 0'), (1 2 3 4 1' 2' 3' 4')> with i' = i + 5; a 2-group, so it is its own witness."""
    gens = [parse_cycles("(0 5)", 10), parse_cycles("(1 2 3 4 6 7 8 9)", 10)]
    return OliverWitness(GeneratedGroup(10, gens), list(gens), 2)


def symmetric_group(n: int) -> GeneratedGroup:
    gens = [Permutation.from_cycles([list(range(n))], n)]
    if n > 2:
        gens.append(Permutation.from_cycles([(0, 1)], n))
    return GeneratedGroup(n, gens)
