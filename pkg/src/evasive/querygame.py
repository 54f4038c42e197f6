"""Exact query complexity of monotone graph properties.

The game state is a partial assignment of edges (present / absent / unknown).
Values are memoized in a flat ternary-indexed table for up to 10 edges and in
a dict above that.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Union

import numpy as np

from .enumeration import graph_classes, graph_to_lex_key, scan_all_graphs
from .graphs import index_pair, num_pairs
from .properties import (ClassPoset, DownSet, MonotoneProperty, class_poset,
                         down_sets, membership_table, property_complex)
from .simplicial import is_non_evasive

MAX_GAME_N = 6
DENSE_MAX_EDGES = 10
MONOTONE_PROBES = 200

Oracle = Callable[[int], bool]


class GameError(ValueError):
    pass


@dataclass(frozen=True)
class PartialAssignment:
    n: int
    present: int = 0
    absent: int = 0

    def __post_init__(self):
        full = (1 << num_pairs(self.n)) - 1
        if self.present & self.absent:
            raise GameError("an edge is both present and absent")
        if (self.present | self.absent) & ~full:
            raise GameError("assignment uses bits outside the pair range")

    @property
    def unknown(self) -> int:
        return ((1 << num_pairs(self.n)) - 1) & ~(self.present | self.absent)


def as_oracle(prop: Union[MonotoneProperty, np.ndarray, Oracle], n: int | None = None) -> tuple[int, Oracle]:
    """Normalize a property, a membership table or a callable into (n, oracle)."""
    if isinstance(prop, MonotoneProperty):
        if prop.n > MAX_GAME_N:
            raise GameError(f"query game supports n <= {MAX_GAME_N}")
        table = membership_table(prop)
        return prop.n, lambda bits: bool(table[bits])
    if n is None:
        raise GameError("n is required for a raw oracle")
    if isinstance(prop, np.ndarray):
        if prop.shape != (1 << num_pairs(n),):
            raise GameError("membership table has the wrong length")
        table = prop.astype(bool)
        return n, lambda bits: bool(table[bits])
    return n, prop


def check_monotone(n: int, member: Oracle, probes: int = MONOTONE_PROBES, seed: int = 0) -> None:
    """Random edge-removal probes; raises on the first violation found."""
    total = num_pairs(n)
    if total == 0:
        return
    rng = random.Random(seed)
    for _ in range(probes):
        g = rng.getrandbits(total) | 1 << rng.randrange(total)
        edges = [e for e in range(total) if g >> e & 1]
        e = rng.choice(edges)
        if member(g) and not member(g & ~(1 << e)):
            raise GameError(f"oracle is not monotone: removing pair {index_pair(e)} from "
                            f"bitset {g} leaves the property")


class QueryGame:
    """Minimax over partial assignments for one property."""

    def __init__(self, n: int, member: Oracle, spot_check: bool = True):
        if n > MAX_GAME_N:
            raise GameError(f"query game supports n <= {MAX_GAME_N}")
        self.n = n
        self.total = num_pairs(n)
        self.full = (1 << self.total) - 1
        self.member = member
        if spot_check:
            check_monotone(n, member)
        self._pow3 = [3 ** e for e in range(self.total)]
        if self.total <= DENSE_MAX_EDGES:
            self._dense = np.full(3 ** self.total, -1, dtype=np.int8)
            self._memo: dict[tuple[int, int], int] | None = None
        else:
            self._dense = None
            self._memo = {}
        self.states = 0

    def terminal(self, present: int, absent: int) -> bool:
        # monotone: membership of completions is sandwiched between these two
        return self.member(present) == self.member(self.full & ~absent)

    def value(self, present: int = 0, absent: int = 0) -> int:
        idx = sum(self._pow3[e] for e in range(self.total) if present >> e & 1) \
            + 2 * sum(self._pow3[e] for e in range(self.total) if absent >> e & 1)
        return self._value(present, absent, idx)

    def _lookup(self, present: int, absent: int, idx: int) -> int:
        if self._dense is not None:
            return int(self._dense[idx])
        return self._memo.get((present, absent), -1)

    def _store(self, present: int, absent: int, idx: int, v: int) -> None:
        if self._dense is not None:
            self._dense[idx] = v
        else:
            self._memo[(present, absent)] = v

    def _value(self, present: int, absent: int, idx: int) -> int:
        v = self._lookup(present, absent, idx)
        if v >= 0:
            return v
        self.states += 1
        if self.terminal(present, absent):
            self._store(present, absent, idx, 0)
            return 0
        best = self.total + 1
        unknown = self.full & ~(present | absent)
        for e in range(self.total):
            if not unknown >> e & 1:
                continue
            bit = 1 << e
            worst = self._value(present | bit, absent, idx + self._pow3[e])
            if worst + 1 < best:
                worst = max(worst, self._value(present, absent | bit, idx + 2 * self._pow3[e]))
                if worst + 1 < best:
                    best = worst + 1
                    if best == 1:
                        break
        self._store(present, absent, idx, best)
        return best

    def best_query(self, present: int, absent: int) -> int | None:
        """Lowest-index edge achieving the minimax value, None at terminal states."""
        if self.terminal(present, absent):
            return None
        target = self.value(present, absent)
        unknown = self.full & ~(present | absent)
        for e in range(self.total):
            if unknown >> e & 1:
                bit = 1 << e
                if 1 + max(self.value(present | bit, absent), self.value(present, absent | bit)) == target:
                    return e
        raise AssertionError("no optimal query found")

    def strategy(self, present: int = 0, absent: int = 0) -> dict:
        """Optimal decision tree as nested dicts."""
        e = self.best_query(present, absent)
        if e is None:
            return {"answer": self.member(present)}
        bit = 1 << e
        return {
            "query": list(index_pair(e)),
            "value": self.value(present, absent),
            "present": self.strategy(present | bit, absent),
            "absent": self.strategy(present, absent | bit),
        }


def decision_tree_complexity(prop: Union[MonotoneProperty, np.ndarray, Oracle], n: int | None = None) -> int:
    n, member = as_oracle(prop, n)
    return QueryGame(n, member).value()


def is_evasive(prop: Union[MonotoneProperty, np.ndarray, Oracle], n: int | None = None) -> bool:
    n, member = as_oracle(prop, n)
    return QueryGame(n, member).value() == num_pairs(n)


def dual_oracle(n: int, member: Oracle) -> Oracle:
    full = (1 << num_pairs(n)) - 1
    return lambda bits: not member(full ^ bits)


# --------------------------------------------------------------------------
# reference solvers used as oracles in tests

def complexity_unmemoized(n: int, member: Oracle) -> int:
    """Plain minimax with the same terminal rule and no table."""
    full = (1 << num_pairs(n)) - 1

    def rec(present: int, absent: int) -> int:
        if member(present) == member(full & ~absent):
            return 0
        unknown = full & ~(present | absent)
        return 1 + min(max(rec(present | 1 << e, absent), rec(present, absent | 1 << e))
                       for e in range(num_pairs(n)) if unknown >> e & 1)

    return rec(0, 0)


def terminal_brute_force(n: int, member: Oracle, present: int, absent: int) -> bool:
    """True when every completion of the assignment gets the same answer."""
    unknown = ((1 << num_pairs(n)) - 1) & ~(present | absent)
    bits = [1 << e for e in range(num_pairs(n)) if unknown >> e & 1]
    answers = set()
    for k in range(len(bits) + 1):
        for chosen in combinations(bits, k):
            answers.add(member(present | sum(chosen)))
            if len(answers) > 1:
                return False
    return True


# --------------------------------------------------------------------------
# all monotone properties at small n

def downset_table(n: int, poset: ClassPoset, ideal: DownSet) -> np.ndarray:
    """Membership table of the property whose classes form the down-set."""
    keys, _ = scan_all_graphs(n)
    chosen = np.array([graph_to_lex_key(poset.classes[i]) for i in ideal.members()], dtype=np.int64)
    return np.isin(keys, chosen)


def _complexity_of_table(args: tuple[int, np.ndarray]) -> int:
    n, table = args
    return QueryGame(n, lambda bits: bool(table[bits]), spot_check=False).value()


@dataclass
class PrimePowerReport:
    n: int
    classes: int
    properties: int
    nontrivial: int
    evasive: int
    trivial_values: list[int]
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and self.evasive == self.nontrivial


def verify_primepower(n: int, workers: int = 1) -> PrimePowerReport:
    """Solve the game for every monotone property on n vertices up to isomorphism."""
    if n not in (4, 5):
        raise GameError("verify_primepower supports n in {4, 5}")
    poset = class_poset(graph_classes(n))
    ideals = down_sets(poset, max_elements=len(poset))
    full_mask = (1 << len(poset)) - 1
    tables = [(n, downset_table(n, poset, d)) for d in ideals]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            values = list(pool.map(_complexity_of_table, tables, chunksize=16))
    else:
        values = [_complexity_of_table(t) for t in tables]
    total = num_pairs(n)
    report = PrimePowerReport(n, len(poset), len(ideals), 0, 0, [])
    for d, v in zip(ideals, values):
        if d.mask in (0, full_mask):
            report.trivial_values.append(v)
            if v != 0:
                report.failures.append({"ideal": d.members(), "value": v, "reason": "trivial but c > 0"})
            continue
        report.nontrivial += 1
        if v == total:
            report.evasive += 1
        else:
            report.failures.append({"ideal": d.members(), "value": v,
                                    "generators": [poset.classes[i].edge_list() for i in d.members()]})
    return report


@dataclass
class ConsistencyReport:
    complex_non_evasive: bool
    complexity: int
    max_queries: int

    @property
    def consistent(self) -> bool:
        return self.complex_non_evasive == (self.complexity < self.max_queries)


def non_evasive_iff_game(prop: MonotoneProperty) -> ConsistencyReport:
    if prop.n > 4:
        raise GameError("non_evasive_iff_game supports n <= 4")
    if not prop.generators:
        raise GameError("empty property has no complex")
    return ConsistencyReport(is_non_evasive(property_complex(prop)),
                             decision_tree_complexity(prop), num_pairs(prop.n))
