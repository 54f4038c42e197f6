"""The ten-vertex analysis: the five graphs G1..G5 built from circulants on
two copies of GF(5), their complements, class sizes, the Hasse diagram, the
order ideals with Euler characteristic 1 mod 5, and the eliminations of
types 1, 3, 7 and 9.

Vertices 0'..4' of the second copy are the integers 5..9.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

from .graphs import (Graph, aut_group_size, canonical_form, circulant_cycles, complement,
                     complete_bipartite, embed, empty_graph, find_isomorphism,
                     find_subgraph_embedding, iso_class_size, is_isomorphic, to_graph6)
from .groups import (GeneratedGroup, Permutation, edge_orbits, orbit_invariant, type1_group,
                     type37_group, verify_oliver_witness)
from .properties import (ClassPoset, DownSet, class_poset, contribution, contribution_mod_p,
                         count_down_sets, down_sets, dual_ideal, ideal_sum_mod,
                         ideals_with_chi_one, signed_residue)
from .simplicial import SimplicialComplex, is_connected_complex

N = 10
P = 5
FIRST = tuple(range(5))
SECOND = tuple(range(5, 10))

NAMES = ["G1", "G2", "G3", "G4", "G5", "~G1", "~G2", "~G3", "~G4", "~G5"]

# Published table: |Aut|, |[G]|, and (-1)^(m-1) * (|[G]| mod 5).
PUBLISHED_TABLE = {
    "G1": (1200, 3024, 4),
    "G2": (14400, 252, -2),
    "G3": (200, 18144, -4),
    "G4": (1200, 3024, 4),
    "G5": (28800, 126, -1),
}

# Hasse diagram covers as (lower, upper).
PUBLISHED_COVERS = {
    ("~G2", "~G1"), ("~G3", "~G1"), ("G4", "~G1"),
    ("~G4", "~G2"), ("G2", "~G2"),
    ("~G4", "~G3"), ("G3", "~G3"),
    ("~G5", "~G4"), ("G1", "~G4"),
    ("G2", "G4"), ("G3", "G4"),
    ("G4", "G5"),
    ("G1", "G2"), ("G1", "G3"),
}

PUBLISHED_IDEALS = {
    1: {"~G5"},
    2: {"G1", "~G4", "~G5"},
    3: {"G1", "G3", "~G5"},
    4: {"G1", "G2", "~G2", "~G4", "~G5"},
    5: {"G1", "G2", "G3", "G4", "G5"},
    6: {"G1", "G3", "~G3", "~G4", "~G5"},
    7: {"G1", "G2", "G3", "G4", "~G2", "~G4", "~G5"},
    8: {"G1", "G2", "G3", "~G2", "~G3", "~G4", "~G5"},
    9: {"G1", "G2", "G3", "G4", "~G1", "~G2", "~G3", "~G4", "~G5"},
}


def _on_first(steps) -> Graph:
    if not steps:
        return empty_graph(N)
    return embed(circulant_cycles(P, steps), N, FIRST)


def _on_second(steps) -> Graph:
    if not steps:
        return empty_graph(N)
    return embed(circulant_cycles(P, steps), N, SECOND)


def build_g_list() -> list[Graph]:
    """G1..G5 followed by their complements, labelled as in the figure."""
    g1 = _on_second(()) | _on_first((1,))
    g2 = _on_second(()) | _on_first((1, 2))
    g3 = _on_second((1,)) | _on_first((1,))
    g4 = _on_second((1,)) | _on_first((1, 2))
    g5 = _on_second((1, 2)) | _on_first((1, 2))
    base = [g1, g2, g3, g4, g5]
    return base + [complement(g) for g in base]


def _perm_str(perm) -> str:
    return str(Permutation(tuple(perm)))


# --------------------------------------------------------------------------
# table

@dataclass
class TableRow:
    name: str
    graph6: str
    edges: int
    aut: int
    class_size: int
    residue: int
    signed: int
    expected: tuple[int, int, int] | None

    @property
    def ok(self) -> bool:
        return self.expected is None or (self.aut, self.class_size, self.signed) == self.expected

    def as_dict(self) -> dict:
        return {
            "name": self.name, "graph6": self.graph6, "m": self.edges, "aut": self.aut,
            "class_size": self.class_size, "class_size_factored": factorize(self.class_size),
            "contribution_mod_5": self.residue, "contribution_signed": self.signed,
            "matches_published": self.ok,
        }


def factorize(x: int) -> str:
    parts = []
    d = 2
    while d * d <= x:
        k = 0
        while x % d == 0:
            x //= d
            k += 1
        if k:
            parts.append(f"{d}^{k}" if k > 1 else str(d))
        d += 1
    if x > 1:
        parts.append(str(x))
    return " * ".join(parts) or "1"


@lru_cache(maxsize=None)
def _rows() -> tuple[TableRow, ...]:
    rows = []
    for name, g in zip(NAMES, build_g_list()):
        aut = aut_group_size(g)
        size = math.factorial(N) // aut
        res = contribution_mod_p(g, P)
        signed = (-1) ** (g.m - 1) * (size % P)
        rows.append(TableRow(name, to_graph6(g), g.m, aut, size, res, signed,
                             PUBLISHED_TABLE.get(name)))
    return tuple(rows)


def table5() -> list[TableRow]:
    return list(_rows())


# --------------------------------------------------------------------------
# poset and ideals

@lru_cache(maxsize=None)
def poset10() -> ClassPoset:
    return class_poset(build_g_list())


def cover_names(poset: ClassPoset) -> set[tuple[str, str]]:
    return {(NAMES[lo], NAMES[hi]) for lo, hi in poset.covers}


def ideal_names(ideal: DownSet) -> set[str]:
    return {NAMES[i] for i in ideal.members()}


@dataclass
class IdealReport:
    all_down_sets: int
    independent_count: int
    ideals: dict[int, DownSet]
    unmatched: list[set[str]]
    missing: list[int]
    duality_ok: bool

    @property
    def ok(self) -> bool:
        return (not self.unmatched and not self.missing and self.duality_ok
                and len(self.ideals) == 9 and self.all_down_sets == self.independent_count)


@lru_cache(maxsize=None)
def ideals10() -> IdealReport:
    poset = poset10()
    everything = down_sets(poset)
    found = ideals_with_chi_one(poset, P)
    labelled: dict[int, DownSet] = {}
    unmatched = []
    for d in found:
        names = ideal_names(d)
        k = next((k for k, s in PUBLISHED_IDEALS.items() if s == names), None)
        if k is None:
            unmatched.append(names)
        else:
            labelled[k] = d
    missing = sorted(set(PUBLISHED_IDEALS) - set(labelled))
    duality = all(
        10 - k in labelled and dual_ideal(poset, d) == labelled[10 - k]
        for k, d in labelled.items()
    )
    return IdealReport(len(everything), count_down_sets(poset), labelled, unmatched,
                       missing, duality)


# --------------------------------------------------------------------------
# eliminations

@dataclass
class TypeVerdict:
    types: tuple[int, ...]
    status: str
    evidence: dict = field(default_factory=dict)
    failures: list[str] = field(default_factory=list)

    @property
    def eliminated(self) -> bool:
        return self.status == "eliminated"


def _iso_evidence(g: Graph, h: Graph) -> dict:
    perm = find_isomorphism(g, h)
    return {"holds": perm is not None, "witness": _perm_str(perm) if perm else None}


def _sub_evidence(g: Graph, h: Graph) -> dict:
    perm = find_subgraph_embedding(g, h)
    return {"holds": perm is not None, "witness": _perm_str(perm) if perm else None}


def _named_orbits(group: GeneratedGroup, reps: dict[str, tuple[int, int]]) -> dict[str, Graph]:
    from .graphs import pair_index
    orbits = edge_orbits(group, N)
    out = {}
    for name, (i, j) in reps.items():
        bit = 1 << pair_index(i, j)
        out[name] = next(o for o in orbits if o.edges & bit)
    if len({o.edges for o in out.values()}) != len(orbits) or len(out) != len(orbits):
        raise AssertionError("orbit naming does not cover all orbits")
    return out


def _class_name(g: Graph) -> str:
    if g.m == 45:
        return "K10"
    for name, h in zip(NAMES, build_g_list()):
        if h.m == g.m and is_isomorphic(g, h):
            return name
    return "other"


def _fixed_complex_for_ideal(orbits: dict[str, Graph], ideal: set[str]) -> dict:
    """The fixed-point complex of the orbit-vertices when P meets the ten
    classes exactly in ``ideal`` (only valid when every union is one of them)."""
    letters = sorted(orbits)
    faces = []
    classes = {}
    for mask in range(1, 1 << len(letters)):
        word = "".join(letters[i] for i in range(len(letters)) if mask >> i & 1)
        name = _class_name(_union(orbits, word))
        classes[word] = name
        if name == "other":
            raise AssertionError(f"union {word} is not among the ten classes")
        if name in ideal:
            faces.append(tuple(word))
    if not faces:
        return {"faces": [], "classes": classes, "euler_characteristic": 0}
    cx = SimplicialComplex.from_faces(tuple(letters), faces)
    from .simplicial import euler_characteristic
    return {"faces": ["".join(f) for f in cx.facet_labels()], "classes": classes,
            "euler_characteristic": euler_characteristic(cx)}


def eliminate_type37() -> TypeVerdict:
    """A type 3 or 7 property contains G3 and ~G5, hence every orbit A, B, C of
    the double p-cycle group.  Every union of orbits is one of the ten classes
    or K10, so the ideal alone decides the fixed-point complex; for I3 and I7
    its Euler characteristic is not 1, contradicting Oliver's theorem."""
    w = type37_group()
    g = dict(zip(NAMES, build_g_list()))
    orbits = _named_orbits(w.group, {"A": (0, 5), "B": (0, 1), "C": (0, 2)})
    a, b, c = orbits["A"], orbits["B"], orbits["C"]
    ev: dict = {
        "group": [str(x) for x in w.group.generators],
        "group_order": w.group.order,
        "oliver_witness": {"normal_subgroup": [str(x) for x in w.normal_gens], "prime": w.prime,
                           "verified": verify_oliver_witness(w)},
        "orbits": {k: {"graph6": to_graph6(o), "edges": o.m,
                       "invariant": orbit_invariant(w.group, o)} for k, o in orbits.items()},
        "A_iso_K55": _iso_evidence(a, complete_bipartite(5, 5)),
        "A_iso_~G5": _iso_evidence(a, g["~G5"]),
        "B_iso_G3": _iso_evidence(b, g["G3"]),
        "C_iso_G3": _iso_evidence(c, g["G3"]),
        "AuB_iso_~G3": _iso_evidence(a | b, g["~G3"]),
        "AuC_iso_~G3": _iso_evidence(a | c, g["~G3"]),
        "AuB_iso_AuC": _iso_evidence(a | b, a | c),
    }
    ideals = ideals10()
    fixed = {}
    for k in range(1, 10):
        if k in ideals.ideals:
            fixed[k] = _fixed_complex_for_ideal(orbits, ideal_names(ideals.ideals[k]))
    ev["fixed_complex_by_type"] = {str(k): v for k, v in fixed.items()}
    for k in (3, 7):
        names = ideal_names(ideals.ideals[k]) if k in ideals.ideals else set()
        ev[f"I{k}_contains_G3_and_~G5"] = {"G3", "~G5"} <= names
        ev[f"I{k}_excludes_~G3"] = "~G3" not in names
    failures = []
    sizes = sorted(o.m for o in orbits.values())
    if sizes != [10, 10, 25]:
        failures.append(f"orbit sizes {sizes}")
    for key in ("A_iso_K55", "A_iso_~G5", "B_iso_G3", "C_iso_G3", "AuB_iso_~G3",
                "AuC_iso_~G3", "AuB_iso_AuC"):
        if not ev[key]["holds"]:
            failures.append(key)
    if not ev["oliver_witness"]["verified"]:
        failures.append("oliver witness")
    for k in (3, 7):
        if not ev[f"I{k}_contains_G3_and_~G5"] or not ev[f"I{k}_excludes_~G3"]:
            failures.append(f"ideal I{k}")
        if k not in fixed or fixed[k]["euler_characteristic"] == 1:
            failures.append(f"fixed complex for I{k} has Euler characteristic 1")
    if not all(v["invariant"] for v in ev["orbits"].values()):
        failures.append("orbit invariance")
    return TypeVerdict((3, 7), "open" if failures else "eliminated", ev, failures)


TYPE1_REPS = {"A": (0, 5), "B": (1, 2), "C": (1, 3), "D": (1, 4), "E": (1, 6), "F": (0, 1)}
TYPE1_IN_LIST = ["A", "B", "C", "D", "E", "AB", "AC", "AD", "AE", "BD"]
TYPE1_OUT_LIST = ["BC", "BE", "BF", "CD", "CF", "DE", "DF", "EF"]
TYPE1_UNLISTED = ["F", "AF", "CE"]


def _union(orbits: dict[str, Graph], word: str) -> Graph:
    out = Graph(N, 0)
    for ch in word:
        out = out | orbits[ch]
    return out


def link_candidates() -> list[SimplicialComplex]:
    """Every complex on B, C, D, E whose edges are drawn from {B,D}, {C,E}."""
    verts = ("B", "C", "D", "E")
    optional = [("B", "D"), ("C", "E")]
    out = []
    for k in range(4):
        faces = [(v,) for v in verts] + [e for t, e in enumerate(optional) if k >> t & 1]
        out.append(SimplicialComplex.from_faces(verts, faces))
    return out


def eliminate_type19() -> TypeVerdict:
    """Type 1: with Gamma = <(0 0'), (1 2 3 4 1' 2' 3' 4')>, a 2-group, the fixed
    complex of lk(A) must be Z/2-acyclic, hence connected, but the membership
    lists force its 1-faces into {B,D}, {C,E}.  Type 9 is the dual case."""
    w = type1_group()
    g = dict(zip(NAMES, build_g_list()))
    orbits = _named_orbits(w.group, TYPE1_REPS)
    ideals = ideals10()
    i1 = ideal_names(ideals.ideals[1]) if 1 in ideals.ideals else set()
    ev: dict = {
        "group": [str(x) for x in w.group.generators],
        "group_order": w.group.order,
        "is_2_group": verify_oliver_witness(w),
        "orbits": {k: {"graph6": to_graph6(o), "edges": o.m,
                       "invariant": orbit_invariant(w.group, o)} for k, o in orbits.items()},
        "I1": sorted(i1),
    }
    failures = []
    sizes = {k: o.m for k, o in orbits.items()}
    if sizes != {"A": 1, "B": 8, "C": 8, "D": 8, "E": 4, "F": 16}:
        failures.append(f"orbit sizes {sizes}")
    if not ev["is_2_group"]:
        failures.append("group is not a 2-group")
    if i1 != {"~G5"}:
        failures.append("I1 is not {~G5}")

    in_list = {}
    for word in TYPE1_IN_LIST:
        in_list[word] = _sub_evidence(_union(orbits, word), g["~G5"])
        if not in_list[word]["holds"]:
            failures.append(f"{word} not inside ~G5")
    out_list = {}
    for word in TYPE1_OUT_LIST:
        out_list[word] = _sub_evidence(g["G1"], _union(orbits, word))
        if not out_list[word]["holds"]:
            failures.append(f"{word} does not contain G1")
    unlisted = {}
    for word in TYPE1_UNLISTED:
        h = _union(orbits, word)
        unlisted[word] = {"inside_~G5": find_subgraph_embedding(h, g["~G5"]) is not None,
                          "contains_G1": find_subgraph_embedding(g["G1"], h) is not None}
    ev["in_P"] = in_list
    ev["not_in_P"] = out_list
    ev["unconstrained"] = unlisted

    # F would be an isolated vertex of the fixed link: every pair with F is excluded.
    f_pairs = {x: "".join(sorted(x + "F")) in TYPE1_OUT_LIST for x in "BCDE"}
    ev["F_isolated_in_link"] = f_pairs
    if not all(f_pairs.values()):
        failures.append("F not forced isolated")
    # 1-faces {X, Y} of the fixed link need X u Y in P; only BD and CE survive.
    pair_status = {}
    for x, y in (("B", "C"), ("B", "D"), ("B", "E"), ("C", "D"), ("C", "E"), ("D", "E")):
        word = x + y
        pair_status[word] = "excluded" if word in TYPE1_OUT_LIST else "possible"
    ev["link_edges"] = pair_status
    if sorted(w for w, s in pair_status.items() if s == "possible") != ["BD", "CE"]:
        failures.append("unexpected possible link edges")
    cands = link_candidates()
    conn = {"+".join("".join(f) for f in c.facet_labels() if len(f) == 2) or "none":
            is_connected_complex(c) for c in cands}
    ev["link_candidates_connected"] = conn
    if any(conn.values()):
        failures.append("a candidate link complex is connected")
    ev["dual"] = "type 9 properties have type 1 duals"
    dual_ok = 9 in ideals.ideals and 1 in ideals.ideals and \
        dual_ideal(poset10(), ideals.ideals[9]) == ideals.ideals[1]
    ev["dual_ideal_I9_is_I1"] = dual_ok
    if not dual_ok:
        failures.append("I9 does not dualize to I1")
    if not all(v["invariant"] for v in ev["orbits"].values()):
        failures.append("orbit invariance")
    return TypeVerdict((1, 9), "open" if failures else "eliminated", ev, failures)


def replay_witness(g: Graph, h: Graph, witness: str, exact: bool) -> bool:
    """Check a stored witness permutation without searching."""
    from .groups import parse_cycles
    perm = parse_cycles(witness, g.n).images
    img = g.relabel(perm)
    return img == h if exact else img.is_subgraph_of(h)


def report(trace: bool = False) -> dict:
    rows = table5()
    poset = poset10()
    ideals = ideals10()
    v37 = eliminate_type37()
    v19 = eliminate_type19()
    eliminated = sorted(set(v37.types if v37.eliminated else ()) |
                        set(v19.types if v19.eliminated else ()))
    surviving = [k for k in range(1, 10) if k not in eliminated]
    # every surviving type needs a face with at least 4p edges
    big_faces = {k: max(dict(zip(NAMES, build_g_list()))[nm].m for nm in PUBLISHED_IDEALS[k])
                 for k in surviving}
    out = {
        "table": [r.as_dict() for r in rows],
        "classes": NAMES,
        "covers": sorted([NAMES[lo], NAMES[hi]] for lo, hi in poset.covers),
        "covers_match_published": cover_names(poset) == PUBLISHED_COVERS,
        "down_sets_total": ideals.all_down_sets,
        "ideals": {str(k): sorted(ideal_names(d)) for k, d in sorted(ideals.ideals.items())},
        "ideals_unmatched": [sorted(s) for s in ideals.unmatched],
        "ideals_match_published": ideals.ok,
        "verdicts": {
            "3,7": {"status": v37.status, "failures": v37.failures},
            "1,9": {"status": v19.status, "failures": v19.failures},
        },
        "eliminated": eliminated,
        "open": surviving,
        "max_face_edges_by_open_type": {str(k): v for k, v in big_faces.items()},
    }
    if trace:
        out["verdicts"]["3,7"]["evidence"] = v37.evidence
        out["verdicts"]["1,9"]["evidence"] = v19.evidence
        named = build_g_list()
        out["hasse_witnesses"] = {
            f"{NAMES[lo]}<={NAMES[hi]}": _sub_evidence(named[lo], named[hi])["witness"]
            for lo, hi in sorted(poset.covers)
        }
    out["ok"] = (all(r.ok for r in rows) and out["covers_match_published"] and ideals.ok
                 and eliminated == [1, 3, 7, 9])
    return out
