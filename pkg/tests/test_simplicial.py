from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from evasive.graphs import index_pair, make_graph
from evasive.groups import (GeneratedGroup, Permutation, double_pcycle_group, edge_orbits,
                            matching_oliver_group, affine_group, parse_cycles, type1_group,
                            verify_oliver_witness)
from evasive.properties import membership_table, property_complex, property_from_generators
from evasive.simplicial import (ComplexError, SimplicialComplex, betti_mod_p,
                                boundary_of_simplex, cone, deletion, euler_characteristic,
                                fixed_point_complex, is_collapsible_exhaustive,
                                is_connected_complex, is_non_evasive, link, random_complex,
                                random_cone_tower, random_non_evasive, read_facets, simplex,
                                write_facets)


def faces_of(k: SimplicialComplex) -> set[frozenset]:
    return {frozenset(k.universe[b] for b in range(len(k.universe)) if f >> b & 1)
            for f in k.faces()}


def ne_by_definition(faces: frozenset[frozenset]) -> bool:
    """Non-evasiveness straight from the definition on explicit face sets."""
    verts = {v for f in faces for v in f}
    if len(verts) == 1:
        return True
    for v in sorted(verts):
        lk = frozenset(f - {v} for f in faces if v in f)
        dl = frozenset(f for f in faces if v not in f)
        if {v for f in lk for v in f} and ne_by_definition(lk) and ne_by_definition(dl):
            return True
    return False


# --------------------------------------------------------------------------
# Euler characteristic

@pytest.mark.parametrize("m", range(1, 8))
def test_chi_simplex(m):
    assert euler_characteristic(simplex(range(m))) == 1


def test_chi_triangle_boundary():
    assert euler_characteristic(boundary_of_simplex("abc")) == 0


def test_chi_at_most_one_edge():
    prop = property_from_generators(4, [make_graph(4, [(0, 1)])])
    k = property_complex(prop)
    assert k.f_vector() == [6] and euler_characteristic(k) == 6


def test_void_complex_rejected():
    with pytest.raises(ComplexError):
        SimplicialComplex(("a",), frozenset())


def test_face_cap():
    with pytest.raises(ComplexError):
        euler_characteristic(simplex(range(22)), cap=1 << 20)


# --------------------------------------------------------------------------
# link and deletion

def test_link_of_simplex():
    k = link(simplex("abc"), "a")
    assert k.facet_labels() == [("b", "c")]


def test_deletion_of_triangle_boundary():
    assert deletion(boundary_of_simplex("abc"), "a").facet_labels() == [("b", "c")]


def test_link_needs_vertex():
    k = SimplicialComplex.from_faces("abc", [["a", "b"]])
    with pytest.raises(ComplexError):
        link(k, "c")
    with pytest.raises(ComplexError):
        link(k, "z")


@given(st.integers(0, 2 ** 32), st.integers(2, 6))
def test_cone_apex_link_and_deletion(seed, n):
    base = random_complex(random.Random(seed), n, 3)
    k = cone(base, "apex")
    assert link(k, "apex").facets == base.facets
    assert deletion(k, "apex").facets == base.facets


@pytest.mark.parametrize("gens", [
    [[(0, 1), (1, 2)]], [[(0, 1), (2, 3)]], [[(0, 1), (0, 2), (0, 3)]], [[(0, 1), (1, 2), (2, 0)]],
    [[(0, 1), (1, 2), (2, 3)], [(0, 1), (0, 2), (0, 3)]],
])
def test_link_of_property_complex(gens):
    prop = property_from_generators(4, [make_graph(4, g) for g in gens])
    k = property_complex(prop)
    table = membership_table(prop)
    e = index_pair(0)
    lk = link(k, e)
    expected = {frozenset(index_pair(b) for b in range(6) if bits >> b & 1)
                for bits in range(64) if not bits & 1 and table[bits | 1]}
    assert faces_of(lk) == expected


# --------------------------------------------------------------------------
# non-evasiveness

def test_point_is_non_evasive():
    assert is_non_evasive(simplex(["v"]))


def test_simplex_is_non_evasive():
    assert is_non_evasive(simplex(range(5)))


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_boundary_is_evasive(m):
    assert not is_non_evasive(boundary_of_simplex(range(m)))


def test_empty_face_only_and_two_points():
    assert not is_non_evasive(SimplicialComplex(("a",), frozenset([0])))
    assert not is_non_evasive(SimplicialComplex.from_faces("ab", [["a"], ["b"]]))


def test_non_evasive_needs_both_sides():
    # a path is non-evasive; a path plus an isolated point is not
    path = SimplicialComplex.from_faces("abcd", [["a", "b"], ["b", "c"], ["c", "d"]])
    assert is_non_evasive(path)
    assert not is_non_evasive(SimplicialComplex.from_faces("abcde", [["a", "b"], ["b", "c"], ["e"]]))


@given(st.integers(0, 2 ** 32), st.integers(1, 6), st.integers(1, 5))
def test_non_evasive_matches_definition(seed, n, facets):
    k = random_complex(random.Random(seed), n, facets)
    assert is_non_evasive(k) == ne_by_definition(frozenset(faces_of(k)))


@given(st.integers(0, 2 ** 32), st.integers(1, 6), st.permutations(range(6)))
def test_non_evasive_invariant_under_relabeling(seed, n, perm):
    k = random_complex(random.Random(seed), 6, n)
    moved = SimplicialComplex.from_masks(k.universe, [
        sum(1 << perm[b] for b in range(6) if f >> b & 1) for f in k.facets])
    assert is_non_evasive(k) == is_non_evasive(moved)


@given(st.integers(0, 2 ** 32), st.integers(1, 12))
def test_non_evasive_consequences(seed, n):
    rng = random.Random(seed)
    k = random_non_evasive(rng, n)
    assert is_non_evasive(k)
    assert euler_characteristic(k) == 1
    for p in (2, 3, 5):
        assert betti_mod_p(k, p).acyclic
    if len([f for f in k.faces() if f]) <= 24:
        assert is_collapsible_exhaustive(k)


@given(st.integers(0, 2 ** 32))
def test_cone_towers_non_evasive(seed):
    k = random_cone_tower(random.Random(seed))
    assert is_non_evasive(k) and euler_characteristic(k) == 1


# --------------------------------------------------------------------------
# fixed-point complexes

def test_fixed_trivial_group():
    k = boundary_of_simplex(range(4))
    fixed = fixed_point_complex(k, GeneratedGroup(4, [Permutation.identity(4)]))
    assert len(fixed.facets) == len(k.facets) and euler_characteristic(fixed) == euler_characteristic(k)


def test_fixed_simplex_two_orbits():
    g = GeneratedGroup(4, [parse_cycles("(0 1)", 4), parse_cycles("(2 3)", 4)])
    fixed = fixed_point_complex(simplex(range(4)), g)
    assert len(fixed.vertices) == 2 and len(fixed.facets) == 1 and fixed.dimension == 1


def test_fixed_requires_invariance():
    g = GeneratedGroup(3, [parse_cycles("(0 1 2)", 3)])
    with pytest.raises(ComplexError):
        fixed_point_complex(SimplicialComplex.from_faces(range(3), [[0, 1]]), g)


def test_fixed_type1_listed_faces():
    group = type1_group().group
    orbits = {o.edge_list()[0]: o for o in edge_orbits(group, 10)}
    reps = {"A": (0, 5), "B": (1, 2), "C": (1, 3), "D": (1, 4), "E": (1, 6)}
    orbit = {name: next(o for o in orbits.values() if o.has_edge(*pair)) for name, pair in reps.items()}
    unions = ["AB", "AC", "AD", "AE", "BD"]
    universe = [index_pair(k) for k in range(45)]
    k = SimplicialComplex.from_masks(universe, [
        orbit[a].edges | orbit[b].edges for a, b in unions])
    fixed = fixed_point_complex(k, GeneratedGroup(45, [g.on_pairs() for g in group.generators]))
    assert len(fixed.vertices) == 5
    names = {frozenset(orbit[n].edge_list()): n for n in orbit}
    edges = {"".join(sorted(names[frozenset(v)] for v in f)) for f in fixed.facet_labels()}
    assert edges == set(unions)


def _invariant_complex(rng, group: GeneratedGroup, facets: int) -> SimplicialComplex:
    n = group.degree
    masks = set()
    for _ in range(facets):
        seed = sum(1 << b for b in rng.sample(range(n), rng.randint(1, 3)))
        for g in group.elements:
            masks.add(sum(1 << g(b) for b in range(n) if seed >> b & 1))
    return SimplicialComplex.from_masks(tuple(range(n)), masks)


def _with_fixed_apex(group: GeneratedGroup) -> GeneratedGroup:
    n = group.degree
    return GeneratedGroup(n + 1, [Permutation(g.images + (n,)) for g in group.generators])


OLIVER = [lambda: affine_group(5, 1), lambda: matching_oliver_group(3),
          lambda: double_pcycle_group(3), type1_group, lambda: double_pcycle_group(5)]


@pytest.mark.parametrize("make", OLIVER)
@pytest.mark.parametrize("seed", range(5))
def test_oliver_fixed_points_on_cones(make, seed):
    w = make()
    assert verify_oliver_witness(w)
    rng = random.Random(seed)
    base = _invariant_complex(rng, w.group, rng.randint(1, 3))
    k = cone(base, "apex")
    fixed = fixed_point_complex(k, _with_fixed_apex(w.group))
    assert fixed.vertices and euler_characteristic(fixed) == 1
    whole = fixed_point_complex(simplex(range(w.group.degree)), w.group)
    assert euler_characteristic(whole) == 1


@pytest.mark.parametrize("group, p", [
    (type1_group().group, 2),
    (GeneratedGroup(10, [parse_cycles("(0 1 2 3 4)", 10), parse_cycles("(5 6 7 8 9)", 10)]), 5),
    (GeneratedGroup(6, [parse_cycles("(0 1 2)(3 4 5)", 6)]), 3),
])
@pytest.mark.parametrize("seed", range(4))
def test_smith_on_p_groups(group, p, seed):
    rng = random.Random(seed)
    k = cone(_invariant_complex(rng, group, rng.randint(1, 3)), "apex")
    assert betti_mod_p(k, p).acyclic
    fixed = fixed_point_complex(k, _with_fixed_apex(group))
    assert betti_mod_p(fixed, p).acyclic


# --------------------------------------------------------------------------
# homology, connectivity, collapse

def test_betti_examples():
    assert betti_mod_p(simplex(range(5)), 2).acyclic
    assert betti_mod_p(boundary_of_simplex("abc"), 2).reduced == (0, 1)
    assert betti_mod_p(boundary_of_simplex(range(5)), 3).reduced == (0, 0, 0, 1)


def test_betti_two_points():
    k = SimplicialComplex.from_faces("ab", [["a"], ["b"]])
    assert betti_mod_p(k, 2).reduced == (1,)


def test_projective_plane_torsion():
    # six-vertex real projective plane: acyclic mod 3, not mod 2
    tris = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1), (1, 2, 4),
            (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    k = SimplicialComplex.from_faces(range(6), tris)
    assert euler_characteristic(k) == 1
    assert betti_mod_p(k, 3).acyclic
    assert not betti_mod_p(k, 2).acyclic
    assert not is_non_evasive(k)


def test_connectivity_examples():
    k = SimplicialComplex.from_faces("BCDE", [["B", "D"], ["C", "E"]])
    assert not is_connected_complex(k)
    assert not is_connected_complex(SimplicialComplex.from_faces("abcd", [[v] for v in "abcd"]))
    assert is_connected_complex(simplex("abcd"))


def test_collapse_examples():
    assert is_collapsible_exhaustive(simplex("abc"))
    assert not is_collapsible_exhaustive(boundary_of_simplex("abc"))
    two = SimplicialComplex.from_faces("abcd", [["a", "b", "c"], ["b", "c", "d"]])
    assert is_collapsible_exhaustive(two)


def test_collapse_cap():
    with pytest.raises(ComplexError):
        is_collapsible_exhaustive(simplex(range(6)))


# --------------------------------------------------------------------------
# text format

@given(st.integers(0, 2 ** 32), st.integers(1, 8), st.integers(1, 6))
def test_facet_text_round_trip(seed, n, facets):
    k = random_complex(random.Random(seed), n, facets)
    k = SimplicialComplex(tuple(f"v{i}" for i in range(n)), k.facets)
    again = read_facets(write_facets(k))
    assert faces_of(again) == faces_of(k)
    assert write_facets(again) == write_facets(k)
