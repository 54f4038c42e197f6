from __future__ import annotations

import math
import random
from itertools import permutations

import pytest
from hypothesis import given, strategies as st

from conftest import graphs_on
from evasive.enumeration import graph_classes
from evasive.graphs import (Graph, canonical_form, circulant_cycles, complement, complete_graph,
                            cycle_graph, empty_graph, is_isomorphic, make_graph, num_pairs,
                            path_graph)
from evasive.properties import (PropertyError, chi_by_classes, class_poset, contains,
                                contribution_mod_p, count_down_sets, d5_predicted, down_sets,
                                dual_property, enumerate_iso_classes, ideal_sum_mod,
                                is_down_set, is_trivial, iso_class, membership_table,
                                property_complex, property_from_generators, random_property,
                                special_classes_p, verify_d3, verify_d5_smallest)
from evasive.simplicial import euler_characteristic


def prop4(*edge_lists):
    return property_from_generators(4, [make_graph(4, e) for e in edge_lists])


def generators_of(poset, ideal):
    members = ideal.members()
    return [poset.classes[i] for i in members
            if not any(j != i and poset.leq[i][j] for j in members)]


# --------------------------------------------------------------------------
# membership

def test_no_edges_property():
    p = property_from_generators(4, [empty_graph(4)])
    assert contains(p, empty_graph(4))
    assert not contains(p, make_graph(4, [(0, 1)]))


def test_cycle_contains_path():
    p = property_from_generators(4, [cycle_graph(4)])
    assert contains(p, path_graph(4, 2))


def test_trivial():
    assert is_trivial(property_from_generators(4, [complete_graph(4)]))
    assert not is_trivial(property_from_generators(4, [cycle_graph(4)]))


def test_generators_are_antichain():
    p = property_from_generators(4, [cycle_graph(4), path_graph(4), make_graph(4, [(2, 3)])])
    assert p.generators == (canonical_form(cycle_graph(4)),)


def test_vertex_count_mismatch():
    with pytest.raises(PropertyError):
        property_from_generators(4, [empty_graph(5)])
    with pytest.raises(PropertyError):
        contains(property_from_generators(4, [empty_graph(4)]), empty_graph(5))


@given(st.integers(0, 2 ** 32))
def test_membership_monotone_and_invariant(seed):
    rng = random.Random(seed)
    prop = random_property(rng, 5)
    table = membership_table(prop)
    for _ in range(30):
        bits = rng.getrandbits(10)
        if table[bits]:
            for e in range(10):
                assert table[bits & ~(1 << e)]
        perm = list(range(5))
        rng.shuffle(perm)
        assert table[bits] == table[Graph(5, bits).relabel(perm).edges]


# --------------------------------------------------------------------------
# complexes and classes

def test_complex_examples():
    assert euler_characteristic(property_complex(prop4([(0, 1)]))) == 6
    full = property_complex(property_from_generators(4, [complete_graph(4)]))
    assert len(full.facets) == 1 and full.dimension == 5
    matchings = property_complex(prop4([(0, 1), (2, 3)]))
    assert len(matchings.facets) == 3 and matchings.dimension == 1


def test_complex_cap():
    with pytest.raises(PropertyError):
        property_complex(property_from_generators(7, [empty_graph(7)]))


def test_enumerate_all_four_vertex_classes():
    classes = enumerate_iso_classes(property_from_generators(4, [complete_graph(4)]))
    assert len(classes) == 10
    assert sum(c.size for c in classes) == 2 ** 6 - 1
    assert enumerate_iso_classes(property_from_generators(4, [empty_graph(4)])) == []


def test_enumerate_cap():
    with pytest.raises(PropertyError):
        enumerate_iso_classes(property_from_generators(8, [empty_graph(8)]))


def test_chi_examples():
    assert chi_by_classes(prop4([(0, 1)])) == 6
    path = prop4([(0, 1), (1, 2)])
    assert chi_by_classes(path) == 6 - 12 == euler_characteristic(property_complex(path))
    tri = prop4([(0, 1), (1, 2), (0, 2)])
    assert chi_by_classes(tri) == euler_characteristic(property_complex(tri))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_chi_cross_validation_all_properties(n):
    poset = class_poset(graph_classes(n))
    for d in down_sets(poset, max_elements=len(poset)):
        if not d.mask:
            continue
        prop = property_from_generators(n, generators_of(poset, d))
        assert chi_by_classes(prop) == euler_characteristic(property_complex(prop))


@given(graphs_on(6))
def test_iso_class_size_times_aut(g):
    c = iso_class(g)
    assert c.size * c.aut == math.factorial(6) and c.size >= 1


def test_class_sizes_match_scan():
    for g in graph_classes(5):
        assert iso_class(g).size == sum(1 for b in range(1024) if is_isomorphic(Graph(5, b), g))


# --------------------------------------------------------------------------
# contributions

def test_contribution_examples():
    g1 = make_graph(10, [(i, (i + 1) % 5) for i in range(5)])
    assert contribution_mod_p(g1, 5) == 4
    g2 = make_graph(10, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    assert contribution_mod_p(g2, 5) == 3
    g5 = make_graph(10, [(a + o, b + o) for o in (0, 5) for a in range(5) for b in range(a + 1, 5)])
    assert contribution_mod_p(g5, 5) == 4


@pytest.mark.parametrize("n", [4, 5, 6])
def test_complement_contribution_numeric(n):
    total = num_pairs(n)
    for g in graph_classes(n):
        if g.m == 0 or g.m == total:
            continue
        a = contribution_mod_p(g, 5)
        b = contribution_mod_p(complement(g), 5)
        sign = (-1) ** (total - g.m - 1) * (-1) ** (g.m - 1)
        assert (b - sign * a) % 5 == 0


# --------------------------------------------------------------------------
# D3 / D5 classifications

def test_special_classes():
    assert special_classes_p(5) == sorted(
        [canonical_form(empty_graph(5)), canonical_form(cycle_graph(5)), complete_graph(5)],
        key=lambda g: (g.m, g.edges))
    assert [g.m for g in special_classes_p(3)] == [0, 3]
    # multiplication by units permutes the step sets, so C(1)=C(2)=C(3) and C(1,2)=C(1,3)=C(2,3)
    assert [g.m for g in special_classes_p(7)] == [0, 7, 14, 21]


def test_special_classes_error():
    with pytest.raises(PropertyError):
        special_classes_p(11)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_special_classes_cyclic_symmetry(p):
    sigma = [(i + 1) % p for i in range(p)]
    for g in special_classes_p(p):
        assert g.relabel(sigma) == g or is_isomorphic(g, g.relabel(sigma))
    for steps in ([1], [1, 2], [2, 3]):
        if max(steps) <= (p - 1) // 2:
            c = circulant_cycles(p, steps)
            assert c.relabel(sigma) == c


def test_d3():
    r5 = verify_d3(5)
    assert r5.ok and r5.scanned == 1024 and len(r5.observed) == 3
    r3 = verify_d3(3)
    assert r3.ok and r3.scanned == 8 and [g.m for g in r3.observed] == [0, 3]


def test_d3_by_brute_force():
    # p does not divide |[G]| counted directly by isomorphism tests
    for p in (3, 5):
        found = {canonical_form(g) for g in graph_classes(p)
                 if sum(1 for b in range(1 << num_pairs(p)) if is_isomorphic(Graph(p, b), g)) % p}
        assert found == set(special_classes_p(p))


def test_d5():
    r = verify_d5_smallest()
    assert r.ok and r.scanned == 32768
    assert set(r.observed) == set(d5_predicted(3))


def test_d3_error():
    with pytest.raises(PropertyError):
        verify_d3(7)


# --------------------------------------------------------------------------
# posets and down-sets

def test_chain_and_antichain():
    edge = make_graph(4, [(0, 1)])
    chain = class_poset([edge, complete_graph(4)])
    assert chain.covers == [(0, 1)]
    anti = class_poset([make_graph(4, [(0, 1), (2, 3)]), make_graph(4, [(0, 1), (1, 2)])])
    assert anti.covers == []


def test_poset_rejects_duplicates():
    with pytest.raises(PropertyError):
        class_poset([cycle_graph(4), cycle_graph(4).relabel([1, 0, 2, 3])])


@pytest.mark.parametrize("n", [3, 4])
def test_down_sets_are_closed_and_complete(n):
    poset = class_poset(graph_classes(n))
    found = {d.mask for d in down_sets(poset)}
    brute = {m for m in range(1 << len(poset))
             if all(not (m >> j & 1) or all(m >> i & 1 for i in range(len(poset)) if poset.leq[i][j])
                    for j in range(len(poset)))}
    assert found == brute
    assert all(is_down_set(poset, m) for m in found)
    assert len(found) == count_down_sets(poset)


def test_poset_order_is_subgraph_relation():
    poset = class_poset(graph_classes(4))
    for i, a in enumerate(poset.classes):
        for j, b in enumerate(poset.classes):
            brute = any(a.relabel(p).is_subgraph_of(b) for p in permutations(range(4)))
            assert poset.leq[i][j] == brute


def test_down_set_cap():
    poset = class_poset(graph_classes(5))
    with pytest.raises(PropertyError):
        down_sets(poset)


def test_ideal_sum_skips_empty_class():
    poset = class_poset(graph_classes(4))
    only_empty = next(d for d in down_sets(poset) if d.members() == [0])
    assert ideal_sum_mod(poset, only_empty, 5) == 0


def test_dual_property_definition():
    prop = prop4([(0, 1), (1, 2)])
    dual = dual_property(prop)
    for bits in range(64):
        g = Graph(4, bits)
        assert contains(dual, g) == (not contains(prop, complement(g)))
