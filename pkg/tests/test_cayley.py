"""Addition Cayley graphs: construction, connectivity, Hamiltonicity, minimum sets."""

import itertools
import random

import pytest

from hamlabels import (
    SearchBudgetExceeded,
    abelian_groups_in_range,
    build_cayley,
    classify_small_connection_set,
    group,
    is_connected_cayley,
    is_hamiltonian_cayley,
    minimum_connection_size,
    sum_labels,
)


# -- graph construction ------------------------------------------------------------

def test_build_cayley_four_cycle():
    g = build_cayley(group(4), [(1,), (3,)])
    assert g.adjacency[(0,)] == ((1,), (3,))
    assert g.adjacency[(1,)] == ((0,), (2,))
    assert g.adjacency[(2,)] == ((1,), (3,))
    assert g.loop_vertices == frozenset()


def test_build_cayley_loops_tracked_separately():
    g = build_cayley(group(3), [(0,)])
    assert g.adjacency[(0,)] == ()
    assert g.adjacency[(1,)] == ((2,),)
    assert g.loop_vertices == frozenset({(0,)})


def test_build_cayley_order_two():
    g = build_cayley(group(2), [(1,)])
    assert g.adjacency[(0,)] == ((1,),)
    assert g.adjacency[(1,)] == ((0,),)


def test_build_cayley_symmetry_invariant():
    rng = random.Random(20240601)
    for G in [group(8), group(2, 4), group(3, 3)]:
        els = G.elements()
        for _ in range(20):
            S = [e for e in els if rng.random() < 0.4]
            g = build_cayley(G, S)
            for v, nbrs in g.adjacency.items():
                assert v not in nbrs
                for w in nbrs:
                    assert v in g.adjacency[w]


def test_build_cayley_rejects_foreign_elements():
    with pytest.raises(ValueError):
        build_cayley(group(4), [(4,)])


# -- connectivity --------------------------------------------------------------------

def test_connectivity_examples():
    assert is_connected_cayley(group(4), [(1,), (3,)])
    assert not is_connected_cayley(group(4), [(2,)])
    assert is_connected_cayley(group(6), [(1,), (2,)])


def test_connectivity_empty_set():
    assert not is_connected_cayley(group(2), [])
    assert is_connected_cayley(group(1), [])


def test_connectivity_methods_agree_exhaustively():
    for G in abelian_groups_in_range(2, 8):
        els = G.elements()
        for size in range(len(els) + 1):
            for S in itertools.combinations(els, size):
                assert is_connected_cayley(G, S, "structural") == \
                    is_connected_cayley(G, S, "bfs"), (G, S)


def test_connectivity_methods_agree_sampled_larger():
    rng = random.Random(987654)
    for G in [group(12), group(2, 6), group(16), group(3, 9)]:
        els = G.elements()
        for _ in range(10_000 // 4):
            S = [e for e in els if rng.random() < rng.choice([0.15, 0.5])]
            assert is_connected_cayley(G, S, "structural") == \
                is_connected_cayley(G, S, "bfs")


def test_connectivity_unknown_method():
    with pytest.raises(ValueError):
        is_connected_cayley(group(4), [(1,)], "magic")


# -- Hamiltonicity ----------------------------------------------------------------------

def test_hamiltonian_examples():
    ok, witness = is_hamiltonian_cayley(group(4), [(1,), (3,)])
    assert ok
    assert set(sum_labels(witness).labels) <= {(1,), (3,)}

    ok, witness = is_hamiltonian_cayley(group(7), [(0,), (1,), (3,)])
    assert not ok and witness is None

    ok, _ = is_hamiltonian_cayley(group(3), [(0,), (1,)])
    assert not ok


def test_hamiltonian_order_two_convention():
    ok, witness = is_hamiltonian_cayley(group(2), [(1,)])
    assert ok and witness.vertices == ((0,), (1,))
    ok, _ = is_hamiltonian_cayley(group(2), [(0,)])
    assert not ok


def test_hamiltonian_triangle_family_not_hamiltonian():
    # 2-connected does not suffice: {0,1,3} in Z_n for n = 3 mod 4
    for n in (7, 11):
        ok, _ = is_hamiltonian_cayley(group(n), [(0,), (1,), (3,)])
        assert not ok, n


def test_hamiltonian_dp_and_backtracking_agree():
    for G in [group(6), group(8), group(2, 4), group(3, 3)]:
        els = G.elements()
        sets = [S for size in (2, 3) for S in itertools.combinations(els, size)]
        for S in sets:
            dp_ok, _ = is_hamiltonian_cayley(G, S)
            bt_ok, _ = is_hamiltonian_cayley(G, S, dp_limit=0)
            assert dp_ok == bt_ok, (G, S)


def test_hamiltonian_backtracking_budget_raises():
    with pytest.raises(SearchBudgetExceeded):
        # whole group as connection set: dense graph, tiny budget
        is_hamiltonian_cayley(group(8), group(8).elements(), dp_limit=0, budget=3)


def test_hamiltonian_witness_verified():
    for G in [group(6), group(2, 4)]:
        els = G.elements()
        for S in itertools.combinations(els, 2):
            ok, witness = is_hamiltonian_cayley(G, S)
            if ok:
                assert witness.covers_group
                assert set(sum_labels(witness).labels) <= set(S)


# -- the closed-form pair rule --------------------------------------------------------------

def test_pair_rule_examples():
    assert classify_small_connection_set(group(6), [(1,), (3,)])
    assert not classify_small_connection_set(group(6), [(0,), (2,)])
    assert not classify_small_connection_set(group(5), [(1,), (2,)])
    assert not classify_small_connection_set(group(6), [(1,)])


def test_pair_rule_requires_small_group_and_set():
    with pytest.raises(ValueError):
        classify_small_connection_set(group(2), [(1,)])
    with pytest.raises(ValueError):
        classify_small_connection_set(group(6), [(0,), (1,), (2,)])


def test_pair_rule_matches_search_through_order_ten():
    for G in abelian_groups_in_range(3, 10):
        els = G.elements()
        for size in (0, 1, 2):
            for S in itertools.combinations(els, size):
                want, _ = is_hamiltonian_cayley(G, S)
                assert classify_small_connection_set(G, S) == want, (G, S)


# -- minimum connection size -----------------------------------------------------------------

def test_minimum_connection_examples():
    res = minimum_connection_size(group(6))
    assert res.status == "exact" and res.size == 2
    ok, _ = is_hamiltonian_cayley(group(6), res.witness_set)
    assert ok

    assert minimum_connection_size(group(5)).size == 3
    assert minimum_connection_size(group(2, 2)).size == 2
    assert minimum_connection_size(group(4)).size == 2
    assert minimum_connection_size(group(2)).size == 1


def test_minimum_connection_witness_cycle_uses_only_witness_sums():
    res = minimum_connection_size(group(8))
    assert res.size == 2
    assert set(sum_labels(res.witness_cycle).labels) <= set(res.witness_set)


def test_minimum_connection_even_closed_form():
    for G in abelian_groups_in_range(4, 16):
        if G.order % 2:
            continue
        want = G.rank if G.invariant_factors[0] == 2 else G.rank + 1
        assert minimum_connection_size(G).size == want, G


def test_minimum_connection_odd_bounds():
    for G in abelian_groups_in_range(3, 15):
        if G.order % 2 == 0:
            continue
        size = minimum_connection_size(G).size
        assert G.rank + 1 <= size <= 2 * G.rank + 1, G
        if G.is_cyclic:
            assert size == 3


def test_minimum_connection_budget_interval():
    res = minimum_connection_size(group(3, 3), budget=2, dp_limit=0)
    assert res.status == "interval"
    assert res.size is None
    assert (res.lower, res.upper) == (3, 5)
