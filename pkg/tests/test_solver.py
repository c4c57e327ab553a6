from __future__ import annotations

import pytest
from hypothesis import given

from helpers import all_labelled_graphs, brute_odd_dominating_sets, brute_solvable, graphs
from lightsout.enumeration import enumerate_by_vertices
from lightsout.graph import (
    CapacityError,
    complement,
    complete_graph,
    cycle_graph,
    empty_graph,
    from_edges,
    join,
    path_graph,
    star_graph,
)
from lightsout.solver import (
    complement_obstructions,
    complement_reductions,
    has_even_odd_dominating_set,
    is_universally_solvable,
    join_solvable,
    odd_dominating_set,
    press,
    solve_configuration,
)


@pytest.mark.parametrize("n", range(0, 6))
def test_solvability_matches_reachability_on_all_labelled_graphs(n):
    for g in all_labelled_graphs(n):
        assert is_universally_solvable(g) == brute_solvable(g)


@pytest.mark.parametrize(
    "g, expected",
    [
        (empty_graph(0), True),
        (empty_graph(1), True),
        (complete_graph(2), False),
        (path_graph(3), True),
        (complete_graph(3), False),
        (cycle_graph(5), True),
        (star_graph(2), True),
        (star_graph(3), False),
    ],
)
def test_small_verdicts(g, expected):
    assert is_universally_solvable(g) is expected


@pytest.mark.parametrize("n", range(1, 20))
def test_paths(n):
    # brute-force reachability for short paths; longer ones follow the same residue rule
    expected = brute_solvable(path_graph(n)) if n <= 12 else n % 3 != 2
    assert is_universally_solvable(path_graph(n)) is expected
    assert expected is (n % 3 != 2)


@pytest.mark.parametrize("n", range(2, 12))
def test_two_dominating_vertices_block_solvability(n):
    g = complete_graph(n)
    assert not is_universally_solvable(g)


@given(graphs(max_n=9))
def test_solution_replay_turns_everything_off(g):
    for lights in ([], list(range(g.n)), list(range(0, g.n, 2))):
        x = solve_configuration(g, lights)
        if x is not None:
            assert press(g, lights, sorted(x)) == frozenset()
        else:
            assert not is_universally_solvable(g)


def test_solve_configuration_examples():
    assert solve_configuration(path_graph(3), [0, 1, 2]) == {1}
    assert solve_configuration(complete_graph(2), [0]) is None
    assert solve_configuration(path_graph(4), []) == frozenset()
    with pytest.raises(ValueError):
        solve_configuration(path_graph(3), [3])


@given(graphs(max_n=8))
def test_odd_dominating_sets_against_brute_force(g):
    sets = brute_odd_dominating_sets(g)
    ods = odd_dominating_set(g)
    assert (ods is None) == (not sets)
    if ods is not None:
        assert sum(1 << v for v in ods) in sets
    assert has_even_odd_dominating_set(g) == any(s.bit_count() % 2 == 0 for s in sets)


@pytest.mark.parametrize("n", range(0, 8))
def test_parity_law_for_solvable_graphs(n):
    # a solvable graph has a single odd dominating set, of the same parity as n
    for g in enumerate_by_vertices(n):
        if is_universally_solvable(g):
            ods = odd_dominating_set(g)
            assert len(ods) % 2 == n % 2
            assert has_even_odd_dominating_set(g) == (n % 2 == 0)


@pytest.mark.parametrize("n1", range(1, 5))
def test_join_criterion_on_catalogues(n1):
    small = [g for k in range(1, 5) for g in enumerate_by_vertices(k)]
    for g1 in enumerate_by_vertices(n1):
        for g2 in small:
            assert join_solvable(g1, g2) == is_universally_solvable(join(g1, g2))


def test_join_with_two_isolated_vertices_keeps_solvability():
    two = empty_graph(2)
    for g in enumerate_by_vertices(5):
        assert is_universally_solvable(join(g, two)) == is_universally_solvable(g)


def test_join_with_single_vertex():
    one = empty_graph(1)
    for n in (4, 5):
        for g in enumerate_by_vertices(n):
            joined = is_universally_solvable(join(g, one))
            if n % 2:
                assert not joined
            else:
                assert joined == is_universally_solvable(g)


def test_join_capacity():
    with pytest.raises(CapacityError):
        join_solvable(empty_graph(40), empty_graph(30))


@pytest.mark.parametrize("n", range(1, 8))
def test_complement_rules_never_contradict_rank(n):
    for g in enumerate_by_vertices(n):
        verdict = is_universally_solvable(complement(g))
        if complement_obstructions(g):
            assert not verdict
        for _, smaller in complement_reductions(g):
            assert is_universally_solvable(complement(smaller)) == verdict


@pytest.mark.parametrize(
    "g, rule",
    [
        (from_edges(4, [(0, 1)]), "isolated-vertex-even-order"),
        (star_graph(2), "two-pendant-neighbours"),
        (from_edges(5, [(0, 1), (1, 2)]), "two-isolated-vertices"),
        (from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)]), "hub-with-few-branch-vertices"),
        (cycle_graph(4), "four-cycle-opposite-degree-two"),
    ],
)
def test_each_rule_fires(g, rule):
    assert rule in complement_obstructions(g)
    assert not is_universally_solvable(complement(g))


def test_reductions_shrink_the_graph():
    g = from_edges(7, [(0, 1), (2, 3), (3, 4), (4, 5)])
    names = dict(complement_reductions(g))
    assert names["odd-order-isolated-vertex"].n == 6
    assert names["isolated-edge"].n == 5
