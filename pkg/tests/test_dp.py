"""Disjoint-paths search, its brute-force oracle, rooted topological minors."""

import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from pdpc.dp import (DomainError, DpInstance, DpSolution, TopMinorWitness,
                     brute_dp, path_pattern, rooted_topminor, solve_dp,
                     validate_dp_solution, validate_topminor_witness)


def test_single_pair_path():
    inst = DpInstance(nx.path_graph(4), ((0, 3),))
    sol = solve_dp(inst)
    assert sol is not None
    assert sol.paths == ((0, 1, 2, 3),)


def test_single_pair_disconnected():
    g = nx.Graph()
    g.add_edge(0, 1)
    g.add_edge(2, 3)
    assert solve_dp(DpInstance(g, ((0, 3),))) is None


def test_two_pairs_grid():
    g = nx.grid_2d_graph(3, 3)
    inst = DpInstance(g, (((0, 0), (2, 0)), ((0, 2), (2, 2))))
    sol = solve_dp(inst)
    assert sol is not None
    assert validate_dp_solution(inst, sol)


def test_two_pairs_crossing_infeasible():
    # on a cycle, interleaved terminal pairs cannot be joined disjointly
    g = nx.cycle_graph(4)
    inst = DpInstance(g, ((0, 2), (1, 3)))
    assert solve_dp(inst) is None
    assert brute_dp(inst) is None


def test_star_center_contention():
    # K_{1,4}: both paths would have to pass through the hub
    g = nx.star_graph(4)
    inst = DpInstance(g, ((1, 2), (3, 4)))
    assert solve_dp(inst) is None


def test_terminals_must_be_distinct():
    g = nx.path_graph(3)
    with pytest.raises(DomainError):
        DpInstance(g, ((0, 2), (0, 1)))
    with pytest.raises(DomainError):
        DpInstance(g, ())


def test_zero_length_rejected():
    g = nx.Graph()
    g.add_node(0)
    g.add_edge(0, 1)
    inst = DpInstance.__new__(DpInstance)
    object.__setattr__(inst, "graph", g)
    object.__setattr__(inst, "pairs", ((0, 0),))
    with pytest.raises(DomainError):
        solve_dp(inst)


def test_paths_avoid_foreign_terminals():
    # the only 0-2 route passes through vertex 1, a foreign terminal
    g = nx.Graph()
    g.add_edges_from([(0, 1), (1, 2), (1, 3)])
    inst = DpInstance(g, ((0, 2), (1, 3)))
    assert solve_dp(inst) is None
    assert brute_dp(inst) is None


def test_validate_rejects_bad_solutions():
    g = nx.cycle_graph(5)
    inst = DpInstance(g, ((0, 2),))
    assert not validate_dp_solution(inst, DpSolution(((0, 2),)))  # no edge
    assert not validate_dp_solution(inst, DpSolution(((0, 1),)))  # wrong end
    assert not validate_dp_solution(inst, DpSolution(()))  # count mismatch
    assert validate_dp_solution(inst, DpSolution(((0, 1, 2),)))


def test_path_pattern():
    inst = DpInstance(nx.path_graph(4), ((0, 3),))
    sol = solve_dp(inst)
    assert path_pattern(inst, sol) == {frozenset((0, 3))}
    with pytest.raises(DomainError):
        path_pattern(inst, DpSolution(()))


@given(st.integers(0, 10 ** 6))
@settings(max_examples=80, deadline=None)
def test_solver_matches_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(4, 7)
    m = rng.randint(n - 1, min(2 * n, n * (n - 1) // 2))
    g = nx.gnm_random_graph(n, m, seed=seed)
    k = rng.randint(1, 2)
    verts = list(g.nodes())
    if len(verts) < 2 * k:
        return
    terms = rng.sample(verts, 2 * k)
    pairs = tuple((terms[2 * i], terms[2 * i + 1]) for i in range(k))
    inst = DpInstance(g, pairs)
    fast = solve_dp(inst)
    slow = brute_dp(inst)
    assert (fast is None) == (slow is None)
    if fast is not None:
        assert validate_dp_solution(inst, fast)


# -- rooted topological minors -------------------------------------------


def test_topminor_triangle_in_cycle():
    pattern = nx.cycle_graph(3)
    host = nx.cycle_graph(6)
    w = rooted_topminor(pattern, host, {0: 0})
    assert w is not None
    assert validate_topminor_witness(pattern, host, {0: 0}, w)


def test_topminor_k4_not_in_cycle():
    assert rooted_topminor(nx.complete_graph(4), nx.cycle_graph(8), {}) is None


def test_topminor_respects_roots():
    # a path pattern rooted at both ends of a host path must span it
    pattern = nx.path_graph(2)
    host = nx.path_graph(4)
    w = rooted_topminor(pattern, host, {0: 0, 1: 3})
    assert w is not None
    assert w.psi1[frozenset((0, 1))] == (0, 1, 2, 3)
    # rooting both pattern ends at adjacent host vertices forces one edge
    w2 = rooted_topminor(pattern, host, {0: 1, 1: 2})
    assert w2 is not None
    assert len(w2.psi1[frozenset((0, 1))]) == 2


def test_topminor_root_errors():
    with pytest.raises(DomainError):
        rooted_topminor(nx.path_graph(2), nx.path_graph(3), {0: 0, 1: 0})
    with pytest.raises(DomainError):
        rooted_topminor(nx.path_graph(2), nx.path_graph(3), {7: 0})


def test_topminor_isolated_pattern_vertices():
    pattern = nx.Graph()
    pattern.add_edge("a", "b")
    pattern.add_node("c")
    host = nx.path_graph(3)
    w = rooted_topminor(pattern, host, {"a": 0, "b": 2})
    # the isolated vertex may sit on the path's interior image
    assert w is not None
    assert validate_topminor_witness(pattern, host, {"a": 0, "b": 2}, w)


def test_topminor_edge_classes_respected():
    # two parallel routes between the roots, distinguished by edge class;
    # a classed pattern edge may only realize along its own class
    host = nx.Graph()
    host.add_edge("s", "u", cls="g")
    host.add_edge("u", "t", cls="g")
    host.add_edge("s", "w", cls="geo")
    host.add_edge("w", "t", cls="geo")
    pattern = nx.Graph()
    pattern.add_edge("A", "B", cls="g")
    rho = {"A": "s", "B": "t"}
    w = rooted_topminor(pattern, host, rho)
    assert w is not None
    assert set(w.psi1[frozenset(("A", "B"))]) == {"s", "u", "t"}

    only_geo = nx.Graph()
    only_geo.add_edge("s", "w", cls="geo")
    only_geo.add_edge("w", "t", cls="geo")
    assert rooted_topminor(pattern, only_geo, rho) is None


def test_topminor_two_disjoint_branch_paths():
    pattern = nx.Graph()
    pattern.add_edges_from([("a", "b"), ("c", "d")])
    host = nx.cycle_graph(6)
    rho = {"a": 0, "b": 3}
    w = rooted_topminor(pattern, host, rho)
    assert w is not None
    assert validate_topminor_witness(pattern, host, rho, w)
    pa = set(w.psi1[frozenset(("a", "b"))])
    pb = set(w.psi1[frozenset(("c", "d"))])
    assert not (pa & pb)


def test_topminor_witness_validator_rejects_overlap():
    pattern = nx.Graph()
    pattern.add_edges_from([("a", "b"), ("c", "d")])
    host = nx.path_graph(5)
    bad = TopMinorWitness(
        {"a": 0, "b": 4, "c": 1, "d": 3},
        {frozenset(("a", "b")): (0, 1, 2, 3, 4),
         frozenset(("c", "d")): (1, 2, 3)},
    )
    assert not validate_topminor_witness(pattern, host, {}, bad)
