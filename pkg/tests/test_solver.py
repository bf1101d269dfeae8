"""End-to-end solving, the brute-force oracle, audits, certificates."""

import networkx as nx
import pytest

from pdpc.cactus import CactusBoundary
from pdpc.gen import (gen_cycle_terminals, gen_inactive_padding, gen_random,
                      gen_two_holes)
from pdpc.instance import PdpcInstance
from pdpc.solver import (CapError, InvalidInstance, Solution, audit_solution,
                         boundary_order, brute_oracle, certificate_universe,
                         lemma_certified, min_solve, placement_feasible,
                         solve)
from pdpc.universe import enum_completions, enum_pairs


def test_solve_nested_feasible():
    inst = gen_cycle_terminals(k=2, n=6, seed=0, ell=3, arrangement="nested")
    sol = solve(inst)
    assert sol is not None
    ok, why = audit_solution(inst, sol)
    assert ok, why
    assert 1 <= len(sol.patch_edges) <= 2


def test_solve_interleaved_infeasible():
    inst = gen_cycle_terminals(k=2, n=6, seed=0, ell=3,
                               arrangement="interleaved")
    assert solve(inst) is None
    assert brute_oracle(inst) is None


def test_solve_zero_budget():
    g = nx.Graph()
    g.add_nodes_from(["a", "b", "c"])
    g.add_edge("a", "b")
    inst = PdpcInstance(g, (("a", "b"),), (CactusBoundary(("a", "b", "c")),), 0)
    sol = solve(inst)
    assert sol is not None
    assert sol.patch_edges == ()
    # same pair without the edge: budget zero cannot help
    g2 = nx.Graph()
    g2.add_nodes_from(["a", "b", "c"])
    inst2 = PdpcInstance(g2, (("a", "b"),), (CactusBoundary(("a", "b", "c")),), 0)
    assert solve(inst2) is None


def test_solve_rejects_invalid():
    g = nx.Graph()
    g.add_nodes_from("abc")
    with pytest.raises(InvalidInstance):
        solve(PdpcInstance(g, (("a", "b"),), (), 1))


def test_solve_rejects_large_k():
    g = nx.Graph()
    verts = [f"v{i}" for i in range(8)]
    g.add_nodes_from(verts)
    pairs = tuple((verts[2 * i], verts[2 * i + 1]) for i in range(4))
    inst = PdpcInstance(g, pairs, (CactusBoundary(tuple(verts)),), 1)
    with pytest.raises(CapError):
        solve(inst)


def test_solution_is_minimum():
    for seed in range(12):
        inst = gen_random(seed=seed)
        sol = solve(inst)
        oracle = brute_oracle(inst)
        assert (sol is None) == (oracle is None), f"seed {seed}"
        if sol is not None:
            assert len(sol.patch_edges) == len(oracle.patch_edges), f"seed {seed}"


def test_two_holes_cross_patch():
    inst = gen_two_holes(k=1, seed=0, ell=2)
    sol = solve(inst)
    assert sol is not None
    ok, why = audit_solution(inst, sol)
    assert ok, why
    assert len(sol.jwalks) == 2  # the patch attaches to both holes


def test_inactive_holes_do_not_change_answer():
    for seed in range(5):
        base = gen_random(seed=seed, max_n=6)
        padded = gen_inactive_padding(base, extra=2, seed=seed)
        a = solve(base)
        b = solve(padded)
        assert (a is None) == (b is None), f"seed {seed}"
        if a is not None:
            assert len(a.patch_edges) == len(b.patch_edges), f"seed {seed}"


def test_min_solve():
    inst = gen_cycle_terminals(k=2, n=6, seed=1, ell=0, arrangement="nested")
    # min_solve ignores the instance budget
    res = min_solve(inst)
    assert res is not None
    m, sol = res
    assert m == len(sol.patch_edges) >= 1
    assert min_solve(inst, ell_cap=0) is None


def test_audit_rejections():
    inst = gen_cycle_terminals(k=1, n=4, seed=0, ell=1, arrangement="nested")
    sol = solve(inst)
    assert sol is not None
    over = Solution(sol.patch_edges * 2, sol.paths, sol.jwalks)
    assert not audit_solution(inst, over)[0]
    off = Solution((("v0", "nope"),), sol.paths, sol.jwalks)
    assert not audit_solution(inst, off)[0]
    broken = Solution(sol.patch_edges, ((sol.paths[0][0],) * 2,), sol.jwalks)
    assert not audit_solution(inst, broken)[0]


def test_boundary_order_deterministic():
    inst = gen_two_holes(k=1, seed=3)
    order = boundary_order(inst)
    assert order == boundary_order(inst)
    assert set(order) == inst.boundary_vertices()


def test_oracle_caps():
    inst = gen_cycle_terminals(k=2, n=6, seed=0, ell=3, arrangement="nested")
    with pytest.raises(CapError):
        brute_oracle(inst, max_boundary=4)
    with pytest.raises(CapError):
        brute_oracle(inst, max_ell=1)


# -- candidate placements --------------------------------------------------


def cycle_candidate():
    (comp,) = enum_completions(1)
    for pc in enum_pairs(comp, 1):
        if len(pc.holes) == 1 and len(pc.holes[0].cycles()) == 1 \
                and pc.n_total == 3:
            return pc
    raise AssertionError("candidate missing")


def test_placement_feasible_accepts_order_preserving():
    inst = gen_cycle_terminals(k=1, n=5, seed=0, ell=2, arrangement="nested")
    pc = cycle_candidate()
    hole = list(inst.holes[0].walk)
    vmap = {0: hole[0], 1: hole[2], 2: hole[3]}
    placement = placement_feasible(inst, pc, vmap)
    assert placement is not None
    assert len(placement.patch_edges) == 1


def test_placement_feasible_rejects_noninjective():
    inst = gen_cycle_terminals(k=1, n=5, seed=0, ell=2, arrangement="nested")
    pc = cycle_candidate()
    hole = list(inst.holes[0].walk)
    assert placement_feasible(inst, pc, {0: hole[0], 1: hole[0], 2: hole[1]}) is None


def test_placement_feasible_rejects_budget():
    inst = gen_cycle_terminals(k=1, n=5, seed=0, ell=0, arrangement="nested")
    pc = cycle_candidate()
    hole = list(inst.holes[0].walk)
    assert placement_feasible(inst, pc, {0: hole[0], 1: hole[2], 2: hole[3]}) is None


# -- certificate route -----------------------------------------------------


def test_certificate_universe_cached_and_nonempty():
    u1 = certificate_universe(1, 1, 1)
    u2 = certificate_universe(1, 1, 1)
    assert u1 is u2
    assert u1


def test_certified_matches_solve_k1():
    for seed in range(6):
        inst = gen_random(seed=seed, k=1, holes=1, max_n=6)
        want = solve(inst) is not None
        assert lemma_certified(inst) == want, f"seed {seed}"


def test_certified_matches_solve_k2_small():
    for n in (4, 5):
        for arrangement in ("nested", "interleaved"):
            inst = gen_cycle_terminals(k=2, n=n, seed=0, ell=3,
                                       arrangement=arrangement)
            want = solve(inst) is not None
            assert lemma_certified(inst) == want, (n, arrangement)
