"""Instance validation, normalization, hole assignment, part enhancement."""

import networkx as nx

from pdpc.cactus import CactusBoundary
from pdpc.instance import (PdpcInstance, enhance_part, reduce_active,
                           validate_instance)


def cycle_instance(n=4, pairs=((("v", 0), ("v", 2)),), ell=2):
    g = nx.Graph()
    verts = [("v", i) for i in range(n)]
    g.add_nodes_from(verts)
    return PdpcInstance(g, pairs, (CactusBoundary(tuple(verts)),), ell)


def test_validate_simple():
    diag = validate_instance(cycle_instance())
    assert diag.ok, diag.messages
    assert diag.normalized is not None
    assert diag.normalized.k == 1


def test_validate_drops_self_loops():
    g = nx.Graph()
    g.add_nodes_from("abc")
    g.add_edge("a", "a")
    inst = PdpcInstance(g, (("a", "b"),), (CactusBoundary(("a", "b", "c")),), 1)
    diag = validate_instance(inst)
    assert diag.ok
    assert any("self-loop" in m for m in diag.messages)
    assert not diag.normalized.graph.has_edge("a", "a")


def test_validate_pads_short_walk():
    # a plain tuple is accepted as a walk and padded up to length 3
    g2 = nx.Graph()
    g2.add_nodes_from(["a", "b"])
    inst2 = PdpcInstance(g2, (("a", "b"),), (("a", "b"),), 1)
    diag = validate_instance(inst2)
    assert diag.ok, diag.messages
    assert any("padded" in m for m in diag.messages)
    assert len(diag.normalized.holes[0].walk) == 3


def test_validate_rejections():
    g = nx.Graph()
    g.add_nodes_from("abc")
    cb = CactusBoundary(("a", "b", "c"))
    assert not validate_instance(PdpcInstance(g, (("a", "b"),), (), 1)).ok
    assert not validate_instance(PdpcInstance(g, (("a", "b"),), (cb,), -1)).ok
    assert not validate_instance(PdpcInstance(g, (), (cb,), 1)).ok
    assert not validate_instance(PdpcInstance(g, (("a", "a"),), (cb,), 1)).ok
    assert not validate_instance(PdpcInstance(g, (("a", "z"),), (cb,), 1)).ok
    # hole walk naming a vertex outside the graph
    assert not validate_instance(
        PdpcInstance(g, (("a", "b"),), (CactusBoundary(("a", "b", "z")),), 1)).ok


def test_holes_must_be_disjoint():
    g = nx.Graph()
    g.add_nodes_from("abcde")
    h1 = CactusBoundary(("a", "b", "c"))
    h2 = CactusBoundary(("c", "d", "e"))
    diag = validate_instance(PdpcInstance(g, (("a", "b"),), (h1, h2), 1))
    assert not diag.ok


def test_floating_component_needs_assignment():
    g = nx.Graph()
    g.add_nodes_from("abc")
    g.add_edge("x", "y")
    cb = CactusBoundary(("a", "b", "c"))
    bad = validate_instance(PdpcInstance(g, (("x", "y"),), (cb,), 1))
    assert not bad.ok
    good = validate_instance(
        PdpcInstance(g, (("x", "y"),), (cb,), 1, assign=(("x", 0),)))
    assert good.ok, good.messages
    assert good.normalized.hole_of()["y"] == 0


def test_component_spanning_holes_rejected():
    g = nx.Graph()
    g.add_nodes_from("abcdef")
    g.add_edge("a", "d")
    h1 = CactusBoundary(("a", "b", "c"))
    h2 = CactusBoundary(("d", "e", "f"))
    diag = validate_instance(PdpcInstance(g, (("b", "c"),), (h1, h2), 1))
    assert not diag.ok


def test_nonplanar_hole_contents_rejected():
    g = nx.complete_graph(5)
    g.add_nodes_from(["x", "y", "z"])
    g.add_edge(0, "x")
    cb = CactusBoundary(("x", "y", "z"))
    diag = validate_instance(PdpcInstance(g, ((1, 2),), (cb,), 1))
    assert not diag.ok
    assert any("embeddable" in m for m in diag.messages)


def test_hole_of_boundary_and_interior():
    g = nx.Graph()
    g.add_nodes_from("abcdef")
    g.add_edge("a", "d")  # d hangs off hole 0's boundary
    h1 = CactusBoundary(("a", "b", "c"))
    h2 = CactusBoundary(("e", "f", "x"))
    g.add_node("x")
    inst = PdpcInstance(g, (("a", "b"),), (h1, h2), 1)
    m = inst.hole_of()
    assert m["a"] == 0 and m["d"] == 0
    assert m["e"] == 1


def test_enhance_part_classes():
    part = nx.Graph()
    part.add_nodes_from("abc")
    part.add_edge("a", "b")
    cb = CactusBoundary(("a", "b", "c"))
    enhanced, center = enhance_part(part, cb, side=0)
    assert enhanced.edges["a", "b"]["cls"] == "g"
    geo = [e for e in enhanced.edges if enhanced.edges[e]["cls"] == "geo"]
    # 2 per boundary edge (subdivided) + 3 per rim position
    assert len(geo) == 2 * 3 + 3 * 3
    assert center in enhanced
    assert enhanced.degree(center) == 3


def test_enhance_part_multiplicity():
    # cut vertex on two cycles receives one external edge per occurrence
    cb = CactusBoundary(("a", "b", "c", "a", "d", "e"))
    part = nx.Graph()
    part.add_nodes_from(cb.vertices())
    enhanced, _ = enhance_part(part, cb, side=0)
    ext = [n for n in enhanced.neighbors("a")
           if isinstance(n, tuple) and n[2] == "q"]
    assert len(ext) == 2


def test_reduce_active_drops_terminal_free_holes():
    g = nx.Graph()
    g.add_nodes_from("abcdef")
    g.add_edge("d", "e")
    h1 = CactusBoundary(("a", "b", "c"))
    h2 = CactusBoundary(("d", "e", "f"))
    inst = PdpcInstance(g, (("a", "b"),), (h1, h2), 2)
    red = reduce_active(inst)
    assert len(red.holes) == 1
    assert red.holes[0].vertices() == {"a", "b", "c"}
    assert "d" not in red.graph
    assert red.pairs == inst.pairs and red.ell == inst.ell


def test_reduce_active_keeps_all_when_all_active():
    inst = cycle_instance()
    red = reduce_active(inst)
    assert len(red.holes) == 1
    assert set(red.graph.nodes()) == set(inst.graph.nodes())
