"""Completion classes, patch candidates, compatibility certificates."""

import itertools

import networkx as nx
import pytest
from networkx.generators.atlas import graph_atlas_g

from pdpc.universe import (Certificate, Completion, IsoDedup, PatchCandidate,
                           certificate_ok, certificate_union,
                           enum_certificates, enum_completions, enum_pairs,
                           hole_index_map, iso_signature, patch_bound,
                           patch_outside_ok)


def test_patch_bound():
    assert patch_bound(1) == 1
    assert patch_bound(2) == 16
    assert patch_bound(3) == 6561


def test_iso_dedup_basic():
    d = IsoDedup()
    p1 = nx.path_graph([0, 1, 2])
    p2 = nx.path_graph(["x", "y", "z"])
    assert d.add(p1, payload="first")
    assert not d.add(p2, payload="second")
    assert d.add(nx.complete_graph(3), payload="third")
    assert set(d.payloads()) == {"first", "third"}


def test_iso_dedup_colors_distinguish():
    d = IsoDedup()
    p = nx.path_graph(3)
    assert d.add(p, {0: 1, 1: 0, 2: 0})
    # same graph, different colored vertex: a distinct class
    assert d.add(p, {0: 0, 1: 1, 2: 0})
    assert not d.add(p, {0: 0, 1: 0, 2: 1})


def test_iso_signature_invariance():
    g1 = nx.cycle_graph([0, 1, 2, 3])
    g2 = nx.cycle_graph(["a", "b", "c", "d"])
    assert iso_signature(g1) == iso_signature(g2)
    assert iso_signature(g1) != iso_signature(nx.path_graph(4))


def level_counts(B):
    counts = {}
    for c in enum_completions(B):
        counts[len(c.edges)] = counts.get(len(c.edges), 0) + 1
    return [counts.get(m, 0) for m in range(1, B + 1)]


def test_completion_counts():
    assert level_counts(4) == [1, 2, 5, 11]


def test_completion_counts_match_atlas():
    # independent count: all graphs on <= 7 vertices, no isolated vertex,
    # planar, with exactly m edges, up to isomorphism
    want = {1: 0, 2: 0, 3: 0}
    for g in graph_atlas_g():
        m = g.number_of_edges()
        if m not in want or g.number_of_nodes() == 0:
            continue
        if any(d == 0 for _, d in g.degree()):
            continue
        if not nx.check_planarity(g)[0]:
            continue
        want[m] += 1
    assert level_counts(3) == [want[1], want[2], want[3]]


def test_completion_structure():
    for c in enum_completions(3):
        g = c.graph()
        assert all(d > 0 for _, d in g.degree())
        assert nx.check_planarity(g)[0]
        assert c.edges == tuple(sorted(tuple(sorted(e)) for e in g.edges()))


def test_enum_completions_rejects_nonpositive():
    with pytest.raises(ValueError):
        enum_completions(0)


def single_edge_candidates(lam=1):
    (comp,) = enum_completions(1)
    return comp, enum_pairs(comp, lam)


def test_enum_pairs_single_edge():
    comp, cands = single_edge_candidates()
    assert cands
    for pc in cands:
        assert pc.completion == comp
        covered = set()
        for cb in pc.holes:
            ok_vertices = cb.vertices()
            covered |= ok_vertices
        assert {0, 1} <= covered
        assert patch_outside_ok(pc)
        # hole boundaries are pairwise vertex-disjoint
        for a, b in itertools.combinations(pc.holes, 2):
            assert not (a.vertices() & b.vertices())


def test_enum_pairs_two_holes_exist():
    comp, cands = single_edge_candidates(lam=2)
    assert cands
    assert any(len(pc.holes) == 2 for pc in cands)
    # the completion edge can join two holes only by spanning them
    spanning = [pc for pc in cands
                if len({hole_index_map(pc).get(v) for v in (0, 1)}) == 2]
    assert spanning


def test_enum_pairs_deduplicates():
    comp, cands = single_edge_candidates()
    d = IsoDedup()
    for pc in cands:
        colors = {v: (2 if v >= comp.n else 1) for v in range(pc.n_total)}
        assert d.add(pc.union_graph(), colors)


def test_enum_pairs_rejects_nonpositive():
    (comp,) = enum_completions(1)
    with pytest.raises(ValueError):
        enum_pairs(comp, 0)


def triangle_candidate():
    """Single completion edge whose endpoints lie on one triangle hole."""
    (comp,) = enum_completions(1)
    for pc in enum_pairs(comp, 1):
        if len(pc.holes) == 1 and len(pc.holes[0].cycles()) == 1 \
                and pc.n_total == 3:
            return pc
    raise AssertionError("expected candidate missing")


def test_enum_certificates_triangle():
    pc = triangle_candidate()
    certs = enum_certificates(pc, 1)
    assert certs
    for cert in certs:
        assert certificate_ok(cert, 1)
        # the single completion edge is always routable
        assert len(cert.pairs) == 1


def test_certificates_deduplicated():
    pc = triangle_candidate()
    certs = enum_certificates(pc, 1)
    d = IsoDedup()
    for cert in certs:
        assert d.add(*certificate_union(cert))


def test_certificates_respect_budget():
    pc = triangle_candidate()
    for k in (1, 2):
        for cert in enum_certificates(pc, k):
            hole_of = hole_index_map(pc)
            n_bb = sum(1 for u, v in cert.h_edges
                       if u in hole_of and v in hole_of)
            assert n_bb <= k + len(pc.completion.edges)


def test_certificate_ok_rejections():
    pc = triangle_candidate()
    hole_of = hole_index_map(pc)
    # interior terminal with two attachment edges is not a valid linkage end
    bad = Certificate(
        pc,
        ((("t", 0), 0), (("t", 0), 1), (("t", 1), 2)),
        ((("t", 0), ("t", 1)),),
        ((("t", 0), 0), (("t", 1), 0)),
    )
    assert not certificate_ok(bad, 1)
    # boundary terminal annotated with a wrong hole index
    verts = sorted(hole_of)
    bad2 = Certificate(pc, (), ((verts[0], verts[1]),),
                       ((verts[0], 7), (verts[1], 0)))
    assert not certificate_ok(bad2, 1)


def test_certificate_routing_excludes_boundary_walks():
    # a pair of boundary terminals with no linkage and no completion path
    # between them must not be certifiable via the geometric boundary
    (comp,) = enum_completions(1)
    pc = triangle_candidate()
    verts = sorted(hole_index_map(pc))
    spare = [v for v in verts if v not in (0, 1)]
    cert = Certificate(pc, (), ((0, spare[0]),),
                       ((0, 0), (spare[0], 0)))
    assert not certificate_ok(cert, 1)
