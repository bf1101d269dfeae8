"""Reduction of region-constrained drawing to abstract planarity.

Whether a set of new edges can be drawn inside the completion region without
crossings depends only on the hole boundaries.  Each hole is made rigid by
filling every boundary cycle with a wheel: rim vertices matched to the cycle
in walk order, spokes to a fresh center, one external edge per rim vertex,
and a chord per quad so the cyclic order cannot flip locally.  New edges are
subdivided through a midpoint so the pinned graph stays simple even when an
edge runs parallel to a boundary arc.  The new edges are then drawable in the
region iff the pinned graph is planar.
"""

from __future__ import annotations

import networkx as nx

from .cactus import CactusBoundary


def add_hole_gadget(g: nx.Graph, hole_idx: int, cb: CactusBoundary):
    """One wheel per boundary cycle.  Boundary edges are subdivided so no
    face of the gadget alone carries two boundary vertices; a new edge can
    then never be drawn on the hole side of any cycle."""
    for v in cb.vertices():
        g.add_node(v)
    for ci, cyc in enumerate(cb.cycles()):
        n = len(cyc)
        center = ("#pin", "c", hole_idx, ci)
        for j in range(n):
            u, v = cyc[j], cyc[(j + 1) % n]
            pj = ("#pin", "p", hole_idx, ci, j)
            pnext = ("#pin", "p", hole_idx, ci, (j + 1) % n)
            dj = ("#pin", "d", hole_idx, ci, j)
            g.add_edge(u, dj)
            g.add_edge(dj, v)
            g.add_edge(center, pj)
            g.add_edge(pj, pnext)
            g.add_edge(pj, u)
            g.add_edge(pj, dj)
            g.add_edge(pnext, dj)


def pinned_graph(holes, patch_edges) -> nx.Graph:
    """The pinned graph of the given hole boundaries and new edges."""
    g = nx.Graph()
    for hi, cb in enumerate(holes):
        add_hole_gadget(g, hi, cb)
    for idx, (u, v) in enumerate(patch_edges):
        mid = ("#pin", "m", idx)
        g.add_edge(u, mid)
        g.add_edge(mid, v)
    return g


_memo = {}


def pinned_planar(holes, patch_edges) -> bool:
    # placement search re-checks the same small edge sets constantly
    key = (tuple(tuple(cb.walk) for cb in holes),
           frozenset(frozenset(e) for e in patch_edges))
    hit = _memo.get(key)
    if hit is None:
        if len(_memo) > 200000:
            _memo.clear()
        ok, _ = nx.check_planarity(pinned_graph(holes, patch_edges))
        _memo[key] = hit = ok
    return hit


def pinned_graph_for_candidate(pc) -> nx.Graph:
    return pinned_graph(pc.holes, pc.completion.edges)
