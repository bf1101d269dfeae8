"""Constructive patch shrinking: parity infixes, the dual path graph, and
the shortcut reduction.

A feasible patch together with its disjoint-paths solution can always be
shrunk while any face of the drawing sees two crossings of one path, or any
dual path of crossings carries a fully even label string.  The replacement is
rebuilt combinatorially (pairs of crossing edges become single shortcut
edges) and then re-verified; a verification failure is a loud internal error,
never a silent fallback.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import networkx as nx

from .dp import DpInstance, DpSolution, solve_dp, validate_dp_solution
from .instance import PdpcInstance
from .pinning import pinned_graph, pinned_planar


class NotNormalized(ValueError):
    pass


def even_infix(w) -> Optional[tuple]:
    """Indices (i, j) with i < j such that every letter occurring in w[i:j]
    occurs there an even number of times, or None.

    Prefix parity vectors: the first repeated vector wins (smallest end
    index, then smallest start index).  Always succeeds when the string is
    longer than 2**(alphabet size).
    """
    w = list(w)
    vectors = [frozenset()]
    z = frozenset()
    for ch in w:
        z = z ^ {ch}
        vectors.append(z)
    for j in range(1, len(vectors)):
        for i in range(j):
            if vectors[i] == vectors[j] and j - i >= 2:
                return (i, j)
    return None


@dataclass(frozen=True)
class DualPathGraph:
    """Dual of the patch arrangement restricted to region faces.  Nodes are
    face ids; each edge corresponds to one patch edge and carries its owning
    path index."""

    graph: nx.MultiGraph  # edge data: patch=(u, v), label=path index


def _path_edge_positions(paths, patch_edges):
    """For each patch edge, (path index, position) of its use; None if unused.
    Position p means the edge joins path[p] and path[p+1]."""
    lookup = {frozenset(e): None for e in patch_edges}
    for pi, path in enumerate(paths):
        for pos in range(len(path) - 1):
            key = frozenset((path[pos], path[pos + 1]))
            if key in lookup and lookup[key] is None:
                lookup[key] = (pi, pos)
    return lookup


def _arrangement_faces(inst: PdpcInstance, patch_edges):
    """Planar embedding of the pinned arrangement and its region faces.

    Returns (face id per half-edge, set of region face ids, embedding).
    Region faces are those meeting the completion region: faces whose walk
    avoids the rigidifying wheel vertices.
    """
    pg = pinned_graph(inst.holes, list(patch_edges))
    ok, emb = nx.check_planarity(pg)
    if not ok:
        raise AssertionError("pinned arrangement is not planar")
    face_of = {}
    faces = []
    for u in emb:
        for v in emb[u]:
            if (u, v) in face_of:
                continue
            walk = emb.traverse_face(u, v)
            fid = len(faces)
            faces.append(walk)
            for i in range(len(walk)):
                face_of[(walk[i], walk[(i + 1) % len(walk)])] = fid
    region = set()
    for fid, walk in enumerate(faces):
        if not any(isinstance(x, tuple) and len(x) >= 2 and x[0] == "#pin"
                   and x[1] in ("c", "p") for x in walk):
            region.add(fid)
    return face_of, region, emb


def dual_path_graph(inst: PdpcInstance, patch_edges, sol: DpSolution) -> DualPathGraph:
    """The labeled dual of the patch arrangement.

    Requires a normalized patch: every patch edge used by a path and no
    region face incident to two patch edges of one path.
    """
    patch_edges = [tuple(e) for e in patch_edges]
    lookup = _path_edge_positions(sol.paths, patch_edges)
    if any(v is None for v in lookup.values()):
        raise NotNormalized("patch contains an unused edge; normalize first")
    face_of, region, _ = _arrangement_faces(inst, patch_edges)
    g = nx.MultiGraph()
    g.add_nodes_from(region)
    for idx, (u, v) in enumerate(patch_edges):
        mid = ("#pin", "m", idx)
        f1 = face_of[(u, mid)]
        f2 = face_of[(mid, u)]
        if f1 not in region or f2 not in region:
            raise AssertionError("patch edge borders a non-region face")
        pi, pos = lookup[frozenset((u, v))]
        g.add_edge(f1, f2, patch=(u, v), label=pi)
    by_face_label = {}
    for a, b, data in g.edges(data=True):
        for f in {a, b}:
            key = (f, data["label"])
            by_face_label[key] = by_face_label.get(key, 0) + 1
    if any(c > 1 for c in by_face_label.values()):
        raise NotNormalized("a face sees two crossings of one path; normalize first")
    k = len(sol.paths)
    assert all(d <= k for _, d in g.degree()), "dual degree exceeds path count"
    return DualPathGraph(g)


def _splice(paths, replacements):
    """Apply bypasses to the paths.  replacements[pi] is a list of (a, b)
    position pairs: keep path[..a], skip to path[b..]."""
    out = []
    for pi, path in enumerate(paths):
        cuts = sorted(replacements.get(pi, []))
        new = []
        idx = 0
        for a, b in cuts:
            new.extend(path[idx:a + 1])
            idx = b
        new.extend(path[idx:])
        out.append(tuple(new))
    return tuple(out)


def _rebuild(inst: PdpcInstance, paths):
    """Patch implied by the paths: their consecutive pairs missing from G."""
    patch = []
    seen = set()
    for path in paths:
        for u, v in zip(path, path[1:]):
            if not inst.graph.has_edge(u, v):
                key = frozenset((u, v))
                if key not in seen:
                    seen.add(key)
                    patch.append(tuple(sorted((u, v), key=lambda x: (str(type(x)), repr(x)))))
    return tuple(sorted(patch, key=repr))


def _verify(inst: PdpcInstance, patch, paths):
    boundary = set()
    for cb in inst.holes:
        boundary |= cb.vertices()
    assert all(u in boundary and v in boundary for u, v in patch), \
        "shortcut endpoint off the boundary"
    assert pinned_planar(inst.holes, list(patch)), \
        "rebuilt patch is not drawable in the region"
    g = inst.graph.copy()
    g.add_edges_from(patch)
    sol = DpSolution(paths)
    assert validate_dp_solution(DpInstance(g, inst.pairs), sol), \
        "rebuilt paths are not a valid solution"
    return sol


def normalize_patch(inst: PdpcInstance, patch_edges, sol: DpSolution):
    """Drop unused patch edges and collapse same-face double crossings of a
    single path into one chord.  Idempotent; feasibility is re-verified after
    every change."""
    patch = [tuple(e) for e in patch_edges]
    paths = tuple(tuple(p) for p in sol.paths)
    while True:
        lookup = _path_edge_positions(paths, patch)
        used = [e for e in patch if lookup[frozenset(e)] is not None]
        if len(used) != len(patch):
            patch = used
            continue
        if not patch:
            break
        face_of, region, _ = _arrangement_faces(inst, patch)
        incidence = {}
        for idx, (u, v) in enumerate(patch):
            mid = ("#pin", "m", idx)
            pi, pos = lookup[frozenset((u, v))]
            for f in {face_of[(u, mid)], face_of[(mid, u)]}:
                incidence.setdefault((f, pi), []).append(pos)
        clash = None
        for (f, pi), positions in sorted(incidence.items()):
            if len(positions) > 1:
                clash = (pi, sorted(positions)[:2])
                break
        if clash is None:
            break
        pi, (p, q) = clash
        # bypass from the earlier edge's near endpoint to the later edge's
        # far endpoint; the chord routes through the shared face
        paths = _splice(paths, {pi: [(p, q + 1)]})
        patch = list(_rebuild(inst, paths))
    patch = tuple(sorted((tuple(e) for e in patch), key=repr))
    sol = _verify(inst, patch, paths)
    return patch, sol


def _even_paths(dual: DualPathGraph):
    """Simple dual paths (by increasing length, then canonical order) whose
    full label string has every letter an even number of times."""
    g = dual.graph
    edges = []
    for a, b, key, data in g.edges(keys=True, data=True):
        edges.append((a, b, key, data))
    nodes = sorted(g.nodes())
    max_len = g.number_of_edges()
    for length in range(2, max_len + 1):
        found = []

        def extend(node, visited, used_edges, labels):
            if len(used_edges) == length:
                if all(c % 2 == 0 for c in _counts(labels).values()):
                    found.append(list(used_edges))
                return
            for a, b, key, data in edges:
                end = None
                if a == node and b not in visited:
                    end = b
                elif b == node and a not in visited:
                    end = a
                if end is None:
                    continue
                extend(end, visited | {end}, used_edges + [(a, b, key)],
                       labels + [data["label"]])

        for start in nodes:
            extend(start, {start}, [], [])
        for item in sorted(found):
            yield item


def _counts(labels):
    out = {}
    for x in labels:
        out[x] = out.get(x, 0) + 1
    return out


def reduce_step(inst: PdpcInstance, patch_edges, sol: DpSolution):
    """One firing of the shortcut reduction, or None at a fixpoint.

    Finds the shortest simple dual path with a fully even label string; every
    path crossing it an even number of times gets consecutive crossing pairs
    replaced by single shortcut edges.  The result is strictly smaller and
    re-verified."""
    patch = [tuple(e) for e in patch_edges]
    if len(patch) < 2:
        return None
    dual = dual_path_graph(inst, patch, sol)
    g = dual.graph
    chosen = None
    for dual_path in _even_paths(dual):
        chosen = dual_path
        break
    if chosen is None:
        return None
    crossing = [g.edges[a, b, key]["patch"] for a, b, key in chosen]
    lookup = _path_edge_positions(sol.paths, patch)
    by_path = {}
    for e in crossing:
        pi, pos = lookup[frozenset(e)]
        by_path.setdefault(pi, []).append(pos)
    replacements = {}
    for pi, positions in by_path.items():
        positions.sort()
        assert len(positions) % 2 == 0, "even string but odd crossing count"
        cuts = []
        for j in range(0, len(positions), 2):
            cuts.append((positions[j], positions[j + 1] + 1))
        replacements[pi] = cuts
    paths = _splice(tuple(tuple(p) for p in sol.paths), replacements)
    new_patch = _rebuild(inst, paths)
    assert len(new_patch) < len(patch), "reduction failed to shrink the patch"
    new_sol = _verify(inst, new_patch, paths)
    return new_patch, new_sol


def reduce_to_fixpoint(inst: PdpcInstance, patch_edges, sol: DpSolution):
    """Alternate normalization and shortcut firing until neither applies."""
    patch, sol = normalize_patch(inst, patch_edges, sol)
    while True:
        step = reduce_step(inst, patch, sol)
        if step is None:
            return patch, sol
        new_patch, new_sol = step
        assert len(new_patch) < len(patch)
        patch, sol = normalize_patch(inst, new_patch, new_sol)
