"""Combinatorial sphere embeddings via rotation systems.

A graph embedded in the sphere is stored as a rotation system: for every
vertex, the cyclic order of its incident darts.  A dart is an (edge id, end)
pair; every edge contributes two darts, a loop contributes two darts at the
same vertex.  Disconnected embeddings additionally carry a placement forest
assigning each non-root component to a face of the arrangement built so far,
since rotation systems alone do not determine a sphere embedding of a
disconnected graph.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Optional, Sequence

import networkx as nx

Vertex = Hashable
EdgeId = Hashable
Dart = tuple  # (edge id, end) with end in {0, 1}


class StructuralError(ValueError):
    """A rotation system violates the embedding invariants."""


class DomainError(ValueError):
    """An operation was applied outside its stated preconditions."""


def _vkey(v):
    return (str(type(v)), repr(v))


@dataclass(frozen=True)
class Placement:
    """Where a component sits: inside `host_face` of `host`, facing with its
    own face `own_face`.  Face indices refer to the deterministic trace order
    of the standalone component embeddings."""

    host: Vertex  # representative vertex of the host component
    host_face: int
    own_face: int = 0


class EmbeddedGraph:
    """An immutable sphere embedding of a (possibly disconnected) multigraph."""

    def __init__(
        self,
        vertices: Iterable[Vertex],
        edges: Mapping[EdgeId, tuple],
        rotation: Mapping[Vertex, Sequence[Dart]],
        placement: Optional[Mapping[Vertex, Optional[Placement]]] = None,
        terminals: Optional[Sequence[tuple]] = None,
    ):
        self.vertices = frozenset(vertices)
        self.edges = {e: (u, v) for e, (u, v) in edges.items()}
        self.rotation = {v: tuple(rotation.get(v, ())) for v in self.vertices}
        self.terminals = tuple(tuple(p) for p in terminals) if terminals else None
        self._check_structure()
        self.placement = self._normalize_placement(placement)
        self._faces = None

    # -- structural invariants -------------------------------------------

    def _check_structure(self):
        expected = set()
        for e, (u, v) in self.edges.items():
            if u not in self.vertices or v not in self.vertices:
                raise StructuralError(f"edge {e!r} has endpoint outside vertex set")
            expected.add((e, 0))
            expected.add((e, 1))
        seen = {}
        for v, rot in self.rotation.items():
            for d in rot:
                if d in seen:
                    raise StructuralError(f"dart {d!r} appears twice")
                if d not in expected:
                    raise StructuralError(f"dart {d!r} does not belong to any edge")
                e, end = d
                uv = self.edges[e]
                if uv[end] != v:
                    raise StructuralError(f"dart {d!r} listed at wrong vertex {v!r}")
                seen[d] = v
        missing = expected - set(seen)
        if missing:
            raise StructuralError(f"darts missing from rotations: {sorted(map(repr, missing))[:4]}")
        if self.terminals is not None:
            flat = [t for p in self.terminals for t in p]
            if len(set(flat)) != len(flat):
                raise StructuralError("terminals are not distinct")
            for t in flat:
                if t not in self.vertices:
                    raise StructuralError(f"terminal {t!r} not a vertex")

    def _normalize_placement(self, placement):
        comps = self.components()
        reps = {min(c, key=_vkey) for c in comps}
        result = {}
        if placement:
            for rep, pl in placement.items():
                if rep not in reps:
                    raise StructuralError(f"placement key {rep!r} is not a component representative")
                result[rep] = pl
        # default: chain every unplaced non-first component into face 0 of the
        # first root found (deterministic)
        ordered = sorted(reps, key=_vkey)
        roots = [r for r in ordered if result.get(r) is None]
        if not roots:
            raise StructuralError("placement has no root component")
        base = roots[0]
        for r in ordered:
            if r not in result or result[r] is None:
                result[r] = None if r == base else Placement(base, 0, 0)
        # acyclicity
        for r in ordered:
            seen_chain = set()
            cur = r
            while result[cur] is not None:
                if cur in seen_chain:
                    raise StructuralError("placement forest contains a cycle")
                seen_chain.add(cur)
                cur = self.component_of(result[cur].host)
        return result

    # -- basic views ------------------------------------------------------

    def degree(self, v) -> int:
        return len(self.rotation[v])

    def darts(self):
        for e in self.edges:
            yield (e, 0)
            yield (e, 1)

    def dart_vertex(self, d) -> Vertex:
        e, end = d
        return self.edges[e][end]

    def twin(self, d) -> Dart:
        e, end = d
        return (e, 1 - end)

    def abstract(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        for e, (u, v) in self.edges.items():
            g.add_edge(u, v, key=e)
        return g

    def components(self):
        return list(nx.connected_components(self.abstract()))

    def component_of(self, v) -> Vertex:
        for c in self.components():
            if v in c:
                return min(c, key=_vkey)
        raise DomainError(f"{v!r} is not a vertex")

    def next_dart(self, d) -> Dart:
        """Successor dart along the face containing d (face kept on one fixed
        side throughout)."""
        t = self.twin(d)
        w = self.dart_vertex(t)
        rot = self.rotation[w]
        i = rot.index(t)
        return rot[(i + 1) % len(rot)]

    # -- derived counts ---------------------------------------------------

    def face_count(self) -> int:
        return len(trace_faces(self))

    def genus(self) -> int:
        """Total genus of the orientable surfaces the rotation system
        describes (components merged along the placement forest)."""
        v = len(self.vertices)
        e = len(self.edges)
        f = self.face_count()
        c = len(self.components())
        deficiency = (1 + c) - (v - e + f)
        if deficiency < 0 or deficiency % 2:
            raise StructuralError("face count violates the Euler identity")
        return deficiency // 2

    def euler_ok(self) -> bool:
        """Euler identity for rotation systems: V - E + F = 1 + C - 2g with
        an integer genus g >= 0; g = 0 is the sphere case."""
        try:
            self.genus()
        except StructuralError:
            return False
        return True

    def is_sphere(self) -> bool:
        return self.genus() == 0


@dataclass(frozen=True)
class Face:
    """A face of the embedding: one or more closed dart walks (several when a
    placed component's outward face merged into this one) plus the incident
    component representatives.  `members` records which standalone component
    faces fused into this one, as (component rep, standalone face idx) pairs.
    """

    index: int
    walks: tuple  # tuple of tuples of darts
    components: frozenset
    members: frozenset = field(default_factory=frozenset)


def _component_walks(g: EmbeddedGraph, comp_vertices) -> list:
    """Closed dart walks of one component, in deterministic trace order."""
    darts = sorted(
        (d for d in g.darts() if g.dart_vertex(d) in comp_vertices),
        key=lambda d: (_vkey(d[0]), d[1]),
    )
    unvisited = set(darts)
    walks = []
    for start in darts:
        if start not in unvisited:
            continue
        walk = []
        d = start
        while True:
            walk.append(d)
            unvisited.discard(d)
            d = g.next_dart(d)
            if d == start:
                break
        walks.append(tuple(walk))
    return walks


def trace_faces(g: EmbeddedGraph) -> list:
    """All faces of the embedding; walks partition the darts.

    Faces are first traced per component, then merged along the placement
    forest: a placed component's outward face fuses with its host face, and an
    isolated vertex contributes no walk but is folded into its host face.
    """
    if g._faces is not None:
        return g._faces
    comps = {min(c, key=_vkey): c for c in g.components()}
    walks = {}  # rep -> list of walks (standalone face order)
    for rep, cv in comps.items():
        w = _component_walks(g, cv)
        if not w:
            w = []  # isolated vertex: no walks, one virtual face
        walks[rep] = w

    # union-find over (rep, standalone face index)
    parent = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    def n_faces(rep):
        return max(1, len(walks[rep]))

    for rep in comps:
        for i in range(n_faces(rep)):
            parent[(rep, i)] = (rep, i)
    for rep in sorted(comps, key=_vkey):
        pl = g.placement[rep]
        if pl is None:
            continue
        host_rep = g.component_of(pl.host)
        if pl.host_face >= n_faces(host_rep) or pl.own_face >= n_faces(rep):
            raise StructuralError(f"placement of {rep!r} references a missing face")
        union((rep, pl.own_face), (host_rep, pl.host_face))

    groups = {}
    for rep in comps:
        for i in range(n_faces(rep)):
            groups.setdefault(find((rep, i)), []).append((rep, i))
    faces = []
    order = sorted(groups, key=lambda key: min((_vkey(r), i) for r, i in groups[key]))
    for idx, key in enumerate(order):
        members = groups[key]
        fwalks = []
        creps = set()
        for rep, i in members:
            creps.add(rep)
            if i < len(walks[rep]):
                fwalks.append(walks[rep][i])
        faces.append(Face(index=idx, walks=tuple(fwalks),
                          components=frozenset(creps), members=frozenset(members)))
    g._faces = faces
    return faces


def boundary_orders(g: EmbeddedGraph, f: Face) -> list:
    """Cyclic vertex sequences of the face boundary, one per walk; cut
    vertices repeat."""
    return [tuple(g.dart_vertex(d) for d in walk) for walk in f.walks]


def dissolve(g: EmbeddedGraph, v: Vertex) -> EmbeddedGraph:
    """Remove a degree-2 vertex with distinct neighbors, splicing its two
    edges into one; if the {x, y} edge already exists the parallel copy is
    suppressed."""
    rot = g.rotation.get(v, ())
    if len(rot) != 2:
        raise DomainError(f"{v!r} does not have degree 2")
    d1, d2 = rot
    x = g.dart_vertex(g.twin(d1))
    y = g.dart_vertex(g.twin(d2))
    if x == y or x == v or y == v:
        raise DomainError(f"{v!r} has no two distinct neighbors")
    exists = any({a, b} == {x, y} for a, b in g.edges.values())

    edges = {e: uv for e, uv in g.edges.items() if e not in (d1[0], d2[0])}
    rotation = {u: list(r) for u, r in g.rotation.items() if u != v}
    if exists:
        # drop both darts at x and y
        rotation[x] = [d for d in rotation[x] if d != g.twin(d1)]
        rotation[y] = [d for d in rotation[y] if d != g.twin(d2)]
    else:
        new_e = ("dissolved", d1[0], d2[0])
        while new_e in edges:
            new_e = new_e + ("x",)
        edges[new_e] = (x, y)
        rotation[x] = [(new_e, 0) if d == g.twin(d1) else d for d in rotation[x]]
        rotation[y] = [(new_e, 1) if d == g.twin(d2) else d for d in rotation[y]]
    vertices = g.vertices - {v}
    return EmbeddedGraph(vertices, edges, rotation, terminals=g.terminals)


def is_planar(graph: nx.Graph) -> bool:
    """Planarity of an abstract (multi)graph; loops and parallel edges are
    irrelevant and stripped."""
    simple = nx.Graph()
    simple.add_nodes_from(graph.nodes())
    simple.add_edges_from((u, v) for u, v in graph.edges() if u != v)
    ok, _ = nx.check_planarity(simple)
    return ok


# -- canonical codes ------------------------------------------------------


def _component_code(g: EmbeddedGraph, comp_vertices, mirror: bool, colors=None):
    """Minimal BFS code over all starting darts for one component, given
    orientation.  Returns (code, face_index_maps) where face_index_maps lists,
    for every optimal start, the map standalone-face-index -> canonical index.
    """
    rot = {
        v: (tuple(reversed(g.rotation[v])) if mirror else g.rotation[v])
        for v in comp_vertices
    }
    if all(len(r) == 0 for r in rot.values()):
        code = ("isolated", tuple(sorted(colors[v] for v in comp_vertices)) if colors else len(comp_vertices))
        return code, [{0: 0}]

    standalone = _component_walks(g, comp_vertices)
    face_of_dart = {}
    for fi, walk in enumerate(standalone):
        for d in walk:
            # mirroring moves each dart onto the face that originally held
            # its twin, so key the map by the twin in that orientation
            face_of_dart[g.twin(d) if mirror else d] = fi

    darts = [d for d in g.darts() if g.dart_vertex(d) in comp_vertices]

    def run(start):
        vnum = {}
        out = []
        entry = {}  # vertex -> entry dart
        dart_order = []
        order = []
        v0 = g.dart_vertex(start)
        vnum[v0] = 0
        entry[v0] = start
        order.append(v0)
        qi = 0
        while qi < len(order):
            v = order[qi]
            qi += 1
            r = rot[v]
            i0 = r.index(entry[v])
            seq = [r[(i0 + j) % len(r)] for j in range(len(r))]
            row = []
            for d in seq:
                dart_order.append(d)
                t = g.twin(d)
                w = g.dart_vertex(t)
                if w not in vnum:
                    vnum[w] = len(vnum)
                    entry[w] = t
                    order.append(w)
                    row.append(("n", vnum[w]))
                else:
                    row.append(("o", vnum[w]))
            if colors:
                out.append((colors[v], tuple(row)))
            else:
                out.append(tuple(row))
        return tuple(out), dart_order

    best = None
    best_starts = []
    for start in sorted(darts, key=lambda d: (_vkey(d[0]), d[1])):
        code, _ = run(start)
        if best is None or code < best:
            best = code
            best_starts = [start]
        elif code == best:
            best_starts.append(start)

    face_maps = []
    for start in best_starts:
        # canonical face order: first appearance along the canonical dart
        # traversal, which is label-independent given the start
        _, dart_order = run(start)
        fmap = {}
        for d in dart_order:
            fi = face_of_dart[d]
            if fi not in fmap:
                fmap[fi] = len(fmap)
        face_maps.append(fmap)
    return best, face_maps


def canonical_code(g: EmbeddedGraph, colors=None):
    """Orientation-insensitive canonical code of a sphere embedding.

    Connected components are coded by minimal dart-seeded BFS codes (both
    orientations).  The way components share faces is captured as a partition
    of (component, standalone face) slots into the merged faces of the full
    arrangement; the partition is minimized over all canonical relabelings
    (tied component codes permuted, every optimal traversal's face indexing
    tried).  Mirror images and distinct placement forests describing the same
    arrangement get equal codes.
    """
    faces = trace_faces(g)

    def full_code(mirror):
        comps = {min(c, key=_vkey): c for c in g.components()}
        ccode = {}
        fmaps = {}
        for rep, cv in comps.items():
            code, fm = _component_code(g, cv, mirror, colors)
            ccode[rep] = code
            uniq = []
            for m in fm:
                if m not in uniq:
                    uniq.append(m)
            fmaps[rep] = uniq
        reps = sorted(comps, key=lambda r: (ccode[r], _vkey(r)))
        codes = tuple(ccode[r] for r in reps)
        if len(reps) == 1:
            return (codes, frozenset())

        # indices of reps sharing a code may be permuted freely
        groups = []
        i = 0
        while i < len(reps):
            j = i
            while j < len(reps) and ccode[reps[j]] == ccode[reps[i]]:
                j += 1
            groups.append(list(range(i, j)))
            i = j

        def perms():
            pools = [list(itertools.permutations(gp)) for gp in groups]
            for combo in itertools.product(*pools):
                assign = {}
                for gp, perm in zip(groups, combo):
                    for src, dst in zip(gp, perm):
                        assign[reps[src]] = dst
                yield assign

        best = None
        for assign in perms():
            for choice in itertools.product(*(fmaps[r] for r in reps)):
                fmap = dict(zip(reps, choice))
                part = set()
                for f in faces:
                    block = frozenset(
                        (assign[rep], fmap[rep].get(fi, fi)) for rep, fi in f.members
                    )
                    part.add(block)
                key = tuple(sorted(tuple(sorted(b)) for b in part))
                if best is None or key < best:
                    best = key
        return (codes, best)

    return min(full_code(False), full_code(True))


def topologically_isomorphic(g1: EmbeddedGraph, g2: EmbeddedGraph) -> bool:
    """True iff the two sphere embeddings are equivalent (vertex bijection
    matching faces and their boundary cyclic orders), mirrors included."""
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return False
    return canonical_code(g1) == canonical_code(g2)


# -- construction helpers -------------------------------------------------


def from_cycle(vertices: Sequence[Vertex]) -> EmbeddedGraph:
    """Cycle embedding in the listed order (n >= 3)."""
    n = len(vertices)
    edges = {("c", i): (vertices[i], vertices[(i + 1) % n]) for i in range(n)}
    rotation = {
        vertices[i]: [(("c", i), 0), (("c", (i - 1) % n), 1)] for i in range(n)
    }
    return EmbeddedGraph(vertices, edges, rotation)


def all_rotation_systems(graph: nx.MultiGraph):
    """All rotation systems of an abstract multigraph (one embedding per
    combination of cyclic orders; first dart pinned to kill rotations)."""
    edges = {}
    incident = {v: [] for v in graph.nodes()}
    for idx, (u, v, k) in enumerate(graph.edges(keys=True)):
        e = ("e", idx)
        edges[e] = (u, v)
        incident[u].append((e, 0))
        incident[v].append((e, 1))
    per_vertex = []
    verts = sorted(graph.nodes(), key=_vkey)
    for v in verts:
        ds = incident[v]
        if len(ds) <= 2:
            per_vertex.append([tuple(ds)])
        else:
            first = ds[0]
            per_vertex.append([(first,) + p for p in itertools.permutations(ds[1:])])
    for combo in itertools.product(*per_vertex):
        rotation = dict(zip(verts, combo))
        yield EmbeddedGraph(graph.nodes(), edges, rotation)


def all_placements(g: EmbeddedGraph):
    """All placement forests of the components of g (embedding fixed).  Yields
    EmbeddedGraphs differing only in placement."""
    comps = sorted((min(c, key=_vkey) for c in g.components()), key=_vkey)
    if len(comps) == 1:
        yield g
        return
    nfaces = {}
    for rep in comps:
        cv = next(c for c in g.components() if min(c, key=_vkey) == rep)
        nfaces[rep] = max(1, len(_component_walks(g, cv)))

    first = comps[0]

    def rec(i, placement):
        if i == len(comps):
            yield EmbeddedGraph(g.vertices, g.edges, g.rotation, dict(placement), g.terminals)
            return
        rep = comps[i]
        for host in comps[:i]:
            for hf in range(nfaces[host]):
                for of in range(nfaces[rep]):
                    placement[rep] = Placement(host, hf, of)
                    yield from rec(i + 1, placement)
        del placement[rep]

    yield from rec(1, {first: None})
