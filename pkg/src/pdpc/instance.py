"""Problem instances: the embedded graph, the completion region, terminals.

The completion region is the complement of a disjoint union of cactus-bounded
holes; all of the input graph lives on or inside the holes.  An instance
carries the abstract graph, the terminal pairs, one boundary walk per hole,
the edge budget, and hole assignments for graph components that touch no
boundary vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import networkx as nx

from .cactus import CactusBoundary, validate_cactus
from .embed import is_planar


@dataclass(frozen=True)
class PdpcInstance:
    graph: nx.Graph
    pairs: tuple  # ((s_1, t_1), ..., (s_k, t_k))
    holes: tuple  # one CactusBoundary per hole
    ell: int
    assign: tuple = ()  # ((vertex, hole index), ...) for floating components

    @property
    def k(self) -> int:
        return len(self.pairs)

    def boundary_vertices(self) -> set:
        out = set()
        for cb in self.holes:
            out |= cb.vertices()
        return out

    def hole_of(self) -> dict:
        """Hole index of every graph vertex, or None when undeterminable."""
        m = {}
        for i, cb in enumerate(self.holes):
            for v in cb.vertices():
                m[v] = i
        explicit = dict(self.assign)
        for comp in nx.connected_components(self.graph):
            hit = {m[v] for v in comp if v in m}
            if len(hit) == 1:
                h = next(iter(hit))
                for v in comp:
                    m.setdefault(v, h)
            elif not hit:
                hs = {explicit[v] for v in comp if v in explicit}
                h = next(iter(hs)) if len(hs) == 1 else None
                for v in comp:
                    m.setdefault(v, h)
            else:
                for v in comp:
                    if v not in m:
                        m[v] = None
        return m


@dataclass
class Diagnostics:
    ok: bool
    messages: list = field(default_factory=list)
    normalized: Optional[PdpcInstance] = None


def _fresh_names(existing, count, stem="pad"):
    out = []
    i = 0
    while len(out) < count:
        name = f"{stem}{i}"
        if name not in existing:
            out.append(name)
            existing.add(name)
        i += 1
    return out


def validate_instance(inst: PdpcInstance) -> Diagnostics:
    """Check an instance and produce its normalized form.

    Normalization drops self-loops, pads hole walks shorter than 3 with fresh
    isolated vertices, and leaves everything else untouched.  Structural
    problems are reported as messages; the function never raises on user
    input.
    """
    msgs = []
    g = nx.Graph()
    g.add_nodes_from(inst.graph.nodes())
    loops = 0
    for u, v in inst.graph.edges():
        if u == v:
            loops += 1
        else:
            g.add_edge(u, v)
    if loops:
        msgs.append(f"dropped {loops} self-loop(s)")

    if not inst.holes:
        return Diagnostics(False, ["instance has no holes"])
    if inst.ell < 0:
        return Diagnostics(False, ["negative edge budget"])

    names = set(g.nodes())
    holes = []
    for i, cb in enumerate(inst.holes):
        walk = tuple(cb.walk) if hasattr(cb, "walk") else tuple(cb)
        for v in walk:
            if v not in g:
                return Diagnostics(False, [f"hole {i}: unknown boundary vertex {v!r}"])
        if len(walk) < 3:
            pads = _fresh_names(names, 3 - len(walk))
            g.add_nodes_from(pads)
            walk = walk + tuple(pads)
            msgs.append(f"hole {i}: padded with {len(pads)} isolated vertex(es)")
        try:
            nb = CactusBoundary(walk)
        except Exception as exc:
            return Diagnostics(False, [f"hole {i}: {exc}"])
        ok, why = validate_cactus(nb)
        if not ok:
            return Diagnostics(False, [f"hole {i}: {why}"])
        holes.append(nb)

    seen = set()
    for i, cb in enumerate(holes):
        inter = cb.vertices() & seen
        if inter:
            return Diagnostics(False, [f"hole {i}: shares boundary vertices with another hole"])
        seen |= cb.vertices()

    if not inst.pairs:
        return Diagnostics(False, ["no terminal pairs"])
    flat = [t for p in inst.pairs for t in p]
    if len(set(flat)) != len(flat):
        return Diagnostics(False, ["terminals are not distinct"])
    for t in flat:
        if t not in g:
            return Diagnostics(False, [f"terminal {t!r} not a vertex"])

    norm = PdpcInstance(g, tuple(tuple(p) for p in inst.pairs),
                        tuple(holes), inst.ell, tuple(inst.assign))
    hole_of = norm.hole_of()
    for v in g.nodes():
        if hole_of.get(v) is None:
            return Diagnostics(False, [
                f"vertex {v!r}: hole containment undeterminable "
                "(component spans holes or lacks an assignment)"
            ])
    for u, v in g.edges():
        if hole_of[u] != hole_of[v]:
            return Diagnostics(False, [
                f"edge {u!r}-{v!r} joins vertices of different holes"
            ])

    for i, cb in enumerate(holes):
        part = _hole_part_graph(norm, hole_of, i)
        enhanced, _ = enhance_part(part, cb, side=("host", i))
        if not is_planar(enhanced):
            return Diagnostics(False, [f"hole {i}: contents not embeddable inside the boundary"])

    return Diagnostics(True, msgs, norm)


def _hole_part_graph(inst: PdpcInstance, hole_of: dict, i: int) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(v for v in inst.graph.nodes() if hole_of.get(v) == i)
    g.add_edges_from(
        (u, v) for u, v in inst.graph.edges()
        if hole_of.get(u) == i and hole_of.get(v) == i
    )
    return g


def enhance_part(part: nx.Graph, cb: CactusBoundary, side) -> tuple:
    """Attach the uniquely-embeddable wheel interface to one hole part.

    Returns (graph, center).  The graph is the part plus the boundary edges,
    a wheel whose rim length equals the boundary walk length, and one external
    edge from rim position j to walk vertex j, so a vertex on m cycles
    receives m external edges.  Boundary edges are subdivided so they never
    collide with part edges running along the boundary.

    Part edges carry class "g" (traversable graph edges); boundary and wheel
    edges carry class "geo" (geometric scaffolding).  Matching between parts
    must respect the classes.
    """
    g = nx.Graph()
    g.add_nodes_from(part.nodes())
    g.add_edges_from(part.edges(), cls="g")
    walk = cb.walk
    m = len(walk)
    center = ("#enh", side, "x")
    for j in range(m):
        u, v = walk[j], walk[(j + 1) % m]
        mid = ("#enh", side, "b", j)
        g.add_edge(u, mid, cls="geo")
        g.add_edge(mid, v, cls="geo")
        rim = ("#enh", side, "q", j)
        rim_next = ("#enh", side, "q", (j + 1) % m)
        g.add_edge(center, rim, cls="geo")
        g.add_edge(rim, rim_next, cls="geo")
        g.add_edge(rim, walk[j], cls="geo")
    return g, center


def reduce_active(inst: PdpcInstance) -> PdpcInstance:
    """Drop holes whose closure contains no terminal, along with their graph
    contents.  Equivalent to the original instance."""
    hole_of = inst.hole_of()
    terms = {t for p in inst.pairs for t in p}
    active = sorted({hole_of[t] for t in terms if hole_of.get(t) is not None})
    if not active:
        active = list(range(len(inst.holes)))
    keep = set(active)
    g = nx.Graph()
    g.add_nodes_from(v for v in inst.graph.nodes() if hole_of.get(v) in keep)
    g.add_edges_from(
        (u, v) for u, v in inst.graph.edges()
        if hole_of.get(u) in keep and hole_of.get(v) in keep
    )
    holes = tuple(inst.holes[i] for i in active)
    remap = {old: new for new, old in enumerate(active)}
    assign = tuple((v, remap[h]) for v, h in inst.assign if h in keep and v in g)
    return PdpcInstance(g, inst.pairs, holes, inst.ell, assign)
