"""Bounded universes of abstract solutions: completions, patch/cactus
candidates, and compatibility certificates.

Completions are enumerated as abstract graphs (simple, planar, no isolated
vertices, at most B edges) with one representative per isomorphism class.
Candidates layer cactus boundaries on top of a completion's vertex set;
certificates add a linkage graph inside the holes plus terminal pairs.  Both
are deduplicated by colored canonical keys.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional

import networkx as nx

from .cactus import CactusBoundary, validate_cactus, walk_from_cycles
from .dp import DpInstance, solve_dp
from .embed import is_planar


def patch_bound(k: int) -> int:
    """Maximum number of patch edges ever needed for k terminal pairs."""
    if k < 1:
        raise ValueError("k must be positive")
    return k ** (2 ** k)


def _vkey(v):
    return (str(type(v)), repr(v))


# -- isomorphism dedup ----------------------------------------------------


def _attr_graph(g: nx.Graph, colors=None) -> nx.Graph:
    h = g.copy()
    for v in h.nodes():
        h.nodes[v]["c"] = str(colors[v]) if colors else "0"
    return h


def iso_signature(g: nx.Graph, colors=None):
    """Cheap isomorphism-invariant signature (complete only together with an
    exact check inside equal-signature buckets)."""
    ag = _attr_graph(g, colors)
    h = nx.weisfeiler_lehman_graph_hash(ag, node_attr="c", iterations=3)
    return (g.number_of_nodes(), g.number_of_edges(), h)


class IsoDedup:
    """Keeps one representative per (colored) isomorphism class."""

    def __init__(self):
        self.buckets = {}

    def add(self, g: nx.Graph, colors=None, payload=None) -> bool:
        """True when the graph's class is new; stores the payload."""
        key = iso_signature(g, colors)
        ag = _attr_graph(g, colors)
        bucket = self.buckets.setdefault(key, [])
        for other, _ in bucket:
            if nx.is_isomorphic(ag, other,
                                node_match=lambda a, b: a["c"] == b["c"]):
                return False
        bucket.append((ag, payload))
        return True

    def payloads(self):
        for key in sorted(self.buckets):
            for _, payload in self.buckets[key]:
                yield payload


# -- completions ----------------------------------------------------------


@dataclass(frozen=True)
class Completion:
    """One abstract completion: vertices 0..n-1, simple planar, no isolated
    vertices, at most B edges."""

    n: int
    edges: tuple  # sorted tuple of sorted vertex pairs

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


def _grow(g: nx.Graph):
    """All one-edge extensions (new vertices appended past the current ones)."""
    n = g.number_of_nodes()
    for u in range(n):
        for v in range(u + 1, n):
            if not g.has_edge(u, v):
                h = g.copy()
                h.add_edge(u, v)
                yield h
    for u in range(n):
        h = g.copy()
        h.add_edge(u, n)
        yield h
    h = g.copy()
    h.add_edge(n, n + 1)
    yield h


def enum_completions(B: int) -> list:
    """All completions with at most B edges, one per isomorphism class, in a
    deterministic order grouped by increasing edge count."""
    return list(completions_by_size(B))


def completions_by_size(B: int) -> Iterator[Completion]:
    """Lazy variant of enum_completions: levels are grown only when the
    consumer exhausts the previous one, so an early hit skips the rest."""
    if B < 1:
        raise ValueError("B must be positive")
    g0 = nx.Graph()
    g0.add_edge(0, 1)
    level = IsoDedup()
    level.add(g0, payload=g0)
    for m in range(1, B + 1):
        ordered = list(level.payloads())
        for h in ordered:
            edges = tuple(sorted(tuple(sorted(e)) for e in h.edges()))
            yield Completion(h.number_of_nodes(), edges)
        if m == B:
            break
        nxt = IsoDedup()
        for h in ordered:
            for h2 in _grow(h):
                if is_planar(h2):
                    nxt.add(h2, payload=h2)
        level = nxt


# -- patch candidates -----------------------------------------------------


@dataclass(frozen=True)
class PatchCandidate:
    """An abstract completion together with cactus boundaries covering its
    vertex set plus optional padding vertices, one boundary per hole."""

    completion: Completion
    n_total: int
    holes: tuple  # tuple of CactusBoundary

    def boundary_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n_total))
        for h in self.holes:
            g.add_edges_from(tuple(e) for e in h.edges())
        return g

    def union_graph(self) -> nx.Graph:
        g = self.boundary_graph()
        g.add_edges_from(self.completion.edges)
        return g


def _partitions(items, parts):
    """Split items into `parts` nonempty groups; group order canonical by
    first occurrence, so each set partition appears once."""
    def rec(i, assign, used):
        if i == len(items):
            if used == parts:
                groups = [[] for _ in range(parts)]
                for it, p in zip(items, assign):
                    groups[p].append(it)
                yield groups
            return
        hi = min(used + 1, parts)
        for p in range(hi):
            assign.append(p)
            yield from rec(i + 1, assign, max(used, p + 1))
            assign.pop()

    yield from rec(0, [], 0)


def _cactus_structures(vertices) -> list:
    """All ways to arrange the given vertices on the cycles of one connected
    cactus, where a cycle may list 1 or 2 vertices (to be completed with
    padding later).  Each structure is a list of cycles; cycles pairwise share
    at most one vertex and every cycle past the first hooks onto an earlier
    one."""
    vs = sorted(vertices, key=_vkey)
    out = []

    def all_cycles():
        for r in range(1, len(vs) + 1):
            for sub in itertools.combinations(vs, r):
                for perm in itertools.permutations(sub[1:]):
                    if len(perm) > 1 and _vkey(perm[0]) > _vkey(perm[-1]):
                        continue  # reflections identified
                    yield (sub[0],) + perm

    def rec(cycles, covered):
        if covered == set(vs):
            out.append(list(cycles))
            return
        pivot = min((v for v in vs if v not in covered), key=_vkey)
        for cyc in all_cycles():
            cset = set(cyc)
            if pivot not in cset or not (cset - covered):
                continue
            if cycles:
                if not any(cset & set(c) for c in cycles):
                    continue
                if any(len(cset & set(c)) > 1 for c in cycles):
                    continue
            rec(cycles + [cyc], covered | cset)

    if vs:
        rec([], set())
    return out


def _materialize(structure, pad_start):
    """Complete short cycles with padding vertices and build the boundary."""
    nxt = pad_start
    cycles = []
    for cyc in structure:
        cyc = tuple(cyc)
        while len(cyc) < 3:
            cyc = cyc + (nxt,)
            nxt += 1
        cycles.append(cyc)
    return walk_from_cycles(cycles), nxt


def enum_pairs(p: Completion, lam: int, max_pad: Optional[int] = None) -> list:
    """All patch candidates for completion p with exactly `lam` holes, up to
    isomorphism of the colored union graph.

    Padding vertices (isolated in the completion) appear only where forced:
    completing a 1- or 2-vertex cycle to a triangle, or forming an all-padding
    triangle for a hole carrying no completion vertex.  The completion's edges
    must be drawable outside the hole closures (pinned-planarity check).
    """
    if lam < 1:
        raise ValueError("lam must be positive")
    results = IsoDedup()
    verts = list(range(p.n))
    for n_empty in range(lam + 1):
        n_real = lam - n_empty
        if n_real == 0 and p.n > 0:
            continue
        if n_real > 0 and p.n == 0:
            continue
        if n_real == 0:
            group_sets = [[]] if p.n == 0 else []
        else:
            group_sets = list(_partitions(verts, n_real))
        for groups in group_sets:
            pools = [_cactus_structures(g) for g in groups]
            for combo in itertools.product(*pools) if pools else [()]:
                holes = []
                nxt = p.n
                ok = True
                for structure in combo:
                    try:
                        cb, nxt = _materialize(structure, nxt)
                    except Exception:
                        ok = False
                        break
                    good, _ = validate_cactus(cb)
                    if not good:
                        ok = False
                        break
                    holes.append(cb)
                if not ok:
                    continue
                for _ in range(n_empty):
                    cb, nxt = _materialize([()], nxt)
                    holes.append(cb)
                if max_pad is not None and nxt - p.n > max_pad:
                    continue
                pc = PatchCandidate(p, nxt, tuple(holes))
                if not patch_outside_ok(pc):
                    continue
                colors = {v: (2 if v >= p.n else 1) for v in range(nxt)}
                results.add(pc.union_graph(), colors, payload=pc)
    return list(results.payloads())


def patch_outside_ok(pc: PatchCandidate) -> bool:
    """Can the completion's edges be drawn outside the cactus closures?"""
    from .pinning import pinned_graph_for_candidate

    return is_planar(pinned_graph_for_candidate(pc))


# -- certificates ---------------------------------------------------------


@dataclass(frozen=True)
class Certificate:
    """A compatibility triple: the candidate's boundaries, a linkage graph
    drawn inside the holes, and the ordered terminal pairs.

    Linkage vertices are boundary vertices (degree <= 2) and interior
    terminals ("t", i) of degree exactly 1; every edge lies within one hole;
    the linkage is a disjoint union of paths.
    """

    candidate: PatchCandidate
    h_edges: tuple
    pairs: tuple  # ((a_1, b_1), ...); entries ("t", i) or boundary vertices
    term_holes: tuple  # ((terminal, hole index), ...)

    def h_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(v for e in self.h_edges for v in e)
        g.add_edges_from(self.h_edges)
        return g

    def hole_of_terminal(self) -> dict:
        return dict(self.term_holes)


def hole_index_map(pc: PatchCandidate) -> dict:
    m = {}
    for i, cb in enumerate(pc.holes):
        for v in cb.vertices():
            m[v] = i
    return m


def enum_certificates(pc: PatchCandidate, k: int) -> list:
    """All compatibility triples for the candidate, one per colored
    isomorphism class.

    Enumerates vertex-disjoint path systems connecting the pairs in the
    super graph of completion edges, potential in-hole linkage edges, and
    terminal options; every certificate is the trace of one system.  A
    terminal is either a boundary vertex itself, hangs off one by a linkage
    edge, or its pair joins by a direct in-hole edge.  Certificates with
    linkage edges unused by every path are dominated by their pruned
    versions and skipped.
    """
    hole_of = hole_index_map(pc)
    boundary = sorted(hole_of)
    lam = len(pc.holes)
    comp_edges = {frozenset(e) for e in pc.completion.edges}
    term_ids = [("t", i) for i in range(2 * k)]
    budget = k + len(pc.completion.edges)

    sg = nx.Graph()
    sg.add_nodes_from(range(pc.n_total))
    sg.add_edges_from(pc.completion.edges)
    for u, v in itertools.combinations(boundary, 2):
        if hole_of[u] == hole_of[v]:
            sg.add_edge(u, v)
    for t in term_ids:
        sg.add_node(t)
        for va in boundary:
            sg.add_edge(t, va)
    pairs0 = [(term_ids[2 * i], term_ids[2 * i + 1]) for i in range(k)]
    for a, b in pairs0:
        if lam:
            sg.add_edge(a, b)

    all_terms = set(term_ids)
    # per path: two terminal hops, at most |E| patch hops, and links never
    # adjacent to another in-hole segment, so at most patches + 1 of them
    max_len = 3 + 2 * len(comp_edges)

    def pre_ok(p):
        prev_link = False
        for e in zip(p[1:-1], p[2:-1]):
            forced_link = frozenset(e) not in comp_edges
            if forced_link and prev_link:
                return False
            prev_link = forced_link
        return True

    pools = []
    for a, b in pairs0:
        other = all_terms - {a, b}
        pool = [
            tuple(p) for p in nx.all_simple_paths(sg, a, b, cutoff=max_len)
            if not set(p[1:-1]) & other and pre_ok(p)
        ]
        pools.append(sorted(pool, key=lambda p: (len(p), tuple(map(_vkey, p)))))

    seen = IsoDedup()
    literal = set()
    kept = []

    def emit(pairs, t_edges, link_edges, term_holes):
        if len(link_edges) > budget:
            return
        edges = tuple(sorted(
            (tuple(sorted(e, key=_vkey)) for e in t_edges + link_edges),
            key=lambda e: tuple(map(_vkey, e)),
        ))
        cert = Certificate(
            pc, edges, tuple(pairs),
            tuple(sorted(term_holes.items(), key=lambda kv: _vkey(kv[0]))),
        )
        key = (cert.h_edges, cert.pairs, cert.term_holes)
        if key in literal:
            return
        literal.add(key)
        cg, cc = certificate_union(cert)
        if seen.add(cg, cc) and certificate_ok(cert, k):
            kept.append(cert)

    def interpret(system):
        """Branch over edge meanings and terminal modes for one path system."""
        # per-pair choices: terminal mode at each end (or direct pair), and
        # patch-versus-linkage for ambiguous boundary edges
        choices = []
        for path in system:
            if len(path) == 2:
                opts = [("direct", h) for h in range(lam)]
            else:
                ends = []
                for t, va in ((path[0], path[1]), (path[-1], path[-2])):
                    ends.append([("is", t, va), ("attach", t, va)])
                opts = [("ends", ea, eb) for ea in ends[0] for eb in ends[1]]
            choices.append(opts)
        bb_used = []
        for path in system:
            for u, v in zip(path[1:-1], path[2:-1]):
                bb_used.append((u, v))
        # same-hole completion edges can stand for a patch hop or an in-hole
        # segment; cross-hole ones are patch hops only
        amb = [e for e in bb_used
               if frozenset(e) in comp_edges and hole_of[e[0]] == hole_of[e[1]]]
        route_comp = {frozenset(e) for e in bb_used if frozenset(e) in comp_edges}
        for combo in itertools.product(*choices):
            for marks in itertools.product((False, True), repeat=len(amb)):
                link_keys = {frozenset(e) for e in bb_used
                             if frozenset(e) not in comp_edges}
                link_keys |= {frozenset(e) for e, m in zip(amb, marks) if m}
                # a completion edge no path traverses as a patch hop makes
                # the certificate dominated by a smaller completion's
                if route_comp - link_keys != comp_edges:
                    continue
                # no inner route vertex may join two in-hole segments: they
                # would merge into a single linkage edge
                clash = False
                for path, choice in zip(system, combo):
                    if len(path) == 2:
                        continue
                    flags = [choice[1][0] == "attach"]
                    flags += [frozenset(e) in link_keys
                              for e in zip(path[1:-1], path[2:-1])]
                    flags.append(choice[2][0] == "attach")
                    if any(x and y for x, y in zip(flags, flags[1:])):
                        clash = True
                        break
                if clash:
                    continue
                link_edges = [e for e in bb_used if frozenset(e) in link_keys]
                pairs = []
                t_edges = []
                term_holes = {}
                for path, choice in zip(system, combo):
                    if choice[0] == "direct":
                        h = choice[1]
                        a, b = path[0], path[-1]
                        t_edges.append((a, b))
                        term_holes[a] = h
                        term_holes[b] = h
                        pairs.append((a, b))
                        continue
                    pair = []
                    for mode, t, va in choice[1:]:
                        if mode == "is":
                            term_holes[va] = hole_of[va]
                            pair.append(va)
                        else:
                            t_edges.append((t, va))
                            term_holes[t] = hole_of[va]
                            pair.append(t)
                    pairs.append(tuple(pair))
                flat = [t for p in pairs for t in p]
                if len(set(flat)) != 2 * k:
                    continue
                emit(pairs, t_edges, link_edges, term_holes)

    for system in itertools.product(*pools):
        used = set()
        disjoint = True
        for path in system:
            pv = set(path)
            if used & pv:
                disjoint = False
                break
            used |= pv
        if disjoint:
            interpret(system)
    return kept


def certificate_union(cert: Certificate):
    """Colored graph identifying certificates up to isomorphism that respects
    terminal pairing and hole membership."""
    pc = cert.candidate
    union = pc.union_graph()
    hgr = cert.h_graph()
    union.add_nodes_from(hgr.nodes())
    union.add_edges_from(hgr.edges())
    colors = {v: 1 for v in range(pc.n_total)}
    hole_of = hole_index_map(pc)
    for hi in range(len(pc.holes)):
        marker = ("#hole", hi)
        union.add_node(marker)
        colors[marker] = 5
        for v, h in hole_of.items():
            if h == hi:
                union.add_edge(marker, v)
    for i, (a, b) in enumerate(cert.pairs):
        colors[a] = 10 + i
        colors[b] = 10 + i
    for t, h in cert.term_holes:
        union.add_edge(t, ("#hole", h))
    return union, colors


def certificate_ok(cert: Certificate, k: int) -> bool:
    """Recheck the compatibility conditions from scratch."""
    pc = cert.candidate
    hole_of = hole_index_map(pc)
    hg = cert.h_graph()
    terms = [t for p in cert.pairs for t in p]
    if len(set(terms)) != 2 * k:
        return False
    th = dict(cert.term_holes)
    for t in terms:
        if t in hole_of:
            if th.get(t) != hole_of[t]:
                return False
        else:
            # interior terminal: one attachment edge, consistent hole
            if t not in hg or hg.degree(t) != 1:
                return False
            if th.get(t) is None or not (0 <= th[t] < len(pc.holes)):
                return False
    for v in hg.nodes():
        if v in hole_of:
            if hg.degree(v) > 2:
                return False
        elif v not in terms:
            return False
    # linkage must be a disjoint union of paths
    if any(len(c) != len(hg.subgraph(c).edges()) + 1
           for c in nx.connected_components(hg)):
        return False
    # every edge inside one hole
    def hole_at(v):
        return hole_of.get(v, th.get(v))

    for u, v in hg.edges():
        if hole_at(u) != hole_at(v):
            return False
    n_bb = sum(1 for u, v in hg.edges() if u in hole_of and v in hole_of)
    if n_bb > k + len(pc.completion.edges):
        return False
    # routable edges are completion edges and linkage edges; the boundary
    # walks themselves are geometric, not traversable
    union = nx.Graph()
    union.add_nodes_from(range(pc.n_total))
    union.add_edges_from(pc.completion.edges)
    union.add_nodes_from(hg.nodes())
    union.add_edges_from(hg.edges())
    try:
        inst = DpInstance(union, cert.pairs)
    except Exception:
        return False
    return solve_dp(inst) is not None
