"""Exact disjoint-paths solvers and the rooted topological-minor search.

Both are plain backtracking searches.  They double as oracles, so clarity and
auditability win over speed; inputs are desk scale by contract.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import networkx as nx


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class DpInstance:
    graph: nx.Graph
    pairs: tuple  # ((s1, t1), ..., (sk, tk)), all 2k terminals distinct

    def __post_init__(self):
        if not self.pairs:
            raise DomainError("need at least one terminal pair")
        flat = [t for p in self.pairs for t in p]
        if len(set(flat)) != 2 * len(self.pairs):
            raise DomainError("terminals must be distinct")
        for t in flat:
            if t not in self.graph:
                raise DomainError(f"terminal {t!r} not in graph")


@dataclass(frozen=True)
class DpSolution:
    paths: tuple  # tuple of vertex tuples, paths[i] joins pairs[i]


def _vkey(v):
    return (str(type(v)), repr(v))


def validate_dp_solution(inst: DpInstance, sol: DpSolution) -> bool:
    if len(sol.paths) != len(inst.pairs):
        return False
    terminals = {t for p in inst.pairs for t in p}
    for (s, t), path in zip(inst.pairs, sol.paths):
        if len(path) < 2 or path[0] != s or path[-1] != t:
            return False
        if len(set(path)) != len(path):
            return False
        for u, v in zip(path, path[1:]):
            if not inst.graph.has_edge(u, v):
                return False
    for i, p in enumerate(sol.paths):
        for q in sol.paths[i + 1:]:
            for v in set(p) & set(q):
                if v not in terminals:
                    return False
                # shared vertex must be a terminal of both paths
                if v not in (p[0], p[-1]) or v not in (q[0], q[-1]):
                    return False
    return True


def solve_dp(inst: DpInstance) -> Optional[DpSolution]:
    """Lexicographically least solution under sorted vertex order, or None.

    Routes the pairs in order, extending one simple path vertex by vertex.
    Prunes a branch when some unrouted pair gets disconnected in the graph
    minus the vertices already consumed.
    """
    g = inst.graph
    pairs = inst.pairs
    for s, t in pairs:
        if s == t:
            raise DomainError("zero-length paths are not allowed")
    order = {v: i for i, v in enumerate(sorted(g.nodes(), key=_vkey))}
    terminals = {t for p in pairs for t in p}

    def remaining_connected(used, idx):
        for s, t in pairs[idx:]:
            blocked = used - {s, t}
            if s in blocked or t in blocked:
                return False
            sub = g.subgraph(set(g.nodes()) - blocked)
            if not nx.has_path(sub, s, t):
                return False
        return True

    def route(idx, used, paths):
        if idx == len(pairs):
            return tuple(paths)
        s, t = pairs[idx]
        # with all terminals distinct, paths may share no vertex at all
        def extend(path, pused):
            v = path[-1]
            if v == t:
                nxt = used | pused
                if remaining_connected(nxt, idx + 1):
                    paths.append(tuple(path))
                    res = route(idx + 1, nxt, paths)
                    if res is not None:
                        return res
                    paths.pop()
                return None
            for w in sorted(g.neighbors(v), key=lambda x: order[x]):
                if w in used or w in pused:
                    continue
                if w != t and w in terminals:
                    continue
                path.append(w)
                pused.add(w)
                res = extend(path, pused)
                if res is not None:
                    return res
                path.pop()
                pused.discard(w)
            return None

        if s in used or t in used:
            return None
        res = extend([s], {s}) if remaining_connected(used, idx) else None
        if res is not None:
            return res
        return None

    found = route(0, set(), [])
    if found is None:
        return None
    sol = DpSolution(found)
    assert validate_dp_solution(inst, sol)
    return sol


def _simple_paths(g: nx.Graph, s, t, forbidden):
    """All simple s-t paths avoiding `forbidden` internally."""
    for p in nx.all_simple_paths(g, s, t):
        if any(v in forbidden for v in p[1:-1]):
            continue
        yield tuple(p)


def brute_dp(inst: DpInstance) -> Optional[DpSolution]:
    """Oracle: enumerate path tuples outright.  Exponential; small inputs only."""
    g = inst.graph
    terminals = {t for p in inst.pairs for t in p}
    other = [terminals - set(p) for p in inst.pairs]
    pools = [
        sorted(_simple_paths(g, s, t, other[i]), key=lambda p: tuple(map(_vkey, p)))
        for i, (s, t) in enumerate(inst.pairs)
    ]
    for combo in itertools.product(*pools):
        sol = DpSolution(tuple(combo))
        if validate_dp_solution(inst, sol):
            return sol
    return None


def path_pattern(inst: DpInstance, sol: DpSolution) -> set:
    """Unordered terminal pairs joined by the solution paths."""
    if not sol.paths:
        raise DomainError("empty solution")
    return {frozenset((p[0], p[-1])) for p in sol.paths}


# -- rooted topological minors -------------------------------------------


@dataclass(frozen=True)
class TopMinorWitness:
    psi0: dict  # pattern vertex -> host vertex (injective)
    psi1: dict  # pattern edge (frozenset) -> host vertex path (tuple)


def validate_topminor_witness(pattern: nx.Graph, host: nx.Graph, rho: dict,
                              w: TopMinorWitness) -> bool:
    if set(w.psi0) != set(pattern.nodes()):
        return False
    if len(set(w.psi0.values())) != len(w.psi0):
        return False
    for a, b in rho.items():
        if w.psi0.get(a) != b:
            return False
    edges = {frozenset((u, v)) for u, v in pattern.edges()}
    if set(w.psi1) != edges:
        return False
    for e, path in w.psi1.items():
        u, v = tuple(e)
        if len(path) < 2 or len(set(path)) != len(path):
            return False
        if {path[0], path[-1]} != {w.psi0[u], w.psi0[v]}:
            return False
        cls = pattern.edges[u, v].get("cls")
        for x, y in zip(path, path[1:]):
            if not host.has_edge(x, y):
                return False
            if cls is not None and host.edges[x, y].get("cls") != cls:
                return False
    elist = sorted(w.psi1, key=lambda e: tuple(sorted(map(_vkey, e))))
    for i, e1 in enumerate(elist):
        for e2 in elist:
            if e1 == e2:
                continue
            internals = set(w.psi1[e1][1:-1])
            if internals & set(w.psi1[e2]):
                return False
    # non-isolated branch images must avoid path internals (implied by the
    # pairwise condition; checked directly for robustness)
    branch = {w.psi0[v] for v in pattern.nodes() if pattern.degree(v) > 0}
    for e, path in w.psi1.items():
        if branch & set(path[1:-1]):
            return False
    return True


def rooted_topminor(pattern: nx.Graph, host: nx.Graph,
                    rho: dict) -> Optional[TopMinorWitness]:
    """Find psi0/psi1 making pattern a rho-rooted topological minor of host.

    rho maps pattern roots to host roots and must already be injective.
    Branch assignment and edge routing are interleaved: the next pattern edge
    is always one with at least one endpoint already placed, and a path may
    claim its far endpoint's image on arrival.  Images of isolated pattern
    vertices never block routing.
    """
    if len(set(rho.values())) != len(rho):
        raise DomainError("root map is not injective")
    for a, b in rho.items():
        if a not in pattern or b not in host:
            raise DomainError("root outside graph")
    for a, b in rho.items():
        if host.degree(b) < pattern.degree(a):
            return None

    pverts = sorted(pattern.nodes(), key=_vkey)
    hverts = sorted(host.nodes(), key=_vkey)
    pedges = sorted(({frozenset((u, v)) for u, v in pattern.edges()}),
                    key=lambda e: tuple(sorted(map(_vkey, e))))

    psi0 = dict(rho)
    images = set(rho.values())
    psi1 = {}
    used = set()  # host vertices consumed as path internals

    def noniso_images():
        return {psi0[v] for v in psi0 if pattern.degree(v) > 0}

    def pick_edge(remaining):
        best = None
        for e in pedges:
            if e not in remaining:
                continue
            placed = sum(1 for x in e if x in psi0)
            if placed == 2:
                return e, 2
            if placed == 1 and best is None:
                best = e
        if best is not None:
            return best, 1
        return None, 0

    def search(remaining):
        if not remaining:
            # place any still-unassigned pattern vertices (isolated or in
            # edgeless leftovers cannot occur here; only isolated remain)
            left = [v for v in pverts if v not in psi0]
            pool = [h for h in hverts if h not in images]
            if len(pool) < len(left):
                return False
            for v, h in zip(left, pool):
                psi0[v] = h
            return True
        e, placed = pick_edge(remaining)
        if e is None:
            # seed an untouched pattern component
            comp_v = next(v for v in pverts
                          if v not in psi0 and pattern.degree(v) > 0)
            need = pattern.degree(comp_v)
            for h in hverts:
                if h in images or h in used or host.degree(h) < need:
                    continue
                psi0[comp_v] = h
                images.add(h)
                if search(remaining):
                    return True
                images.discard(h)
                del psi0[comp_v]
            return False

        u, v = sorted(e, key=_vkey)
        if u not in psi0:
            u, v = v, u
        a = psi0[u]
        target = psi0.get(v)
        blocked = noniso_images()
        rest = remaining - {e}
        pcls = pattern.edges[u, v].get("cls")

        def land(path, w):
            # arrive at w as the image of v (claiming it if still open)
            claim = v not in psi0
            if claim:
                if w in images or w in used or host.degree(w) < pattern.degree(v):
                    return False
                psi0[v] = w
                images.add(w)
            internals = set(path[1:-1])
            psi1[e] = tuple(path)
            used.update(internals)
            if search(rest):
                return True
            used.difference_update(internals)
            del psi1[e]
            if claim:
                images.discard(w)
                del psi0[v]
            return False

        def extend(path):
            x = path[-1]
            for y in sorted(host.neighbors(x), key=_vkey):
                if y in path or y in used:
                    continue
                if pcls is not None and host.edges[x, y].get("cls") != pcls:
                    continue
                if target is not None:
                    if y == target:
                        if land(path + [y], y):
                            return True
                        continue
                    if y in blocked:
                        continue
                    if extend(path + [y]):
                        return True
                else:
                    if y not in blocked and y not in images:
                        if land(path + [y], y):
                            return True
                    if y in blocked:
                        continue
                    if extend(path + [y]):
                        return True
            return False

        return extend([a])

    if search(set(pedges)):
        w = TopMinorWitness(dict(psi0), dict(psi1))
        assert validate_topminor_witness(pattern, host, rho, w)
        return w
    return None
