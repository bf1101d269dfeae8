"""Cactus boundaries: closed walks, cycle decomposition, multiplicity.

A hole of the completion region is described by one closed boundary walk per
weakly connected component of its complement.  The walk visits the boundary
cycles of a cactus: every biconnected component is a cycle and two cycles
share at most one vertex.  Cut vertices appear in the walk once per incident
cycle, which is exactly their multiplicity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import networkx as nx


class CactusError(ValueError):
    pass


@dataclass(frozen=True)
class CactusBoundary:
    """Boundary of one cactus component, as the closed outer walk.

    `walk` is the cyclic vertex sequence with the cactus interior kept on a
    fixed side; repeated vertices are the cut vertices of the cactus.
    """

    walk: tuple

    def __post_init__(self):
        if len(self.walk) < 3:
            raise CactusError("boundary walk needs at least 3 entries")

    def vertices(self) -> frozenset:
        return frozenset(self.walk)

    def edges(self) -> set:
        """Unordered boundary edges of Γ."""
        n = len(self.walk)
        out = set()
        for i in range(n):
            u, v = self.walk[i], self.walk[(i + 1) % n]
            if u == v:
                raise CactusError("walk repeats a vertex consecutively")
            out.add(frozenset((u, v)))
        return out

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.walk)
        g.add_edges_from(tuple(e) for e in self.edges())
        return g

    def cycles(self) -> list:
        """Decompose the walk into its boundary cycles.

        Scans the walk with a stack; a minimal returning segment closes one
        cycle.  The outer walk of a cactus traverses each cycle contiguously
        apart from excursions into sub-cacti hanging off cut vertices, so the
        stack discipline recovers exactly the cycles.
        """
        n = len(self.walk)
        # rotate so the walk starts at a vertex of minimal multiplicity
        # occurrence count, which guarantees position 0 starts a cycle
        occ = {}
        for v in self.walk:
            occ[v] = occ.get(v, 0) + 1
        start = min(range(n), key=lambda i: (occ[self.walk[i]], i))
        w = [self.walk[(start + i) % n] for i in range(n)] + [self.walk[start]]
        stack = []
        pos = {}
        cycles = []
        for v in w:
            if v in pos:
                cyc = stack[pos[v]:]
                if len(cyc) < 3:
                    raise CactusError("boundary cycle shorter than 3 vertices")
                cycles.append(tuple(cyc))
                del stack[pos[v] + 1:]
                for u in cyc[1:]:
                    if pos.get(u) is not None and pos[u] > pos[v]:
                        del pos[u]
            else:
                pos[v] = len(stack)
                stack.append(v)
        if len(stack) > 1:
            raise CactusError("walk does not close into cycles")
        return cycles

    def multiplicity(self, v) -> int:
        """Number of boundary cycles containing v.

        Equals (components of Γ minus v) - (components of Γ) + 1.
        """
        if v not in self.vertices():
            raise CactusError(f"{v!r} is not a boundary vertex")
        return sum(1 for c in self.cycles() if v in c)

    def total_multiplicity(self) -> int:
        return len(self.walk)


def validate_cactus(cb: CactusBoundary):
    """Check the cactus invariants; returns (ok, reason)."""
    try:
        cycles = cb.cycles()
    except CactusError as exc:
        return False, str(exc)
    for cyc in cycles:
        if len(set(cyc)) != len(cyc):
            return False, "cycle visits a vertex twice"
    for i, a in enumerate(cycles):
        for b in cycles[i + 1:]:
            if len(set(a) & set(b)) > 1:
                return False, "two cycles share more than one vertex"
    g = cb.graph()
    # every biconnected component must be one of the cycles
    for comp in nx.biconnected_components(g):
        if len(comp) < 3:
            return False, "biconnected component is a single edge"
        if not any(set(c) == comp for c in cycles):
            return False, "biconnected component is not a boundary cycle"
    cyc_edges = sum(len(c) for c in cycles)
    if cyc_edges != len(cb.edges()):
        return False, "cycle edges do not cover the boundary exactly"
    # the walk multiset must be the disjoint cycle cover: each vertex appears
    # once per incident cycle
    for v in cb.vertices():
        if sum(1 for x in cb.walk if x == v) != sum(1 for c in cycles if v in c):
            return False, "walk occurrence count disagrees with cycle incidence"
    return True, ""


def walk_from_cycles(cycles: Sequence[Sequence]) -> CactusBoundary:
    """Assemble an outer walk from cycles given in vertex order.

    Cycles must form a connected cactus.  Used by generators and tests; the
    inverse of CactusBoundary.cycles up to rotation.
    """
    cycles = [tuple(c) for c in cycles]
    if not cycles:
        raise CactusError("no cycles")
    used = [False] * len(cycles)

    def expand(ci, entry):
        used[ci] = True
        cyc = cycles[ci]
        i0 = cyc.index(entry)
        out = []
        for j in range(len(cyc)):
            v = cyc[(i0 + j) % len(cyc)]
            out.append(v)
            for cj, other in enumerate(cycles):
                if not used[cj] and v in other:
                    out.extend(expand(cj, v)[1:])
                    out.append(v)
        return out

    walk = expand(0, cycles[0][0])
    if not all(used):
        raise CactusError("cycles are not connected")
    return CactusBoundary(tuple(walk))
