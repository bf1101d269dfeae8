"""End-to-end decision and search for planar disjoint-paths completion.

The search iterates abstract completions by edge count, then injectively
places their vertices onto hole-boundary vertices, pruning with the pinned
planarity gadget, and finally checks disjoint paths on the augmented graph.
The first hit is minimum by enumeration order.  A brute-force oracle and the
certificate machinery provide independent cross-checks.
"""

from __future__ import annotations

import itertools
import multiprocessing
from dataclasses import dataclass, replace
from typing import Optional

import networkx as nx

from .dp import (DpInstance, DpSolution, brute_dp, rooted_topminor, solve_dp,
                 validate_dp_solution)
from .instance import (PdpcInstance, enhance_part, reduce_active,
                       validate_instance)
from .pinning import pinned_planar
from .universe import (Certificate, Completion, PatchCandidate,
                       completions_by_size, enum_certificates,
                       enum_completions, enum_pairs, hole_index_map,
                       patch_bound)

DEFAULT_BOUND_CAP = 64
MAX_K = 3


class CapError(RuntimeError):
    """The instance class is outside the supported desk-scale limits."""


class InvalidInstance(ValueError):
    def __init__(self, messages):
        super().__init__("; ".join(messages))
        self.messages = list(messages)


@dataclass(frozen=True)
class Solution:
    patch_edges: tuple  # sorted host vertex pairs
    paths: tuple  # one vertex tuple per terminal pair
    jwalks: tuple  # boundary walks of the holes the patch attaches to


def _vkey(v):
    return (str(type(v)), repr(v))


def _normalized(inst: PdpcInstance) -> PdpcInstance:
    diag = validate_instance(inst)
    if not diag.ok:
        raise InvalidInstance(diag.messages)
    return diag.normalized


def boundary_order(inst: PdpcInstance) -> list:
    """Deterministic order of boundary vertices: by hole, then first walk
    occurrence."""
    out = []
    seen = set()
    for cb in inst.holes:
        for v in cb.walk:
            if v not in seen:
                seen.add(v)
                out.append(v)
    return out


def _dp_on(inst: PdpcInstance, patch_edges) -> Optional[DpSolution]:
    g = inst.graph.copy()
    g.add_edges_from(patch_edges)
    return solve_dp(DpInstance(g, inst.pairs))


def _solution(inst: PdpcInstance, patch_edges, dsol: DpSolution) -> Solution:
    touched = set()
    hole_of = inst.hole_of()
    for u, v in patch_edges:
        touched.add(hole_of[u])
        touched.add(hole_of[v])
    jwalks = tuple(inst.holes[i].walk for i in sorted(touched))
    sol = Solution(tuple(patch_edges), dsol.paths, jwalks)
    ok, why = audit_solution(inst, sol)
    assert ok, f"solver produced an invalid solution: {why}"
    return sol


def _placements(inst: PdpcInstance, comp: Completion, boundary):
    """Injective maps of completion vertices onto boundary vertices, pruned
    by incremental pinned planarity; interchangeable completion vertices are
    forced into increasing host order."""
    n = comp.n
    g = comp.graph()
    existing = {frozenset(e) for e in inst.graph.edges()}
    hindex = {v: i for i, v in enumerate(boundary)}
    # twin classes: same closed or open neighborhood
    twin_prev = {}
    for v in range(n):
        for u in range(v):
            nu = set(g.neighbors(u)) - {v}
            nv = set(g.neighbors(v)) - {u}
            if nu == nv:
                twin_prev[v] = u
                break
    by_vertex = [[] for _ in range(n)]
    for u, v in comp.edges:
        by_vertex[max(u, v)].append((u, v))

    vmap = {}
    used = set()

    def rec(i, mapped):
        if i == n:
            yield dict(vmap), list(mapped)
            return
        lo = 0
        if i in twin_prev and twin_prev[i] in vmap:
            lo = hindex[vmap[twin_prev[i]]] + 1
        for j in range(lo, len(boundary)):
            h = boundary[j]
            if h in used:
                continue
            vmap[i] = h
            used.add(h)
            new_edges = [(vmap[u], vmap[v]) for u, v in by_vertex[i]]
            ok = all(frozenset(e) not in existing for e in new_edges)
            if ok and new_edges:
                ok = pinned_planar(inst.holes, mapped + new_edges)
            if ok:
                yield from rec(i + 1, mapped + new_edges)
            used.discard(h)
            del vmap[i]

    yield from rec(0, [])


def _try_completion(inst: PdpcInstance, comp: Completion) -> Optional[Solution]:
    boundary = boundary_order(inst)
    if comp.n > len(boundary):
        return None
    for vmap, mapped in _placements(inst, comp, boundary):
        dsol = _dp_on(inst, mapped)
        if dsol is not None:
            return _solution(inst, mapped, dsol)
    return None


def _worker(args):
    inst, comp = args
    return _try_completion(inst, comp)


def solve(inst: PdpcInstance, jobs: int = 1,
          bound_cap: int = DEFAULT_BOUND_CAP) -> Optional[Solution]:
    """Minimum-size completion within the instance budget, or None.

    Raises CapError when k exceeds the supported range, or when the search
    space was truncated at `bound_cap` edges without an answer either way.
    """
    # terminal-free holes never carry a minimal patch, so drop them before
    # the placement search; audits run against the caller's instance
    inst = reduce_active(_normalized(inst))
    k = inst.k
    if k > MAX_K:
        raise CapError(f"k={k} exceeds the supported maximum {MAX_K}")
    budget = min(inst.ell, patch_bound(k))
    capped = budget > bound_cap
    if capped:
        budget = bound_cap

    dsol = solve_dp(DpInstance(inst.graph, inst.pairs))
    if dsol is not None:
        return _solution(inst, (), dsol)

    # quick refutation: even all boundary chords at once do not help
    boundary = boundary_order(inst)
    g_all = inst.graph.copy()
    g_all.add_edges_from(itertools.combinations(boundary, 2))
    if solve_dp(DpInstance(g_all, inst.pairs)) is None:
        return None

    if budget < 1:
        return None
    completions = completions_by_size(budget)
    if jobs > 1:
        with multiprocessing.Pool(jobs) as pool:
            for sol in pool.imap(_worker, ((inst, c) for c in completions),
                                 chunksize=1):
                if sol is not None:
                    pool.terminate()
                    return sol
    else:
        for comp in completions:
            sol = _try_completion(inst, comp)
            if sol is not None:
                return sol
    if capped:
        raise CapError(
            f"no completion within the {bound_cap}-edge cap; "
            f"the theoretical bound {patch_bound(k)} was not exhausted"
        )
    return None


def min_solve(inst: PdpcInstance, ell_cap: Optional[int] = None,
              jobs: int = 1, bound_cap: int = DEFAULT_BOUND_CAP):
    """Minimum budget with a witness, ignoring the instance's own budget.

    Returns (minimum, Solution) or None.  `ell_cap` restricts the search to
    small budgets; None means the full theoretical bound.
    """
    inst = _normalized(inst)
    budget = patch_bound(inst.k) if inst.k <= MAX_K else bound_cap
    if ell_cap is not None:
        budget = min(budget, ell_cap)
    sol = solve(replace(inst, ell=budget), jobs=jobs, bound_cap=bound_cap)
    if sol is None:
        return None
    return len(sol.patch_edges), sol


def audit_solution(inst: PdpcInstance, sol: Solution):
    """Independent validation of a solution against its instance."""
    try:
        inst = _normalized(inst)
    except InvalidInstance as exc:
        return False, str(exc)
    boundary = set(boundary_order(inst))
    if len(sol.patch_edges) > inst.ell:
        return False, "budget exceeded"
    seen = set()
    for e in sol.patch_edges:
        if len(e) != 2 or e[0] == e[1]:
            return False, "malformed patch edge"
        key = frozenset(e)
        if key in seen:
            return False, "duplicate patch edge"
        seen.add(key)
        if inst.graph.has_edge(*e):
            return False, "patch edge duplicates a graph edge"
        for v in e:
            if v not in boundary:
                return False, "endpoint off boundary"
    if not pinned_planar(inst.holes, list(sol.patch_edges)):
        return False, "patch not drawable in the region"
    g = inst.graph.copy()
    g.add_edges_from(sol.patch_edges)
    dsol = DpSolution(tuple(tuple(p) for p in sol.paths))
    if not validate_dp_solution(DpInstance(g, inst.pairs), dsol):
        return False, "disjointness violated"
    return True, ""


def brute_oracle(inst: PdpcInstance, max_boundary: int = 10, max_ell: int = 4,
                 max_k: int = 2) -> Optional[Solution]:
    """Independent ground truth: try every boundary edge set of size at most
    the budget, filter by pinned planarity, decide paths by enumeration."""
    inst = _normalized(inst)
    if inst.k > max_k:
        raise CapError(f"oracle supports k <= {max_k}")
    boundary = boundary_order(inst)
    if len(boundary) > max_boundary:
        raise CapError(f"oracle supports at most {max_boundary} boundary vertices")
    ell = inst.ell
    if ell > max_ell:
        raise CapError(f"oracle supports budgets up to {max_ell}")
    pairs_pool = [
        (u, v) for u, v in itertools.combinations(boundary, 2)
        if not inst.graph.has_edge(u, v)
    ]
    for size in range(ell + 1):
        for patch in itertools.combinations(pairs_pool, size):
            if size and not pinned_planar(inst.holes, list(patch)):
                continue
            g = inst.graph.copy()
            g.add_edges_from(patch)
            dsol = brute_dp(DpInstance(g, inst.pairs))
            if dsol is not None:
                return _solution(inst, patch, dsol)
    return None


@dataclass(frozen=True)
class PatchPlacement:
    candidate: PatchCandidate
    vmap: tuple  # ((candidate vertex, host vertex), ...)
    corners: tuple  # ((candidate hole idx, walk occurrence indices), ...)
    patch_edges: tuple


def _suborder_occurrences(cwalk, host_walk, vmap):
    """Occurrence indices realizing the candidate walk as a cyclic
    sub-ordering of the host walk, or None.  Both walk directions of the
    candidate are tried."""
    m = len(host_walk)
    occ = {}
    for idx, v in enumerate(host_walk):
        occ.setdefault(v, []).append(idx)

    def attempt(walk):
        imgs = [vmap.get(v) for v in walk]
        if any(v is None for v in imgs):
            return None
        first_opts = occ.get(imgs[0], [])
        for start in first_opts:
            chosen = [start]
            ok = True
            for v in imgs[1:]:
                opts = [
                    o for o in occ.get(v, [])
                    if o not in chosen and (o - start) % m > (chosen[-1] - start) % m
                ]
                if not opts:
                    ok = False
                    break
                chosen.append(min(opts, key=lambda o: (o - start) % m))
            if ok:
                return tuple(chosen)
        return None

    res = attempt(list(cwalk))
    if res is not None:
        return res
    return attempt(list(reversed(cwalk)))


def placement_feasible(inst: PdpcInstance, pc: PatchCandidate,
                       vmap: dict) -> Optional[PatchPlacement]:
    """Check one concrete placement of a candidate.

    The map must be injective, send each candidate hole's vertices into a
    single distinct host hole preserving the boundary walk's cyclic order
    (some choice of occurrences at repeated vertices), and the mapped patch
    edges must pass the pinned planarity check within the budget.
    """
    inst = _normalized(inst)
    if len(set(vmap.values())) != len(vmap):
        return None
    if set(vmap) != set(range(pc.n_total)):
        return None
    host_hole_of = {}
    for i, cb in enumerate(inst.holes):
        for v in cb.vertices():
            host_hole_of[v] = i
    target = {}
    for ci, cb in enumerate(pc.holes):
        hit = {host_hole_of.get(vmap[v]) for v in cb.vertices()}
        if len(hit) != 1 or None in hit:
            return None
        target[ci] = next(iter(hit))
    if len(set(target.values())) != len(target):
        return None
    corners = []
    for ci, cb in enumerate(pc.holes):
        res = _suborder_occurrences(cb.walk, inst.holes[target[ci]].walk, vmap)
        if res is None:
            return None
        corners.append((ci, res))
    mapped = [tuple(sorted((vmap[u], vmap[v]), key=_vkey))
              for u, v in pc.completion.edges]
    if len(mapped) > inst.ell:
        return None
    if any(inst.graph.has_edge(*e) for e in mapped):
        return None
    if not pinned_planar(inst.holes, mapped):
        return None
    return PatchPlacement(pc, tuple(sorted(vmap.items())), tuple(corners),
                          tuple(sorted(mapped, key=lambda e: tuple(map(_vkey, e)))))


# -- certificate route (the equivalence machinery) ------------------------


def _pattern_part(cert: Certificate, hole_idx: int):
    """Enhanced pattern part for one candidate hole: boundary, in-hole
    linkage edges, terminals, wheel.  Returns (graph, roots, center)."""
    pc = cert.candidate
    cb = pc.holes[hole_idx]
    hole_of = hole_index_map(pc)
    th = dict(cert.term_holes)
    part = nx.Graph()
    part.add_nodes_from(cb.vertices())
    terms = sorted((t for t, h in cert.term_holes if h == hole_idx), key=_vkey)
    part.add_nodes_from(terms)
    for u, v in cert.h_edges:
        hu = hole_of.get(u, th.get(u))
        if hu == hole_idx:
            part.add_edge(u, v)
    g, center = enhance_part(part, cb, side=("cand", hole_idx))
    return g, terms, center


def _host_part(inst: PdpcInstance, hole_idx: int):
    hole_of = inst.hole_of()
    cb = inst.holes[hole_idx]
    part = nx.Graph()
    part.add_nodes_from(v for v in inst.graph.nodes()
                        if hole_of.get(v) == hole_idx)
    part.add_edges_from((u, v) for u, v in inst.graph.edges()
                        if hole_of.get(u) == hole_idx and hole_of.get(v) == hole_idx)
    terms = sorted((t for p in inst.pairs for t in p
                    if hole_of.get(t) == hole_idx), key=_vkey)
    g, center = enhance_part(part, cb, side=("host", hole_idx))
    return g, terms, center


def legal_rhos(cert: Certificate, inst: PdpcInstance):
    """All pair-to-pair terminal bijections, either orientation per pair."""
    k = len(cert.pairs)
    if len(inst.pairs) != k:
        return
    for perm in itertools.permutations(range(k)):
        for flips in itertools.product((False, True), repeat=k):
            rho = {}
            for i in range(k):
                a, b = cert.pairs[i]
                s, t = inst.pairs[perm[i]]
                if flips[i]:
                    s, t = t, s
                rho[a] = s
                rho[b] = t
            yield rho


def certify_realizable(inst: PdpcInstance, cert: Certificate, rho: dict) -> bool:
    """Does some hole bijection make every enhanced candidate part a rooted
    topological minor of its enhanced host part?"""
    inst = _normalized(inst)
    pc = cert.candidate
    lam = len(pc.holes)
    if lam != len(inst.holes):
        return False
    patterns = [_pattern_part(cert, i) for i in range(lam)]
    hosts = [_host_part(inst, j) for j in range(lam)]
    for phi in itertools.permutations(range(lam)):
        ok = True
        for i in range(lam):
            pg, pterms, pcenter = patterns[i]
            hg, hterms, hcenter = hosts[phi[i]]
            if {rho[t] for t in pterms} != set(hterms):
                ok = False
                break
            part_rho = {t: rho[t] for t in pterms}
            part_rho[pcenter] = hcenter
            if rooted_topminor(pg, hg, part_rho) is None:
                ok = False
                break
        if ok:
            return True
    return False


_cert_cache = {}


def certificate_universe(k: int, B: int, lam: int) -> list:
    """Certificates over single-cycle-hole candidates, cached; includes the
    empty completion so budget-zero solutions are certifiable.

    On instances whose holes are plain cycles, a minimal solution induces a
    candidate whose holes are single cycles over the patch endpoints, so this
    restriction keeps the certificate route complete for that class while
    discarding only harder-to-realize candidates elsewhere."""
    key = (k, B, lam)
    if key not in _cert_cache:
        certs = []
        comps = [Completion(0, ())] + (enum_completions(B) if B >= 1 else [])
        for comp in comps:
            for pc in enum_pairs(comp, lam):
                if any(len(cb.cycles()) != 1 for cb in pc.holes):
                    continue
                certs.extend(enum_certificates(pc, k))
        _cert_cache[key] = certs
    return _cert_cache[key]


def lemma_certified(inst: PdpcInstance, bound_cap: int = DEFAULT_BOUND_CAP) -> bool:
    """Certificate-route decision: is some certificate realizable in the
    instance under a legal terminal bijection?"""
    inst = reduce_active(_normalized(inst))
    k = inst.k
    B = min(inst.ell, patch_bound(k), bound_cap)
    lam = len(inst.holes)
    certs = sorted(
        certificate_universe(k, B, lam),
        key=lambda c: (len(c.candidate.completion.edges), len(c.h_edges)),
    )
    # linkage edges realize as edge-disjoint paths of graph edges
    g_edges = inst.graph.number_of_edges()
    for cert in certs:
        if len(cert.candidate.completion.edges) > inst.ell:
            continue
        if len(cert.h_edges) > g_edges:
            continue
        for rho in legal_rhos(cert, inst):
            if certify_realizable(inst, cert, rho):
                return True
    return False
