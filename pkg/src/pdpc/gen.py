"""Deterministic instance generators for tests and the CLI.

All families are seeded and emit instances that pass validation.  Vertex
names are strings so serialized files round-trip exactly.
"""

from __future__ import annotations

import random

import networkx as nx

from .cactus import CactusBoundary
from .instance import PdpcInstance, validate_instance

FAMILIES = ("cycle-terminals", "two-holes", "inactive-padding", "random")


def _checked(inst: PdpcInstance) -> PdpcInstance:
    diag = validate_instance(inst)
    assert diag.ok, f"generator produced an invalid instance: {diag.messages}"
    return inst


def gen_cycle_terminals(k: int = 2, n: int = 6, seed: int = 0, ell: int = 3,
                        arrangement: str = "random") -> PdpcInstance:
    """Edgeless graph, one cycle hole of n vertices, 2k of them terminals.

    Arrangements: "interleaved" (s1 s2 t1 t2 ... around the cycle, the
    canonical infeasible shape), "nested" (s1 ... sk tk ... t1, always
    feasible), or "random".
    """
    if n < max(3, 2 * k):
        raise ValueError("cycle too short for the terminals")
    rng = random.Random(seed)
    verts = [f"v{i}" for i in range(n)]
    g = nx.Graph()
    g.add_nodes_from(verts)
    slots = sorted(rng.sample(range(n), 2 * k))
    if arrangement == "interleaved":
        order = [f"s{i}" for i in range(k)] + [f"t{i}" for i in range(k)]
    elif arrangement == "nested":
        order = [f"s{i}" for i in range(k)] + [f"t{i}" for i in range(k - 1, -1, -1)]
    elif arrangement == "random":
        order = [f"s{i}" for i in range(k)] + [f"t{i}" for i in range(k)]
        rng.shuffle(order)
    else:
        raise ValueError(f"unknown arrangement {arrangement!r}")
    label_at = dict(zip(slots, order))
    names = {}
    for i, v in enumerate(verts):
        names[v] = v
    pairs = []
    position = {}
    for slot, label in label_at.items():
        position[label] = verts[slot]
    pairs = tuple((position[f"s{i}"], position[f"t{i}"]) for i in range(k))
    return _checked(PdpcInstance(g, pairs, (CactusBoundary(tuple(verts)),), ell))


def _noncrossing_chords(rng: random.Random, n: int, count: int) -> list:
    """A random set of pairwise non-crossing, non-boundary chords of an
    n-cycle (indices)."""
    chords = []

    def crosses(a, b, c, d):
        def between(x, lo, hi):
            return (x - lo) % n < (hi - lo) % n and x != lo
        inside = between(c, a, b)
        inside2 = between(d, a, b)
        return inside != inside2

    attempts = 0
    while len(chords) < count and attempts < 50:
        attempts += 1
        a, b = sorted(rng.sample(range(n), 2))
        if (b - a) % n in (1, n - 1):
            continue
        if any({a, b} == {c, d} for c, d in chords):
            continue
        if any(crosses(a, b, c, d) for c, d in chords):
            continue
        chords.append((a, b))
    return chords


def gen_random(seed: int = 0, max_n: int = 8, k: int = None,
               ell: int = None, holes: int = None) -> PdpcInstance:
    """Random sparse instance within the oracle caps: one or two cycle
    holes, a few non-crossing interior chords and pendant interior vertices,
    terminals sampled anywhere."""
    rng = random.Random(f"random:{seed}")
    k = k if k is not None else rng.randint(1, 2)
    ell = ell if ell is not None else rng.randint(0, 3)
    holes = holes if holes is not None else rng.randint(1, 2)
    sizes = []
    lo = max(3 * holes, 2 * k + 1)
    remaining = rng.randint(lo, max(lo, max_n))
    for h in range(holes):
        left = holes - h - 1
        hi = remaining - 3 * left
        # the last hole absorbs the remainder so 2k terminals always fit
        size = hi if left == 0 else rng.randint(3, max(3, hi))
        sizes.append(size)
        remaining -= size
    g = nx.Graph()
    walks = []
    interior = []
    idx = 0
    for h, size in enumerate(sizes):
        verts = [f"h{h}v{j}" for j in range(size)]
        g.add_nodes_from(verts)
        walks.append(CactusBoundary(tuple(verts)))
        for a, b in _noncrossing_chords(rng, size, rng.randint(0, 2)):
            g.add_edge(verts[a], verts[b])
        for _ in range(rng.randint(0, 2)):
            w = f"h{h}i{idx}"
            idx += 1
            a, b = rng.sample(range(size), 2)
            g.add_node(w)
            g.add_edge(w, verts[a])
            g.add_edge(w, verts[b])
            interior.append(w)
    pool = sorted(g.nodes())
    terms = rng.sample(pool, 2 * k)
    pairs = tuple((terms[2 * i], terms[2 * i + 1]) for i in range(k))
    inst = PdpcInstance(g, pairs, tuple(walks), ell)
    diag = validate_instance(inst)
    if not diag.ok:
        return gen_random(seed + 100003, max_n=max_n, k=k, ell=ell, holes=holes)
    return inst


def gen_two_holes(k: int = 2, seed: int = 0, ell: int = 2) -> PdpcInstance:
    """Terminal pairs split across two cycle holes, edgeless interior."""
    rng = random.Random(f"two:{seed}")
    n1 = rng.randint(max(3, k + 1), 5)
    n2 = rng.randint(max(3, k + 1), 5)
    a = [f"a{i}" for i in range(n1)]
    b = [f"b{i}" for i in range(n2)]
    g = nx.Graph()
    g.add_nodes_from(a + b)
    sa = rng.sample(range(n1), k)
    sb = rng.sample(range(n2), k)
    pairs = tuple((a[sa[i]], b[sb[i]]) for i in range(k))
    inst = PdpcInstance(
        g, pairs, (CactusBoundary(tuple(a)), CactusBoundary(tuple(b))), ell
    )
    return _checked(inst)


def gen_inactive_padding(base: PdpcInstance, extra: int = 1,
                         seed: int = 0) -> PdpcInstance:
    """The base instance plus terminal-free hole components (with a little
    interior structure), which must not change the answer."""
    rng = random.Random(f"pad:{seed}")
    g = base.graph.copy()
    holes = list(base.holes)
    assign = list(base.assign)
    for j in range(extra):
        size = rng.randint(3, 5)
        verts = [f"pad{j}x{i}" for i in range(size)]
        g.add_nodes_from(verts)
        holes.append(CactusBoundary(tuple(verts)))
        if rng.random() < 0.5:
            w = f"pad{j}in"
            g.add_node(w)
            g.add_edge(w, verts[0])
    inst = PdpcInstance(g, base.pairs, tuple(holes), base.ell, tuple(assign))
    return _checked(inst)


def gen_reducible(seed: int = 0):
    """An instance with a deliberately oversized feasible patch.

    Returns (instance, patch edges, path tuple).  The planted solution takes
    a detour over extra boundary vertices, so normalization or the shortcut
    reduction can shrink the patch.
    """
    rng = random.Random(f"red:{seed}")
    n = rng.randint(6, 9)
    verts = [f"v{i}" for i in range(n)]
    g = nx.Graph()
    g.add_nodes_from(verts)
    k = rng.randint(1, 2)
    style = rng.choice(["detour", "double-cross", "unused"])
    slots = rng.sample(range(n), 2 * k + 2)
    s = [verts[slots[2 * i]] for i in range(k)]
    t = [verts[slots[2 * i + 1]] for i in range(k)]
    spare = [verts[slots[-2]], verts[slots[-1]]]
    pairs = tuple(zip(s, t))
    patch = []
    paths = []
    if style == "detour":
        # first pair goes the long way through both spare vertices
        paths.append((s[0], spare[0], spare[1], t[0]))
        patch += [(s[0], spare[0]), (spare[0], spare[1]), (spare[1], t[0])]
    elif style == "double-cross":
        # a middle chord plus a direct hop; the chord pair reduces
        paths.append((s[0], spare[0], t[0]))
        patch += [(s[0], spare[0]), (spare[0], t[0])]
    else:
        paths.append((s[0], t[0]))
        patch += [(s[0], t[0]), (spare[0], spare[1])]
    for i in range(1, k):
        # remaining pairs use graph edges so they never interfere
        g.add_edge(s[i], t[i])
        paths.append((s[i], t[i]))
    inst = PdpcInstance(g, pairs, (CactusBoundary(tuple(verts)),),
                        ell=len(patch))
    diag = validate_instance(inst)
    if not diag.ok:
        return gen_reducible(seed + 7919)
    from .pinning import pinned_planar

    if not pinned_planar(inst.holes, patch):
        return gen_reducible(seed + 7919)
    return inst, tuple(patch), tuple(paths)


def generate(family: str, seed: int = 0, **params) -> PdpcInstance:
    if family == "cycle-terminals":
        return gen_cycle_terminals(seed=seed, **params)
    if family == "two-holes":
        return gen_two_holes(seed=seed, **params)
    if family == "random":
        return gen_random(seed=seed, **params)
    if family == "inactive-padding":
        base = gen_random(seed=seed, **{k: v for k, v in params.items() if k != "extra"})
        return gen_inactive_padding(base, extra=params.get("extra", 1), seed=seed)
    raise ValueError(f"unknown family {family!r}")
