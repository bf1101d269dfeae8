"""Region-constrained drawability via the pinned planarity reduction."""

import itertools

from pdpc.cactus import CactusBoundary, walk_from_cycles
from pdpc.pinning import pinned_graph, pinned_planar


def cycle_hole(n):
    return CactusBoundary(tuple(f"v{i}" for i in range(n)))


def test_empty_patch_always_drawable():
    assert pinned_planar((cycle_hole(4),), [])


def test_single_chord_drawable():
    assert pinned_planar((cycle_hole(5),), [("v0", "v2")])


def test_crossing_chords_not_drawable():
    hole = cycle_hole(4)
    assert pinned_planar((hole,), [("v0", "v2")])
    assert pinned_planar((hole,), [("v1", "v3")])
    assert not pinned_planar((hole,), [("v0", "v2"), ("v1", "v3")])


def test_nested_chords_drawable():
    hole = cycle_hole(6)
    assert pinned_planar((hole,), [("v0", "v3"), ("v1", "v2")])
    assert pinned_planar((hole,), [("v0", "v3"), ("v4", "v5")])


def test_parallel_to_boundary_arc():
    # an edge joining adjacent boundary vertices runs outside the hole;
    # subdivision keeps the pinned graph simple
    hole = cycle_hole(4)
    assert pinned_planar((hole,), [("v0", "v1")])


def test_cross_hole_edges():
    h1 = CactusBoundary(("a0", "a1", "a2"))
    h2 = CactusBoundary(("b0", "b1", "b2"))
    assert pinned_planar((h1, h2), [("a0", "b0")])
    assert pinned_planar((h1, h2), [("a0", "b0"), ("a1", "b1")])
    # a four-cycle between the holes is still drawable around them
    assert pinned_planar(
        (h1, h2),
        [("a0", "b0"), ("a1", "b1"), ("a0", "b1"), ("a1", "b0")],
    )
    # joining every boundary vertex to every one of the other hole embeds
    # a K33 and cannot be drawn
    assert not pinned_planar(
        (h1, h2),
        [(f"a{i}", f"b{j}") for i in range(3) for j in range(3)],
    )


def test_cut_vertex_hole():
    # figure-eight hole: chords within one petal behave like a cycle hole
    cb = walk_from_cycles([("a", "b", "c", "d"), ("a", "e", "f", "g")])
    assert pinned_planar((cb,), [("b", "d")])
    assert not pinned_planar((cb,), [("b", "d"), ("a", "c")])
    # a chord between petals routes around the outside
    assert pinned_planar((cb,), [("b", "f")])


def test_crossing_count_matches_cycle_geometry():
    # chords (i, j) and (p, q) of a cycle cross iff their endpoints
    # interleave; the pinned reduction must agree with the geometry
    n = 6
    hole = cycle_hole(n)

    def interleave(a, b, c, d):
        def between(x, lo, hi):
            return (x - lo) % n < (hi - lo) % n and x != lo
        return between(c, a, b) != between(d, a, b)

    chords = [(i, j) for i in range(n) for j in range(i + 2, n)
              if (j - i) % n != n - 1]
    for (a, b), (c, d) in itertools.combinations(chords, 2):
        if len({a, b, c, d}) < 4:
            continue
        patch = [(f"v{a}", f"v{b}"), (f"v{c}", f"v{d}")]
        want = not interleave(a, b, c, d)
        assert pinned_planar((hole,), patch) == want, (a, b, c, d)


def test_pinned_graph_is_simple():
    g = pinned_graph((cycle_hole(4),), [("v0", "v1"), ("v0", "v2")])
    assert all(u != v for u, v in g.edges())
    assert g.number_of_edges() == len(set(frozenset(e) for e in g.edges()))
