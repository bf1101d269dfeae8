"""Line-oriented text formats for instances and solutions.

Both formats are versioned; parsing rejects unknown versions and reports the
offending line.  Serialization writes a canonical form (sorted vertices and
edges), so parse-serialize round-trips are exact on canonical files.
"""

from __future__ import annotations

import os
import tempfile

import networkx as nx

from .cactus import CactusBoundary
from .instance import PdpcInstance
from .solver import Solution

INSTANCE_HEADER = "pdpc instance 1"
SOLUTION_HEADER = "pdpc solution 1"


class FormatError(ValueError):
    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


def serialize_instance(inst: PdpcInstance) -> str:
    lines = [INSTANCE_HEADER]
    for v in sorted(inst.graph.nodes(), key=str):
        lines.append(f"vertex {v}")
    for u, v in sorted((sorted((str(a), str(b))) for a, b in inst.graph.edges())):
        lines.append(f"edge {u} {v}")
    terms = " ".join(str(t) for p in inst.pairs for t in p)
    lines.append(f"terminals {terms}")
    for cb in inst.holes:
        lines.append("hole " + " ".join(str(v) for v in cb.walk))
    for v, h in sorted(((str(v), h) for v, h in inst.assign)):
        lines.append(f"assign {v} {h}")
    lines.append(f"ell {inst.ell}")
    return "\n".join(lines) + "\n"


def parse_instance(text: str) -> PdpcInstance:
    lines = text.splitlines()
    if not lines or lines[0].strip() != INSTANCE_HEADER:
        raise FormatError(1, f"expected header {INSTANCE_HEADER!r}")
    g = nx.Graph()
    pairs = None
    holes = []
    assign = []
    ell = None
    for no, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        if kind == "vertex":
            if len(args) != 1:
                raise FormatError(no, "vertex takes one name")
            g.add_node(args[0])
        elif kind == "edge":
            if len(args) != 2:
                raise FormatError(no, "edge takes two endpoints")
            for v in args:
                if v not in g:
                    raise FormatError(no, f"unknown vertex {v!r}")
            g.add_edge(args[0], args[1])
        elif kind == "terminals":
            if len(args) < 2 or len(args) % 2:
                raise FormatError(no, "terminals must list pairs")
            pairs = tuple((args[i], args[i + 1]) for i in range(0, len(args), 2))
        elif kind == "hole":
            if len(args) < 1:
                raise FormatError(no, "empty hole walk")
            holes.append(tuple(args))
        elif kind == "assign":
            if len(args) != 2 or not args[1].isdigit():
                raise FormatError(no, "assign takes a vertex and a hole index")
            assign.append((args[0], int(args[1])))
        elif kind == "ell":
            if len(args) != 1 or not args[0].isdigit():
                raise FormatError(no, "ell takes one non-negative integer")
            ell = int(args[0])
        else:
            raise FormatError(no, f"unknown directive {kind!r}")
    if pairs is None:
        raise FormatError(len(lines), "missing terminals line")
    if ell is None:
        raise FormatError(len(lines), "missing ell line")
    if not holes:
        raise FormatError(len(lines), "missing hole line")
    hole_objs = []
    for walk in holes:
        if len(walk) >= 3:
            hole_objs.append(CactusBoundary(walk))
        else:
            hole_objs.append(_ShortWalk(walk))
    return PdpcInstance(g, pairs, tuple(hole_objs), ell, tuple(assign))


class _ShortWalk:
    """Carrier for a sub-3 hole walk; instance validation pads it."""

    def __init__(self, walk):
        self.walk = tuple(walk)

    def vertices(self):
        return frozenset(self.walk)


def serialize_solution(sol: Solution) -> str:
    lines = [SOLUTION_HEADER, f"ell {len(sol.patch_edges)}"]
    for u, v in sorted((sorted((str(a), str(b))) for a, b in sol.patch_edges)):
        lines.append(f"patch {u} {v}")
    for walk in sol.jwalks:
        lines.append("jwalk " + " ".join(str(v) for v in walk))
    for path in sol.paths:
        lines.append("path " + " ".join(str(v) for v in path))
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> Solution:
    lines = text.splitlines()
    if not lines or lines[0].strip() != SOLUTION_HEADER:
        raise FormatError(1, f"expected header {SOLUTION_HEADER!r}")
    patch = []
    jwalks = []
    paths = []
    ell = None
    for no, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind, args = parts[0], parts[1:]
        if kind == "ell":
            if len(args) != 1 or not args[0].isdigit():
                raise FormatError(no, "ell takes one non-negative integer")
            ell = int(args[0])
        elif kind == "patch":
            if len(args) != 2:
                raise FormatError(no, "patch takes two endpoints")
            patch.append((args[0], args[1]))
        elif kind == "jwalk":
            jwalks.append(tuple(args))
        elif kind == "path":
            if len(args) < 2:
                raise FormatError(no, "path needs at least two vertices")
            paths.append(tuple(args))
        else:
            raise FormatError(no, f"unknown directive {kind!r}")
    if ell is None:
        raise FormatError(len(lines), "missing ell line")
    if ell != len(patch):
        raise FormatError(len(lines), "ell disagrees with patch edge count")
    return Solution(tuple(patch), tuple(paths), tuple(jwalks))


def write_atomic(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".pdpc-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
