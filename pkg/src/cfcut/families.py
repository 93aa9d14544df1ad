"""Generators for the instance families used throughout the package.

Every generator is deterministic: fixed vertex labels, fixed edge id
assignment, fixed conflict pairs.  Embeddings are produced by laying the
graph out with explicit coordinates and reading off each vertex's incident
edges in clockwise order; curved edges get a control point that stands in
for their initial direction.  trace_faces validates the result via Euler's
relation, so a bad layout cannot slip through silently.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Optional

from .core import Graph, Instance, build_instance
from .planar import planar_dual
from .solver import search_uncuttable_assignment

__all__ = [
    "gen_square_even_cycle",
    "gen_modified_square",
    "modified_square_outer_ports",
    "gen_gadget_H",
    "extend_with_degree2",
    "gen_gadget_family",
    "gadget_family_ports",
    "gen_prism",
    "gen_octahedron",
]


def _rotation_from_layout(
    vertices,
    edges,
    pos: dict[str, tuple[float, float]],
    ctrl: Optional[dict[tuple[int, str], tuple[float, float]]] = None,
) -> dict[str, list[int]]:
    """Clockwise rotation system read off a straight-line-ish drawing.

    ctrl overrides the direction of an (edge, endpoint) with a control
    point, for edges drawn as arcs.
    """
    ctrl = ctrl or {}
    by_vertex: dict[str, list[tuple[float, int]]] = {v: [] for v in vertices}
    for eid, a, b in edges:
        for tail, head in ((a, b), (b, a)):
            target = ctrl.get((eid, tail), pos[head])
            dx = target[0] - pos[tail][0]
            dy = target[1] - pos[tail][1]
            by_vertex[tail].append((math.atan2(dy, dx), eid))
    rotation = {}
    for v, items in by_vertex.items():
        items.sort(key=lambda t: -t[0])  # descending angle = clockwise
        for k in range(1, len(items)):
            if abs(items[k - 1][0] - items[k][0]) < 1e-9:
                raise RuntimeError(f"layout degenerate at {v!r}: coincident directions")
        rotation[v] = [eid for _, eid in items]
    return rotation


def _ring_pos(k: int, count: int, radius: float) -> tuple[float, float]:
    theta = -2.0 * math.pi * k / count
    return (radius * math.cos(theta), radius * math.sin(theta))


def _square_layout(size: int) -> dict[str, tuple[float, float]]:
    """Even vertices on an outer ring, odd ones strictly inside the outer
    chords (the chord {k, k+2} passes at distance 2 cos(2 pi / size))."""
    inner = 1.5 * math.cos(2.0 * math.pi / size)
    return {
        str(k): _ring_pos(k, size, 2.0 if k % 2 == 0 else inner) for k in range(size)
    }


# ---------------------------------------------------------------------------
# squares of even cycles


def gen_square_even_cycle(n: int) -> Instance:
    """Square of the even cycle on 2n vertices.

    Vertices "0".."2n-1"; edge id k is the ring edge {k, k+1}, edge id 2n+k
    the chord {k, k+2} (indices mod 2n); ring edge k conflicts with chord k.
    The embedding keeps the even vertices on the outer face.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    size = 2 * n
    vertices = [str(k) for k in range(size)]
    edges = []
    for k in range(size):
        edges.append((k, str(k), str((k + 1) % size)))
    for k in range(size):
        edges.append((size + k, str(k), str((k + 2) % size)))
    conflicts = [(k, size + k) for k in range(size)]
    pos = _square_layout(size)
    rotation = _rotation_from_layout(vertices, edges, pos)
    return build_instance(
        vertices, edges, conflicts, embedding=rotation, name=f"square-c{size}"
    )


def _window(i: int, size: int) -> set[int]:
    return {(i + d) % size for d in range(5)}


def gen_modified_square(n: int, i: int, j: int) -> Instance:
    """Square of an even cycle with two chord runs split and rewired.

    The chords {i, i+2}, {i+2, i+4} and {j, j+2}, {j+2, j+4} are subdivided
    by new vertices i', (i+2)', j', (j+2)'; edges {i+1, i'}, {i+3, (i+2)'},
    {i', (i+2)'} and their j-side twins are added, and the conflict pairs
    touching the four split chord positions are rewired so the pairing stays
    perfect.  i and j must be even with the two five-vertex windows
    {i..i+4}, {j..j+4} disjoint mod 2n, which needs n >= 6.
    """
    if n < 6:
        raise ValueError("need n >= 6")
    size = 2 * n
    if i % 2 or j % 2:
        raise ValueError("window starts must be even")
    if not (0 <= i < size and 0 <= j < size):
        raise ValueError("window start out of range")
    if _window(i, size) & _window(j, size):
        raise ValueError("windows overlap")

    def lab(k: int) -> str:
        return str(k % size)

    def prime(k: int) -> str:
        return f"{k % size}'"

    split_at = {i % size, (i + 2) % size, j % size, (j + 2) % size}
    vertices = [str(k) for k in range(size)] + [
        prime(i), prime(i + 2), prime(j), prime(j + 2)
    ]

    edges: list[tuple[int, str, str]] = []
    ring_id = {}
    for k in range(size):
        ring_id[k] = len(edges)
        edges.append((len(edges), lab(k), lab(k + 1)))
    chord_id = {}
    for k in range(size):
        if k not in split_at:
            chord_id[k] = len(edges)
            edges.append((len(edges), lab(k), lab(k + 2)))
    half_id = {}
    for base in (i, j):
        for k in (base, base + 2):
            half_id[(k, "lo")] = len(edges)
            edges.append((len(edges), lab(k), prime(k)))
            half_id[(k, "hi")] = len(edges)
            edges.append((len(edges), prime(k), lab(k + 2)))
    new_id = {}
    for base in (i, j):
        new_id[(base, "spur_lo")] = len(edges)
        edges.append((len(edges), lab(base + 1), prime(base)))
        new_id[(base, "spur_hi")] = len(edges)
        edges.append((len(edges), lab(base + 3), prime(base + 2)))
        new_id[(base, "bridge")] = len(edges)
        edges.append((len(edges), prime(base), prime(base + 2)))

    conflicts = []
    for k in range(size):
        if k not in split_at:
            conflicts.append((ring_id[k], chord_id[k]))
    for base in (i, j):
        # the four split positions k = base, base+2 get rewired pairs
        conflicts.append((ring_id[base % size], half_id[(base, "lo")]))
        conflicts.append((half_id[(base, "hi")], new_id[(base, "bridge")]))
        conflicts.append((ring_id[(base + 2) % size], half_id[(base + 2, "lo")]))
        conflicts.append((new_id[(base, "spur_hi")], half_id[(base + 2, "hi")]))
    conflicts.append((new_id[(i, "spur_lo")], new_id[(j, "spur_lo")]))

    pos = _square_layout(size)
    for k in (i, i + 2, j, j + 2):
        a = pos[lab(k)]
        b = pos[lab(k + 2)]
        pos[prime(k)] = ((a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0)
    ctrl = {}
    for base in (i, j):
        eid = new_id[(base, "bridge")]
        apex = _ring_pos(base + 2, size, 3.2)
        ctrl[(eid, prime(base))] = apex
        ctrl[(eid, prime(base + 2))] = apex
    rotation = _rotation_from_layout(vertices, edges, pos, ctrl)
    return build_instance(
        vertices,
        edges,
        conflicts,
        embedding=rotation,
        name=f"modified-square-c{size}-i{i}-j{j}",
    )


def modified_square_outer_ports(n: int, i: int, j: int) -> tuple[str, ...]:
    """Outer-face vertices of gen_modified_square(n, i, j) in cyclic order.

    These are the degree-4 vertices on the outer boundary: the even ring
    vertices except the two pocketed ones (i+2 and j+2), interleaved with
    the four split vertices.  There are n + 2 of them.
    """
    size = 2 * n
    out = []
    for slot in range(size):
        if slot % 2 == 0:
            if slot not in {(i + 2) % size, (j + 2) % size}:
                out.append(str(slot))
        else:
            for base in (i, j):
                if slot == (base + 1) % size:
                    out.append(f"{base % size}'")
                elif slot == (base + 3) % size:
                    out.append(f"{(base + 2) % size}'")
    return tuple(out)


# ---------------------------------------------------------------------------
# the 6-vertex gadget and its degree-bounded family


_H_EDGES = (
    ("v1", "v3"), ("v1", "v4"), ("v1", "v6"),
    ("v2", "v4"), ("v2", "v5"), ("v2", "v6"),
    ("v3", "v4"), ("v3", "v5"), ("v3", "v6"),
    ("v4", "v5"), ("v4", "v6"), ("v5", "v6"),
)

_H_CONFLICTS = ((0, 2), (1, 3), (4, 5), (6, 7), (8, 10), (9, 11))


def gen_gadget_H() -> Instance:
    """The 3-degenerate 6-vertex gadget with no conflict-free cut."""
    vertices = [f"v{k}" for k in range(1, 7)]
    edges = [(eid, a, b) for eid, (a, b) in enumerate(_H_EDGES)]
    return build_instance(vertices, edges, _H_CONFLICTS, name="gadget-h")


def extend_with_degree2(instance: Instance, v1: str, v2: str) -> Instance:
    """Attach one new degree-2 vertex whose two edges conflict.

    The new vertex gets the first free label u1, u2, ...; its edges take the
    next two ids and form a conflict pair.  This preserves both cuttability
    verdicts and degeneracy <= 3.  Any embedding is dropped, since the two
    hosts need not share a face.
    """
    g = instance.graph
    if v1 == v2:
        raise ValueError("the two host vertices must differ")
    for v in (v1, v2):
        if v not in g.vertex_set:
            raise ValueError(f"unknown vertex {v!r}")
    k = 1
    while f"u{k}" in g.vertex_set:
        k += 1
    new = f"u{k}"
    m = len(g.edges)
    edges = list(g.edges) + [(m, new, v1), (m + 1, new, v2)]
    conflicts = list(instance.conflicts.pairs) + [(m, m + 1)]
    return build_instance(
        list(g.vertices) + [new],
        edges,
        conflicts,
        name=f"{instance.name}+{new}" if instance.name else f"+{new}",
    )


_FAMILY_FIRST_LAYER = (
    ("u1", "v1", "v2"), ("u2", "v1", "v3"), ("u3", "v2", "v5"),
    ("u4", "u1", "u2"), ("u5", "u1", "u2"), ("u6", "u1", "u3"),
    ("u7", "u2", "u3"), ("u8", "u4", "u5"), ("u9", "u4", "u5"),
    ("u10", "u6", "u7"), ("u11", "u6", "u7"), ("u12", "u8", "u9"),
    ("u13", "u8", "u10"), ("u14", "u9", "u10"),
)


def gen_gadget_family(i: int) -> Instance:
    """Member i >= 1 of the uncuttable max-degree-5, 3-degenerate family.

    Built from the 6-vertex gadget by repeatedly attaching degree-2 vertices
    with conflicting edge pairs: a fixed first batch u1..u14, then one batch
    of seven per additional level, growing a ladder from the previous
    level's four degree-2 vertices.  Member i has 13 + 7i vertices and twice
    as many edges: eight of degree 5, 1 + 7i of degree 4, four of degree 2.
    """
    if i < 1:
        raise ValueError("need i >= 1")
    base = gen_gadget_H()
    vertices = list(base.graph.vertices)
    edges = [tuple(e) for e in base.graph.edges]
    conflicts = list(base.conflicts.pairs)

    def attach(new: str, a: str, b: str) -> None:
        m = len(edges)
        vertices.append(new)
        edges.append((m, new, a))
        edges.append((m + 1, new, b))
        conflicts.append((m, m + 1))

    for new, a, b in _FAMILY_FIRST_LAYER:
        attach(new, a, b)
    frontier = ["u11", "u12", "u13", "u14"]
    next_idx = 15
    for _ in range(i - 1):
        f1, f2, f3, f4 = frontier
        m1, m2, m3 = (f"u{next_idx + d}" for d in range(3))
        n1, n2, n3, n4 = (f"u{next_idx + 3 + d}" for d in range(4))
        attach(m1, f1, f2)
        attach(m2, f2, f3)
        attach(m3, f3, f4)
        attach(n1, f1, m1)
        attach(n2, m1, m2)
        attach(n3, m2, m3)
        attach(n4, m3, f4)
        frontier = [n1, n2, n3, n4]
        next_idx += 7

    inst = build_instance(vertices, edges, conflicts, name=f"gadget-family-{i}")
    degs = sorted(inst.graph.degree(v) for v in inst.graph.vertices)
    want = [2] * 4 + [4] * (1 + 7 * i) + [5] * 8
    if degs != want:
        raise RuntimeError("attachment schedule produced a wrong degree profile")
    return inst


def gadget_family_ports(instance: Instance) -> tuple[str, ...]:
    """Attachment slots of a family member: the degree-4 vertices, then the
    degree-2 vertices, each group in construction order.  One extra edge per
    slot keeps the maximum degree at 5."""
    g = instance.graph
    fours = [v for v in g.vertices if g.degree(v) == 4]
    twos = [v for v in g.vertices if g.degree(v) == 2]
    return tuple(fours + twos)


# ---------------------------------------------------------------------------
# prisms and the octahedron


def gen_prism(length: int) -> tuple[Graph, dict[str, list[int]]]:
    """Prism over a cycle: two length-L cycles joined by rungs.

    Vertices v1..vL (outer) and v(L+1)..v(2L) (inner); edge ids 0..L-1 outer
    cycle, L..2L-1 inner cycle, 2L..3L-1 rungs.  Returns the bare graph and
    its standard rotation system; prisms carry no conflict pairing of their
    own, see search_uncuttable_assignment.
    """
    if length < 3:
        raise ValueError("need half-cycle length >= 3")
    outer = [f"v{k}" for k in range(1, length + 1)]
    inner = [f"v{k}" for k in range(length + 1, 2 * length + 1)]
    vertices = outer + inner
    edges = []
    for k in range(length):
        edges.append((k, outer[k], outer[(k + 1) % length]))
    for k in range(length):
        edges.append((length + k, inner[k], inner[(k + 1) % length]))
    for k in range(length):
        edges.append((2 * length + k, outer[k], inner[k]))
    pos = {}
    for k in range(length):
        pos[outer[k]] = _ring_pos(k, length, 2.0)
        pos[inner[k]] = _ring_pos(k, length, 1.0)
    rotation = _rotation_from_layout(vertices, edges, pos)
    graph = Graph(vertices=tuple(vertices), edges=tuple(edges))
    return graph, rotation


@lru_cache(maxsize=1)
def _octahedron() -> Instance:
    graph, rotation = gen_prism(4)
    pairing = search_uncuttable_assignment(graph, "no-cf-cycle")
    if pairing is None:
        raise RuntimeError(
            "no conflict pairing kills every cycle of the 8-prism; "
            "the octahedron construction is broken"
        )
    prism = build_instance(
        graph.vertices, graph.edges, pairing.pairs, embedding=rotation, name="prism-8"
    )
    dual = planar_dual(prism)
    return Instance(
        graph=dual.graph,
        conflicts=dual.conflicts,
        embedding=dual.embedding,
        name="octahedron",
    )


def gen_octahedron() -> Instance:
    """The octahedron with an inherited conflict pairing admitting no cut.

    Computed once per process: a conflict pairing killing every simple cycle
    of the 8-prism is searched for, and the prism's planar dual transports
    that pairing to the octahedron, where cycles dualize to cuts.
    """
    return _octahedron()
