"""Rotation-system embeddings: face tracing, planar duality, conflict-free faces.

A rotation system lists, for each vertex, its incident edge ids in clockwise
cyclic order.  Faces are the orbits of the dart successor map: a dart is an
edge with a direction (edge id, tail vertex), and the dart following
(e, tail) continues from e's head along the next edge in the head's
rotation.  An embedding is accepted as planar exactly when Euler's relation
V - E + F = 2 holds, which also forces the graph to be connected.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .core import Graph, Instance, build_instance

__all__ = [
    "Face",
    "Embedding",
    "trace_faces",
    "planar_dual",
    "cf_faces",
    "cffpt_scan",
]


@dataclass(frozen=True)
class Face:
    """One face of an embedded instance.

    boundary_edges and boundary_vertices are the face walk: edge i of the
    walk leaves boundary_vertices[i].  A face is conflict-free when no two
    edge ids on its boundary are conflict partners.
    """

    boundary_edges: tuple[int, ...]
    boundary_vertices: tuple[str, ...]
    is_cf: bool

    @cached_property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.boundary_edges)

    def __len__(self) -> int:
        return len(self.boundary_edges)

    @cached_property
    def canonical_key(self) -> tuple[int, ...]:
        return _canonical_walk(self.boundary_edges)


def _canonical_walk(walk: tuple[int, ...]) -> tuple[int, ...]:
    """Smallest rotation of the walk or its reversal, as a tuple."""
    best = None
    for seq in (walk, walk[::-1]):
        for k in range(len(seq)):
            cand = seq[k:] + seq[:k]
            if best is None or cand < best:
                best = cand
    return best if best is not None else ()


@dataclass(frozen=True)
class Embedding:
    """Face structure of an embedded instance.

    faces are sorted by canonical edge walk, so face indices are stable and
    duals built from them are deterministic.
    """

    instance: Instance
    faces: tuple[Face, ...]

    @property
    def euler_characteristic(self) -> int:
        g = self.instance.graph
        return len(g.vertices) - len(g.edges) + len(self.faces)


def _dart_orbits(graph: Graph, rotation: dict[str, tuple[int, ...]]) -> list[list[tuple[int, str]]]:
    succ_index = {
        (eid, v): i for v, rot in rotation.items() for i, eid in enumerate(rot)
    }
    pending = {(eid, t) for eid, a, b in graph.edges for t in (a, b)}
    orbits = []
    while pending:
        start = min(pending)
        walk = []
        dart = start
        while True:
            walk.append(dart)
            pending.discard(dart)
            eid, tail = dart
            head = graph.other_end(eid, tail)
            rot = rotation[head]
            nxt = rot[(succ_index[(eid, head)] + 1) % len(rot)]
            dart = (nxt, head)
            if dart == start:
                break
        orbits.append(walk)
    return orbits


def trace_faces(instance: Instance) -> Embedding:
    """Trace the faces of the instance's rotation system.

    Raises ValueError when the instance has no embedding or when the traced
    map fails Euler's relation (not a planar embedding of a connected graph).
    """
    if instance.embedding is None:
        raise ValueError("instance has no embedding")
    g = instance.graph
    orbits = _dart_orbits(g, instance.embedding)
    euler = len(g.vertices) - len(g.edges) + len(orbits)
    if euler != 2:
        raise ValueError(
            f"rotation system is not a planar embedding (V-E+F = {euler}, expected 2)"
        )
    conflicts = instance.conflicts
    faces = []
    for walk in orbits:
        edge_walk = tuple(eid for eid, _ in walk)
        vertex_walk = tuple(tail for _, tail in walk)
        faces.append(
            Face(
                boundary_edges=edge_walk,
                boundary_vertices=vertex_walk,
                is_cf=conflicts.is_conflict_free(set(edge_walk)),
            )
        )
    faces.sort(key=lambda f: f.canonical_key)
    return Embedding(instance=instance, faces=tuple(faces))


def planar_dual(instance: Instance) -> Instance:
    """Planar dual with edge ids and conflicts carried over unchanged.

    Dual vertex f<k> stands for face k of trace_faces(instance); primal edge
    e joins the two faces its darts lie on.  A bridge would give the dual a
    self-loop, which the instance model forbids, so bridges raise.
    The dual rotation at a face is its own face walk, which makes the double
    dual isomorphic to the primal.
    """
    emb = trace_faces(instance)
    g = instance.graph
    face_of_dart: dict[tuple[int, str], int] = {}
    for idx, face in enumerate(emb.faces):
        for eid, tail in zip(face.boundary_edges, face.boundary_vertices):
            face_of_dart[(eid, tail)] = idx
    labels = [f"f{idx}" for idx in range(len(emb.faces))]
    dual_edges = []
    for eid, a, b in g.edges:
        fa = face_of_dart[(eid, a)]
        fb = face_of_dart[(eid, b)]
        if fa == fb:
            raise ValueError(f"edge {eid} is a bridge; its dual would be a self-loop")
        dual_edges.append((eid, labels[fa], labels[fb]))
    rotation = {
        labels[idx]: list(face.boundary_edges) for idx, face in enumerate(emb.faces)
    }
    return build_instance(
        vertices=labels,
        edges=dual_edges,
        conflict_pairs=instance.conflicts.pairs,
        embedding=rotation,
        name=f"{instance.name}*" if instance.name else "dual",
    )


def cf_faces(instance: Instance) -> list[Face]:
    """Faces whose boundary contains no conflicting pair."""
    return [f for f in trace_faces(instance).faces if f.is_cf]


def cffpt_scan(instance: Instance, face: Face) -> list[tuple[Face, int]]:
    """Triangles that share exactly one edge with a conflict-free face and
    whose other two edges conflict with each other.

    Given face must be conflict-free.  Returns (triangle, shared edge id)
    pairs in face order.
    """
    if not face.is_cf:
        raise ValueError("reference face is not conflict-free")
    emb = trace_faces(instance)
    conflicts = instance.conflicts
    out = []
    for cand in emb.faces:
        if cand.canonical_key == face.canonical_key or len(cand) != 3:
            continue
        shared = cand.edge_set & face.edge_set
        if len(shared) != 1:
            continue
        rest = sorted(cand.edge_set - shared)
        if len(rest) == 2 and conflicts.partner(rest[0]) == rest[1]:
            out.append((cand, next(iter(shared))))
    return out
