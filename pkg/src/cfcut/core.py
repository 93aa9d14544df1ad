"""Graphs with a conflict structure on their edges, and cut verification.

An instance couples an undirected multigraph (no self-loops, edge ids
contiguous from 0) with a perfect matching on its edge ids: every edge has
exactly one conflict partner.  An edge set is conflict-free when it contains
no matched pair.  A conflict-free cut is an edge set whose removal
disconnects the graph and which is conflict-free.

Vertices are opaque strings ordered lexicographically; that order plus the
numeric edge-id order fixes every canonical choice made downstream.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Optional, Sequence

import json

__all__ = [
    "Graph",
    "ConflictPairing",
    "Instance",
    "Cut",
    "CutRejection",
    "ValidationReport",
    "build_instance",
    "validate_instance",
    "canonical_cut",
    "verify_cut",
    "instance_to_json",
    "instance_from_json",
    "instance_to_dot",
]


@dataclass(frozen=True)
class Graph:
    """Undirected multigraph.  Edges are (id, end, end) with ids 0..m-1."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, str, str], ...]

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    @cached_property
    def _incidence(self) -> dict[str, tuple[int, ...]]:
        inc: dict[str, list[int]] = {v: [] for v in self.vertices}
        for eid, a, b in self.edges:
            inc[a].append(eid)
            inc[b].append(eid)
        return {v: tuple(sorted(ids)) for v, ids in inc.items()}

    def endpoints(self, eid: int) -> tuple[str, str]:
        _, a, b = self.edges[eid]
        return a, b

    def other_end(self, eid: int, v: str) -> str:
        _, a, b = self.edges[eid]
        if v == a:
            return b
        if v == b:
            return a
        raise ValueError(f"vertex {v!r} is not an end of edge {eid}")

    def incident(self, v: str) -> tuple[int, ...]:
        """Edge ids incident to v, ascending."""
        return self._incidence[v]

    def degree(self, v: str) -> int:
        return len(self._incidence[v])

    @cached_property
    def is_simple(self) -> bool:
        seen = set()
        for _, a, b in self.edges:
            key = (a, b) if a <= b else (b, a)
            if key in seen:
                return False
            seen.add(key)
        return True

    @cached_property
    def is_connected(self) -> bool:
        return len(self.component_of(self.vertices[0])) == len(self.vertices)

    def component_of(self, start: str, removed_edges: frozenset[int] = frozenset()) -> frozenset[str]:
        """Vertices reachable from start, ignoring the removed edge ids."""
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for eid in self._incidence[v]:
                if eid in removed_edges:
                    continue
                w = self.other_end(eid, v)
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return frozenset(seen)

    def components(self, removed_edges: frozenset[int] = frozenset()) -> list[frozenset[str]]:
        """Connected components after deleting the given edges, in order of
        their smallest vertex label."""
        remaining = set(self.vertices)
        out = []
        while remaining:
            start = min(remaining)
            comp = self.component_of(start, removed_edges)
            out.append(comp)
            remaining -= comp
        return out

    def crossing_edges(self, side: frozenset[str]) -> frozenset[int]:
        """Edge ids with exactly one end inside the given vertex set."""
        return frozenset(
            eid for eid, a, b in self.edges if (a in side) != (b in side)
        )

    def induces_connected(self, side: frozenset[str]) -> bool:
        if not side:
            return False
        start = min(side)
        seen = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for eid in self._incidence[v]:
                w = self.other_end(eid, v)
                if w in side and w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == len(side)


@dataclass(frozen=True)
class ConflictPairing:
    """Perfect matching on edge ids.  pairs are (low, high), sorted."""

    pairs: tuple[tuple[int, int], ...]

    @cached_property
    def _partner(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for e, f in self.pairs:
            out[e] = f
            out[f] = e
        return out

    def partner(self, eid: int) -> int:
        return self._partner[eid]

    def is_conflict_free(self, edge_ids: Iterable[int]) -> bool:
        s = set(edge_ids)
        return all(self._partner[e] not in s for e in s)

    def violating_pair(self, edge_ids: Iterable[int]) -> Optional[tuple[int, int]]:
        """First matched pair fully inside the set, by low id; none if clean."""
        s = set(edge_ids)
        for e, f in self.pairs:
            if e in s and f in s:
                return (e, f)
        return None


def _normalize_pairs(pairs: Iterable[Sequence[int]]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((min(p), max(p)) for p in pairs))


@dataclass(frozen=True)
class Instance:
    """Graph + conflict pairing + optional rotation system.

    The embedding, when present, maps each vertex to the cyclic clockwise
    order of its incident edge ids.  Treat instances as immutable.
    """

    graph: Graph
    conflicts: ConflictPairing
    embedding: Optional[dict[str, tuple[int, ...]]] = None
    name: str = ""

    @property
    def is_connected(self) -> bool:
        return self.graph.is_connected


@dataclass(frozen=True)
class Cut:
    """A verified conflict-free cut.

    side_a and side_b partition the vertices; edge_ids is exactly the set of
    edges with one end on each side.  side_a is the smaller side, ties broken
    toward the side holding the smallest vertex label.
    """

    edge_ids: frozenset[int]
    side_a: frozenset[str]
    side_b: frozenset[str]

    def sorted_edges(self) -> tuple[int, ...]:
        return tuple(sorted(self.edge_ids))


@dataclass(frozen=True)
class CutRejection:
    """Why an edge set is not a conflict-free cut.

    reason is "still connected" or "contains conflicting pair"; pair carries
    the offending matched pair in the latter case.
    """

    reason: str
    pair: Optional[tuple[int, int]] = None

    def __str__(self) -> str:
        if self.pair is not None:
            return f"{self.reason} ({self.pair[0]}, {self.pair[1]})"
        return self.reason


@dataclass(frozen=True)
class ValidationReport:
    connected: bool
    simple: bool
    one_regular_conflicts: bool
    max_degree: int
    regular_k: Optional[int]
    degeneracy: int
    degeneracy_order: tuple[str, ...]
    edge_vertex_ratio: Fraction
    edges_below_twice_vertices: bool


def build_instance(
    vertices: Iterable[str],
    edges: Iterable[Sequence],
    conflict_pairs: Iterable[Sequence[int]],
    embedding: Optional[Mapping[str, Sequence[int]]] = None,
    name: str = "",
) -> Instance:
    """Validate and assemble an instance.

    edges are (id, end_a, end_b) triples; ids must be exactly 0..m-1.
    conflict_pairs must be a perfect matching on the edge ids.  A
    disconnected graph is accepted (validation reports it); structural
    defects raise ValueError.
    """
    vs = tuple(str(v) for v in vertices)
    if not vs:
        raise ValueError("instance needs at least one vertex")
    if len(set(vs)) != len(vs):
        raise ValueError("duplicate vertex label")
    vset = set(vs)

    raw = [(int(e[0]), str(e[1]), str(e[2])) for e in edges]
    raw.sort()
    ids = [e[0] for e in raw]
    if ids != list(range(len(raw))):
        raise ValueError("edge ids must be exactly 0..m-1 with no duplicates")
    for eid, a, b in raw:
        if a == b:
            raise ValueError(f"edge {eid} is a self-loop at {a!r}")
        if a not in vset or b not in vset:
            raise ValueError(f"edge {eid} references an unknown vertex")

    m = len(raw)
    pairs = _normalize_pairs(conflict_pairs)
    covered: set[int] = set()
    for e, f in pairs:
        if e == f:
            raise ValueError(f"conflict pair ({e}, {f}) repeats an edge")
        for x in (e, f):
            if not 0 <= x < m:
                raise ValueError(f"conflict pair references unknown edge {x}")
            if x in covered:
                raise ValueError(f"edge {x} appears in more than one conflict pair")
            covered.add(x)
    if len(covered) != m:
        raise ValueError("conflict pairs must cover every edge exactly once")

    graph = Graph(vertices=vs, edges=tuple(raw))

    emb: Optional[dict[str, tuple[int, ...]]] = None
    if embedding is not None:
        emb = {}
        for v, rot in embedding.items():
            if v not in vset:
                raise ValueError(f"embedding references unknown vertex {v!r}")
            emb[v] = tuple(int(e) for e in rot)
        for v in vs:
            rot = emb.setdefault(v, ())
            if sorted(rot) != list(graph.incident(v)):
                raise ValueError(
                    f"rotation at {v!r} does not list its incident edges exactly once"
                )

    return Instance(graph=graph, conflicts=ConflictPairing(pairs), embedding=emb, name=name)


def _degeneracy(graph: Graph) -> tuple[int, tuple[str, ...]]:
    """Greedy min-degree peeling; ties to the smallest label.

    Returns (degeneracy, removal order).  The max degree seen at removal
    time over the whole peel equals the degeneracy.
    """
    deg = {v: graph.degree(v) for v in graph.vertices}
    # adjacency with multiplicity; peeling only needs degree bookkeeping
    nbrs: dict[str, list[str]] = {v: [] for v in graph.vertices}
    for _, a, b in graph.edges:
        nbrs[a].append(b)
        nbrs[b].append(a)
    alive = set(graph.vertices)
    order = []
    k = 0
    while alive:
        v = min(alive, key=lambda u: (deg[u], u))
        k = max(k, deg[v])
        order.append(v)
        alive.remove(v)
        for w in nbrs[v]:
            if w in alive:
                deg[w] -= 1
    return k, tuple(order)


def validate_instance(instance: Instance) -> ValidationReport:
    """Structural report: connectivity, simplicity, regularity, degeneracy
    and the edge count test |E| < 2|V|."""
    g = instance.graph
    degs = [g.degree(v) for v in g.vertices]
    max_deg = max(degs) if degs else 0
    regular_k = degs[0] if degs and all(d == degs[0] for d in degs) else None
    degeneracy, order = _degeneracy(g)
    n, m = len(g.vertices), len(g.edges)
    return ValidationReport(
        connected=g.is_connected,
        simple=g.is_simple,
        one_regular_conflicts=True,  # enforced at construction
        max_degree=max_deg,
        regular_k=regular_k,
        degeneracy=degeneracy,
        degeneracy_order=order,
        edge_vertex_ratio=Fraction(m, n),
        edges_below_twice_vertices=m < 2 * n,
    )


def canonical_cut(instance: Instance, side: frozenset[str]) -> Cut:
    """Cut induced by a vertex bipartition, with canonical side naming."""
    g = instance.graph
    other = g.vertex_set - side
    a, b = side, other
    if len(b) < len(a) or (len(b) == len(a) and min(b) < min(a)):
        a, b = b, a
    return Cut(edge_ids=g.crossing_edges(a), side_a=a, side_b=b)


def verify_cut(instance: Instance, edge_ids: Iterable[int]) -> Cut | CutRejection:
    """Check an edge set against the cut definition.

    Accepts when the set is conflict-free and its removal disconnects the
    graph.  The witness bipartition is the smallest component of the pruned
    graph (ties toward the smallest label) versus everything else, and the
    returned edge_ids are that bipartition's crossing set, a subset of the
    input that is itself a conflict-free cut.
    """
    g = instance.graph
    f = frozenset(int(e) for e in edge_ids)
    for e in f:
        if not 0 <= e < len(g.edges):
            raise ValueError(f"unknown edge id {e}")
    bad = instance.conflicts.violating_pair(f)
    if bad is not None:
        return CutRejection(reason="contains conflicting pair", pair=bad)
    comps = g.components(removed_edges=f)
    if len(comps) < 2:
        return CutRejection(reason="still connected")
    smallest = min(comps, key=lambda c: (len(c), min(c)))
    return canonical_cut(instance, smallest)


# ---------------------------------------------------------------------------
# serialization

def instance_to_json(instance: Instance) -> str:
    g = instance.graph
    doc = {
        "name": instance.name,
        "vertices": list(g.vertices),
        "edges": [{"id": eid, "ends": [a, b]} for eid, a, b in g.edges],
        "conflicts": [list(p) for p in instance.conflicts.pairs],
        "embedding": (
            {v: list(rot) for v, rot in instance.embedding.items()}
            if instance.embedding is not None
            else None
        ),
    }
    return json.dumps(doc, indent=2) + "\n"


def instance_from_json(text: str) -> Instance:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ValueError("instance document must be a JSON object")
    for key in ("vertices", "edges", "conflicts"):
        if key not in doc:
            raise ValueError(f"instance document is missing {key!r}")
    edges = []
    for entry in doc["edges"]:
        try:
            edges.append((entry["id"], entry["ends"][0], entry["ends"][1]))
        except (TypeError, KeyError, IndexError) as exc:
            raise ValueError(f"malformed edge entry {entry!r}") from exc
    return build_instance(
        vertices=doc["vertices"],
        edges=edges,
        conflict_pairs=doc["conflicts"],
        embedding=doc.get("embedding"),
        name=str(doc.get("name", "")),
    )


def instance_to_dot(instance: Instance) -> str:
    """Graphviz text; each edge carries its id and conflict partner id."""
    lines = [f'graph "{instance.name or "instance"}" {{']
    for v in instance.graph.vertices:
        lines.append(f'  "{v}";')
    for eid, a, b in instance.graph.edges:
        partner = instance.conflicts.partner(eid)
        lines.append(f'  "{a}" -- "{b}" [label="{eid}", conflict={partner}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
