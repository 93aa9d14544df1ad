"""Exhaustive searches for conflict-free cuts, cycles and conflict pairings.

Why scanning bipartitions is enough: if removing an edge set F disconnects
the graph, then for any component C of the pruned graph the crossing set
E(C, rest) is contained in F, and any subset of a conflict-free set is
conflict-free.  So a conflict-free cut exists if and only if some vertex
bipartition has a conflict-free crossing set, and it suffices to scan the
2^(|V|-1) - 1 bipartitions that pin the first vertex to one side.

The same containment argument gives minimal cuts: peeling components of the
pruned graph shows every conflict-free cut contains one whose two sides both
induce connected subgraphs, so enumerating bipartitions with connected sides
finds every minimal cut.

The scan is vectorized with numpy over blocks of bipartition masks and can
be split across worker processes; results are reduced order-independently,
so the outcome does not depend on the worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .core import (
    ConflictPairing,
    Cut,
    Graph,
    Instance,
    canonical_cut,
)

__all__ = [
    "SolverLimits",
    "DEFAULT_LIMITS",
    "CfCycle",
    "CutEnumeration",
    "find_cf_cut",
    "is_uncuttable",
    "enumerate_minimal_cf_cuts",
    "find_trivial_cf_cut",
    "find_cf_cycle",
    "count_cf_cycles",
    "bipartition_count",
    "search_uncuttable_assignment",
]

_CHUNK = 1 << 17


@dataclass(frozen=True)
class SolverLimits:
    """Guards for the exponential searches.  Raise them deliberately."""

    max_vertices: int = 26
    max_matching_edges: int = 18
    max_cycle_edges: int = 40


DEFAULT_LIMITS = SolverLimits()


@dataclass(frozen=True)
class CfCycle:
    """Simple cycle whose edge set is conflict-free.

    vertices[i] connects to vertices[(i+1) % k] via edge_ids[i].
    """

    vertices: tuple[str, ...]
    edge_ids: tuple[int, ...]


@dataclass(frozen=True)
class CutEnumeration:
    minimal_cuts: tuple[Cut, ...]
    exhausted: bool
    bipartitions_checked: int


def bipartition_count(instance: Instance) -> int:
    """Number of bipartitions scanned: 2^(|V|-1) - 1."""
    return (1 << (len(instance.graph.vertices) - 1)) - 1


# ---------------------------------------------------------------------------
# bipartition scan machinery
#
# Vertices are taken in label order v0 < v1 < ... < v_{n-1}; v0 is pinned to
# side A.  Mask bit (n-1-i) says v_i lies on side B, and masks are scanned
# in descending numeric order, which visits side-A membership bitstrings in
# ascending lexicographic order.  The first conflict-free hit is therefore
# the lexicographically smallest side A.


def _scan_arrays(instance: Instance) -> tuple[np.ndarray, np.ndarray, np.ndarray, list[str]]:
    g = instance.graph
    order = sorted(g.vertices)
    n = len(order)
    shift = {v: n - 1 - i for i, v in enumerate(order)}
    shift[order[0]] = -1  # pinned, contributes bit 0 everywhere
    shifts_u = np.array([shift[a] for _, a, b in g.edges], dtype=np.int64)
    shifts_v = np.array([shift[b] for _, a, b in g.edges], dtype=np.int64)
    pairs = np.array(instance.conflicts.pairs, dtype=np.int64).reshape(-1, 2)
    return shifts_u, shifts_v, pairs, order


def _cf_flags(masks: np.ndarray, shifts_u: np.ndarray, shifts_v: np.ndarray,
              pairs: np.ndarray) -> np.ndarray:
    """Boolean array: does each mask's crossing set avoid all conflict pairs."""
    bits: dict[int, np.ndarray] = {}

    def bit(shift: int) -> np.ndarray:
        if shift < 0:
            return _ZERO_CACHE.setdefault(len(masks), np.zeros(len(masks), dtype=np.uint8))
        arr = bits.get(shift)
        if arr is None:
            arr = ((masks >> shift) & 1).astype(np.uint8)
            bits[shift] = arr
        return arr

    cross: dict[int, np.ndarray] = {}

    def crossing(eid: int) -> np.ndarray:
        arr = cross.get(eid)
        if arr is None:
            arr = bit(int(shifts_u[eid])) ^ bit(int(shifts_v[eid]))
            cross[eid] = arr
        return arr

    bad = np.zeros(len(masks), dtype=np.uint8)
    for e, f in pairs:
        bad |= crossing(int(e)) & crossing(int(f))
    return bad == 0


_ZERO_CACHE: dict[int, np.ndarray] = {}


def _first_cf_mask_in_range(args) -> Optional[int]:
    """Largest mask in [lo, hi] whose crossing set is conflict-free."""
    shifts_u, shifts_v, pairs, lo, hi = args
    top = hi
    while top >= lo:
        bottom = max(lo, top - _CHUNK + 1)
        masks = np.arange(top, bottom - 1, -1, dtype=np.int64)
        ok = _cf_flags(masks, shifts_u, shifts_v, pairs)
        if ok.any():
            return int(masks[int(np.argmax(ok))])
        top = bottom - 1
    return None


def _cf_masks_in_range(shifts_u, shifts_v, pairs, lo: int, hi: int) -> Iterator[int]:
    """All conflict-free masks in [lo, hi], descending."""
    top = hi
    while top >= lo:
        bottom = max(lo, top - _CHUNK + 1)
        masks = np.arange(top, bottom - 1, -1, dtype=np.int64)
        ok = _cf_flags(masks, shifts_u, shifts_v, pairs)
        for m in masks[ok]:
            yield int(m)
        top = bottom - 1


def _side_b_from_mask(mask: int, order: list[str]) -> frozenset[str]:
    n = len(order)
    return frozenset(order[i] for i in range(1, n) if (mask >> (n - 1 - i)) & 1)


def _check_cut_preconditions(instance: Instance, limits: SolverLimits) -> None:
    g = instance.graph
    if not g.is_connected:
        raise ValueError("cut search needs a connected instance")
    if len(g.vertices) > limits.max_vertices:
        raise ValueError(
            f"{len(g.vertices)} vertices exceed the bipartition guard "
            f"({limits.max_vertices}); pass larger SolverLimits to override"
        )


def find_cf_cut(
    instance: Instance,
    limits: Optional[SolverLimits] = None,
    workers: int = 1,
) -> Optional[Cut]:
    """First conflict-free cut, or None when the instance is uncuttable.

    The witness is canonical: among all bipartitions with a conflict-free
    crossing set it has the lexicographically smallest side A (as a vertex
    membership bitstring over sorted labels).  The worker count changes only
    the wall time, never the answer.
    """
    limits = limits or DEFAULT_LIMITS
    _check_cut_preconditions(instance, limits)
    shifts_u, shifts_v, pairs, order = _scan_arrays(instance)
    top = (1 << (len(order) - 1)) - 1
    if top < 1:
        return None

    hit: Optional[int] = None
    if workers <= 1 or top < (1 << 16):
        hit = _first_cf_mask_in_range((shifts_u, shifts_v, pairs, 1, top))
    else:
        blocks = []
        step = top // workers + 1
        hi = top
        while hi >= 1:
            lo = max(1, hi - step + 1)
            blocks.append((shifts_u, shifts_v, pairs, lo, hi))
            hi = lo - 1
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for res in pool.map(_first_cf_mask_in_range, blocks):
                if res is not None:
                    hit = res
                    break
    if hit is None:
        return None
    side_b = _side_b_from_mask(hit, order)
    return canonical_cut(instance, side_b)


def is_uncuttable(
    instance: Instance,
    limits: Optional[SolverLimits] = None,
    workers: int = 1,
) -> bool:
    """True when no conflict-free cut exists."""
    return find_cf_cut(instance, limits=limits, workers=workers) is None


def enumerate_minimal_cf_cuts(
    instance: Instance,
    limits: Optional[SolverLimits] = None,
) -> CutEnumeration:
    """All conflict-free cuts both of whose sides induce connected subgraphs.

    Each minimal cut is the crossing set of exactly one bipartition, so the
    scan finds each once.  Cuts are sorted by their edge id tuples.
    """
    limits = limits or DEFAULT_LIMITS
    _check_cut_preconditions(instance, limits)
    g = instance.graph
    shifts_u, shifts_v, pairs, order = _scan_arrays(instance)
    top = (1 << (len(order) - 1)) - 1
    cuts = []
    for mask in _cf_masks_in_range(shifts_u, shifts_v, pairs, 1, top):
        side_b = _side_b_from_mask(mask, order)
        side_a = g.vertex_set - side_b
        if g.induces_connected(side_a) and g.induces_connected(side_b):
            cuts.append(canonical_cut(instance, side_b))
    cuts.sort(key=lambda c: c.sorted_edges())
    return CutEnumeration(
        minimal_cuts=tuple(cuts),
        exhausted=True,
        bipartitions_checked=max(top, 0),
    )


def find_trivial_cf_cut(instance: Instance) -> Optional[tuple[str, Cut]]:
    """First vertex (label order) whose incident edges hold no conflict pair.

    Isolating such a vertex is a conflict-free cut.  Returns the vertex with
    the cut, or None when every vertex has two conflicting incident edges.
    """
    g = instance.graph
    if len(g.vertices) < 2:
        return None
    conflicts = instance.conflicts
    for v in sorted(g.vertices):
        inc = g.incident(v)
        if conflicts.is_conflict_free(inc):
            return v, canonical_cut(instance, frozenset({v}))
    return None


# ---------------------------------------------------------------------------
# simple cycles


def _simple_cycles(graph: Graph) -> Iterator[tuple[tuple[str, ...], tuple[int, ...]]]:
    """All simple cycles (length >= 3) of a simple graph, each exactly once.

    Canonical form: the walk starts at its smallest vertex and runs toward
    the smaller of that vertex's two cycle neighbors; roots and extensions
    are tried in label order, so the emission order is deterministic.
    """
    eid_of: dict[tuple[str, str], int] = {}
    for eid, a, b in graph.edges:
        key = (a, b) if a <= b else (b, a)
        eid_of[key] = eid
    adj: dict[str, list[str]] = {v: [] for v in graph.vertices}
    for _, a, b in graph.edges:
        adj[a].append(b)
        adj[b].append(a)
    for v in adj:
        adj[v].sort()

    def edge(a: str, b: str) -> int:
        return eid_of[(a, b) if a <= b else (b, a)]

    def extend(root: str, path: list[str], on_path: set[str]) -> Iterator[tuple[tuple[str, ...], tuple[int, ...]]]:
        v = path[-1]
        for w in adj[v]:
            if w == root and len(path) >= 3 and path[1] < path[-1]:
                verts = tuple(path)
                eids = tuple(
                    edge(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))
                )
                yield verts, eids
            elif w > root and w not in on_path:
                path.append(w)
                on_path.add(w)
                yield from extend(root, path, on_path)
                on_path.discard(w)
                path.pop()

    for root in sorted(graph.vertices):
        yield from extend(root, [root], {root})


def _check_cycle_preconditions(graph: Graph, limits: SolverLimits) -> None:
    if not graph.is_simple:
        raise ValueError("cycle search is defined for simple graphs only")
    if len(graph.edges) > limits.max_cycle_edges:
        raise ValueError(
            f"{len(graph.edges)} edges exceed the cycle guard "
            f"({limits.max_cycle_edges}); pass larger SolverLimits to override"
        )


def find_cf_cycle(
    instance: Instance,
    limits: Optional[SolverLimits] = None,
) -> Optional[CfCycle]:
    """First simple cycle whose edge set is conflict-free, or None."""
    limits = limits or DEFAULT_LIMITS
    _check_cycle_preconditions(instance.graph, limits)
    conflicts = instance.conflicts
    for verts, eids in _simple_cycles(instance.graph):
        if conflicts.is_conflict_free(eids):
            return CfCycle(vertices=verts, edge_ids=eids)
    return None


def count_cf_cycles(
    instance: Instance,
    limits: Optional[SolverLimits] = None,
) -> int:
    limits = limits or DEFAULT_LIMITS
    _check_cycle_preconditions(instance.graph, limits)
    conflicts = instance.conflicts
    return sum(
        1 for _, eids in _simple_cycles(instance.graph) if conflicts.is_conflict_free(eids)
    )


# ---------------------------------------------------------------------------
# searching for a conflict pairing that defeats every cut or cycle


def _cycle_masks(graph: Graph) -> list[int]:
    out = []
    for _, eids in _simple_cycles(graph):
        mask = 0
        for e in eids:
            mask |= 1 << e
        out.append(mask)
    return out


def _bipartition_crossing_masks(graph: Graph) -> list[int]:
    order = sorted(graph.vertices)
    n = len(order)
    out = []
    for mask in range(1, 1 << (n - 1)):
        side = frozenset(order[i] for i in range(1, n) if (mask >> (n - 1 - i)) & 1)
        emask = 0
        for e in graph.crossing_edges(side):
            emask |= 1 << e
        out.append(emask)
    return out


def search_uncuttable_assignment(
    graph: Graph,
    target: str,
    limits: Optional[SolverLimits] = None,
) -> Optional[ConflictPairing]:
    """First perfect matching on edge ids under which the target vanishes.

    target "no-cf-cut": every bipartition's crossing set must contain a
    matched pair (so no conflict-free cut survives).  target "no-cf-cycle":
    every simple cycle must contain a matched pair.  Matchings are tried in
    canonical order (the smallest unmatched id is paired with each larger id,
    ascending, recursively); the first success is returned, None when all
    (|E|-1)!! matchings fail.

    A branch is abandoned as soon as some target structure retains fewer
    than two unmatched edges while still lacking a matched pair, since it
    could never be covered later.  When every structure is already covered,
    the remaining edges are paired consecutively, which is exactly the first
    completion the plain enumeration would reach.
    """
    limits = limits or DEFAULT_LIMITS
    m = len(graph.edges)
    if m % 2 != 0:
        raise ValueError("odd edge count admits no perfect conflict pairing")
    if m > limits.max_matching_edges:
        raise ValueError(
            f"{m} edges exceed the matching guard ({limits.max_matching_edges}); "
            "pass larger SolverLimits to override"
        )
    if target == "no-cf-cycle":
        structures = _cycle_masks(graph)
    elif target == "no-cf-cut":
        if not graph.is_connected:
            raise ValueError("no-cf-cut search needs a connected graph")
        if len(graph.vertices) > limits.max_vertices:
            raise ValueError(
                f"{len(graph.vertices)} vertices exceed the bipartition guard "
                f"({limits.max_vertices})"
            )
        structures = _bipartition_crossing_masks(graph)
    else:
        raise ValueError(f"unknown target {target!r}")

    def rec(free: list[int], alive: list[int], acc: list[tuple[int, int]]) -> Optional[list[tuple[int, int]]]:
        if not alive:
            rest = list(free)
            return acc + [(rest[i], rest[i + 1]) for i in range(0, len(rest), 2)]
        if not free:
            return None
        free_mask = 0
        for e in free:
            free_mask |= 1 << e
        for s in alive:
            if (s & free_mask).bit_count() < 2:
                return None
        e = free[0]
        for idx in range(1, len(free)):
            f = free[idx]
            kill = (1 << e) | (1 << f)
            nxt_alive = [s for s in alive if (s & kill) != kill]
            nxt_free = free[1:idx] + free[idx + 1:]
            res = rec(nxt_free, nxt_alive, acc + [(e, f)])
            if res is not None:
                return res
        return None

    found = rec(list(range(m)), structures, [])
    if found is None:
        return None
    return ConflictPairing(pairs=tuple(sorted((min(p), max(p)) for p in found)))
