"""Independent brute-force reference implementations for the tests.

Everything here is written against the definitions alone, in plain Python
with no vectorization and no sharing of code paths with the package, so
agreement between the two routes is meaningful.  Only usable on small
inputs.

Functions taking a graph ignore conflicts; functions taking an instance
apply its conflict pairing.
"""

from __future__ import annotations

from itertools import combinations, permutations


def _adjacency(graph):
    adj = {v: [] for v in graph.vertices}
    for eid, a, b in graph.edges:
        adj[a].append((eid, b))
        adj[b].append((eid, a))
    return adj


def connected_without(graph, removed, within=None):
    """Is the subgraph on `within` (default all vertices) connected after
    dropping the given edge ids?"""
    verts = list(within) if within is not None else list(graph.vertices)
    if not verts:
        return False
    allowed = set(verts)
    adj = _adjacency(graph)
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        v = stack.pop()
        for eid, w in adj[v]:
            if eid in removed or w not in allowed:
                continue
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(allowed)


def components_without(graph, removed):
    adj = _adjacency(graph)
    remaining = set(graph.vertices)
    comps = []
    while remaining:
        start = min(remaining)
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for eid, w in adj[v]:
                if eid in removed or w not in remaining:
                    continue
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(frozenset(seen))
        remaining -= seen
    return comps


def is_conflict_free(instance, edge_ids):
    s = set(edge_ids)
    partner = {}
    for e, f in instance.conflicts.pairs:
        partner[e] = f
        partner[f] = e
    return all(partner[e] not in s for e in s)


def crossing(graph, side):
    return frozenset(
        eid for eid, a, b in graph.edges if (a in side) != (b in side)
    )


def iter_bipartitions(graph):
    """All (side_a, side_b) with the smallest vertex pinned to side_a, in the
    canonical scan order: side_a membership bitstrings ascending, i.e.
    side_b patterns descending."""
    order = sorted(graph.vertices)
    rest = order[1:]
    full = frozenset(order)
    for pattern in range((1 << len(rest)) - 1, 0, -1):
        # pattern bit k (MSB first) = rest[k] on side_b
        side_b = frozenset(
            rest[k] for k in range(len(rest)) if (pattern >> (len(rest) - 1 - k)) & 1
        )
        yield full - side_b, side_b


def first_cf_cut(instance):
    """Crossing set of the first bipartition (canonical order) whose crossing
    set is conflict-free, as (edge set, side_a, side_b); None if uncuttable."""
    for side_a, side_b in iter_bipartitions(instance.graph):
        cross = crossing(instance.graph, side_a)
        if is_conflict_free(instance, cross):
            return cross, side_a, side_b
    return None


def cf_cut_exists(instance):
    return first_cf_cut(instance) is not None


def all_cf_bipartitions(instance):
    out = []
    for side_a, side_b in iter_bipartitions(instance.graph):
        cross = crossing(instance.graph, side_a)
        if is_conflict_free(instance, cross):
            out.append((cross, side_a, side_b))
    return out


def minimal_cut_sets(graph):
    """Edge sets of all cuts with both sides connected, conflicts ignored."""
    out = set()
    for side_a, side_b in iter_bipartitions(graph):
        cross = crossing(graph, side_a)
        if connected_without(graph, cross, side_a) and connected_without(
            graph, cross, side_b
        ):
            out.add(cross)
    return out


def minimal_cf_cut_sets(instance):
    return {
        c for c in minimal_cut_sets(instance.graph) if is_conflict_free(instance, c)
    }


def simple_cycle_sets(graph):
    """Edge sets of all simple cycles, via cyclic vertex sequences.

    For each vertex subset, each arrangement starting at the minimum vertex
    with second < last is tested for being a closed walk.  Exponential;
    meant for graphs with at most 8 or so vertices.
    """
    eid_of = {}
    for eid, a, b in graph.edges:
        eid_of[frozenset((a, b))] = eid
    cycles = set()
    verts = sorted(graph.vertices)
    for k in range(3, len(verts) + 1):
        for subset in combinations(verts, k):
            base = subset[0]
            for perm in permutations(subset[1:]):
                if perm[0] > perm[-1]:
                    continue
                walk = (base,) + perm
                keys = [
                    frozenset((walk[x], walk[(x + 1) % k])) for x in range(k)
                ]
                if all(key in eid_of for key in keys):
                    cycles.add(frozenset(eid_of[key] for key in keys))
    return cycles


def cf_cycle_sets(instance):
    return {
        c for c in simple_cycle_sets(instance.graph) if is_conflict_free(instance, c)
    }


def all_pairings(edge_ids):
    """Every perfect matching on the ids, canonical enumeration order."""
    ids = sorted(edge_ids)
    if not ids:
        yield ()
        return
    first = ids[0]
    for k in range(1, len(ids)):
        rest = ids[1:k] + ids[k + 1:]
        for sub in all_pairings(rest):
            yield ((first, ids[k]),) + sub


def first_killing_pairing(graph, target):
    """First perfect matching (canonical order) putting a matched pair inside
    every target structure; None when no matching manages it."""
    if target == "no-cf-cycle":
        structures = simple_cycle_sets(graph)
    elif target == "no-cf-cut":
        structures = [
            crossing(graph, side_a) for side_a, _ in iter_bipartitions(graph)
        ]
    else:
        raise ValueError(target)
    for pairing in all_pairings(range(len(graph.edges))):
        if all(
            any(e in s and f in s for e, f in pairing) for s in structures
        ):
            return pairing
    return None


def satisfies(clauses, assignment):
    return all(any(assignment[abs(l)] == (l > 0) for l in cl) for cl in clauses)
