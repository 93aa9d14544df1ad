"""From satisfiability to conflict-free cuts.

A clean formula has clauses of size 2 or 3 and every variable occurring
exactly three times, at most once per clause, with both polarities present;
after normalization each variable occurs positively twice and negatively
once.  Such a formula is compiled into a multigraph of parallel s-t paths,
one per clause, where conflict-free cuts exist exactly when the formula is
satisfiable, and the cut edges read back a satisfying assignment.

Structure of the clause graph: clause C becomes an s-t path with |C| base
edges, one per literal position.  For every pair of positions in C one
extra parallel copy of each is added and the two copies conflict, which
forces any conflict-free cut to cross at most one position per clause.  The
base edge of a negative occurrence is replaced by two parallel edges, one
conflicting with each of the variable's two positive base edges, which
makes contradictory literal choices collide.  Cutting a position severs
every parallel edge between its endpoints (its bundle), so bundles are the
unit in which cuts are read.

Two vertex-replacement steps postprocess the clause graph: one substitutes
a planar gadget (split squared cycle) for every vertex giving a simple
planar instance of maximum degree 5, the other substitutes a 3-degenerate
gadget family member giving a simple instance of degeneracy 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Optional

from .core import Cut, Instance, build_instance
from .families import (
    gadget_family_ports,
    gen_gadget_family,
    gen_modified_square,
    modified_square_outer_ports,
)
from .planar import trace_faces
from .solver import SolverLimits, find_cf_cut

__all__ = [
    "CnfFormula",
    "parse_clean_cnf",
    "formula_from_clauses",
    "ClauseGraph",
    "build_clause_graph",
    "solve_clause_graph",
    "brute_force_sat",
    "planarize_reduction",
    "degenerate_reduction",
    "clause_graph_sidecar",
]


@dataclass(frozen=True)
class CnfFormula:
    """CNF with cleanness analysis and polarity normalization.

    clauses hold the normalized literals (two positive and one negative
    occurrence per variable when clean); original_clauses the input as
    parsed.  flipped_vars lists variables whose polarity was inverted, so
    assignments for the normalized side map back by negating those entries.
    occurrence_table[v - 1] is the (positive, negative) occurrence count of
    variable v after normalization.
    """

    num_vars: int
    clauses: tuple[tuple[int, ...], ...]
    original_clauses: tuple[tuple[int, ...], ...]
    clean: bool
    violations: tuple[str, ...]
    occurrence_table: tuple[tuple[int, int], ...]
    flipped_vars: frozenset[int]


def _occurrences(num_vars: int, clauses) -> list[tuple[int, int]]:
    pos = [0] * (num_vars + 1)
    neg = [0] * (num_vars + 1)
    for clause in clauses:
        for lit in clause:
            if lit > 0:
                pos[lit] += 1
            else:
                neg[-lit] += 1
    return [(pos[v], neg[v]) for v in range(1, num_vars + 1)]


def formula_from_clauses(num_vars: int, clauses) -> CnfFormula:
    """Analyze cleanness and normalize polarities.

    Accepts any CNF; the result's clean flag and violations report whether
    the clause-graph construction applies.
    """
    original = tuple(tuple(int(l) for l in clause) for clause in clauses)
    for clause in original:
        for lit in clause:
            if lit == 0 or abs(lit) > num_vars:
                raise ValueError(f"literal {lit} out of range for {num_vars} variables")

    violations = []
    for idx, clause in enumerate(original, start=1):
        if len(clause) not in (2, 3):
            violations.append(f"clause {idx} has size {len(clause)}, want 2 or 3")
        seen_vars = [abs(l) for l in clause]
        if len(set(seen_vars)) != len(seen_vars):
            violations.append(f"clause {idx} mentions a variable twice")
    occ = _occurrences(num_vars, original)
    for v, (p, n) in enumerate(occ, start=1):
        if p + n != 3:
            violations.append(f"variable {v} occurs {p + n} times, want exactly 3")
        elif p == 0 or n == 0:
            violations.append(f"variable {v} lacks a {'positive' if p == 0 else 'negative'} occurrence")

    if violations:
        return CnfFormula(
            num_vars=num_vars,
            clauses=original,
            original_clauses=original,
            clean=False,
            violations=tuple(violations),
            occurrence_table=tuple(occ),
            flipped_vars=frozenset(),
        )

    flipped = frozenset(v for v, (p, _) in enumerate(occ, start=1) if p == 1)
    normalized = tuple(
        tuple(-lit if abs(lit) in flipped else lit for lit in clause)
        for clause in original
    )
    return CnfFormula(
        num_vars=num_vars,
        clauses=normalized,
        original_clauses=original,
        clean=True,
        violations=(),
        occurrence_table=tuple(_occurrences(num_vars, normalized)),
        flipped_vars=flipped,
    )


def parse_clean_cnf(text: str) -> CnfFormula:
    """Parse DIMACS CNF and run the cleanness analysis.

    Comment lines start with c; the p cnf header is required; clauses are
    zero-terminated and may span lines.  Syntax errors raise ValueError;
    non-clean formulas parse fine and carry their violations.
    """
    num_vars: Optional[int] = None
    declared_clauses: Optional[int] = None
    clauses: list[list[int]] = []
    current: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("c"):
            continue
        if stripped.startswith("p"):
            parts = stripped.split()
            if num_vars is not None or len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"line {lineno}: malformed problem line {stripped!r}")
            try:
                num_vars = int(parts[2])
                declared_clauses = int(parts[3])
            except ValueError as exc:
                raise ValueError(f"line {lineno}: malformed problem line {stripped!r}") from exc
            if num_vars < 0 or declared_clauses < 0:
                raise ValueError(f"line {lineno}: negative counts in problem line")
            continue
        if num_vars is None:
            raise ValueError(f"line {lineno}: clause before the p cnf header")
        for tok in stripped.split():
            try:
                lit = int(tok)
            except ValueError as exc:
                raise ValueError(f"line {lineno}: bad literal {tok!r}") from exc
            if lit == 0:
                clauses.append(current)
                current = []
            else:
                if abs(lit) > num_vars:
                    raise ValueError(f"line {lineno}: literal {lit} exceeds {num_vars} variables")
                current.append(lit)
    if num_vars is None:
        raise ValueError("missing p cnf header")
    if current:
        raise ValueError("last clause is not zero-terminated")
    if declared_clauses is not None and len(clauses) != declared_clauses:
        raise ValueError(
            f"header declares {declared_clauses} clauses but {len(clauses)} were given"
        )
    return formula_from_clauses(num_vars, clauses)


def brute_force_sat(formula: CnfFormula, max_vars: int = 24) -> Optional[dict[int, bool]]:
    """First satisfying assignment of the original clauses, or None.

    Assignments are scanned lexicographically: variable 1 varies slowest and
    false sorts before true, so all-false is tried first.  Independent of
    the clause-graph machinery; used as its ground-truth twin.
    """
    if formula.num_vars > max_vars:
        raise ValueError(f"{formula.num_vars} variables exceed the brute-force guard ({max_vars})")
    for bits in product((False, True), repeat=formula.num_vars):
        ok = True
        for clause in formula.original_clauses:
            if not any(bits[abs(l) - 1] == (l > 0) for l in clause):
                ok = False
                break
        if ok:
            return {v: bits[v - 1] for v in range(1, formula.num_vars + 1)}
    return None


# ---------------------------------------------------------------------------
# the clause graph


@dataclass(frozen=True)
class ClauseGraph:
    """Clause graph of a clean formula plus the maps needed to read cuts.

    literal_edge_map: (clause index, position) -> base edge id (for a
    negative occurrence, the lower of its two replacement ids).
    copy_map: base edge id -> ids of its pair-enforcing parallel copies.
    negative_pair_map: variable -> its (lower, higher) replacement edge ids.
    segment_ends: (clause index, position) -> that bundle's two vertices.
    """

    formula: CnfFormula
    instance: Instance
    s: str
    t: str
    literal_edge_map: dict[tuple[int, int], int]
    copy_map: dict[int, tuple[int, ...]]
    negative_pair_map: dict[int, tuple[int, int]]
    segment_ends: dict[tuple[int, int], tuple[str, str]]

    def bundle(self, clause_idx: int, position: int) -> frozenset[int]:
        """All parallel edges of one literal's segment."""
        base = self.literal_edge_map[(clause_idx, position)]
        ids = {base, *self.copy_map[base]}
        lit = self.formula.clauses[clause_idx][position]
        if lit < 0:
            ids.add(self.negative_pair_map[-lit][1])
        return frozenset(ids)


def build_clause_graph(formula: CnfFormula) -> ClauseGraph:
    """Compile a clean formula into its clause graph.

    One s-t path per clause (paths share only s and t), pairwise conflicting
    parallel copies within each clause, and a two-edge replacement for each
    negative occurrence wired against the variable's positive occurrences.
    The instance carries the standard nested-arc embedding.
    """
    if not formula.clean:
        raise ValueError(
            "formula is not clean: " + "; ".join(formula.violations[:3])
        )
    clauses = formula.clauses
    vertices = ["s", "t"]
    points: list[list[str]] = []
    for ci, clause in enumerate(clauses, start=1):
        mids = [f"c{ci}m{p}" for p in range(1, len(clause))]
        vertices.extend(mids)
        points.append(["s", *mids, "t"])

    edges: list[tuple[int, str, str]] = []
    conflicts: list[tuple[int, int]] = []
    literal_edge_map: dict[tuple[int, int], int] = {}
    copy_map: dict[int, list[int]] = {}
    negative_pair_map: dict[int, tuple[int, int]] = {}
    segment_ends: dict[tuple[int, int], tuple[str, str]] = {}
    pos_bases: dict[int, list[int]] = {}

    def add_edge(a: str, b: str) -> int:
        eid = len(edges)
        edges.append((eid, a, b))
        return eid

    for ci, clause in enumerate(clauses):
        pts = points[ci]
        for pos, lit in enumerate(clause):
            a, b = pts[pos], pts[pos + 1]
            segment_ends[(ci, pos)] = (a, b)
            if lit > 0:
                base = add_edge(a, b)
                pos_bases.setdefault(lit, []).append(base)
            else:
                lo = add_edge(a, b)
                hi = add_edge(a, b)
                negative_pair_map[-lit] = (lo, hi)
                base = lo
            literal_edge_map[(ci, pos)] = base
            copy_map[base] = []
        for p1, p2 in combinations(range(len(clause)), 2):
            c1 = add_edge(*segment_ends[(ci, p1)])
            c2 = add_edge(*segment_ends[(ci, p2)])
            conflicts.append((c1, c2))
            copy_map[literal_edge_map[(ci, p1)]].append(c1)
            copy_map[literal_edge_map[(ci, p2)]].append(c2)

    for var in range(1, formula.num_vars + 1):
        first, second = pos_bases[var]
        lo, hi = negative_pair_map[var]
        conflicts.append((first, lo))
        conflicts.append((second, hi))

    # nested-arc rotations: clause strips run left to right below the s-t
    # axis, arcs within a segment are ordered by id
    def seg_ids(ci: int, pos: int) -> list[int]:
        base = literal_edge_map[(ci, pos)]
        lit = clauses[ci][pos]
        ids = [base, *copy_map[base]]
        if lit < 0:
            ids.append(negative_pair_map[-lit][1])
        return sorted(ids)

    rotation: dict[str, list[int]] = {}
    rotation["s"] = [e for ci in range(len(clauses)) for e in seg_ids(ci, 0)]
    rotation["t"] = [
        e
        for ci in reversed(range(len(clauses)))
        for e in reversed(seg_ids(ci, len(clauses[ci]) - 1))
    ]
    for ci, clause in enumerate(clauses):
        for p in range(1, len(clause)):
            rotation[f"c{ci + 1}m{p}"] = list(seg_ids(ci, p)) + list(
                reversed(seg_ids(ci, p - 1))
            )

    instance = build_instance(
        vertices, edges, conflicts, embedding=rotation, name="clause-graph"
    )
    return ClauseGraph(
        formula=formula,
        instance=instance,
        s="s",
        t="t",
        literal_edge_map=literal_edge_map,
        copy_map={k: tuple(v) for k, v in copy_map.items()},
        negative_pair_map=negative_pair_map,
        segment_ends=segment_ends,
    )


def solve_clause_graph(
    cg: ClauseGraph,
    limits: Optional[SolverLimits] = None,
    workers: int = 1,
) -> Optional[tuple[Cut, dict[int, bool]]]:
    """Search the clause graph for a conflict-free cut and decode it.

    Returns None when no cut exists (the formula is unsatisfiable).
    Otherwise exactly one bundle per clause crosses the cut; crossing a
    positive occurrence sets its variable true, a negative one false, and
    unconstrained variables default to false.  The decoded assignment is
    mapped back through the parser's polarity flips and checked against the
    original clauses; any inconsistency aborts, since it would mean the
    construction itself is broken.
    """
    cut = find_cf_cut(cg.instance, limits=limits, workers=workers)
    if cut is None:
        return None
    side_a = cut.side_a
    formula = cg.formula
    decided: dict[int, bool] = {}
    for ci, clause in enumerate(formula.clauses):
        crossing = [
            pos
            for pos in range(len(clause))
            if (cg.segment_ends[(ci, pos)][0] in side_a)
            != (cg.segment_ends[(ci, pos)][1] in side_a)
        ]
        if len(crossing) != 1:
            raise RuntimeError(
                f"clause {ci + 1}: {len(crossing)} bundles cross the cut, want exactly 1"
            )
        lit = clause[crossing[0]]
        value = lit > 0
        var = abs(lit)
        if var in decided and decided[var] != value:
            raise RuntimeError(f"variable {var} is forced both ways by the cut")
        decided[var] = value
    assignment = {
        v: decided.get(v, False) for v in range(1, formula.num_vars + 1)
    }
    for ci, clause in enumerate(formula.clauses):
        if not any(assignment[abs(l)] == (l > 0) for l in clause):
            raise RuntimeError(f"decoded assignment misses clause {ci + 1}")
    original = {
        v: (not val if v in formula.flipped_vars else val)
        for v, val in assignment.items()
    }
    for ci, clause in enumerate(formula.original_clauses):
        if not any(original[abs(l)] == (l > 0) for l in clause):
            raise RuntimeError(f"flip mapping misses original clause {ci + 1}")
    return cut, original


def clause_graph_sidecar(cg: ClauseGraph) -> dict:
    """JSON-ready companion map: which edge ids make up each literal bundle."""
    return {
        "s": cg.s,
        "t": cg.t,
        "clauses": [
            {
                "clause": ci + 1,
                "literals": [
                    {
                        "position": pos + 1,
                        "literal": lit,
                        "bundle": sorted(cg.bundle(ci, pos)),
                    }
                    for pos, lit in enumerate(clause)
                ],
            }
            for ci, clause in enumerate(cg.formula.clauses)
        ],
        "negative_pairs": {
            str(var): list(pair) for var, pair in sorted(cg.negative_pair_map.items())
        },
    }


# ---------------------------------------------------------------------------
# vertex replacement


def _compose(
    cg: ClauseGraph,
    gadget: Instance,
    ports: tuple[str, ...],
    insert_after: Optional[dict[str, int]],
    name: str,
) -> Instance:
    """Replace every clause-graph vertex by a copy of the gadget.

    Each vertex's incident edges are distributed injectively over the
    gadget's ports; with an embedding, edges are taken in rotation order and
    the connection edge enters the port's rotation right after the edge
    insert_after[port], which keeps the composed rotation system planar.
    """
    g = cg.instance.graph
    gg = gadget.graph
    n_internal = len(gg.edges)
    vertices: list[str] = []
    edges: list[tuple[int, str, str]] = []
    conflicts: list[tuple[int, int]] = []
    rotation: dict[str, list[int]] = {} if insert_after is not None else None

    offsets: dict[str, int] = {}
    for v in g.vertices:
        offsets[v] = len(edges)
        for w in gg.vertices:
            vertices.append(f"{v}/{w}")
        for eid, a, b in gg.edges:
            edges.append((len(edges), f"{v}/{a}", f"{v}/{b}"))
        for e, f in gadget.conflicts.pairs:
            conflicts.append((offsets[v] + e, offsets[v] + f))
        if rotation is not None:
            for w, rot in gadget.embedding.items():
                rotation[f"{v}/{w}"] = [offsets[v] + e for e in rot]

    conn_base = len(edges)
    port_of: dict[tuple[str, int], str] = {}
    for v in g.vertices:
        incident = (
            list(cg.instance.embedding[v]) if insert_after is not None else list(g.incident(v))
        )
        if len(incident) > len(ports):
            raise ValueError(
                f"vertex {v} has degree {len(incident)} but the gadget offers "
                f"only {len(ports)} ports; enlarge the gadget"
            )
        for k, eid in enumerate(incident):
            port_of[(v, eid)] = ports[k]
    for eid, a, b in g.edges:
        new_a = f"{a}/{port_of[(a, eid)]}"
        new_b = f"{b}/{port_of[(b, eid)]}"
        edges.append((conn_base + eid, new_a, new_b))
    for e, f in cg.instance.conflicts.pairs:
        conflicts.append((conn_base + e, conn_base + f))

    if rotation is not None:
        for (v, eid), port in port_of.items():
            rot = rotation[f"{v}/{port}"]
            anchor = offsets[v] + insert_after[port]
            rot.insert(rot.index(anchor) + 1, conn_base + eid)

    return build_instance(vertices, edges, conflicts, embedding=rotation, name=name)


def _outer_face_anchors(gadget: Instance, ports: tuple[str, ...]) -> dict[str, int]:
    """For each port, the rotation entry after which an outward edge fits.

    The outer face is located as the unique face whose vertex walk is
    exactly the port cycle; the walk's incoming edge at each port marks the
    slot that faces the unbounded region.
    """
    emb = trace_faces(gadget)
    matches = [
        f for f in emb.faces if frozenset(f.boundary_vertices) == frozenset(ports)
        and len(f.boundary_vertices) == len(ports)
    ]
    if len(matches) != 1:
        raise RuntimeError(f"expected one outer face on the port cycle, found {len(matches)}")
    outer = matches[0]
    anchors: dict[str, int] = {}
    walk_v = outer.boundary_vertices
    walk_e = outer.boundary_edges
    for k, w in enumerate(walk_v):
        anchors[w] = walk_e[k - 1]  # edge arriving at w along the face walk
    return anchors


def planarize_reduction(cg: ClauseGraph, t_override: Optional[int] = None) -> Instance:
    """Planar, simple, max-degree-5 instance equivalent to the clause graph.

    Every vertex is replaced by a split squared cycle on 2t + 4 vertices
    (t = 4m by default, m the clause count), whose outer face offers t + 2
    degree-4 attachment ports; incident edges attach in rotation order, so
    the composed rotation system stays planar.  Conflict-free cuts correspond
    across the substitution because each gadget copy is itself uncuttable.
    """
    m = len(cg.formula.clauses)
    t = 4 * m if t_override is None else t_override
    if t < 6:
        raise ValueError(f"gadget parameter t={t} is too small; need t >= 6")
    max_deg = max(cg.instance.graph.degree(v) for v in cg.instance.graph.vertices)
    if t + 2 < max_deg:
        raise ValueError(
            f"gadget parameter t={t} offers {t + 2} ports, but the clause graph "
            f"has maximum degree {max_deg}"
        )
    gadget = gen_modified_square(t, 0, 6)
    ports = modified_square_outer_ports(t, 0, 6)
    anchors = _outer_face_anchors(gadget, ports)
    out = _compose(
        cg, gadget, ports, anchors, name=f"planarized-m{m}-t{t}"
    )
    trace_faces(out)  # abort loudly if the composition broke planarity
    return out


def degenerate_reduction(cg: ClauseGraph, i_override: Optional[int] = None) -> Instance:
    """Simple 3-degenerate instance equivalent to the clause graph.

    Every vertex becomes a gadget-family member with 13 + 7i vertices
    (i = ceil(4m / 7) by default); incident edges spread injectively over
    its degree-4 and degree-2 vertices, one extra edge each, keeping the
    maximum degree at 5 and the degeneracy at 3.
    """
    m = len(cg.formula.clauses)
    i = max(1, math.ceil(4 * m / 7)) if i_override is None else i_override
    if i < 1:
        raise ValueError(f"gadget index i={i} must be at least 1")
    gadget = gen_gadget_family(i)
    ports = gadget_family_ports(gadget)
    max_deg = max(cg.instance.graph.degree(v) for v in cg.instance.graph.vertices)
    if len(ports) < max_deg:
        raise ValueError(
            f"gadget index i={i} offers {len(ports)} ports, but the clause graph "
            f"has maximum degree {max_deg}"
        )
    return _compose(cg, gadget, ports, None, name=f"degenerate-m{m}-i{i}")
