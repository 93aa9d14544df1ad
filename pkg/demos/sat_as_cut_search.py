"""Solving clean CNF formulas by cutting their clause graphs.

A clean formula uses each variable exactly three times, at most once per
clause, with both polarities present.  Its clause graph threads one s-t path
per clause, with parallel conflicting copies inside each clause and a
two-edge replacement for negative occurrences; a conflict-free cut then
picks exactly one satisfied literal per clause.
"""

from cfcut import (
    brute_force_sat,
    build_clause_graph,
    degenerate_reduction,
    parse_clean_cnf,
    planarize_reduction,
    solve_clause_graph,
    validate_instance,
)

DIMACS = """\
p cnf 3 4
1 -3 0
-2 3 0
-1 2 3 0
1 2 0
"""

formula = parse_clean_cnf(DIMACS)
print("clauses:", formula.original_clauses)
print("clean:", formula.clean, "| flipped during normalization:",
      sorted(formula.flipped_vars) or "none")

cg = build_clause_graph(formula)
g = cg.instance.graph
print(f"\nclause graph: {len(g.vertices)} vertices, {len(g.edges)} edges, "
      f"terminals {cg.s} -> {cg.t}")
for ci, clause in enumerate(formula.clauses):
    bundles = [sorted(cg.bundle(ci, p)) for p in range(len(clause))]
    print(f"  clause {ci + 1} {clause}: bundles {bundles}")

solved = solve_clause_graph(cg)
assert solved is not None
cut, assignment = solved
print(f"\ncut edges: {cut.sorted_edges()}")
print("assignment:", {v: assignment[v] for v in sorted(assignment)})
print("brute force agrees:", brute_force_sat(formula) is not None)

# An unsatisfiable clean formula needs at least five variables; its clause
# graph then admits no conflict-free cut at all.
UNSAT = """\
p cnf 5 7
4 5 0
-1 -3 0
1 -4 0
4 2 -5 0
-5 -2 0
3 -1 0
3 2 0
"""
hard = parse_clean_cnf(UNSAT)
print("\nunsat formula clean:", hard.clean)
print("solve ->", solve_clause_graph(build_clause_graph(hard)))
print("brute force ->", brute_force_sat(hard))

# The same clause graph can be recompiled into a simple planar instance of
# maximum degree 5, or into a 3-degenerate one, without changing the answer.
planar = planarize_reduction(cg)
rp = validate_instance(planar)
print(f"\n{planar.name}: {len(planar.graph.vertices)} vertices, "
      f"{len(planar.graph.edges)} edges, simple={rp.simple}, "
      f"max degree {rp.max_degree}")

degen = degenerate_reduction(cg)
rd = validate_instance(degen)
print(f"{degen.name}: {len(degen.graph.vertices)} vertices, "
      f"{len(degen.graph.edges)} edges, degeneracy {rd.degeneracy}")
