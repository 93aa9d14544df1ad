"""Cycles of a planar instance are the minimal cuts of its dual.

The prism P_8 (two 4-cycles joined by rungs) is embedded in the plane, so
its simple cycles correspond one-to-one with the minimal cuts of its planar
dual, as edge-id sets.  Conflicts ride along unchanged: under a shared
pairing the conflict-free survivors match on both sides.  A pairing found
by search kills every cycle at once, and the dual inherits uncuttability.
"""

from cfcut import (
    build_instance,
    count_cf_cycles,
    enumerate_minimal_cf_cuts,
    find_cf_cycle,
    gen_prism,
    planar_dual,
    search_uncuttable_assignment,
    validate_instance,
)


def prism8(pairs):
    graph, rotation = gen_prism(4)
    return build_instance(
        graph.vertices, graph.edges, pairs, embedding=rotation, name="p8"
    )


# Start from a throwaway pairing: consecutive ids (0,1), (2,3), ...
filler = [(e, e + 1) for e in range(0, 12, 2)]
prism = prism8(filler)
dual = planar_dual(prism)
rd = validate_instance(dual)
print(f"dual of {prism.name}: {dual.name}, "
      f"{len(dual.graph.vertices)} vertices, {len(dual.graph.edges)} edges, "
      f"{rd.regular_k}-regular")

cf_cycle_total = count_cf_cycles(prism)
dual_cuts = enumerate_minimal_cf_cuts(dual)
print(f"\nunder the filler pairing:")
print(f"  conflict-free cycles in {prism.name}: {cf_cycle_total}")
print(f"  minimal conflict-free cuts in {dual.name}: "
      f"{len(dual_cuts.minimal_cuts)}")
cut_sets = sorted(sorted(c.edge_ids) for c in dual_cuts.minimal_cuts)
for s in cut_sets:
    print(f"    {s}")
first = find_cf_cycle(prism)
print(f"  first cf cycle: edges {sorted(first.edge_ids)} "
      f"through {first.vertices}")

# Now ask the search for a pairing under which no cycle is conflict-free.
pairing = search_uncuttable_assignment(prism.graph, "no-cf-cycle")
print(f"\nsearched pairing: {sorted(pairing.pairs)}")
hard = prism8(sorted(pairing.pairs))
print(f"  cf cycles in {prism.name}: {count_cf_cycles(hard)}")
hard_dual = planar_dual(hard)
res = enumerate_minimal_cf_cuts(hard_dual)
print(f"  cf cuts in {hard_dual.name}: {len(res.minimal_cuts)} "
      f"({res.bipartitions_checked} bipartitions checked)")
