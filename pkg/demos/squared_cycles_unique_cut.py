"""Squares of even cycles have exactly one minimal conflict-free cut.

C_2n^2 joins each vertex of a 2n-cycle to its neighbors at distance one and
two.  Pairing each cycle edge with the chord that bypasses it leaves exactly
one way to cut the graph without taking a conflict pair: cross every cycle
edge and no chord, splitting the vertices into evens and odds.  Disturbing
the pairing on two far-apart windows destroys even that cut.
"""

from cfcut import enumerate_minimal_cf_cuts, find_cf_cut, gen_modified_square, gen_square_even_cycle

for n in range(3, 7):
    inst = gen_square_even_cycle(n)
    res = enumerate_minimal_cf_cuts(inst)
    print(f"{inst.name}: {len(inst.graph.vertices)} vertices, "
          f"{res.bipartitions_checked} bipartitions, "
          f"{len(res.minimal_cuts)} minimal cf-cut(s)")
    for cut in res.minimal_cuts:
        print(f"  edges {cut.sorted_edges()}")
        print(f"  side A {sorted(cut.side_a)}")
        print(f"  side B {sorted(cut.side_b)}")

# Rerouting the conflict partners inside two disjoint 5-edge windows (even
# starts, no shared positions mod 2n) kills the ring cut and everything else.
print()
n = 6
for i, j in [(0, 6), (2, 8), (4, 10)]:
    inst = gen_modified_square(n, i, j)
    verdict = "UNCUTTABLE" if find_cf_cut(inst) is None else "cuttable"
    print(f"{inst.name}: {verdict}")
