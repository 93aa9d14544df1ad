"""The octahedron with a searched conflict pairing has no conflict-free cut.

Walks through the smallest uncuttable instance in the package: build it,
validate its shape, scan every bipartition, then look at its faces.
"""

from cfcut import (
    cf_faces,
    cffpt_scan,
    find_cf_cut,
    gen_octahedron,
    trace_faces,
    validate_instance,
)
from cfcut.solver import bipartition_count

inst = gen_octahedron()
g = inst.graph

print("instance:", inst.name)
print(f"  {len(g.vertices)} vertices, {len(g.edges)} edges")

report = validate_instance(inst)
print(f"  simple={report.simple} connected={report.connected} "
      f"regular_k={report.regular_k}")
print("  conflict pairing:", sorted(inst.conflicts.pairs))

# Every edge has a conflict partner, and the pairing was chosen so that
# every one of the 2^5 - 1 = 31 bipartitions has a conflicting crossing set.
cut = find_cf_cut(inst)
print(f"\nscanned {bipartition_count(inst)} bipartitions ->",
      "UNCUTTABLE" if cut is None else cut)

# The embedding tells the same story face by face.  Eight triangular faces,
# four of them conflict-free.
emb = trace_faces(inst)
free = cf_faces(inst)
print(f"\nembedding: {len(emb.faces)} faces, {len(free)} conflict-free")
for face in free:
    print("  cf face:", sorted(face.edge_set))

# From any conflict-free face, scan for triangles that share exactly one
# boundary edge and whose other two edges are conflict partners.  On the
# octahedron each conflict-free face has exactly one such partner triangle.
print()
for face in free:
    for other, shared in cffpt_scan(inst, face):
        print(f"face {sorted(face.edge_set)} -> partner triangle "
              f"{sorted(other.edge_set)} sharing edge {shared}")
