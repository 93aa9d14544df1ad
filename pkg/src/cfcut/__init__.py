"""Conflict-free cuts on graphs whose edges are paired into conflicts.

The package models graphs with a perfect matching on their edge ids (every
edge has one conflict partner), searches them for conflict-free cuts and
cycles, generates the structured families where those searches have known
outcomes, compiles clean CNF formulas into cut-equivalent graphs, and moves
between planar instances and their duals.
"""

from .core import (
    ConflictPairing,
    Cut,
    CutRejection,
    Graph,
    Instance,
    ValidationReport,
    build_instance,
    canonical_cut,
    instance_from_json,
    instance_to_dot,
    instance_to_json,
    validate_instance,
    verify_cut,
)
from .families import (
    extend_with_degree2,
    gen_gadget_H,
    gen_gadget_family,
    gen_modified_square,
    gen_octahedron,
    gen_prism,
    gen_square_even_cycle,
)
from .planar import Embedding, Face, cf_faces, cffpt_scan, planar_dual, trace_faces
from .reduction import (
    ClauseGraph,
    CnfFormula,
    brute_force_sat,
    build_clause_graph,
    degenerate_reduction,
    parse_clean_cnf,
    planarize_reduction,
    solve_clause_graph,
)
from .solver import (
    CfCycle,
    CutEnumeration,
    SolverLimits,
    count_cf_cycles,
    enumerate_minimal_cf_cuts,
    find_cf_cut,
    find_cf_cycle,
    find_trivial_cf_cut,
    is_uncuttable,
    search_uncuttable_assignment,
)

__version__ = "0.1.0"
