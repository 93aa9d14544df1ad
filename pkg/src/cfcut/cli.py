"""Command line front end.

Exit codes: 0 for success (cut found, structures valid, pairing found),
1 for a negative verdict (uncuttable, unsatisfiable, invalid cut, no
pairing), 2 for usage or input errors.  Output is line oriented and stable,
so runs can be diffed.  The search guards can be widened per invocation
with flags or with the CFCUT_MAX_VERTICES, CFCUT_MAX_MATCHING_EDGES,
CFCUT_MAX_CYCLE_EDGES and CFCUT_WORKERS environment variables.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import families, reduction, solver
from .core import (
    Cut,
    CutRejection,
    build_instance,
    instance_from_json,
    instance_to_dot,
    instance_to_json,
    validate_instance,
    verify_cut,
)
from .planar import planar_dual, trace_faces

__all__ = ["run", "main"]


def _env_int(name: str) -> Optional[int]:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"environment variable {name} must be an integer, got {raw!r}")


def _limits(args: argparse.Namespace) -> solver.SolverLimits:
    base = solver.DEFAULT_LIMITS
    max_vertices = getattr(args, "max_vertices", None)
    if max_vertices is None:
        max_vertices = _env_int("CFCUT_MAX_VERTICES")
    max_matching = _env_int("CFCUT_MAX_MATCHING_EDGES")
    max_cycle = _env_int("CFCUT_MAX_CYCLE_EDGES")
    return solver.SolverLimits(
        max_vertices=max_vertices if max_vertices is not None else base.max_vertices,
        max_matching_edges=max_matching if max_matching is not None else base.max_matching_edges,
        max_cycle_edges=max_cycle if max_cycle is not None else base.max_cycle_edges,
    )


def _workers(args: argparse.Namespace) -> int:
    w = getattr(args, "workers", None)
    if w is None:
        w = _env_int("CFCUT_WORKERS")
    return max(1, w) if w is not None else 1


def _load(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}")
    return instance_from_json(text)


def _write_instance(instance, path: str, fmt: str) -> None:
    text = instance_to_dot(instance) if fmt == "dot" else instance_to_json(instance)
    Path(path).write_text(text)


def _ids(values) -> str:
    return ",".join(str(v) for v in sorted(values))


def _labels(values) -> str:
    return ",".join(sorted(values))


def _print_cut(cut: Cut) -> None:
    print(f"CUT edges={_ids(cut.edge_ids)}")
    print(f"CUT side_a={_labels(cut.side_a)}")
    print(f"CUT side_b={_labels(cut.side_b)}")


# ---------------------------------------------------------------------------
# subcommands


def _cmd_generate(args) -> int:
    fam = args.family
    if fam == "square":
        inst = families.gen_square_even_cycle(args.n)
    elif fam == "modified-square":
        if args.i is None or args.j is None:
            raise ValueError("modified-square needs --i and --j")
        inst = families.gen_modified_square(args.n, args.i, args.j)
    elif fam == "gadget-h":
        inst = families.gen_gadget_H()
    elif fam == "gadget-family":
        inst = families.gen_gadget_family(args.i if args.i is not None else 1)
    elif fam == "prism":
        graph, rotation = families.gen_prism(args.length)
        if len(graph.edges) % 2:
            raise ValueError(
                "odd edge count admits no conflict pairing; use an even --len"
            )
        # filler pairing only; search-conflicts finds interesting ones
        pairs = [(e, e + 1) for e in range(0, len(graph.edges), 2)]
        inst = build_instance(
            graph.vertices,
            graph.edges,
            pairs,
            embedding=rotation,
            name=f"prism-{len(graph.vertices)}",
        )
    elif fam == "octahedron":
        inst = families.gen_octahedron()
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown family {fam!r}")
    _write_instance(inst, args.output, args.format)
    g = inst.graph
    print(
        f"wrote {inst.name}: {len(g.vertices)} vertices, {len(g.edges)} edges -> {args.output}"
    )
    return 0


def _cmd_solve(args) -> int:
    inst = _load(args.file)
    limits = _limits(args)
    workers = _workers(args)
    if args.cycles:
        cyc = solver.find_cf_cycle(inst, limits=limits)
        total = solver.count_cf_cycles(inst, limits=limits)
        if cyc is None:
            print("NO CF-CYCLE")
            return 1
        print(f"CF-CYCLE vertices={' '.join(cyc.vertices)} edges={_ids(cyc.edge_ids)}")
        print(f"CF-CYCLES total={total}")
        return 0
    if args.enumerate:
        enum = solver.enumerate_minimal_cf_cuts(inst, limits=limits)
        if not enum.minimal_cuts:
            print(f"UNCUTTABLE ({enum.bipartitions_checked} bipartitions checked)")
            return 1
        print(
            f"MINIMAL CF-CUTS {len(enum.minimal_cuts)} "
            f"({enum.bipartitions_checked} bipartitions checked)"
        )
        for cut in enum.minimal_cuts:
            print(
                f"CUT edges={_ids(cut.edge_ids)} side_a={_labels(cut.side_a)} "
                f"side_b={_labels(cut.side_b)}"
            )
        return 0
    cut = solver.find_cf_cut(inst, limits=limits, workers=workers)
    if cut is None:
        print(f"UNCUTTABLE ({solver.bipartition_count(inst)} bipartitions checked)")
        return 1
    _print_cut(cut)
    return 0


def _cmd_verify(args) -> int:
    inst = _load(args.file)
    try:
        ids = [int(tok) for tok in args.cut.split(",") if tok.strip() != ""]
    except ValueError:
        raise ValueError(f"--cut wants comma-separated edge ids, got {args.cut!r}")
    result = verify_cut(inst, ids)
    if isinstance(result, CutRejection):
        print(f"INVALID CUT: {result}")
        return 1
    print("VALID CUT")
    _print_cut(result)
    return 0


def _cmd_check(args) -> int:
    inst = _load(args.file)
    report = validate_instance(inst)
    g = inst.graph

    def yn(flag: bool) -> str:
        return "yes" if flag else "no"

    print(f"name: {inst.name or '(unnamed)'}")
    print(f"vertices: {len(g.vertices)}")
    print(f"edges: {len(g.edges)}")
    print(f"connected: {yn(report.connected)}")
    print(f"simple: {yn(report.simple)}")
    print(f"conflicts 1-regular: {yn(report.one_regular_conflicts)}")
    print(f"max degree: {report.max_degree}")
    print(f"regular: {report.regular_k if report.regular_k is not None else 'no'}")
    print(f"degeneracy: {report.degeneracy}")
    print(f"degeneracy order: {' '.join(report.degeneracy_order)}")
    print(f"|E| < 2|V|: {yn(report.edges_below_twice_vertices)}")
    if inst.embedding is None:
        print("embedding: none")
    else:
        try:
            emb = trace_faces(inst)
            cf = sum(1 for f in emb.faces if f.is_cf)
            print(f"embedding: planar, {len(emb.faces)} faces, {cf} conflict-free")
        except ValueError as exc:
            print(f"embedding: invalid ({exc})")
    return 0


def _cmd_dual(args) -> int:
    inst = _load(args.file)
    dual = planar_dual(inst)
    _write_instance(dual, args.output, args.format)
    g = dual.graph
    print(
        f"wrote {dual.name}: {len(g.vertices)} vertices, {len(g.edges)} edges -> {args.output}"
    )
    return 0


def _cmd_reduce(args) -> int:
    try:
        text = Path(args.formula).read_text()
    except OSError as exc:
        raise ValueError(f"cannot read {args.formula}: {exc}")
    formula = reduction.parse_clean_cnf(text)
    if not formula.clean:
        for v in formula.violations:
            print(f"not clean: {v}", file=sys.stderr)
        return 2
    cg = reduction.build_clause_graph(formula)
    if args.mode == "multigraph":
        out_inst = cg.instance
    elif args.mode == "planar":
        out_inst = reduction.planarize_reduction(cg, t_override=args.t)
    else:
        out_inst = reduction.degenerate_reduction(cg, i_override=args.i)
    g = out_inst.graph
    print(f"{out_inst.name}: {len(g.vertices)} vertices, {len(g.edges)} edges")
    if args.output:
        _write_instance(out_inst, args.output, args.format)
        print(f"wrote -> {args.output}")
        if args.mode == "multigraph":
            sidecar_path = str(Path(args.output).with_suffix("")) + ".sidecar.json"
            Path(sidecar_path).write_text(
                json.dumps(reduction.clause_graph_sidecar(cg), indent=2) + "\n"
            )
            print(f"wrote bundle map -> {sidecar_path}")
    if args.solve:
        if args.mode != "multigraph":
            raise ValueError("--solve applies to --mode multigraph only")
        res = reduction.solve_clause_graph(
            cg, limits=_limits(args), workers=_workers(args)
        )
        if res is None:
            print("UNSATISFIABLE")
            return 1
        cut, assignment = res
        pretty = " ".join(
            f"x{v}={'true' if val else 'false'}" for v, val in sorted(assignment.items())
        )
        print("SATISFIABLE")
        print(f"ASSIGNMENT {pretty}")
        _print_cut(cut)
    return 0


def _cmd_search_conflicts(args) -> int:
    inst = _load(args.file)
    target = {"no-cut": "no-cf-cut", "no-cycle": "no-cf-cycle"}[args.target]
    pairing = solver.search_uncuttable_assignment(
        inst.graph, target, limits=_limits(args)
    )
    if pairing is None:
        print("NO PAIRING ACHIEVES TARGET")
        return 1
    print(f"PAIRING {json.dumps([list(p) for p in pairing.pairs])}")
    return 0


# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfcut",
        description="conflict-free cuts on graphs with paired edge conflicts",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a family instance to a file")
    g.add_argument(
        "--family",
        required=True,
        choices=[
            "square",
            "modified-square",
            "gadget-h",
            "gadget-family",
            "prism",
            "octahedron",
        ],
    )
    g.add_argument("--n", type=int, default=6, help="half cycle length for squares")
    g.add_argument("--i", type=int, default=None, help="window start or family index")
    g.add_argument("--j", type=int, default=None, help="second window start")
    g.add_argument("--len", dest="length", type=int, default=4, help="prism half length")
    g.add_argument("-o", "--output", required=True)
    g.add_argument("--format", choices=["json", "dot"], default="json")
    g.set_defaults(func=_cmd_generate)

    s = sub.add_parser("solve", help="search an instance for conflict-free cuts")
    s.add_argument("file")
    s.add_argument("--enumerate", action="store_true", help="list all minimal cuts")
    s.add_argument("--cycles", action="store_true", help="search cycles instead of cuts")
    s.add_argument("--max-vertices", type=int, default=None)
    s.add_argument("--workers", type=int, default=None)
    s.set_defaults(func=_cmd_solve)

    v = sub.add_parser("verify", help="check a claimed cut")
    v.add_argument("file")
    v.add_argument("--cut", required=True, help="comma separated edge ids")
    v.set_defaults(func=_cmd_verify)

    c = sub.add_parser("check", help="validate and describe an instance file")
    c.add_argument("file")
    c.set_defaults(func=_cmd_check)

    d = sub.add_parser("dual", help="write the planar dual of an embedded instance")
    d.add_argument("file")
    d.add_argument("-o", "--output", required=True)
    d.add_argument("--format", choices=["json", "dot"], default="json")
    d.set_defaults(func=_cmd_dual)

    r = sub.add_parser("reduce", help="compile a clean DIMACS formula")
    r.add_argument("formula")
    r.add_argument("--mode", required=True, choices=["multigraph", "planar", "degenerate"])
    r.add_argument("-o", "--output", default=None)
    r.add_argument("--format", choices=["json", "dot"], default="json")
    r.add_argument("--solve", action="store_true")
    r.add_argument("--t", type=int, default=None, help="planar gadget size override")
    r.add_argument("--i", type=int, default=None, help="degenerate gadget index override")
    r.add_argument("--max-vertices", type=int, default=None)
    r.add_argument("--workers", type=int, default=None)
    r.set_defaults(func=_cmd_reduce)

    sc = sub.add_parser("search-conflicts", help="find a pairing defeating cuts or cycles")
    sc.add_argument("file")
    sc.add_argument("--target", required=True, choices=["no-cut", "no-cycle"])
    sc.add_argument("--max-vertices", type=int, default=None)
    sc.set_defaults(func=_cmd_search_conflicts)

    return parser


def run(argv: Sequence[str]) -> int:
    """Parse argv (without the program name) and execute; returns exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
