"""End-to-end command line behavior: exit codes and output lines."""

import json

from cfcut import instance_from_json
from cfcut.cli import run

RUNNING_DIMACS = "p cnf 3 4\n1 -3 0\n-2 3 0\n-1 2 3 0\n1 2 0\n"
UNSAT_DIMACS = "p cnf 5 7\n4 5 0\n-1 -3 0\n1 -4 0\n4 2 -5 0\n-5 -2 0\n3 -1 0\n3 2 0\n"
DIRTY_DIMACS = "p cnf 2 3\n1 2 0\n1 -2 0\n1 2 0\n"


def gen(tmp_path, capsys, *args):
    out = tmp_path / "inst.json"
    code = run(["generate", *args, "-o", str(out)])
    capsys.readouterr()
    assert code == 0
    return out


# ---------------------------------------------------------------------------
# generate


def test_generate_square(tmp_path, capsys):
    out = tmp_path / "sq.json"
    code = run(["generate", "--family", "square", "--n", "3", "-o", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    assert "wrote square-c6: 6 vertices, 12 edges" in captured.out
    inst = instance_from_json(out.read_text())
    assert inst.name == "square-c6"
    assert inst.embedding is not None


def test_generate_dot_format(tmp_path, capsys):
    out = tmp_path / "sq.dot"
    code = run(
        ["generate", "--family", "square", "--n", "3", "-o", str(out), "--format", "dot"]
    )
    capsys.readouterr()
    assert code == 0
    assert out.read_text().startswith('graph "square-c6"')


def test_generate_all_families(tmp_path, capsys):
    cases = [
        (["--family", "modified-square", "--n", "6", "--i", "0", "--j", "6"], "modified-square-c12-i0-j6"),
        (["--family", "gadget-h"], "gadget-h"),
        (["--family", "gadget-family", "--i", "2"], "gadget-family-2"),
        (["--family", "prism", "--len", "4"], "prism-8"),
        (["--family", "octahedron"], "octahedron"),
    ]
    for args, name in cases:
        out = gen(tmp_path, capsys, *args)
        assert instance_from_json(out.read_text()).name == name


def test_generate_modified_square_needs_windows(tmp_path, capsys):
    code = run(
        ["generate", "--family", "modified-square", "-o", str(tmp_path / "x.json")]
    )
    captured = capsys.readouterr()
    assert code == 2
    assert "error: modified-square needs --i and --j" in captured.err


def test_generate_prism_rejects_odd_edge_count(tmp_path, capsys):
    code = run(
        ["generate", "--family", "prism", "--len", "5", "-o", str(tmp_path / "x.json")]
    )
    captured = capsys.readouterr()
    assert code == 2
    assert "odd edge count" in captured.err


# ---------------------------------------------------------------------------
# solve


def test_solve_square_finds_cut(tmp_path, capsys):
    path = gen(tmp_path, capsys, "--family", "square", "--n", "3")
    code = run(["solve", str(path)])
    captured = capsys.readouterr()
    assert code == 0
    lines = captured.out.splitlines()
    assert lines[0].startswith("CUT edges=")
    assert lines[1].startswith("CUT side_a=")
    assert lines[2].startswith("CUT side_b=")


def test_solve_octahedron_uncuttable(tmp_path, capsys):
    path = gen(tmp_path, capsys, "--family", "octahedron")
    code = run(["solve", str(path)])
    captured = capsys.readouterr()
    assert code == 1
    assert captured.out == "UNCUTTABLE (31 bipartitions checked)\n"


def test_solve_enumerate(tmp_path, capsys):
    path = gen(tmp_path, capsys, "--family", "square", "--n", "3")
    code = run(["solve", str(path), "--enumerate"])
    captured = capsys.readouterr()
    assert code == 0
    lines = captured.out.splitlines()
    assert lines[0] == "MINIMAL CF-CUTS 1 (31 bipartitions checked)"
    assert lines[1] == "CUT edges=0,1,2,3,4,5 side_a=0,2,4 side_b=1,3,5"


def test_solve_cycles(tmp_path, capsys):
    path = gen(tmp_path, capsys, "--family", "square", "--n", "3")
    code = run(["solve", str(path), "--cycles"])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out.startswith("CF-CYCLE vertices=")
    assert "CF-CYCLES total=" in captured.out


def test_solve_no_cf_cycle(tmp_path, capsys):
    prism = gen(tmp_path, capsys, "--family", "prism", "--len", "4")
    code = run(["search-conflicts", str(prism), "--target", "no-cycle"])
    captured = capsys.readouterr()
    assert code == 0
    pairs = json.loads(captured.out.split("PAIRING ", 1)[1])
    doc = json.loads(prism.read_text())
    doc["conflicts"] = pairs
    hardened = tmp_path / "hardened.json"
    hardened.write_text(json.dumps(doc))
    code = run(["solve", str(hardened), "--cycles"])
    captured = capsys.readouterr()
    assert code == 1
    assert captured.out == "NO CF-CYCLE\n"


def test_solve_workers_flag(tmp_path, capsys):
    path = gen(tmp_path, capsys, "--family", "square", "--n", "9")
    code = run(["solve", str(path), "--workers", "2"])
    first = capsys.readouterr().out
    assert code == 0
    assert run(["solve", str(path)]) == 0
    assert capsys.readouterr().out == first


def test_solve_missing_file(tmp_path, capsys):
    code = run(["solve", str(tmp_path / "absent.json")])
    captured = capsys.readouterr()
    assert code == 2
    assert "error: cannot read" in captured.err


def test_solve_vertex_guard_flag(tmp_path, capsys):
    path = gen(tmp_path, capsys, "--family", "square", "--n", "3")
    code = run(["solve", str(path), "--max-vertices", "4"])
    captured = capsys.readouterr()
    assert code == 2
    assert "bipartition guard" in captured.err


# ---------------------------------------------------------------------------
# verify / check


def test_verify_accepts_ring_cut(tmp_path, capsys):
    path = gen(tmp_path, capsys, "--family", "square", "--n", "3")
    code = run(["verify", str(path), "--cut", "0,1,2,3,4,5"])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out.splitlines()[0] == "VALID CUT"


def test_verify_rejects_conflicting(tmp_path, capsys):
    path = gen(tmp_path, capsys, "--family", "square", "--n", "3")
    code = run(["verify", str(path), "--cut", "0,1,5,6,10,11"])
    captured = capsys.readouterr()
    assert code == 1
    assert captured.out.startswith("INVALID CUT: contains conflicting pair")


def test_verify_rejects_connected(tmp_path, capsys):
    path = gen(tmp_path, capsys, "--family", "square", "--n", "3")
    code = run(["verify", str(path), "--cut", "0"])
    captured = capsys.readouterr()
    assert code == 1
    assert captured.out == "INVALID CUT: still connected\n"


def test_verify_bad_id_list(tmp_path, capsys):
    path = gen(tmp_path, capsys, "--family", "square", "--n", "3")
    code = run(["verify", str(path), "--cut", "0,x"])
    captured = capsys.readouterr()
    assert code == 2
    assert "comma-separated edge ids" in captured.err


def test_check_report(tmp_path, capsys):
    path = gen(tmp_path, capsys, "--family", "octahedron")
    code = run(["check", str(path)])
    captured = capsys.readouterr()
    assert code == 0
    lines = captured.out.splitlines()
    assert "name: octahedron" in lines
    assert "vertices: 6" in lines
    assert "regular: 4" in lines
    assert "|E| < 2|V|: no" in lines
    assert "embedding: planar, 8 faces, 4 conflict-free" in lines


def test_check_without_embedding(tmp_path, capsys):
    path = gen(tmp_path, capsys, "--family", "gadget-h")
    code = run(["check", str(path)])
    captured = capsys.readouterr()
    assert code == 0
    assert "embedding: none" in captured.out
    assert "degeneracy: 3" in captured.out


# ---------------------------------------------------------------------------
# dual


def test_dual_roundtrip(tmp_path, capsys):
    prism = gen(tmp_path, capsys, "--family", "prism", "--len", "4")
    out = tmp_path / "dual.json"
    code = run(["dual", str(prism), "-o", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    assert "wrote prism-8*: 6 vertices, 12 edges" in captured.out
    dual = instance_from_json(out.read_text())
    assert all(dual.graph.degree(v) == 4 for v in dual.graph.vertices)


def test_dual_requires_embedding(tmp_path, capsys):
    path = gen(tmp_path, capsys, "--family", "gadget-h")
    code = run(["dual", str(path), "-o", str(tmp_path / "d.json")])
    captured = capsys.readouterr()
    assert code == 2
    assert "error: instance has no embedding" in captured.err


# ---------------------------------------------------------------------------
# reduce


def test_reduce_solve_satisfiable(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    cnf.write_text(RUNNING_DIMACS)
    code = run(["reduce", str(cnf), "--mode", "multigraph", "--solve"])
    captured = capsys.readouterr()
    assert code == 0
    lines = captured.out.splitlines()
    assert lines[0] == "clause-graph: 7 vertices, 24 edges"
    assert "SATISFIABLE" in lines
    assert any(l.startswith("ASSIGNMENT x1=") for l in lines)


def test_reduce_solve_unsat(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    cnf.write_text(UNSAT_DIMACS)
    code = run(["reduce", str(cnf), "--mode", "multigraph", "--solve"])
    captured = capsys.readouterr()
    assert code == 1
    assert "UNSATISFIABLE" in captured.out


def test_reduce_writes_instance_and_sidecar(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    cnf.write_text(RUNNING_DIMACS)
    out = tmp_path / "cg.json"
    code = run(["reduce", str(cnf), "--mode", "multigraph", "-o", str(out)])
    captured = capsys.readouterr()
    assert code == 0
    assert out.exists()
    sidecar = tmp_path / "cg.sidecar.json"
    assert sidecar.exists()
    doc = json.loads(sidecar.read_text())
    assert [c["clause"] for c in doc["clauses"]] == [1, 2, 3, 4]
    assert f"wrote bundle map -> {sidecar}" in captured.out


def test_reduce_planar_mode(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    cnf.write_text(RUNNING_DIMACS)
    code = run(["reduce", str(cnf), "--mode", "planar", "--t", "10"])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out.startswith("planarized-m4-t10:")


def test_reduce_degenerate_mode(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    cnf.write_text(RUNNING_DIMACS)
    code = run(["reduce", str(cnf), "--mode", "degenerate", "--i", "2"])
    captured = capsys.readouterr()
    assert code == 0
    assert captured.out.startswith("degenerate-m4-i2:")


def test_reduce_rejects_dirty_formula(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    cnf.write_text(DIRTY_DIMACS)
    code = run(["reduce", str(cnf), "--mode", "multigraph"])
    captured = capsys.readouterr()
    assert code == 2
    assert "not clean:" in captured.err


def test_reduce_solve_needs_multigraph(tmp_path, capsys):
    cnf = tmp_path / "f.cnf"
    cnf.write_text(RUNNING_DIMACS)
    code = run(["reduce", str(cnf), "--mode", "planar", "--solve"])
    captured = capsys.readouterr()
    assert code == 2
    assert "--solve applies to --mode multigraph only" in captured.err


# ---------------------------------------------------------------------------
# search-conflicts


def test_search_conflicts_no_cut_impossible_on_c4(tmp_path, capsys):
    doc = {
        "name": "c4",
        "vertices": ["a", "b", "c", "d"],
        "edges": [
            {"id": 0, "ends": ["a", "b"]},
            {"id": 1, "ends": ["b", "c"]},
            {"id": 2, "ends": ["c", "d"]},
            {"id": 3, "ends": ["d", "a"]},
        ],
        "conflicts": [[0, 1], [2, 3]],
        "embedding": None,
    }
    path = tmp_path / "c4.json"
    path.write_text(json.dumps(doc))
    code = run(["search-conflicts", str(path), "--target", "no-cut"])
    captured = capsys.readouterr()
    assert code == 1
    assert captured.out == "NO PAIRING ACHIEVES TARGET\n"


def test_search_conflicts_octahedron(tmp_path, capsys):
    path = gen(tmp_path, capsys, "--family", "octahedron")
    code = run(["search-conflicts", str(path), "--target", "no-cut"])
    captured = capsys.readouterr()
    assert code == 0
    pairs = json.loads(captured.out.split("PAIRING ", 1)[1])
    assert len(pairs) == 6


# ---------------------------------------------------------------------------
# environment overrides and argparse plumbing


def test_env_guard_override(tmp_path, capsys, monkeypatch):
    path = gen(tmp_path, capsys, "--family", "square", "--n", "3")
    monkeypatch.setenv("CFCUT_MAX_VERTICES", "4")
    code = run(["solve", str(path)])
    captured = capsys.readouterr()
    assert code == 2
    assert "bipartition guard" in captured.err
    # the explicit flag wins over the environment
    assert run(["solve", str(path), "--max-vertices", "12"]) == 0
    capsys.readouterr()


def test_env_bad_integer(tmp_path, capsys, monkeypatch):
    path = gen(tmp_path, capsys, "--family", "square", "--n", "3")
    monkeypatch.setenv("CFCUT_MAX_VERTICES", "many")
    code = run(["solve", str(path)])
    captured = capsys.readouterr()
    assert code == 2
    assert "must be an integer" in captured.err


def test_usage_errors_and_help(capsys):
    assert run([]) == 2
    capsys.readouterr()
    assert run(["no-such-command"]) == 2
    capsys.readouterr()
    assert run(["--help"]) == 0
    assert "conflict-free cuts" in capsys.readouterr().out
