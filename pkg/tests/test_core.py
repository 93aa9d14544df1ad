"""Instance construction, validation, cut verification, serialization."""

from fractions import Fraction

import pytest

from cfcut import (
    Cut,
    CutRejection,
    build_instance,
    canonical_cut,
    instance_from_json,
    instance_to_dot,
    instance_to_json,
    validate_instance,
    verify_cut,
)
from cfcut.families import gen_gadget_H, gen_octahedron, gen_square_even_cycle


def c4():
    """4-cycle a-b-c-d, ring ids in order, opposite edges conflicting."""
    return build_instance(
        ["a", "b", "c", "d"],
        [(0, "a", "b"), (1, "b", "c"), (2, "c", "d"), (3, "d", "a")],
        [(0, 1), (2, 3)],
        name="c4",
    )


def double_edge():
    return build_instance(
        ["a", "b"], [(0, "a", "b"), (1, "a", "b")], [(0, 1)], name="double"
    )


# ---------------------------------------------------------------------------
# construction and validation


def test_build_instance_basics():
    inst = c4()
    assert inst.graph.vertices == ("a", "b", "c", "d")
    assert inst.graph.edges[2] == (2, "c", "d")
    assert inst.conflicts.pairs == ((0, 1), (2, 3))
    assert inst.name == "c4"
    assert inst.embedding is None
    assert inst.is_connected


def test_build_instance_sorts_edges_and_pairs():
    inst = build_instance(
        ["a", "b", "c"],
        [(1, "b", "c"), (0, "a", "b"), (3, "a", "c"), (2, "a", "c")],
        [(3, 0), (2, 1)],
    )
    assert [e[0] for e in inst.graph.edges] == [0, 1, 2, 3]
    assert inst.conflicts.pairs == ((0, 3), (1, 2))


def test_build_instance_accepts_disconnected():
    inst = build_instance(
        ["a", "b", "c", "d"],
        [(0, "a", "b"), (1, "c", "d")],
        [(0, 1)],
    )
    assert not inst.is_connected
    assert not validate_instance(inst).connected


@pytest.mark.parametrize(
    "vertices,edges,pairs,fragment",
    [
        ([], [], [], "at least one vertex"),
        (["a", "a"], [], [], "duplicate vertex"),
        (["a", "b"], [(0, "a", "b"), (0, "a", "b")], [(0, 0)], "0..m-1"),
        (["a", "b"], [(1, "a", "b")], [(1, 1)], "0..m-1"),
        (["a"], [(0, "a", "a")], [(0, 0)], "self-loop"),
        (["a", "b"], [(0, "a", "x")], [(0, 0)], "unknown vertex"),
        (["a", "b"], [(0, "a", "b"), (1, "a", "b")], [(0, 0), (1, 1)], "repeats"),
        (["a", "b"], [(0, "a", "b"), (1, "a", "b")], [(0, 2)], "unknown edge"),
        (
            ["a", "b", "c"],
            [(0, "a", "b"), (1, "b", "c"), (2, "a", "c"), (3, "a", "c")],
            [(0, 1), (1, 2)],
            "more than one",
        ),
        (["a", "b"], [(0, "a", "b"), (1, "a", "b")], [], "cover every edge"),
    ],
)
def test_build_instance_rejects(vertices, edges, pairs, fragment):
    with pytest.raises(ValueError, match=fragment):
        build_instance(vertices, edges, pairs)


def test_build_instance_embedding_checks():
    with pytest.raises(ValueError, match="unknown vertex"):
        build_instance(
            ["a", "b"], [(0, "a", "b"), (1, "a", "b")], [(0, 1)], embedding={"x": []}
        )
    with pytest.raises(ValueError, match="incident edges exactly once"):
        build_instance(
            ["a", "b"],
            [(0, "a", "b"), (1, "a", "b")],
            [(0, 1)],
            embedding={"a": [0, 1], "b": [0, 0]},
        )
    # a partial embedding dict only passes when missing vertices are isolated
    with pytest.raises(ValueError, match="incident edges exactly once"):
        build_instance(
            ["a", "b"], [(0, "a", "b"), (1, "a", "b")], [(0, 1)], embedding={"a": [0, 1]}
        )


# ---------------------------------------------------------------------------
# graph queries


def test_graph_incidence_and_degrees():
    g = c4().graph
    assert g.incident("a") == (0, 3)
    assert g.degree("a") == 2
    assert g.other_end(0, "a") == "b"
    assert g.other_end(0, "b") == "a"
    with pytest.raises(ValueError):
        g.other_end(0, "c")


def test_graph_simplicity():
    assert c4().graph.is_simple
    assert not double_edge().graph.is_simple


def test_components_and_crossing():
    g = c4().graph
    assert g.components() == [frozenset("abcd")]
    assert g.components(removed_edges=frozenset({0, 3})) == [
        frozenset("a"),
        frozenset("bcd"),
    ]
    assert g.crossing_edges(frozenset("a")) == frozenset({0, 3})
    assert g.crossing_edges(frozenset("ab")) == frozenset({1, 3})
    assert g.induces_connected(frozenset("ab"))
    assert not g.induces_connected(frozenset("ac"))
    assert not g.induces_connected(frozenset())


def test_conflict_pairing_queries():
    pairing = c4().conflicts
    assert pairing.partner(0) == 1
    assert pairing.partner(3) == 2
    assert pairing.is_conflict_free({0, 2})
    assert not pairing.is_conflict_free({2, 3})
    assert pairing.violating_pair({0, 1, 2}) == (0, 1)
    assert pairing.violating_pair({0, 2}) is None


# ---------------------------------------------------------------------------
# cuts


def test_canonical_cut_prefers_smaller_side():
    inst = c4()
    cut = canonical_cut(inst, frozenset("bcd"))
    assert cut.side_a == frozenset("a")
    assert cut.side_b == frozenset("bcd")
    assert cut.edge_ids == frozenset({0, 3})


def test_canonical_cut_tie_breaks_on_label():
    inst = c4()
    cut = canonical_cut(inst, frozenset("bc"))
    assert cut.side_a == frozenset("ad")
    assert cut.side_b == frozenset("bc")
    assert cut.sorted_edges() == (0, 2)


def test_verify_cut_accepts_minimal():
    inst = c4()
    result = verify_cut(inst, [0, 2])
    assert isinstance(result, Cut)
    assert result.edge_ids == frozenset({0, 2})
    assert {result.side_a, result.side_b} == {frozenset("ad"), frozenset("bc")}


def test_verify_cut_trims_to_witness_crossing():
    # {0, 2, 4} disconnects a 5-cycle-with-chord into {a,b,c} | {d,e} and is
    # conflict-free, but edge 0 stays inside a side; the returned cut is the
    # witness crossing set {2, 4}, a proper subset of the input
    inst = build_instance(
        ["a", "b", "c", "d", "e"],
        [
            (0, "a", "b"),
            (1, "b", "c"),
            (2, "c", "d"),
            (3, "d", "e"),
            (4, "e", "a"),
            (5, "a", "c"),
        ],
        [(0, 3), (1, 4), (2, 5)],
    )
    result = verify_cut(inst, [0, 2, 4])
    assert isinstance(result, Cut)
    assert result.side_a == frozenset("de")
    assert result.edge_ids == frozenset({2, 4})
    assert result.edge_ids < {0, 2, 4}


def test_verify_cut_conflict_rejection_wins():
    # removing both parallel edges disconnects, but they are partners, so
    # the conflict rejection takes precedence over any connectivity answer
    result = verify_cut(double_edge(), [0, 1])
    assert isinstance(result, CutRejection)
    assert result.reason == "contains conflicting pair"
    assert result.pair == (0, 1)
    assert str(result) == "contains conflicting pair (0, 1)"


def test_verify_cut_still_connected():
    result = verify_cut(c4(), [0])
    assert isinstance(result, CutRejection)
    assert result.reason == "still connected"
    assert result.pair is None
    assert str(result) == "still connected"


def test_verify_cut_unknown_edge():
    with pytest.raises(ValueError, match="unknown edge id"):
        verify_cut(c4(), [7])


# ---------------------------------------------------------------------------
# validation report


def test_validation_report_octahedron():
    report = validate_instance(gen_octahedron())
    assert report.connected and report.simple
    assert report.one_regular_conflicts
    assert report.regular_k == 4
    assert report.max_degree == 4
    assert report.degeneracy == 4
    assert report.edge_vertex_ratio == Fraction(2, 1)
    assert not report.edges_below_twice_vertices  # 12 = 2 * 6 exactly


def test_validation_report_gadget():
    report = validate_instance(gen_gadget_H())
    assert report.degeneracy == 3
    assert report.max_degree == 5
    assert report.regular_k is None
    assert len(report.degeneracy_order) == 6
    assert report.degeneracy_order[0] == "v1"  # min degree, smallest label


def test_validation_report_sparse():
    inst = c4()
    report = validate_instance(inst)
    assert report.edge_vertex_ratio == Fraction(1, 1)
    assert report.edges_below_twice_vertices


# ---------------------------------------------------------------------------
# serialization


def test_json_round_trip_with_embedding():
    inst = gen_square_even_cycle(3)
    back = instance_from_json(instance_to_json(inst))
    assert back.graph == inst.graph
    assert back.conflicts == inst.conflicts
    assert back.embedding == inst.embedding
    assert back.name == inst.name


def test_json_round_trip_without_embedding():
    inst = c4()
    back = instance_from_json(instance_to_json(inst))
    assert back.graph == inst.graph
    assert back.embedding is None


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("{", "not valid JSON"),
        ("[1, 2]", "must be a JSON object"),
        ('{"vertices": ["a"]}', "missing"),
        (
            '{"vertices": ["a", "b"], "edges": [{"id": 0}], "conflicts": []}',
            "malformed edge entry",
        ),
    ],
)
def test_json_errors(text, fragment):
    with pytest.raises(ValueError, match=fragment):
        instance_from_json(text)


def test_dot_output_carries_conflicts():
    text = instance_to_dot(c4())
    assert text.startswith('graph "c4" {')
    assert '"a" -- "b" [label="0", conflict=1];' in text
    assert '"c" -- "d" [label="2", conflict=3];' in text
    assert text.rstrip().endswith("}")
