import json

import pytest
from hypothesis import given

from efpebble.generators import ladder_halves, ladder_pair, named_graph
from efpebble.structures import (
    EndpointOutOfRange,
    MissingColor,
    SelfLoop,
    VertexClass,
    complement,
    components,
    disjoint_union,
    dumps,
    is_connected,
    isomorphic,
    load,
    loads,
    make_graph,
    save,
    validate,
    vertex_class,
)

from conftest import graphs


def test_validate_accepts_k2():
    g = validate({"n": 2, "edges": [[0, 1]]})
    assert g.n == 2 and g.edges == ((0, 1),)
    assert g.colors == ("none", "none")


def test_validate_rejects_self_loop():
    with pytest.raises(SelfLoop):
        validate({"n": 1, "edges": [[0, 0]]})


def test_validate_rejects_bad_endpoint():
    with pytest.raises(EndpointOutOfRange):
        validate({"n": 2, "edges": [[0, 5]]})


def test_color_count_must_match():
    with pytest.raises(MissingColor):
        make_graph(3, [], ["red", "blue"])


def test_edges_are_normalized():
    g = make_graph(3, [(2, 1), (1, 2), (0, 2)])
    assert g.edges == ((0, 2), (1, 2))


def test_complement_of_triangle_is_empty():
    assert complement(named_graph("complete", 3)).edges == ()


def test_complement_of_p4_is_p4():
    p4 = named_graph("path", 4)
    c = complement(p4)
    assert isomorphic(c, p4)
    assert all(vertex_class(c, v) is VertexClass.OTHER for v in range(4))


def test_disjoint_union_counts():
    k1 = make_graph(1)
    assert disjoint_union(k1, k1).n == 2
    g, _ = ladder_halves(3)
    assert disjoint_union(g, g).n == 2 * g.n
    assert disjoint_union(g, make_graph(0)) == g


def test_vertex_classes():
    w5 = named_graph("wheel", 5)
    assert vertex_class(w5, 0) is VertexClass.UNIVERSAL
    c5 = named_graph("cycle", 5)
    assert {vertex_class(c5, v) for v in range(5)} == {VertexClass.OTHER}
    assert vertex_class(make_graph(1), 0) is VertexClass.ISOLATED


def test_connectivity():
    assert is_connected(named_graph("path", 4))
    assert not is_connected(named_graph("empty", 2))
    half, _ = ladder_halves(2)
    assert is_connected(half)
    doubled, _ = ladder_pair(2)
    assert not is_connected(doubled)
    assert len(components(doubled)) == 2


def test_file_round_trip(tmp_path):
    g = make_graph(3, [(0, 1)], ["red", "none", "blue"])
    path = tmp_path / "g.json"
    save(g, path)
    assert load(path) == g
    raw = json.loads(path.read_text())
    assert raw["edges"] == [[0, 1]]


@given(graphs(max_n=6, palette=("none", "red", "blue")))
def test_serialization_round_trip(g):
    assert loads(dumps(g)) == g


@given(graphs(max_n=6))
def test_complement_involution(g):
    assert complement(complement(g)) == g


@given(graphs(min_n=2, max_n=6))
def test_graph_or_complement_connected(g):
    assert is_connected(g) or is_connected(complement(g))


@given(graphs(min_n=2, max_n=6))
def test_complement_swaps_isolated_and_universal(g):
    swap = {VertexClass.ISOLATED: VertexClass.UNIVERSAL, VertexClass.UNIVERSAL: VertexClass.ISOLATED}
    c = complement(g)
    for v in range(g.n):
        k = vertex_class(g, v)
        assert vertex_class(c, v) is swap.get(k, k)
