import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from efpebble import generators as gen
from efpebble.game import GameMode, distinguishing_depth
from efpebble.generators import named_graph
from efpebble.structures import isomorphic, to_networkx
from efpebble.treekit import (
    NotATree,
    branches,
    branching_index,
    rooted_code,
    separator,
    tree_center,
    truncate,
    truncate_with_mapping,
)

from conftest import graphs, trees

P4, P7, STAR6 = named_graph("path", 4), named_graph("path", 7), named_graph("star", 6)


def test_centers():
    assert tree_center(P4).center == (1, 2)
    assert tree_center(STAR6).center == (0,)
    c = tree_center(P7)
    assert (c.center, c.radius, c.diameter) == ((3,), 3, 6)


def test_rooted_codes():
    p3 = named_graph("path", 3)
    assert rooted_code(p3, 1) != rooted_code(p3, 0)
    _, h1 = gen.colored_tree_pair(1)
    _, h1b = gen.colored_tree_pair(1)
    assert rooted_code(h1, 0) == rooted_code(h1b, 0)


def test_branching_index():
    assert branching_index(STAR6) == 5
    assert branching_index(P4) == 1
    assert branching_index(gen.colored_tree_pair(1)[0]) == 2


def test_truncation_examples():
    assert isomorphic(truncate(STAR6, 2), named_graph("path", 3))
    assert truncate(P7, 2) == P7


def test_truncation_mapping_points_at_kept_vertices():
    _, t = gen.colored_tree_pair(2)
    tk, mapping = truncate_with_mapping(t, 2)
    assert tk.n < t.n
    assert sorted(mapping.values()) == list(range(tk.n))
    for old, new in mapping.items():
        assert tk.colors[new] == t.colors[old]


def test_separators():
    assert separator(P7) == 3
    assert separator(STAR6) == 0
    assert separator(P4) == 1


def test_one_copy_rejected():
    with pytest.raises(ValueError):
        truncate(P7, 1)


def test_non_tree_rejected():
    with pytest.raises(NotATree):
        tree_center(named_graph("cycle", 4))


def rooted_isomorphic(a, ra, b, rb) -> bool:
    ga, gb = to_networkx(a), to_networkx(b)
    ga.nodes[ra]["root"], gb.nodes[rb]["root"] = True, True

    def match(x, y):
        return x.get("color") == y.get("color") and x.get("root", False) == y.get("root", False)

    return nx.is_isomorphic(ga, gb, node_match=match)


@given(trees(max_n=7), trees(max_n=7), st.data())
def test_rooted_code_matches_isomorphism(a, b, data):
    ra = data.draw(st.integers(0, a.n - 1))
    rb = data.draw(st.integers(0, b.n - 1))
    assert (rooted_code(a, ra) == rooted_code(b, rb)) == rooted_isomorphic(a, ra, b, rb)


@given(trees(max_n=12), st.integers(2, 4))
def test_truncation_is_idempotent(t, k):
    once = truncate(t, k)
    assert truncate(once, k) == once


@given(trees(min_n=2, max_n=12), st.integers(2, 4))
def test_truncation_bounds_branching(t, k):
    tk = truncate(t, k)
    if tk.n >= 2:
        assert branching_index(tk) <= k


@given(trees(max_n=12))
def test_separator_bound(t):
    v = separator(t)
    assert all(2 * size <= t.n for _, _, size in branches(t, v))


@given(trees(min_n=2, max_n=9), graphs(max_n=5, palette=("red", "blue")), st.integers(2, 3))
def test_truncation_keeps_game_values(t, g, k):
    mode = GameMode.full(k)
    assert distinguishing_depth(t, g, mode) == distinguishing_depth(truncate(t, k), g, mode)
