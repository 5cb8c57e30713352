import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from efpebble import generators as gen
from efpebble.game import (
    INF,
    EmptyGraph,
    GameMode,
    GamePosition,
    Move,
    NotDistinguishable,
    PositionLimitExceeded,
    Side,
    alternation_number,
    apply_move,
    check_partial_iso,
    distinguishing_depth,
    extract_spoiler_strategy,
    legal_sides,
    solve,
)
from efpebble.structures import ColoredGraph, make_graph
from efpebble.verify import minimax_depth

from conftest import graphs

RED_BLUE = (make_graph(3, [], ["red", "blue", "blue"]), make_graph(3, [], "blue"))
K2, TWO_K1 = make_graph(2, [(0, 1)]), make_graph(2)


def relabel(g: ColoredGraph, perm: list[int]) -> ColoredGraph:
    colors = [None] * g.n
    for v, p in enumerate(perm):
        colors[p] = g.colors[v]
    return make_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges], colors)


def test_partial_iso_checks():
    g, h = RED_BLUE
    assert check_partial_iso(g, h, [None, None])
    assert not check_partial_iso(g, h, [(0, 0), None])
    assert not check_partial_iso(K2, TWO_K1, [(0, 0), (1, 1)])
    assert check_partial_iso(K2, TWO_K1, [(0, 0), (0, 0)])


def test_red_blue_values():
    g, h = RED_BLUE
    assert distinguishing_depth(g, h, GameMode.sigma(2, 1)) == 1
    assert distinguishing_depth(g, h, GameMode.pi(2, 1)) == INF
    assert distinguishing_depth(g, h, GameMode.full(2)) == 1


def test_edge_versus_two_points():
    # frozen from the depth-capped minimax oracle
    assert minimax_depth(K2, TWO_K1, 2, cap=4) == 2
    assert distinguishing_depth(K2, TWO_K1, GameMode.full(2)) == 2


def test_one_pebble_cannot_see_edges():
    assert distinguishing_depth(K2, TWO_K1, GameMode.full(1)) == INF


def test_colored_trees_two_levels():
    g, h = gen.colored_tree_pair(2)
    assert distinguishing_depth(g, h, GameMode.sigma(2, 2)) <= 2
    assert distinguishing_depth(g, h, GameMode.pi(2, 2)) == INF


def test_isomorphic_inputs_never_distinguished():
    g, _ = gen.ladder_pair(2)
    perm = list(range(g.n))
    random.Random(4).shuffle(perm)
    h = relabel(g, perm)
    for mode in (GameMode.full(2), GameMode.sigma(2, 2), GameMode.pi(2, 1)):
        assert distinguishing_depth(g, h, mode) == INF
    assert alternation_number(g, h, 2) == INF


def test_alternation_numbers():
    assert alternation_number(*gen.ladder_pair(3), 2) == 2
    c6, w6 = gen.named_graph("cycle", 6), gen.named_graph("wheel", 6)
    assert alternation_number(c6, w6, 2) == 2


def test_empty_graph_rejected():
    with pytest.raises(EmptyGraph):
        solve(make_graph(0), K2, GameMode.full(2))


def test_position_limit():
    g, h = gen.colored_tree_pair(2)
    with pytest.raises(PositionLimitExceeded) as info:
        solve(g, h, GameMode.full(2, position_limit=100))
    assert info.value.required > 100


@pytest.mark.parametrize("text", ["sigma", "pi:0", "full:1", "both"])
def test_mode_parse_errors(text):
    with pytest.raises(ValueError):
        GameMode.parse(text, 2)


def test_mode_parse():
    assert GameMode.parse("sigma:3", 2) == GameMode.sigma(2, 3)
    assert str(GameMode.pi(2, 1)) == "pi:1"


def test_sigma_moves_stay_put_without_jumps():
    mode = GameMode.sigma(2, 1)
    pos = GamePosition.initial(mode)
    assert legal_sides(mode, pos) == [Side.G]
    pos = apply_move(mode, pos, Move(0, Side.G, 0), 0)
    assert legal_sides(mode, pos) == [Side.G]


def test_strategy_pebbles_red_first():
    g, h = RED_BLUE
    table = solve(g, h, GameMode.sigma(2, 1))
    strat = extract_spoiler_strategy(table)
    assert strat[GamePosition.initial(table.mode)] == Move(0, Side.G, 0)


def test_strategy_on_edge_completes_it():
    table = solve(K2, TWO_K1, GameMode.full(2))
    strat = extract_spoiler_strategy(table)
    first = strat[GamePosition.initial(table.mode)]
    assert first.side is Side.G
    for reply in range(TWO_K1.n):
        pos = apply_move(table.mode, GamePosition.initial(table.mode), first, reply)
        second = strat[pos]
        nxt = apply_move(table.mode, pos, second, reply)
        assert not check_partial_iso(K2, TWO_K1, nxt.placements)


def test_no_strategy_for_isomorphic_pair():
    with pytest.raises(NotDistinguishable):
        extract_spoiler_strategy(solve(K2, K2, GameMode.full(2)))


def _worst_case_rounds(table, strat, pos, depth=0) -> int:
    move = strat[pos]
    other = table.h if move.side is Side.G else table.g
    worst = 0
    for reply in range(other.n):
        nxt = apply_move(table.mode, pos, move, reply)
        if not check_partial_iso(table.g, table.h, nxt.placements):
            worst = max(worst, 1)
        else:
            worst = max(worst, 1 + _worst_case_rounds(table, strat, nxt, depth + 1))
    return worst


@pytest.mark.parametrize(
    "pair,mode",
    [
        (RED_BLUE, GameMode.sigma(2, 1)),
        ((K2, TWO_K1), GameMode.full(2)),
        (gen.colored_tree_pair(2), GameMode.sigma(2, 2)),
        (gen.ladder_pair(2), GameMode.full(2)),
        ((gen.named_graph("cycle", 5), gen.named_graph("wheel", 5)), GameMode.full(2)),
    ],
)
def test_strategy_replay(pair, mode):
    g, h = pair
    table = solve(g, h, mode)
    strat = extract_spoiler_strategy(table)
    root = GamePosition.initial(mode)
    assert _worst_case_rounds(table, strat, root) == table.root_value
    rng = random.Random(17)
    for _ in range(100):

        def duplicator(pos, move, rng=rng):
            other = h if move.side is Side.G else g
            return rng.randrange(other.n)

        assert strat.play(duplicator) <= table.root_value


MODES = ["full", "sigma:1", "pi:1", "sigma:2", "pi:2"]


@settings(max_examples=60)
@given(graphs(max_n=3, palette=("red", "blue")), graphs(max_n=3, palette=("red", "blue")), st.sampled_from(MODES))
def test_solver_matches_minimax(g, h, text):
    variant, _, i = text.partition(":")
    value = distinguishing_depth(g, h, GameMode.parse(text, 2))
    oracle = minimax_depth(g, h, 2, variant, int(i) if i else None, cap=8)
    assert oracle == (value if value <= 8 else INF)


@given(graphs(max_n=4), graphs(max_n=4), st.integers(1, 3))
def test_sigma_pi_duality(g, h, i):
    assert distinguishing_depth(g, h, GameMode.sigma(2, i)) == distinguishing_depth(h, g, GameMode.pi(2, i))


@given(graphs(max_n=4, palette=("none", "red")), graphs(max_n=4, palette=("none", "red")))
def test_monotone_in_alternations(g, h):
    full = distinguishing_depth(g, h, GameMode.full(2))
    for make in (GameMode.sigma, GameMode.pi):
        vals = [distinguishing_depth(g, h, make(2, i)) for i in (1, 2, 3)]
        assert vals[0] >= vals[1] >= vals[2] >= full


@settings(max_examples=40)
@given(graphs(max_n=4), graphs(max_n=4))
def test_monotone_in_pebbles(g, h):
    vals = [distinguishing_depth(g, h, GameMode.full(k)) for k in (1, 2, 3)]
    assert vals[0] >= vals[1] >= vals[2]


@given(graphs(max_n=5), graphs(max_n=5))
def test_alternation_below_depth(g, h):
    d = distinguishing_depth(g, h, GameMode.full(2))
    a = alternation_number(g, h, 2)
    assert (a == INF) == (d == INF)
    if d < INF:
        assert a <= d


@given(graphs(min_n=1, max_n=5, palette=("red", "blue")), st.randoms(use_true_random=False))
def test_relabeling_is_invisible(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert distinguishing_depth(g, relabel(g, perm), GameMode.full(2)) == INF


@given(graphs(max_n=4), graphs(max_n=4), st.integers(1, 2))
def test_depth_bound(g, h, i):
    for mode in (GameMode.sigma(2, i), GameMode.pi(2, i)):
        d = distinguishing_depth(g, h, mode)
        assert d == INF or d <= g.n * h.n + 1


@given(graphs(max_n=4, palette=("none", "red")), graphs(max_n=4, palette=("none", "red")))
def test_full_game_is_symmetric(g, h):
    assert distinguishing_depth(g, h, GameMode.full(2)) == distinguishing_depth(h, g, GameMode.full(2))
