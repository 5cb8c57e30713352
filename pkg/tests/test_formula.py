import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from efpebble import generators as gen
from efpebble.fo2type import phi, psi
from efpebble.formula import (
    TRUE,
    Adj,
    Color,
    Eq,
    Exists,
    Forall,
    FormulaTooLarge,
    NotAdj,
    Or,
    ParseError,
    UnboundVariable,
    conj,
    dag_size,
    evaluate,
    formula_from_strategy,
    fragment_info,
    free_variables,
    negate,
    parse_formula,
    serialize_formula,
    tree_size,
)
from efpebble.game import GameMode, NotDistinguishable, solve
from efpebble.structures import make_graph

from conftest import _close, brute_eval, formulas, graphs

K2, TWO_K1 = make_graph(2, [(0, 1)]), make_graph(2)
RED_BLUE = (make_graph(3, [], ["red", "blue", "blue"]), make_graph(3, [], "blue"))


def test_metrics_of_phi_one():
    f = Forall(2, Or((Adj(2, 1), Eq(2, 1))))
    info = fragment_info(f)
    assert (info.qdepth, info.altdepth) == (1, 1)
    assert info.in_pi(1) and not info.in_sigma(1)


def test_metrics_of_alternating_chain():
    f = Exists(1, Forall(2, Exists(1, Adj(1, 2))))
    info = fragment_info(f)
    assert info.altdepth == 3 and info.qdepth == 3
    assert info.in_sigma(3) and not info.in_pi(3)


def test_quantifier_free_is_everywhere():
    info = fragment_info(Adj(1, 2))
    assert (info.qdepth, info.altdepth) == (0, 0)
    assert info.in_sigma(0) and info.in_pi(0)


def test_simple_evaluation():
    f = Exists(1, Exists(2, Adj(1, 2)))
    assert evaluate(f, K2)
    assert not evaluate(f, TWO_K1)
    assert not evaluate(psi(1), gen.named_graph("cycle", 6))


def test_free_variables_need_assignment():
    with pytest.raises(UnboundVariable):
        evaluate(Adj(1, 2), K2)
    assert evaluate(Adj(1, 2), K2, {1: 0, 2: 1})
    assert free_variables(Exists(1, Adj(1, 2))) == frozenset({2})


def test_sharing_keeps_dag_small():
    f = psi(4)
    assert dag_size(f) < tree_size(f)


def _check(g, h, mode):
    table = solve(g, h, mode)
    f = formula_from_strategy(g, h, table)
    info = fragment_info(f)
    assert evaluate(f, g) and not evaluate(f, h)
    assert info.qdepth == table.root_value
    return f, info


def test_formula_for_red_vertex():
    _, info = _check(*RED_BLUE, GameMode.sigma(2, 1))
    assert info.qdepth == 1 and info.in_sigma(1)


def test_formula_for_edge():
    _, info = _check(K2, TWO_K1, GameMode.full(2))
    assert info.qdepth == 2 and info.in_sigma(1)


@pytest.mark.parametrize(
    "pair,mode",
    [
        (gen.colored_tree_pair(2), GameMode.sigma(2, 2)),
        (gen.ladder_pair(3), GameMode.sigma(2, 2)),
        (gen.cycle_pair(2), GameMode.sigma(2, 1)),
        ((gen.named_graph("cycle", 5), gen.named_graph("wheel", 5)), GameMode.pi(2, 2)),
    ],
)
def test_formula_lies_in_fragment(pair, mode):
    _, info = _check(*pair, mode)
    level = info.sigma_level if mode.variant == "sigma" else info.pi_level
    assert level <= mode.i


def test_formula_needs_distinguishable_pair():
    with pytest.raises(NotDistinguishable):
        formula_from_strategy(K2, K2, solve(K2, K2, GameMode.full(2)))


def test_parse_simple():
    assert parse_formula('E x1 . col(x1,"red")') == Exists(1, Color(1, "red"))


def test_parse_round_trip_of_psi():
    f = psi(2)
    assert parse_formula(serialize_formula(f)) == f


@pytest.mark.parametrize("text", ["E x1 x2", "adj(x1,x2) & adj(x1,x2) | T", "x1 = ", "A y . T", 'col(x1,"a"'])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_formula(text)


def test_serializer_guards_size():
    with pytest.raises(FormulaTooLarge):
        serialize_formula(psi(6), limit=100)


def test_negation_of_constants():
    assert negate(negate(TRUE)) == TRUE
    assert negate(NotAdj(1, 2)) == Adj(1, 2)


@settings(max_examples=200)
@given(formulas(), graphs(max_n=4, palette=("red", "blue")))
def test_evaluate_matches_brute_force(f, g):
    s = _close(f)
    assert evaluate(s, g) == brute_eval(s, g, {})


@given(formulas(), graphs(max_n=4, palette=("red", "blue")))
def test_negation_is_semantic(f, g):
    s = _close(f)
    assert evaluate(negate(s), g) == (not evaluate(s, g))


@given(formulas())
def test_negation_swaps_levels(f):
    a, b = fragment_info(f), fragment_info(negate(f))
    assert (a.sigma_level, a.pi_level) == (b.pi_level, b.sigma_level)
    assert a.qdepth == b.qdepth and a.altdepth == b.altdepth


@given(formulas())
def test_serialize_round_trip(f):
    assert parse_formula(serialize_formula(f)) == f


@given(st.lists(formulas(max_leaves=3), min_size=1, max_size=4))
def test_conj_flattens(parts):
    c = conj(parts)
    assert fragment_info(c).qdepth == max(fragment_info(p).qdepth for p in parts)


@settings(max_examples=40)
@given(graphs(max_n=4, palette=("red", "blue")), graphs(max_n=4, palette=("red", "blue")), st.sampled_from(["full", "sigma:1", "pi:2"]))
def test_synthesis_is_sound(g, h, text):
    mode = GameMode.parse(text, 2)
    table = solve(g, h, mode)
    if table.root_value == float("inf"):
        return
    _, info = _check(g, h, mode)
    if mode.variant == "sigma":
        assert info.in_sigma(mode.i)
    elif mode.variant == "pi":
        assert info.in_pi(mode.i)


def test_phi_one_shape():
    assert phi(1) == Forall(2, Or((Adj(2, 1), Eq(2, 1))))
