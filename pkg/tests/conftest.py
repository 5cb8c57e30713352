from __future__ import annotations

import itertools

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from efpebble.formula import (
    Adj,
    And,
    Bottom,
    Color,
    Eq,
    Exists,
    Forall,
    NotAdj,
    NotColor,
    NotEq,
    Or,
    Top,
)
from efpebble.structures import ColoredGraph, make_graph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 4, palette: tuple[str, ...] = ("none",)) -> ColoredGraph:
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    colors = draw(st.lists(st.sampled_from(palette), min_size=n, max_size=n))
    return make_graph(n, [p for p, keep in zip(pairs, mask) if keep], colors)


@st.composite
def trees(draw, min_n: int = 1, max_n: int = 8, palette: tuple[str, ...] = ("red", "blue")) -> ColoredGraph:
    n = draw(st.integers(min_n, max_n))
    parents = [draw(st.integers(0, v - 1)) for v in range(1, n)]
    colors = draw(st.lists(st.sampled_from(palette), min_size=n, max_size=n))
    return make_graph(n, [(p, v) for v, p in enumerate(parents, start=1)], colors)


def brute_eval(f, g: ColoredGraph, env: dict[int, int]) -> bool:
    """Textbook recursive semantics, kept deliberately naive."""
    t = type(f)
    if t is Top:
        return True
    if t is Bottom:
        return False
    if t is Color:
        return g.colors[env[f.var]] == f.label
    if t is NotColor:
        return g.colors[env[f.var]] != f.label
    if t is Adj:
        return (min(env[f.a], env[f.b]), max(env[f.a], env[f.b])) in set(g.edges)
    if t is NotAdj:
        return (min(env[f.a], env[f.b]), max(env[f.a], env[f.b])) not in set(g.edges)
    if t is Eq:
        return env[f.a] == env[f.b]
    if t is NotEq:
        return env[f.a] != env[f.b]
    if t is And:
        return all(brute_eval(p, g, env) for p in f.parts)
    if t is Or:
        return any(brute_eval(p, g, env) for p in f.parts)
    if t is Exists:
        return any(brute_eval(f.body, g, {**env, f.var: v}) for v in range(g.n))
    if t is Forall:
        return all(brute_eval(f.body, g, {**env, f.var: v}) for v in range(g.n))
    raise TypeError(t)


LITERALS = st.one_of(
    st.builds(Adj, st.integers(1, 2), st.integers(1, 2)),
    st.builds(NotAdj, st.integers(1, 2), st.integers(1, 2)),
    st.builds(Eq, st.integers(1, 2), st.integers(1, 2)),
    st.builds(NotEq, st.integers(1, 2), st.integers(1, 2)),
    st.builds(Color, st.integers(1, 2), st.sampled_from(["red", "blue"])),
    st.builds(NotColor, st.integers(1, 2), st.sampled_from(["red", "blue"])),
)


def _close(f):
    return Forall(1, Exists(2, f))


def formulas(max_leaves: int = 6):
    """Two-variable formulas; callers close them off before evaluating as sentences."""
    return st.recursive(
        LITERALS,
        lambda inner: st.one_of(
            st.builds(lambda ps: And(tuple(ps)), st.lists(inner, min_size=2, max_size=3)),
            st.builds(lambda ps: Or(tuple(ps)), st.lists(inner, min_size=2, max_size=3)),
            st.builds(Exists, st.integers(1, 2), inner),
            st.builds(Forall, st.integers(1, 2), inner),
        ),
        max_leaves=max_leaves,
    )
