"""Two-variable types of uncolored graphs.

Two uncolored graphs satisfy the same two-variable sentences exactly when
they have the same type: the single-vertex graph has its own type, and any
other graph is described by its rank, the kind of its kernel (head) and the
sizes of its peeled layers (tail). Every type is defined by a two-variable
sentence with a single quantifier alternation, built by :func:`type_sentence`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .formula import (
    Adj,
    And,
    Eq,
    Exists,
    Forall,
    Formula,
    NotAdj,
    NotEq,
    Or,
    _postorder,
    conj,
    disj,
    negate,
)
from .structures import ColoredGraph, is_connected

X, Y = 1, 2

EMPTY, COMPL, NORMA = "empty", "compl", "norma"
CONN, DISC = "conn", "disc"
THIN, THICK = "thin", "thick"
ISOLATED_FRINGE, UNIVERSAL_FRINGE = "isolated-fringe", "universal-fringe"


class Colored(ValueError):
    pass


class TooSmall(ValueError):
    pass


class RankTooLow(ValueError):
    pass


@dataclass(frozen=True)
class RankDecomposition:
    layers: tuple[tuple[int, ...], ...]
    peel_kinds: tuple[str, ...]
    kernel: tuple[int, ...]
    vertex_rank: tuple[int, ...]

    @property
    def graph_rank(self) -> int:
        return len(self.layers) + 1


def _require_uncolored(g: ColoredGraph) -> None:
    if not g.is_uncolored():
        raise Colored("two-variable types are defined for uncolored graphs only")


def _rank_one_kind(adj: np.ndarray) -> Optional[str]:
    """Kernel kind of a graph with at least two vertices, or None if it has rank > 1."""
    n = len(adj)
    deg = adj.sum(axis=1)
    if not deg.any():
        return EMPTY
    if (deg == n - 1).all():
        return COMPL
    if (deg > 0).all() and (deg < n - 1).all():
        return NORMA
    return None


def rank_decomposition(g: ColoredGraph) -> RankDecomposition:
    _require_uncolored(g)
    if g.n <= 1:
        raise TooSmall("rank is defined for graphs with at least two vertices")
    alive = np.arange(g.n)
    layers, kinds = [], []
    while True:
        adj = g.adjacency[np.ix_(alive, alive)]
        if _rank_one_kind(adj) is not None:
            break
        deg = adj.sum(axis=1)
        sub = g.induced(alive.tolist())
        if is_connected(sub):
            fringe = deg == len(alive) - 1
            kinds.append(UNIVERSAL_FRINGE)
        else:
            fringe = deg == 0
            kinds.append(ISOLATED_FRINGE)
        layers.append(tuple(int(v) for v in alive[fringe]))
        alive = alive[~fringe]
    rank = [0] * g.n
    for t, layer in enumerate(layers, start=1):
        for v in layer:
            rank[v] = t
    for v in alive:
        rank[int(v)] = len(layers) + 1
    return RankDecomposition(tuple(layers), tuple(kinds), tuple(int(v) for v in alive), tuple(rank))


def graph_rank(g: ColoredGraph) -> int:
    return rank_decomposition(g).graph_rank


@dataclass(frozen=True, eq=False)
class Fo2Type:
    """``kind`` is ``singleton`` or ``ranked``; ``tail`` is ``(t0, t1, ..., t_{rank-1})``.

    Rank-1 types compare by head only; ``tail`` then just records ``t0``.
    """

    kind: str
    rank: int = 0
    head: Optional[str] = None
    tail: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.kind == "singleton":
            return
        if self.kind != "ranked" or self.rank < 1 or self.head not in (EMPTY, COMPL, NORMA):
            raise ValueError(f"malformed type {self}")
        if self.rank > 1:
            if len(self.tail) != self.rank or self.tail[0] not in (CONN, DISC):
                raise ValueError("tail must be (t0, t1, ..., t_{rank-1})")
            if any(t not in (THIN, THICK) for t in self.tail[1:]):
                raise ValueError("tail entries after t0 must be thin or thick")
            # the last peeled layer fixes which complete-like kernel can remain
            m, conn = self.rank - 1, self.tail[0] == CONN
            forbidden = COMPL if (m % 2 == 1) == conn else EMPTY
            if self.head == forbidden:
                raise ValueError(f"head {self.head} cannot follow tail {self.tail}")

    def _key(self) -> tuple:
        if self.kind == "singleton":
            return ("singleton",)
        if self.rank == 1:
            return ("ranked", 1, self.head)
        return ("ranked", self.rank, self.head, self.tail)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Fo2Type) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def to_dict(self) -> dict:
        return {"kind": self.kind, "rank": self.rank, "head": self.head, "tail": list(self.tail)}


SINGLETON = Fo2Type("singleton")


def graph_type(g: ColoredGraph) -> Fo2Type:
    _require_uncolored(g)
    if g.n == 1:
        return SINGLETON
    if g.n == 0:
        raise TooSmall("the empty graph has no type")
    dec = rank_decomposition(g)
    head = _rank_one_kind(g.adjacency[np.ix_(dec.kernel, dec.kernel)])
    t0 = CONN if is_connected(g) else DISC
    tail = (t0,) + tuple(THIN if len(layer) == 1 else THICK for layer in dec.layers)
    return Fo2Type("ranked", dec.graph_rank, head, tail)


def tail_type(g: ColoredGraph, m: int) -> tuple[str, ...]:
    if m < 1:
        raise ValueError("m must be >= 1")
    t = graph_type(g)
    if t.kind == "singleton" or t.rank <= m:
        raise RankTooLow(f"tail of length {m} needs rank > {m}")
    return t.tail[: m + 1]


def fo2_equivalent(g: ColoredGraph, h: ColoredGraph) -> bool:
    return graph_type(g) == graph_type(h)


# defining sentences -----------------------------------------------------


_phi_cache: dict[tuple[int, int], Formula] = {}


def phi(s: int, free: int = X) -> Formula:
    """The vertex formula of level ``s`` with ``free`` as its free variable.

    In a connected graph of rank above ``s`` it holds at a vertex exactly when
    the vertex has rank at most ``s`` and is of universal type (odd ``s``) or
    isolated type (even ``s``).
    """
    if s < 1:
        raise ValueError("level must be >= 1")
    key = (s, free)
    if key not in _phi_cache:
        b = Y if free == X else X
        if s == 1:
            body = disj([Adj(b, free), Eq(b, free)])
        elif s % 2 == 0:
            body = disj([phi(s - 1, b), NotAdj(b, free)])
        else:
            body = disj([phi(s - 1, b), Adj(b, free), Eq(b, free)])
        _phi_cache[key] = Forall(b, body)
    return _phi_cache[key]


def not_phi(s: int, free: int = X) -> Formula:
    return negate(phi(s, free))


def psi(s: int) -> Formula:
    """Holds exactly on connected graphs of rank greater than ``s``."""
    if s < 1:
        raise ValueError("level must be >= 1")
    if s == 1:
        return conj([Exists(X, phi(1)), Exists(X, not_phi(1))])
    parts = [Exists(X, phi(1)), Exists(X, phi(2))]
    parts += [Exists(X, conj([phi(i), not_phi(i - 2)])) for i in range(3, s + 1)]
    parts.append(Exists(X, conj([not_phi(s - 1), not_phi(s)])))
    return conj(parts)


def t_formula(i: int, thick: bool) -> Formula:
    if thick:
        parts = [NotEq(X, Y), phi(i, X)]
        if i > 2:
            parts.append(not_phi(i - 2, X))
        parts.append(phi(i, Y))
        if i > 2:
            parts.append(not_phi(i - 2, Y))
        return Exists(X, Exists(Y, conj(parts)))
    parts = [not_phi(i, X), not_phi(i, Y)]
    if i > 2:
        parts += [phi(i - 2, X), phi(i - 2, Y)]
    parts.append(Eq(X, Y))
    return Forall(X, Forall(Y, disj(parts)))


def phi_psi_t(s: int, variant: str) -> Formula:
    if variant == "phi":
        return phi(s)
    if variant == "psi":
        return psi(s)
    if variant in ("t_thick", "t_thin"):
        return t_formula(s, variant == "t_thick")
    raise ValueError(f"unknown schema {variant!r}")


def complement_translation(f: Formula) -> Formula:
    """``f`` rewritten so that it holds in ``G`` iff ``f`` holds in the complement of ``G``."""
    out: dict[int, Formula] = {}
    for node in _postorder(f):
        t = type(node)
        if t is Adj:
            res = conj([NotAdj(node.a, node.b), NotEq(node.a, node.b)])
        elif t is NotAdj:
            res = disj([Adj(node.a, node.b), Eq(node.a, node.b)])
        elif t in (And, Or):
            kids = [out[id(c)] for c in node.parts]
            res = conj(kids) if t is And else disj(kids)
        elif t in (Exists, Forall):
            res = t(node.var, out[id(node.body)])
        else:
            res = node
        out[id(node)] = res
    return out[id(f)]


def _two_distinct() -> Formula:
    return Exists(X, Exists(Y, NotEq(X, Y)))


def type_sentence(t: Fo2Type) -> Formula:
    """A two-variable sentence with one alternation true exactly on graphs of type ``t``."""
    if t.kind == "singleton":
        return Forall(X, Forall(Y, Eq(X, Y)))
    if t.rank == 1:
        if t.head == EMPTY:
            return conj([_two_distinct(), Forall(X, Forall(Y, NotAdj(X, Y)))])
        if t.head == COMPL:
            return conj([_two_distinct(), Forall(X, Forall(Y, disj([Eq(X, Y), Adj(X, Y)])))])
        return conj(
            [
                Forall(X, Exists(Y, Adj(X, Y))),
                Forall(X, Exists(Y, conj([NotEq(X, Y), NotAdj(X, Y)]))),
            ]
        )
    if t.tail[0] == DISC:
        swap = {EMPTY: COMPL, COMPL: EMPTY, NORMA: NORMA}
        dual = Fo2Type("ranked", t.rank, swap[t.head], (CONN,) + t.tail[1:])
        return complement_translation(type_sentence(dual))
    m = t.rank - 1
    parts = [psi(m)] + [t_formula(i, t.tail[i] == THICK) for i in range(1, m + 1)]
    # tail vertices satisfy phi(m-1) or phi(m); the head clause constrains the rest
    tail = [phi(m - 1)] if m > 1 else []
    tail.append(phi(m))
    last = phi(m + 1) if t.head in (EMPTY, COMPL) else not_phi(m + 1)
    parts.append(Forall(X, disj(tail + [last])))
    return conj(parts)
