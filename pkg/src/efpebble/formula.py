"""First-order formulas in negation normal form over colored graphs.

Formulas are immutable and may share sub-formulas, so a formula is a DAG
read with tree semantics. Variables are positive integers ``1..k``.
"""

from __future__ import annotations

import json
import re
import sys
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

import numpy as np

from .game import (
    INF,
    GamePosition,
    NotDistinguishable,
    Side,
    SpoilerStrategy,
    ValueTable,
    apply_move,
    check_partial_iso,
    extract_spoiler_strategy,
)
from .structures import ColoredGraph


class UnboundVariable(LookupError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str):
        super().__init__(f"{message} at offset {pos}: {text[max(0, pos - 10) : pos + 10]!r}")
        self.pos = pos


class FormulaTooLarge(ValueError):
    pass


class Formula:
    """Base node. Equality is structural; hashes are cached at construction."""

    __slots__ = ()

    def _fields(self) -> tuple:
        raise NotImplementedError

    def children(self) -> tuple[Formula, ...]:
        return ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "_hash", hash((type(self).__name__,) + self._fields()))

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if type(self) is not type(other) or self._hash != other._hash:
            return False
        return self._fields() == other._fields()

    def __repr__(self) -> str:
        return serialize_formula(self, limit=2000) if tree_size(self) <= 2000 else f"<{type(self).__name__} DAG>"


@dataclass(frozen=True, eq=False, repr=False)
class Top(Formula):
    def _fields(self):
        return ()


@dataclass(frozen=True, eq=False, repr=False)
class Bottom(Formula):
    def _fields(self):
        return ()


@dataclass(frozen=True, eq=False, repr=False)
class Color(Formula):
    var: int
    label: str

    def _fields(self):
        return (self.var, self.label)


@dataclass(frozen=True, eq=False, repr=False)
class NotColor(Formula):
    var: int
    label: str

    def _fields(self):
        return (self.var, self.label)


@dataclass(frozen=True, eq=False, repr=False)
class Adj(Formula):
    a: int
    b: int

    def _fields(self):
        return (self.a, self.b)


@dataclass(frozen=True, eq=False, repr=False)
class NotAdj(Formula):
    a: int
    b: int

    def _fields(self):
        return (self.a, self.b)


@dataclass(frozen=True, eq=False, repr=False)
class Eq(Formula):
    a: int
    b: int

    def _fields(self):
        return (self.a, self.b)


@dataclass(frozen=True, eq=False, repr=False)
class NotEq(Formula):
    a: int
    b: int

    def _fields(self):
        return (self.a, self.b)


@dataclass(frozen=True, eq=False, repr=False)
class And(Formula):
    parts: tuple[Formula, ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise ValueError("And needs at least two parts; use conj()")
        super().__post_init__()

    def _fields(self):
        return self.parts

    def children(self):
        return self.parts


@dataclass(frozen=True, eq=False, repr=False)
class Or(Formula):
    parts: tuple[Formula, ...]

    def __post_init__(self) -> None:
        if len(self.parts) < 2:
            raise ValueError("Or needs at least two parts; use disj()")
        super().__post_init__()

    def _fields(self):
        return self.parts

    def children(self):
        return self.parts


@dataclass(frozen=True, eq=False, repr=False)
class Exists(Formula):
    var: int
    body: Formula

    def _fields(self):
        return (self.var, self.body)

    def children(self):
        return (self.body,)


@dataclass(frozen=True, eq=False, repr=False)
class Forall(Formula):
    var: int
    body: Formula

    def _fields(self):
        return (self.var, self.body)

    def children(self):
        return (self.body,)


TRUE, FALSE = Top(), Bottom()
ATOMS = (Top, Bottom, Color, NotColor, Adj, NotAdj, Eq, NotEq)


def conj(parts: Iterable[Formula]) -> Formula:
    ps = tuple(dict.fromkeys(parts))
    if not ps:
        return TRUE
    return ps[0] if len(ps) == 1 else And(ps)


def disj(parts: Iterable[Formula]) -> Formula:
    ps = tuple(dict.fromkeys(parts))
    if not ps:
        return FALSE
    return ps[0] if len(ps) == 1 else Or(ps)


def _postorder(f: Formula) -> list[Formula]:
    """Distinct nodes, children before parents, without recursion."""
    seen: set[int] = set()
    out: list[Formula] = []
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        node, done = stack.pop()
        if done:
            out.append(node)
            continue
        if id(node) in seen:
            continue
        seen.add(id(node))
        stack.append((node, True))
        stack.extend((c, False) for c in reversed(node.children()) if id(c) not in seen)
    return out


def tree_size(f: Formula) -> int:
    """Node count of the expanded tree."""
    size: dict[int, int] = {}
    for node in _postorder(f):
        size[id(node)] = 1 + sum(size[id(c)] for c in node.children())
    return size[id(f)]


def dag_size(f: Formula) -> int:
    return len(_postorder(f))


def variables(f: Formula) -> set[int]:
    out: set[int] = set()
    for node in _postorder(f):
        if isinstance(node, (Color, NotColor, Exists, Forall)):
            out.add(node.var)
        elif isinstance(node, (Adj, NotAdj, Eq, NotEq)):
            out.update((node.a, node.b))
    return out


def free_variables(f: Formula) -> frozenset[int]:
    free: dict[int, frozenset[int]] = {}
    for node in _postorder(f):
        if isinstance(node, (Color, NotColor)):
            fv = frozenset((node.var,))
        elif isinstance(node, (Adj, NotAdj, Eq, NotEq)):
            fv = frozenset((node.a, node.b))
        elif isinstance(node, (Exists, Forall)):
            fv = free[id(node.body)] - {node.var}
        else:
            fv = frozenset().union(*(free[id(c)] for c in node.children()))
        free[id(node)] = fv
    return free[id(f)]


@dataclass(frozen=True)
class FragmentInfo:
    qdepth: int
    altdepth: int
    sigma_level: int
    pi_level: int

    @property
    def alternations(self) -> int:
        return max(self.altdepth - 1, 0)

    def in_sigma(self, i: int) -> bool:
        return self.sigma_level <= i

    def in_pi(self, i: int) -> bool:
        return self.pi_level <= i


def fragment_info(f: Formula) -> FragmentInfo:
    """Depth metrics by one pass over the DAG.

    ``ex[n]`` (``fa[n]``) is the largest number of quantifier blocks on a
    path below ``n`` when the path is preceded by an existential (universal)
    block, that block included.
    """
    qd: dict[int, int] = {}
    ex: dict[int, int] = {}
    fa: dict[int, int] = {}
    for node in _postorder(f):
        key = id(node)
        kids = node.children()
        if isinstance(node, Exists):
            b = id(node.body)
            qd[key], ex[key], fa[key] = qd[b] + 1, ex[b], 1 + ex[b]
        elif isinstance(node, Forall):
            b = id(node.body)
            qd[key], ex[key], fa[key] = qd[b] + 1, 1 + fa[b], fa[b]
        elif kids:
            qd[key] = max(qd[id(c)] for c in kids)
            ex[key] = max(ex[id(c)] for c in kids)
            fa[key] = max(fa[id(c)] for c in kids)
        else:
            qd[key], ex[key], fa[key] = 0, 1, 1
    r = id(f)
    if qd[r] == 0:
        return FragmentInfo(0, 0, 0, 0)
    return FragmentInfo(qd[r], max(ex[r], fa[r]) - 1, ex[r], fa[r])


_NEG = {Top: Bottom, Bottom: Top, Color: NotColor, NotColor: Color, Adj: NotAdj, NotAdj: Adj, Eq: NotEq, NotEq: Eq}


def negate(f: Formula) -> Formula:
    """Negation pushed down to the atoms; sharing is preserved."""
    out: dict[int, Formula] = {}
    for node in _postorder(f):
        t = type(node)
        if t in _NEG:
            res = _NEG[t](*node._fields())
        elif t is And:
            res = Or(tuple(out[id(c)] for c in node.parts))
        elif t is Or:
            res = And(tuple(out[id(c)] for c in node.parts))
        elif t is Exists:
            res = Forall(node.var, out[id(node.body)])
        else:
            res = Exists(node.var, out[id(node.body)])
        out[id(node)] = res
    return out[id(f)]


# evaluation -------------------------------------------------------------

_DENSE_LIMIT = 1 << 18


def evaluate(f: Formula, g: ColoredGraph, assignment: Optional[Mapping[int, int]] = None) -> bool:
    """Truth of ``f`` in ``g`` under ``assignment`` (variable -> vertex)."""
    assignment = dict(assignment or {})
    missing = free_variables(f) - set(assignment)
    if missing:
        raise UnboundVariable(f"free variables {sorted(missing)} have no value")
    for x, v in assignment.items():
        if not 0 <= v < g.n:
            raise IndexError(f"vertex {v} out of range for variable x{x}")
    vs = sorted(variables(f) | set(assignment))
    if g.n ** max(len(vs), 1) <= _DENSE_LIMIT:
        table = satisfying_table(f, g, vs)
        return bool(table[tuple(assignment.get(x, 0) for x in vs)])
    return _evaluate_sparse(f, g, assignment)


def satisfying_table(f: Formula, g: ColoredGraph, vs: list[int]) -> np.ndarray:
    """Boolean array over all assignments to ``vs`` (one axis per variable)."""
    n, k = g.n, len(vs)
    axis = {x: j for j, x in enumerate(vs)}
    shape = (n,) * k

    def along(x: int, vec: np.ndarray) -> np.ndarray:
        sh = [1] * k
        sh[axis[x]] = n
        return np.broadcast_to(vec.reshape(sh), shape)

    def pair(a: int, b: int, mat: np.ndarray) -> np.ndarray:
        if a == b:
            return along(a, np.diagonal(mat).copy())
        sh = [1] * k
        sh[axis[a]] = n
        sh[axis[b]] = n
        m = mat if axis[a] < axis[b] else mat.T
        return np.broadcast_to(m.reshape(sh), shape)

    colors = np.array(g.colors)
    eye = np.eye(n, dtype=bool)
    out: dict[int, np.ndarray] = {}
    for node in _postorder(f):
        t = type(node)
        if t is Top:
            res = np.ones(shape, dtype=bool)
        elif t is Bottom:
            res = np.zeros(shape, dtype=bool)
        elif t in (Color, NotColor):
            res = along(node.var, (colors == node.label) ^ (t is NotColor))
        elif t in (Adj, NotAdj):
            res = pair(node.a, node.b, g.adjacency ^ (t is NotAdj))
        elif t in (Eq, NotEq):
            res = pair(node.a, node.b, eye ^ (t is NotEq))
        elif t is And:
            res = np.logical_and.reduce([out[id(c)] for c in node.parts])
        elif t is Or:
            res = np.logical_or.reduce([out[id(c)] for c in node.parts])
        else:
            body = out[id(node.body)]
            red = body.any(axis=axis[node.var], keepdims=True) if t is Exists else body.all(
                axis=axis[node.var], keepdims=True
            )
            res = np.broadcast_to(red, shape)
        out[id(node)] = res
    return out[id(f)]


def _evaluate_sparse(f: Formula, g: ColoredGraph, assignment: dict[int, int]) -> bool:
    memo: dict[tuple, bool] = {}
    fv = {}
    for node in _postorder(f):
        fv[id(node)] = tuple(sorted(free_variables(node)))

    def ev(node: Formula, env: dict[int, int]) -> bool:
        key = (id(node),) + tuple(env[x] for x in fv[id(node)])
        hit = memo.get(key)
        if hit is not None:
            return hit
        t = type(node)
        if t is Top:
            res = True
        elif t is Bottom:
            res = False
        elif t in (Color, NotColor):
            res = (g.colors[env[node.var]] == node.label) ^ (t is NotColor)
        elif t in (Adj, NotAdj):
            res = bool(g.adjacency[env[node.a], env[node.b]]) ^ (t is NotAdj)
        elif t in (Eq, NotEq):
            res = (env[node.a] == env[node.b]) ^ (t is NotEq)
        elif t is And:
            res = all(ev(c, env) for c in node.parts)
        elif t is Or:
            res = any(ev(c, env) for c in node.parts)
        else:
            want = t is Exists
            res = not want
            saved = env.get(node.var)
            for v in range(g.n):
                env[node.var] = v
                if ev(node.body, env) == want:
                    res = want
                    break
            if saved is None:
                env.pop(node.var)
            else:
                env[node.var] = saved
        memo[key] = res
        return res

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * len(fv) + 1000))
    try:
        return ev(f, dict(assignment))
    finally:
        sys.setrecursionlimit(old)


# synthesis --------------------------------------------------------------


def _violated_literal(g: ColoredGraph, h: ColoredGraph, placements) -> Formula:
    placed = [(s, p) for s, p in enumerate(placements) if p is not None]
    for s, (u, v) in placed:
        if g.colors[u] != h.colors[v]:
            return Color(s + 1, g.colors[u])
    for i, (s, (u1, v1)) in enumerate(placed):
        for t, (u2, v2) in placed[i + 1 :]:
            if (u1 == u2) != (v1 == v2):
                return Eq(s + 1, t + 1) if u1 == u2 else NotEq(s + 1, t + 1)
    for i, (s, (u1, v1)) in enumerate(placed):
        for t, (u2, v2) in placed[i + 1 :]:
            if g.adjacency[u1, u2] != h.adjacency[v1, v2]:
                return Adj(s + 1, t + 1) if g.adjacency[u1, u2] else NotAdj(s + 1, t + 1)
    raise AssertionError("placements form a partial isomorphism")


def formula_from_strategy(
    g: ColoredGraph,
    h: ColoredGraph,
    table: ValueTable,
    strategy: Optional[SpoilerStrategy] = None,
) -> Formula:
    """Back-and-forth translation of a winning Spoiler strategy into a sentence.

    The result is true on ``g``, false on ``h``, has quantifier depth equal
    to the table's root value and lies in the fragment of the table's mode.
    Slot ``j`` becomes variable ``x{j+1}``.
    """
    if table.root_value == INF:
        raise NotDistinguishable("no distinguishing formula exists")
    strategy = strategy or extract_spoiler_strategy(table)
    mode = table.mode
    memo: dict[GamePosition, Formula] = {}
    atoms: dict[Formula, Formula] = {}

    def intern(f: Formula) -> Formula:
        return atoms.setdefault(f, f)

    root = GamePosition.initial(mode)
    stack: list[GamePosition] = [root]
    while stack:
        pos = stack[-1]
        if pos in memo:
            stack.pop()
            continue
        move = strategy[pos]
        replies = range(h.n if move.side is Side.G else g.n)
        succ = [apply_move(mode, pos, move, y) for y in replies]
        pending = []
        subs = []
        for nxt in succ:
            if not check_partial_iso(g, h, nxt.placements):
                subs.append(intern(_violated_literal(g, h, nxt.placements)))
            elif nxt in memo:
                subs.append(memo[nxt])
            else:
                pending.append(nxt)
        if pending:
            stack.extend(pending)
            continue
        var = move.slot + 1
        if move.side is Side.G:
            memo[pos] = intern(Exists(var, conj(subs)))
        else:
            memo[pos] = intern(Forall(var, disj(subs)))
        stack.pop()
    return memo[root]


# concrete syntax --------------------------------------------------------

DEFAULT_SERIALIZE_LIMIT = 2_000_000


def serialize_formula(f: Formula, limit: int = DEFAULT_SERIALIZE_LIMIT) -> str:
    size = tree_size(f)
    if size > limit:
        raise FormulaTooLarge(f"expanded formula has {size} nodes, limit is {limit}")
    parts: list[str] = []

    def emit(node: Formula, operand: bool) -> None:
        t = type(node)
        if t is Top:
            parts.append("T")
        elif t is Bottom:
            parts.append("F")
        elif t in (Color, NotColor):
            parts.append(f"{'~' if t is NotColor else ''}col(x{node.var},{json.dumps(node.label)})")
        elif t in (Adj, NotAdj):
            parts.append(f"{'~' if t is NotAdj else ''}adj(x{node.a},x{node.b})")
        elif t in (Eq, NotEq):
            parts.append(f"x{node.a} {'~=' if t is NotEq else '='} x{node.b}")
        elif t in (And, Or):
            op = " & " if t is And else " | "
            if operand:
                parts.append("(")
            for j, c in enumerate(node.parts):
                if j:
                    parts.append(op)
                emit(c, True)
            if operand:
                parts.append(")")
        else:
            if operand:
                parts.append("(")
            parts.append(f"{'E' if t is Exists else 'A'} x{node.var} . ")
            emit(node.body, False)
            if operand:
                parts.append(")")

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 3 * size + 1000))
    try:
        emit(f, False)
    finally:
        sys.setrecursionlimit(old)
    return "".join(parts)


_TOKEN = re.compile(
    r"""\s*(?:
      (?P<str>"(?:[^"\\]|\\.)*")
    | (?P<var>x\d+)
    | (?P<kw>~adj|~col|adj|col)
    | (?P<op>~=|[()&|.,=])
    | (?P<quant>[EA])(?![\w])
    | (?P<const>[TF])(?![\w])
    )""",
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks, pos = [], 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character", pos, text)
        kind = m.lastgroup
        toks.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self, kind: str, value: Optional[str] = None) -> str:
        k, v, p = self.toks[self.i]
        if k != kind or (value is not None and v != value):
            want = value or kind
            raise ParseError(f"expected {want!r}, found {v or 'end of input'!r}", p, self.text)
        self.i += 1
        return v

    def var(self) -> int:
        v = self.take("var")
        n = int(v[1:])
        if n < 1:
            raise ParseError("variables are numbered from 1", self.toks[self.i - 1][2], self.text)
        return n

    def formula(self) -> Formula:
        first = self.operand()
        k, v, p = self.peek()
        if not (k == "op" and v in ("&", "|")):
            return first
        op = v
        parts = [first]
        while True:
            k, v, p = self.peek()
            if k == "op" and v in ("&", "|"):
                if v != op:
                    raise ParseError("mixing & and | needs parentheses", p, self.text)
                self.i += 1
                parts.append(self.operand())
            else:
                break
        return And(tuple(parts)) if op == "&" else Or(tuple(parts))

    def operand(self) -> Formula:
        k, v, p = self.peek()
        if k == "quant":
            self.i += 1
            x = self.var()
            self.take("op", ".")
            body = self.formula()
            return Exists(x, body) if v == "E" else Forall(x, body)
        if k == "op" and v == "(":
            self.i += 1
            inner = self.formula()
            self.take("op", ")")
            return inner
        if k == "const":
            self.i += 1
            return TRUE if v == "T" else FALSE
        if k == "kw":
            self.i += 1
            self.take("op", "(")
            a = self.var()
            self.take("op", ",")
            if v.endswith("adj"):
                b = self.var()
                self.take("op", ")")
                return NotAdj(a, b) if v.startswith("~") else Adj(a, b)
            label = json.loads(self.take("str"))
            self.take("op", ")")
            return NotColor(a, label) if v.startswith("~") else Color(a, label)
        if k == "var":
            a = self.var()
            k2, v2, p2 = self.peek()
            if k2 == "op" and v2 in ("=", "~="):
                self.i += 1
                b = self.var()
                return NotEq(a, b) if v2 == "~=" else Eq(a, b)
            raise ParseError("expected '=' or '~=' after variable", p2, self.text)
        raise ParseError(f"unexpected token {v or 'end of input'!r}", p, self.text)


def parse_formula(text: str) -> Formula:
    parser = _Parser(text)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * len(text) + 1000))
    try:
        f = parser.formula()
        parser.take("end")
    finally:
        sys.setrecursionlimit(old)
    return f
