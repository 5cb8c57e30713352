"""Exact solver for the k-pebble Ehrenfeucht-Fraisse game on colored graphs.

The solver works on *boards*: the set of distinct pebbled pairs ``(u, v)``.
Which slot holds which pair never affects the outcome, and two slots on the
same pair behave like one pebble plus a free one, so the value of a slot
position depends only on its board and on the alternation context
(``last_side``, ``jumps_left``).

Between rounds Spoiler first decides which pebble to lift. What remains is an
intermediate set ``I`` of at most ``k - 1`` pairs, which must itself be a
partial isomorphism. Values are therefore tabulated as

* ``W[ctx][I]``: rounds Spoiler needs from intermediate set ``I``;
* ``R[ctx][I, q]``: rounds needed once the pair ``q`` is added, counting
  the round that placed it (1 if ``I + q`` is not a partial isomorphism).

``R = 1 + min over subsets of W`` and ``W = min over sides and vertices of
max over replies of R``. Both tables are computed by value iteration from
infinity; the fixpoint of this recurrence is unique, so the iteration stops
exactly at the game values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

from .structures import ColoredGraph

INF = math.inf
NatInf = float | int
_BIG = 2**30
DEFAULT_POSITION_LIMIT = 50_000_000


class GameError(Exception):
    pass


class PositionLimitExceeded(GameError):
    def __init__(self, required: int, limit: int):
        super().__init__(f"game needs about {required} positions, limit is {limit}")
        self.required = required
        self.limit = limit


class EmptyGraph(GameError, ValueError):
    pass


class NotDistinguishable(GameError):
    pass


class Side(str, Enum):
    G = "G"
    H = "H"

    @property
    def other(self) -> Side:
        return Side.H if self is Side.G else Side.G


@dataclass(frozen=True)
class GameMode:
    """Game variant: ``full``, ``sigma`` or ``pi`` with ``i`` alternation blocks.

    ``continuous`` (two pebbles only) restricts Spoiler to moves that leave
    the two pebbled vertices adjacent in the graph he plays in, as used by
    the lifting construction.
    """

    k: int
    variant: str = "full"
    i: Optional[int] = None
    position_limit: int = DEFAULT_POSITION_LIMIT
    continuous: bool = False

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("need at least one pebble")
        if self.variant not in ("full", "sigma", "pi"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.variant == "full":
            if self.i is not None:
                raise ValueError("full mode has no alternation budget")
        elif self.i is None or self.i < 1:
            raise ValueError(f"{self.variant} mode needs i >= 1")
        if self.continuous and self.k != 2:
            raise ValueError("continuous play is defined for k = 2 only")

    @classmethod
    def full(cls, k: int, **kw) -> GameMode:
        return cls(k, "full", None, **kw)

    @classmethod
    def sigma(cls, k: int, i: int, **kw) -> GameMode:
        return cls(k, "sigma", i, **kw)

    @classmethod
    def pi(cls, k: int, i: int, **kw) -> GameMode:
        return cls(k, "pi", i, **kw)

    @classmethod
    def parse(cls, text: str, k: int, **kw) -> GameMode:
        """Parse ``full``, ``sigma:I`` or ``pi:I``."""
        name, _, arg = text.strip().lower().partition(":")
        if name == "full" and not arg:
            return cls.full(k, **kw)
        if name in ("sigma", "pi") and arg.isdigit():
            return cls(k, name, int(arg), **kw)
        raise ValueError(f"cannot parse game mode {text!r}")

    @property
    def first_side(self) -> Optional[Side]:
        return {"sigma": Side.G, "pi": Side.H}.get(self.variant)

    def __str__(self) -> str:
        return self.variant if self.variant == "full" else f"{self.variant}:{self.i}"


Pair = tuple[int, int]


@dataclass(frozen=True)
class GamePosition:
    placements: tuple[Optional[Pair], ...]
    last_side: Optional[Side] = None
    jumps_left: Optional[int] = None

    @classmethod
    def initial(cls, mode: GameMode) -> GamePosition:
        jumps = None if mode.variant == "full" else mode.i - 1
        return cls((None,) * mode.k, None, jumps)

    @property
    def is_initial(self) -> bool:
        return self.last_side is None

    def board(self) -> list[Pair]:
        return sorted({p for p in self.placements if p is not None})


@dataclass(frozen=True)
class Move:
    slot: int
    side: Side
    vertex: int


def check_partial_iso(g: ColoredGraph, h: ColoredGraph, placements: Sequence[Optional[Pair]]) -> bool:
    placed = [p for p in placements if p is not None]
    for u, v in placed:
        if g.colors[u] != h.colors[v]:
            return False
    for (u1, v1), (u2, v2) in combinations(placed, 2):
        if (u1 == u2) != (v1 == v2):
            return False
        if g.adjacency[u1, u2] != h.adjacency[v1, v2]:
            return False
    return True


def legal_sides(mode: GameMode, pos: GamePosition) -> list[Side]:
    if mode.variant == "full":
        return [Side.G, Side.H]
    if pos.last_side is None:
        return [mode.first_side]
    sides = [pos.last_side]
    if pos.jumps_left and pos.jumps_left > 0:
        sides.append(pos.last_side.other)
    return sorted(sides, key=lambda s: s.value)


def apply_move(mode: GameMode, pos: GamePosition, move: Move, reply: int) -> GamePosition:
    pair = (move.vertex, reply) if move.side is Side.G else (reply, move.vertex)
    placements = list(pos.placements)
    placements[move.slot] = pair
    jumps = pos.jumps_left
    if mode.variant != "full" and pos.last_side is not None and move.side is not pos.last_side:
        jumps -= 1
    return GamePosition(tuple(placements), move.side, jumps)


def _to_natinf(x: int) -> NatInf:
    return INF if x >= _BIG else int(x)


class _Engine:
    """Tables shared by every mode for a fixed ``(G, H, k)``."""

    def __init__(self, g: ColoredGraph, h: ColoredGraph, k: int, limit: int, n_ctx: int, continuous: bool):
        if g.n == 0 or h.n == 0:
            raise EmptyGraph("both graphs need at least one vertex")
        self.g, self.h, self.k = g, h, k
        self.continuous = continuous
        nG, nH = g.n, h.n
        self.nG, self.nH, self.P = nG, nH, nG * nH
        palette = {c: j for j, c in enumerate(sorted(set(g.colors) | set(h.colors)))}
        cg = np.array([palette[c] for c in g.colors])
        ch = np.array([palette[c] for c in h.colors])
        self.vidx = np.flatnonzero((cg[:, None] == ch[None, :]).ravel())
        V = self.V = len(self.vidx)
        upper = sum(math.comb(V, t) for t in range(k)) * self.P * n_ctx
        if upper > limit and V > 20_000:
            raise PositionLimitExceeded(upper, limit)
        u, v = self.vidx // nH, self.vidx % nH
        self.pu, self.pv = u, v
        self.pair_index = {int(p): j for j, p in enumerate(self.vidx)}
        same = (u[:, None] == u[None, :]) == (v[:, None] == v[None, :])
        edge = g.adjacency[u[:, None], u[None, :]] == h.adjacency[v[:, None], v[None, :]]
        self.comp = same & edge
        self.configs = self._enumerate(limit, n_ctx)
        self.C = sum(len(a) for a in self.configs)
        self.positions = self.C * self.P * n_ctx
        self._index_configs()
        self._build_transitions()
        self.W: dict = {}

    # configuration enumeration -------------------------------------------

    def _enumerate(self, limit: int, n_ctx: int) -> list[np.ndarray]:
        V, k = self.V, self.k
        levels = [np.zeros((1, 0), dtype=np.int64)]
        count = 1
        for t in range(1, k):
            prev = levels[-1]
            if t == 1:
                nxt = np.arange(V, dtype=np.int64)[:, None]
            else:
                ok = np.ones((len(prev), V), dtype=bool)
                for j in range(t - 1):
                    ok &= self.comp[prev[:, j]]
                ok &= np.arange(V)[None, :] > prev[:, -1:]
                rows, cols = np.nonzero(ok)
                nxt = np.concatenate([prev[rows], cols[:, None]], axis=1)
            count += len(nxt)
            if count * self.P * n_ctx > limit:
                raise PositionLimitExceeded(count * self.P * n_ctx, limit)
            levels.append(nxt)
        return levels

    def _encode(self, rows: np.ndarray) -> np.ndarray:
        """Key of sorted rows padded on the left with -1 to width k-1."""
        base = self.V + 1
        key = np.zeros(rows.shape[:-1], dtype=np.int64)
        for j in range(rows.shape[-1]):
            key = key * base + (rows[..., j] + 1)
        return key

    def _pad(self, rows: np.ndarray) -> np.ndarray:
        w = self.k - 1
        fill = np.full(rows.shape[:-1] + (w - rows.shape[-1],), -1, dtype=np.int64)
        return np.concatenate([fill, rows], axis=-1)

    def _index_configs(self) -> None:
        keys = np.concatenate([self._encode(self._pad(a)) for a in self.configs])
        self._order = np.argsort(keys, kind="stable")
        self._keys = keys[self._order]
        self.offsets = np.cumsum([0] + [len(a) for a in self.configs])

    def lookup(self, keys: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self._keys, keys)
        pos = np.minimum(pos, len(self._keys) - 1)
        found = self._keys[pos] == keys
        return np.where(found, self._order[pos], self.C)

    def config_id(self, board: Sequence[int]) -> int:
        row = self._pad(np.array(sorted(board), dtype=np.int64)[None, :])
        return int(self.lookup(self._encode(row))[0])

    # transitions --------------------------------------------------------

    def _canonical(self, rows: np.ndarray) -> np.ndarray:
        rows = np.sort(rows, axis=-1)
        dup = np.zeros(rows.shape, dtype=bool)
        dup[..., 1:] = rows[..., 1:] == rows[..., :-1]
        rows = np.where(dup, -1, rows)
        return np.sort(rows, axis=-1)

    def _build_transitions(self) -> None:
        C, V, k = self.C, self.V, self.k
        lose = np.zeros((C, V), dtype=bool)
        opts = np.full((C, V, k + 1), C, dtype=np.int32)
        q = np.arange(V, dtype=np.int64)
        for t, A in enumerate(self.configs):
            off = self.offsets[t]
            for s in range(0, len(A), 4096):
                a = A[s : s + 4096]
                n = len(a)
                ids = np.arange(off + s, off + s + n)
                bad = np.zeros((n, V), dtype=bool)
                for j in range(t):
                    bad |= ~self.comp[a[:, j]]
                lose[ids] = bad
                opts[ids, :, 0] = ids[:, None]
                grid = np.broadcast_to(a[:, None, :], (n, V, t)).copy()
                for j in range(t):
                    rows = grid.copy()
                    rows[:, :, j] = q[None, :]
                    opts[ids, :, 1 + j] = self.lookup(self._encode(self._pad(self._canonical(rows))))
                if t + 1 <= k - 1:
                    rows = np.concatenate([grid, np.broadcast_to(q[None, :, None], (n, V, 1))], axis=-1)
                    opts[ids, :, k] = self.lookup(self._encode(self._pad(self._canonical(rows))))
                opts[ids] = np.where(bad[:, :, None], C, opts[ids])
        self.lose, self.opts = lose, opts
        self.size = np.concatenate([np.full(len(a), t) for t, a in enumerate(self.configs)])
        if self.continuous:
            single = self.configs[1][:, 0]
            self.adj_g = np.ones((C, self.nG), dtype=bool)
            self.adj_h = np.ones((C, self.nH), dtype=bool)
            rows = np.arange(self.offsets[1], self.offsets[2])
            self.adj_g[rows] = self.g.adjacency[self.pu[single]]
            self.adj_h[rows] = self.h.adjacency[self.pv[single]]

    # value iteration ----------------------------------------------------

    def r_table(self, w: np.ndarray, rows: np.ndarray | slice = slice(None)) -> np.ndarray:
        """R over all pairs (invalid-color pairs lose at once)."""
        best = w[self.opts[rows]].min(axis=-1)
        r = np.where(self.lose[rows], 1, np.minimum(best + 1, _BIG)).astype(np.int64)
        out = np.ones(r.shape[:-1] + (self.P,), dtype=np.int64)
        out[..., self.vidx] = r
        return out

    def side_values(self, r: np.ndarray, side: Side, rows: np.ndarray | slice = slice(None)) -> np.ndarray:
        """Per config and Spoiler vertex, the worst reply value."""
        cube = r.reshape(r.shape[:-1] + (self.nG, self.nH))
        if side is Side.G:
            vals = cube.max(axis=-1)
        else:
            vals = cube.max(axis=-2)
        if self.continuous:
            mask = (self.adj_g if side is Side.G else self.adj_h)[rows]
            vals = np.where(mask, vals, _BIG)
        return vals

    def side_min(self, r: np.ndarray, side: Side) -> np.ndarray:
        return self.side_values(r, side).min(axis=-1)

    def _fix(self, step: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        w = np.full(self.C + 1, _BIG, dtype=np.int64)
        while True:
            nw = np.full(self.C + 1, _BIG, dtype=np.int64)
            nw[: self.C] = step(w)
            if self.continuous:
                nw[0] = _BIG
            if np.array_equal(nw, w):
                return w
            w = nw

    def solve_full(self) -> np.ndarray:
        if "full" not in self.W:
            def step(w):
                r = self.r_table(w)
                return np.minimum(self.side_min(r, Side.G), self.side_min(r, Side.H))
            self.W["full"] = self._fix(step)
        return self.W["full"]

    def solve_layers(self, i: int) -> None:
        """Contexts ``(side, j)`` for ``j < i``; each layer only looks one layer down."""
        for j in range(i):
            for s in (Side.G, Side.H):
                if (s, j) in self.W:
                    continue
                if j == 0:
                    jump = None
                else:
                    jump = self.side_min(self.r_table(self.W[(s.other, j - 1)]), s.other)

                def step(w, s=s, jump=jump):
                    own = self.side_min(self.r_table(w), s)
                    return own if jump is None else np.minimum(own, jump)

                self.W[(s, j)] = self._fix(step)

    def root(self, ctx, side: Side) -> int:
        r = self.r_table(self.W[ctx], slice(0, 1))
        return int(self.side_values(r, side, slice(0, 1)).min())


_ENGINES: dict = {}


def _engine(g: ColoredGraph, h: ColoredGraph, mode: GameMode) -> _Engine:
    n_ctx = 1 if mode.variant == "full" else 2 * mode.i
    key = (g, h, mode.k, mode.continuous)
    eng = _ENGINES.get(key)
    if eng is None:
        eng = _Engine(g, h, mode.k, mode.position_limit, n_ctx, mode.continuous)
        if len(_ENGINES) > 8:
            _ENGINES.clear()
        _ENGINES[key] = eng
    elif eng.C * eng.P * n_ctx > mode.position_limit:
        raise PositionLimitExceeded(eng.C * eng.P * n_ctx, mode.position_limit)
    return eng


def clear_cache() -> None:
    _ENGINES.clear()


class ValueTable:
    """Game values for one ``(G, H, mode)``; look positions up with ``table[pos]``."""

    def __init__(self, g: ColoredGraph, h: ColoredGraph, mode: GameMode, engine: _Engine):
        self.g, self.h, self.mode = g, h, mode
        self._eng = engine
        if mode.variant == "full":
            w = engine.solve_full()
            root = int(w[0]) if not mode.continuous else min(
                engine.root("full", Side.G), engine.root("full", Side.H)
            )
        else:
            engine.solve_layers(mode.i)
            side = mode.first_side
            root = engine.root((side, mode.i - 1), side)
        self.root_value: NatInf = _to_natinf(root)
        self.positions_explored = engine.C * engine.P * (1 if mode.variant == "full" else 2 * mode.i)

    def _ctx(self, pos: GamePosition):
        if self.mode.variant == "full":
            return "full"
        return (pos.last_side, pos.jumps_left)

    def _board_ids(self, pos: GamePosition) -> Optional[list[int]]:
        nH = self.h.n
        ids = []
        lookup = self._eng.pair_index
        for u, v in pos.board():
            j = lookup.get(u * nH + v)
            if j is None:
                return None
            ids.append(j)
        return ids

    def value(self, pos: GamePosition) -> NatInf:
        if len(pos.placements) != self.mode.k:
            raise ValueError(f"position has {len(pos.placements)} slots, game has {self.mode.k}")
        if pos.is_initial:
            if any(p is not None for p in pos.placements):
                raise ValueError("initial position cannot hold pebbles")
            return self.root_value
        if not check_partial_iso(self.g, self.h, pos.placements):
            return 0
        eng, board = self._eng, self._board_ids(pos)
        w = eng.W[self._ctx(pos)]
        subsets = [board[:j] + board[j + 1 :] for j in range(len(board))]
        if len(board) <= self.mode.k - 1:
            subsets.append(board)
        return _to_natinf(min(int(w[eng.config_id(s)]) for s in subsets))

    __getitem__ = value

    def move_row(self, pos: GamePosition, slot: int, side: Side) -> np.ndarray:
        """Rounds guaranteed (this one included) by moving ``slot`` to each vertex of ``side``."""
        eng, mode = self._eng, self.mode
        rest = list(pos.placements)
        rest[slot] = None
        rest_ids = self._board_ids(GamePosition(tuple(rest)))
        c = eng.config_id(rest_ids)
        nxt = apply_move(mode, pos, Move(slot, side, 0), 0)
        ctx = "full" if mode.variant == "full" else (nxt.last_side, nxt.jumps_left)
        r = eng.r_table(eng.W[ctx], slice(c, c + 1))
        vals = eng.side_values(r, side, slice(c, c + 1))[0]
        if eng.continuous and not pos.is_initial and not rest_ids:
            vals = np.full_like(vals, _BIG)
        return vals

    def move_values(self, pos: GamePosition) -> Iterator[tuple[Move, NatInf]]:
        """Every legal Spoiler move with the round count it guarantees."""
        for slot in range(self.mode.k):
            for side in legal_sides(self.mode, pos):
                for x, val in enumerate(self.move_row(pos, slot, side)):
                    yield Move(slot, side, x), _to_natinf(int(val))

    def __repr__(self) -> str:
        return f"ValueTable(mode={self.mode}, root_value={self.root_value}, positions={self.positions_explored})"


def solve(g: ColoredGraph, h: ColoredGraph, mode: GameMode) -> ValueTable:
    return ValueTable(g, h, mode, _engine(g, h, mode))


def distinguishing_depth(g: ColoredGraph, h: ColoredGraph, mode: GameMode) -> NatInf:
    return solve(g, h, mode).root_value


def alternation_number(
    g: ColoredGraph, h: ColoredGraph, k: int, position_limit: int = DEFAULT_POSITION_LIMIT
) -> NatInf:
    """Least ``i`` such that the Sigma_i or Pi_i game is won by Spoiler."""
    full = distinguishing_depth(g, h, GameMode.full(k, position_limit=position_limit))
    if full == INF:
        return INF
    for i in range(1, int(full) + 1):
        sig = distinguishing_depth(g, h, GameMode.sigma(k, i, position_limit=position_limit))
        if sig < INF:
            return i
        if distinguishing_depth(g, h, GameMode.pi(k, i, position_limit=position_limit)) < INF:
            return i
    raise AssertionError("alternation search exceeded the full-game depth")


class SpoilerStrategy:
    """Optimal Spoiler moves, computed on demand from a value table.

    ``strategy[pos]`` is defined for positions with finite value >= 1 and
    returns the least ``(slot, side, vertex)`` move that attains the value.
    """

    def __init__(self, table: ValueTable):
        self.table = table
        self.mode = table.mode
        self._cache: dict[GamePosition, Move] = {}

    def __contains__(self, pos: object) -> bool:
        if not isinstance(pos, GamePosition):
            return False
        val = self.table.value(pos)
        return 1 <= val < INF

    def __getitem__(self, pos: GamePosition) -> Move:
        hit = self._cache.get(pos)
        if hit is not None:
            return hit
        target = self.table.value(pos)
        if not 1 <= target < INF:
            raise KeyError(pos)
        best = None
        for slot in range(self.mode.k):
            for side in legal_sides(self.mode, pos):
                hits = np.flatnonzero(self.table.move_row(pos, slot, side) == target)
                if len(hits):
                    best = Move(slot, side, int(hits[0]))
                    break
            if best is not None:
                break
        if best is None:
            raise AssertionError("no move attains the position value")
        self._cache[pos] = best
        return best

    def play(self, duplicator: Callable[[GamePosition, Move], int], start: Optional[GamePosition] = None) -> int:
        """Play against ``duplicator`` and return the number of rounds until Spoiler wins."""
        g, h = self.table.g, self.table.h
        pos = start or GamePosition.initial(self.mode)
        rounds = 0
        while True:
            move = self[pos]
            reply = duplicator(pos, move)
            pos = apply_move(self.mode, pos, move, reply)
            rounds += 1
            if not check_partial_iso(g, h, pos.placements):
                return rounds


def extract_spoiler_strategy(table: ValueTable) -> SpoilerStrategy:
    if table.root_value == INF:
        raise NotDistinguishable("Duplicator survives forever; there is no winning strategy")
    return SpoilerStrategy(table)
