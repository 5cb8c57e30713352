"""Constructors for the graph families used in the experiments.

Every pair constructor returns ``(G, H)`` where Spoiler is meant to win
starting in ``G``. Vertex ids are deterministic: lifted graphs put their root
at id 0 and then lay out the branches in construction order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .structures import NONE_COLOR, ColoredGraph, GraphError, make_graph

GRAY = "gray"
RED, BLUE, GREEN = "red", "blue", "green"
APRICOT, CYAN, DANDELION = "apricot", "cyan", "dandelion"


class GrayCollision(GraphError):
    pass


class NotMultipleOfThree(GraphError):
    pass


class SizeTooSmall(GraphError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: dict[str, int] = field(default_factory=dict)

    def build(self) -> tuple[ColoredGraph, ColoredGraph]:
        builders = {
            "colored_tree": colored_tree_pair,
            "uncolored_tree": uncolored_tree_pair,
            "ladder": ladder_pair,
            "cycle": cycle_pair,
            "padded_cycle": padded_cycle_pair,
            "succinct_cycle": succinct_cycle_pair,
        }
        if self.family not in builders:
            raise ValueError(f"unknown pair family {self.family!r}")
        return builders[self.family](**self.params)


class _Builder:
    """Accumulates vertices and edges; ``attach`` copies a whole graph in."""

    def __init__(self) -> None:
        self.colors: list[str] = []
        self.edges: list[tuple[int, int]] = []

    def vertex(self, color: str) -> int:
        self.colors.append(color)
        return len(self.colors) - 1

    def attach(self, g: ColoredGraph) -> int:
        offset = len(self.colors)
        self.colors.extend(g.colors)
        self.edges.extend((u + offset, v + offset) for u, v in g.edges)
        return offset

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def build(self) -> ColoredGraph:
        return make_graph(len(self.colors), self.edges, self.colors)


def _lift_once(
    branches: Sequence[ColoredGraph],
    roots: Sequence[int] | None,
    root_color: str,
) -> ColoredGraph:
    b = _Builder()
    top = b.vertex(root_color)
    for g, r in zip(branches, roots if roots is not None else [None] * len(branches)):
        off = b.attach(g)
        if r is None:
            for v in range(g.n):
                b.edge(top, off + v)
        else:
            b.edge(top, off + r)
    return b.build()


def lift_pair(
    g0: ColoredGraph,
    h0: ColoredGraph,
    i: int,
    branching: int = 3,
    *,
    base_roots: tuple[int, int] | None = None,
    root_color: str = GRAY,
) -> tuple[ColoredGraph, ColoredGraph]:
    """Lift ``(g0, h0)`` through ``i`` levels of the tree-of-copies gadget.

    At level 1 the new root is universal over the copies of the base graphs,
    unless ``base_roots`` names a root in each base graph, in which case only
    those roots are joined to the new root (the uncolored tree variant). From
    level 2 on the root is joined to the root (id 0) of every branch.
    """
    if i < 0:
        raise ValueError("lifting level must be >= 0")
    if branching < 3:
        raise ValueError("branching must be >= 3")
    if root_color == GRAY and (GRAY in g0.colors or GRAY in h0.colors):
        raise GrayCollision("base graphs already use the reserved color 'gray'")
    if i == 0:
        return g0, h0
    rg, rh = base_roots if base_roots is not None else (None, None)
    roots_g = None if rg is None else [rg] + [rh] * (branching - 1)
    roots_h = None if rh is None else [rh] * branching
    g = _lift_once([g0] + [h0] * (branching - 1), roots_g, root_color)
    h = _lift_once([h0] * branching, roots_h, root_color)
    for _ in range(i - 1):
        g, h = (
            _lift_once([g] * (branching - 1) + [h], [0] * branching, root_color),
            _lift_once([g] * branching, [0] * branching, root_color),
        )
    return g, h


def colored_tree_pair(i: int) -> tuple[ColoredGraph, ColoredGraph]:
    if i < 1:
        raise ValueError("level must be >= 1")
    return lift_pair(make_graph(1, colors=RED), make_graph(1, colors=BLUE), i, 3)


def uncolored_tree_pair(k: int, i: int) -> tuple[ColoredGraph, ColoredGraph]:
    """Uncolored trees for ``k`` variables: a cherry versus a 3-path at the base.

    The base graphs are isomorphic as graphs and differ only as rooted trees:
    the cherry is rooted at its center, the path at an end.
    """
    if k < 3 or i < 1:
        raise ValueError("need k >= 3 and i >= 1")
    cherry = make_graph(3, [(0, 1), (0, 2)])
    path = make_graph(3, [(0, 1), (1, 2)])
    return lift_pair(cherry, path, i, k + 1, base_roots=(0, 0), root_color=NONE_COLOR)


def _ladder_block(m: int, top_left: str, top_right: str) -> ColoredGraph:
    """Rungs 0..m-1 of two vertices each (2r left, 2r+1 right), rung 0 green.

    Consecutive rungs are joined by both rails and one diagonal; the diagonal
    leans right (lower-left to upper-right) above even rungs and left above
    odd rungs. There are no edges inside a rung.
    """
    colors = [NONE_COLOR] * (2 * m)
    colors[0] = colors[1] = GREEN
    colors[2 * (m - 1)] = top_left
    colors[2 * (m - 1) + 1] = top_right
    edges = []
    for r in range(m - 1):
        lo_l, lo_r, hi_l, hi_r = 2 * r, 2 * r + 1, 2 * r + 2, 2 * r + 3
        edges += [(lo_l, hi_l), (lo_r, hi_r)]
        edges.append((lo_l, hi_r) if r % 2 == 0 else (lo_r, hi_l))
    return make_graph(2 * m, edges, colors)


def ladder_halves(m: int) -> tuple[ColoredGraph, ColoredGraph]:
    """The two gluings of the red/blue and apricot/cyan ladders at the green rung."""
    if m < 2:
        raise SizeTooSmall("ladder needs m >= 2")
    a = _ladder_block(m, RED, BLUE)
    b = _ladder_block(m, APRICOT, CYAN)

    def glue(swap: bool) -> ColoredGraph:
        out = _Builder()
        out.attach(a)
        ids = {0: 1, 1: 0} if swap else {0: 0, 1: 1}
        for v in range(2, b.n):
            ids[v] = out.vertex(b.colors[v])
        out.edges.extend((ids[u], ids[v]) for u, v in b.edges)
        return out.build()

    return glue(False), glue(True)


def ladder_pair(m: int) -> tuple[ColoredGraph, ColoredGraph]:
    g_half, h_half = ladder_halves(m)
    return _double(g_half), _double(h_half)


def _double(g: ColoredGraph) -> ColoredGraph:
    b = _Builder()
    b.attach(g)
    b.attach(g)
    return b.build()


def _colored_cycle(length: int) -> _Builder:
    b = _Builder()
    palette = (APRICOT, BLUE, CYAN)
    for j in range(length):
        b.vertex(palette[j % 3])
    for j in range(length):
        b.edge(j, (j + 1) % length)
    return b


def cycle_pair(m: int) -> tuple[ColoredGraph, ColoredGraph]:
    """Colored cycles of length 3(2m-1) and 6m with dandelion pendants.

    In both graphs ``a_i, b_i, c_i`` occupy ids ``3i, 3i+1, 3i+2``; pendant
    vertices follow the cycle.
    """
    if m < 2:
        raise SizeTooSmall("cycle pair needs m >= 2")
    g = _colored_cycle(3 * (2 * m - 1))
    g.edge(0, g.vertex(DANDELION))
    h = _colored_cycle(6 * m)
    for i in range(2 * m):
        if i != m:
            h.edge(3 * i, h.vertex(DANDELION))
    return g.build(), h.build()


def padded_cycle_pair(m: int) -> tuple[ColoredGraph, ColoredGraph]:
    if m < 3 or m % 3:
        raise NotMultipleOfThree(f"padding needs m >= 3 divisible by 3, got {m}")
    g, h = cycle_pair(m)
    b = _Builder()
    b.attach(g)
    off = len(b.colors)
    ring = _colored_cycle(2 * m)
    b.colors.extend(ring.colors)
    b.edges.extend((u + off, v + off) for u, v in ring.edges)
    b.vertex(APRICOT)
    return b.build(), h


def dandelion_clique(h: ColoredGraph) -> ColoredGraph:
    ds = [v for v in range(h.n) if h.colors[v] == DANDELION]
    extra = [(u, v) for j, u in enumerate(ds) for v in ds[j + 1 :]]
    return make_graph(h.n, list(h.edges) + extra, h.colors)


def succinct_cycle_pair(m: int, i: int) -> tuple[ColoredGraph, ColoredGraph]:
    if m < 2 or i < 1:
        raise ValueError("need m >= 2 and i >= 1")
    g0, h0 = cycle_pair(m)
    return lift_pair(g0, dandelion_clique(h0), i, 3)


_NAMED_MIN = {"path": 1, "cycle": 3, "star": 1, "wheel": 4, "complete": 1, "empty": 1}


def named_graph(name: str, n: int) -> ColoredGraph:
    """Standard uncolored graphs; ``wheel(n)`` is a hub over ``C_{n-1}``."""
    if name not in _NAMED_MIN:
        raise ValueError(f"unknown graph family {name!r}")
    if n < _NAMED_MIN[name]:
        raise SizeTooSmall(f"{name} needs n >= {_NAMED_MIN[name]}, got {n}")
    if name == "path":
        edges = [(j, j + 1) for j in range(n - 1)]
    elif name == "cycle":
        edges = [(j, (j + 1) % n) for j in range(n)]
    elif name == "star":
        edges = [(0, j) for j in range(1, n)]
    elif name == "wheel":
        rim = n - 1
        edges = [(0, j) for j in range(1, n)] + [(1 + j, 1 + (j + 1) % rim) for j in range(rim)]
    elif name == "complete":
        edges = [(u, v) for u in range(n) for v in range(u + 1, n)]
    else:
        edges = []
    return make_graph(n, edges)
