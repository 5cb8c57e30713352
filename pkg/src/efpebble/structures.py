"""Vertex-colored undirected graphs and the JSON interchange format."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

NONE_COLOR = "none"


class GraphError(ValueError):
    """Raised when a raw graph description violates a structural invariant."""


class SelfLoop(GraphError):
    pass


class EndpointOutOfRange(GraphError):
    pass


class DuplicateVertexId(GraphError):
    pass


class MissingColor(GraphError):
    pass


class VertexClass(str, Enum):
    ISOLATED = "isolated"
    UNIVERSAL = "universal"
    OTHER = "other"


@dataclass(frozen=True)
class ColoredGraph:
    """Immutable finite graph on vertices ``0..n-1``.

    Edges are unordered pairs stored as ``(min, max)`` tuples in sorted order.
    Build instances through :func:`make_graph` or :func:`validate` so that the
    invariants hold; the constructor itself does not normalize.
    """

    n: int
    colors: tuple[str, ...]
    edges: tuple[tuple[int, int], ...]

    @cached_property
    def adjacency(self) -> np.ndarray:
        adj = np.zeros((self.n, self.n), dtype=bool)
        if self.edges:
            e = np.asarray(self.edges)
            adj[e[:, 0], e[:, 1]] = True
            adj[e[:, 1], e[:, 0]] = True
        adj.flags.writeable = False
        return adj

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        nbrs: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @property
    def vertices(self) -> range:
        return range(self.n)

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def adjacent(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u, v])

    def color_set(self) -> set[str]:
        return set(self.colors)

    def is_uncolored(self) -> bool:
        return all(c == NONE_COLOR for c in self.colors)

    def induced(self, keep: Iterable[int]) -> ColoredGraph:
        """Induced subgraph on ``keep``, relabeled in ascending vertex order."""
        order = sorted(set(keep))
        index = {v: i for i, v in enumerate(order)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return make_graph(len(order), edges, [self.colors[v] for v in order])

    def recolor(self, mapping: Mapping[str, str]) -> ColoredGraph:
        return ColoredGraph(self.n, tuple(mapping.get(c, c) for c in self.colors), self.edges)

    def __repr__(self) -> str:
        palette = sorted(set(self.colors))
        return f"ColoredGraph(n={self.n}, m={len(self.edges)}, colors={palette})"


def make_graph(
    n: int,
    edges: Iterable[Sequence[int]] = (),
    colors: Sequence[str] | str | None = None,
) -> ColoredGraph:
    """Build a validated graph from a vertex count, an edge list and colors.

    ``colors`` may be a full sequence, a single label applied to every vertex,
    or ``None`` for the reserved default label.
    """
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    if colors is None:
        cols = (NONE_COLOR,) * n
    elif isinstance(colors, str):
        cols = (colors,) * n
    else:
        cols = tuple(str(c) for c in colors)
        if len(cols) != n:
            raise MissingColor(f"expected {n} colors, got {len(cols)}")
    norm = set()
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise EndpointOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
        norm.add((min(u, v), max(u, v)))
    return ColoredGraph(n, cols, tuple(sorted(norm)))


def validate(raw: Mapping[str, Any]) -> ColoredGraph:
    """Turn a raw description into a :class:`ColoredGraph`.

    Two shapes are accepted: the canonical file shape
    ``{"vertices": [{"id": 0, "color": "red"}, ...], "edges": [[0, 1], ...]}``
    and the compact shape ``{"n": 2, "edges": [...], "colors": [...]}``.
    """
    edges = raw.get("edges", [])
    if "vertices" in raw:
        seen: dict[int, str] = {}
        for entry in raw["vertices"]:
            vid = int(entry["id"])
            if vid in seen:
                raise DuplicateVertexId(f"vertex id {vid} listed twice")
            seen[vid] = str(entry.get("color", NONE_COLOR))
        n = len(seen)
        missing = [i for i in range(n) if i not in seen]
        if missing:
            # ids must be exactly 0..n-1
            raise MissingColor(f"no vertex entry for ids {missing}")
        return make_graph(n, edges, [seen[i] for i in range(n)])
    if "n" not in raw:
        raise GraphError("raw graph needs 'vertices' or 'n'")
    n = int(raw["n"])
    colors = raw.get("colors")
    if isinstance(colors, Mapping):
        if any(i not in colors and str(i) not in colors for i in range(n)):
            raise MissingColor("color mapping does not cover every vertex")
        colors = [colors.get(i, colors.get(str(i))) for i in range(n)]
    return make_graph(n, edges, colors)


def to_dict(g: ColoredGraph) -> dict[str, Any]:
    return {
        "vertices": [{"id": v, "color": g.colors[v]} for v in range(g.n)],
        "edges": [[u, v] for u, v in g.edges],
    }


def dumps(g: ColoredGraph) -> str:
    return json.dumps(to_dict(g), separators=(",", ":"))


def loads(text: str) -> ColoredGraph:
    return validate(json.loads(text))


def save(g: ColoredGraph, path: str | Path) -> None:
    Path(path).write_text(dumps(g) + "\n")


def load(path: str | Path) -> ColoredGraph:
    return loads(Path(path).read_text())


def complement(g: ColoredGraph) -> ColoredGraph:
    edges = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if not g.adjacency[u, v]]
    return ColoredGraph(g.n, g.colors, tuple(edges))


def disjoint_union(g: ColoredGraph, h: ColoredGraph) -> ColoredGraph:
    shift = g.n
    edges = g.edges + tuple((u + shift, v + shift) for u, v in h.edges)
    return ColoredGraph(g.n + h.n, g.colors + h.colors, edges)


def vertex_class(g: ColoredGraph, v: int) -> VertexClass:
    if not 0 <= v < g.n:
        raise IndexError(f"vertex {v} out of range for n={g.n}")
    deg = g.degree(v)
    if deg == 0:
        return VertexClass.ISOLATED
    if deg == g.n - 1:
        return VertexClass.UNIVERSAL
    return VertexClass.OTHER


def components(g: ColoredGraph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: ColoredGraph) -> bool:
    # the 0-vertex graph counts as connected
    return len(components(g)) <= 1


def is_tree(g: ColoredGraph) -> bool:
    return g.n >= 1 and len(g.edges) == g.n - 1 and is_connected(g)


def distances_from(g: ColoredGraph, source: int) -> list[int]:
    """BFS distances; unreachable vertices get -1."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.neighbors[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def to_networkx(g: ColoredGraph):
    import networkx as nx

    out = nx.Graph()
    out.add_nodes_from((v, {"color": g.colors[v]}) for v in range(g.n))
    out.add_edges_from(g.edges)
    return out


def from_networkx(nxg, color: str = NONE_COLOR) -> ColoredGraph:
    order = sorted(nxg.nodes)
    index = {v: i for i, v in enumerate(order)}
    colors = [nxg.nodes[v].get("color", color) for v in order]
    return make_graph(len(order), ((index[u], index[v]) for u, v in nxg.edges), colors)


def isomorphic(g: ColoredGraph, h: ColoredGraph) -> bool:
    """Color-preserving isomorphism test (VF2 via networkx)."""
    import networkx as nx

    if g.n != h.n or len(g.edges) != len(h.edges) or sorted(g.colors) != sorted(h.colors):
        return False
    return nx.is_isomorphic(
        to_networkx(g), to_networkx(h), node_match=lambda a, b: a["color"] == b["color"]
    )
