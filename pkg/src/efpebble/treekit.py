"""Colored trees: canonical rooted codes, centers, branching index and truncation."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .structures import ColoredGraph, GraphError, distances_from, is_tree

RootedCode = tuple  # (color, tuple of child codes in sorted order)


class NotATree(GraphError):
    pass


def _require_tree(t: ColoredGraph) -> None:
    if not is_tree(t):
        raise NotATree("input is not a tree")


@dataclass(frozen=True)
class TreeCenter:
    center: tuple[int, ...]
    eccentricity: tuple[int, ...]
    diameter: int
    radius: int


def tree_center(t: ColoredGraph) -> TreeCenter:
    _require_tree(t)
    ecc = tuple(max(distances_from(t, v)) for v in range(t.n))
    r = min(ecc)
    return TreeCenter(tuple(v for v in range(t.n) if ecc[v] == r), ecc, max(ecc), r)


def _subtree_codes(t: ColoredGraph, root: int, parent: Optional[int] = None) -> dict[int, RootedCode]:
    """Codes of every vertex in the subtree hanging from ``root`` (away from ``parent``)."""
    order, par = [root], {root: parent}
    for v in order:
        for w in t.neighbors[v]:
            if w != par[v]:
                par[w] = v
                order.append(w)
    kids: dict[int, list[RootedCode]] = {v: [] for v in order}
    codes: dict[int, RootedCode] = {}
    for v in reversed(order):
        codes[v] = (t.colors[v], tuple(sorted(kids[v])))
        if par[v] is not None and par[v] in kids:
            kids[par[v]].append(codes[v])
    return codes


def rooted_code(t: ColoredGraph, root: int) -> RootedCode:
    _require_tree(t)
    if not 0 <= root < t.n:
        raise IndexError(f"root {root} out of range")
    return _subtree_codes(t, root)[root]


def branches(t: ColoredGraph, v: int) -> list[tuple[int, RootedCode, int]]:
    """``(u, code, size)`` for each branch at ``v``, rooted at the neighbor ``u``."""
    out = []
    for u in t.neighbors[v]:
        codes = _subtree_codes(t, u, v)
        out.append((u, codes[u], len(codes)))
    return out


def branching_index(t: ColoredGraph) -> int:
    _require_tree(t)
    if t.n < 2:
        raise ValueError("branching index needs at least two vertices")
    best = 0
    for v in range(t.n):
        counts = Counter(code for _, code, _ in branches(t, v))
        best = max(best, max(counts.values()))
    return best


def separator(t: ColoredGraph) -> int:
    """Least vertex none of whose branches has more than half of the vertices."""
    _require_tree(t)
    for v in range(t.n):
        if all(2 * size <= t.n for _, _, size in branches(t, v)):
            return v
    raise AssertionError("every tree has a separator")


def truncate_with_mapping(t: ColoredGraph, k: int) -> tuple[ColoredGraph, dict[int, int]]:
    """``T mod k`` and the map from surviving original ids to new ids.

    Heights are distances to the nearest central vertex of the input tree.
    Vertices are handled from the highest level down (ties by id); at each
    vertex, upward branches with equal codes are cut down to the ``k`` with
    the smallest root ids.
    """
    _require_tree(t)
    if k < 2:
        # with one copy kept the center can move, and a second pass would cut again
        raise ValueError("k must be >= 2")
    centers = tree_center(t).center
    height = [min(d) for d in zip(*(distances_from(t, c) for c in centers))]
    up = {v: [w for w in t.neighbors[v] if height[w] > height[v]] for v in range(t.n)}
    alive = [True] * t.n
    codes: dict[int, RootedCode] = {}

    def drop(v: int) -> None:
        stack = [v]
        while stack:
            x = stack.pop()
            alive[x] = False
            stack.extend(up[x])

    for v in sorted(range(t.n), key=lambda x: (-height[x], x)):
        if not alive[v]:
            continue
        classes: dict[RootedCode, list[int]] = {}
        for w in sorted(w for w in up[v] if alive[w]):
            classes.setdefault(codes[w], []).append(w)
        for members in classes.values():
            for w in members[k:]:
                drop(w)
        codes[v] = (t.colors[v], tuple(sorted(codes[w] for w in up[v] if alive[w])))
    keep = [v for v in range(t.n) if alive[v]]
    mapping = {v: j for j, v in enumerate(keep)}
    return t.induced(keep), mapping


def truncate(t: ColoredGraph, k: int) -> ColoredGraph:
    return truncate_with_mapping(t, k)[0]
