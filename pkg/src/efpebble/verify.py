"""Experiment harness: each criterion builds its instances and checks solved values against bounds.

A :class:`Session` routes every solve through one place so that cross-cutting
checks (the general depth bound and formula soundness) can be evaluated over
all games played by the other criteria.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Iterable, Optional

import networkx as nx
import numpy as np

from . import generators as gen
from .fo2type import graph_type, type_sentence
from .formula import evaluate, formula_from_strategy, fragment_info
from .game import (
    INF,
    GameMode,
    NatInf,
    PositionLimitExceeded,
    solve,
)
from .structures import ColoredGraph, from_networkx, make_graph
from .treekit import truncate

PASS, FAIL, SKIP = "pass", "fail", "skipped"


def _jsonable(x: Any) -> Any:
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.integer):
        return int(x)
    return x


@dataclass
class Row:
    params: dict[str, Any]
    computed: dict[str, Any]
    bounds: dict[str, Any]
    status: str
    reason: str = ""
    required: bool = True

    def to_dict(self) -> dict[str, Any]:
        out = {
            "params": self.params,
            "computed": self.computed,
            "bounds": self.bounds,
            "status": self.status,
        }
        if self.reason:
            out["reason"] = self.reason
        return _jsonable(out)


@dataclass
class Report:
    criterion: str
    rows: list[Row]
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r.status != FAIL for r in self.rows)

    @property
    def limit_hit(self) -> bool:
        return any(r.status == SKIP and r.required for r in self.rows)

    def summary(self) -> str:
        counts = {s: sum(r.status == s for r in self.rows) for s in (PASS, FAIL, SKIP)}
        verdict = "PASS" if self.passed else "FAIL"
        extra = f", {counts[SKIP]} skipped" if counts[SKIP] else ""
        return f"{verdict} {self.criterion}: {counts[PASS]}/{len(self.rows)} rows pass{extra}"

    def to_dict(self) -> dict[str, Any]:
        """Canonical content; timings are kept out so reports compare bit for bit."""
        return {"criterion": self.criterion, "passed": self.passed, "rows": [r.to_dict() for r in self.rows]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def reports_to_csv(reports: Iterable[Report]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(["criterion", "status", "params", "computed", "bounds", "reason"])
    for rep in reports:
        for r in rep.rows:
            d = r.to_dict()
            w.writerow(
                [
                    rep.criterion,
                    r.status,
                    json.dumps(d["params"], sort_keys=True),
                    json.dumps(d["computed"], sort_keys=True),
                    json.dumps(d["bounds"], sort_keys=True),
                    r.reason,
                ]
            )
    return buf.getvalue()


# session ----------------------------------------------------------------


@dataclass
class SolveRecord:
    criterion: str
    label: str
    n_g: int
    n_h: int
    k: int
    mode: str
    value: NatInf


@dataclass
class FormulaCheck:
    criterion: str
    label: str
    mode: str
    value: NatInf
    qdepth: int
    sigma_level: int
    pi_level: int
    true_on_g: bool
    false_on_h: bool

    @property
    def ok(self) -> bool:
        info_ok = self.qdepth == self.value
        variant, _, level = self.mode.partition(":")
        if variant == "sigma":
            info_ok = info_ok and self.sigma_level <= int(level)
        elif variant == "pi":
            info_ok = info_ok and self.pi_level <= int(level)
        return info_ok and self.true_on_g and self.false_on_h


class Session:
    """Solves games on behalf of criteria and keeps a log of every result."""

    def __init__(self, check_formulas: bool = True, position_limit: int = 50_000_000):
        self.check_formulas = check_formulas
        self.position_limit = position_limit
        self.records: list[SolveRecord] = []
        self.formula_checks: list[FormulaCheck] = []
        self._seen: set = set()

    def mode(self, text: str, k: int, **kw) -> GameMode:
        return GameMode.parse(text, k, position_limit=self.position_limit, **kw)

    def depth(
        self, criterion: str, label: str, g: ColoredGraph, h: ColoredGraph, mode: GameMode, formulas: bool = True
    ) -> NatInf:
        table = solve(g, h, mode)
        value = table.root_value
        if mode.continuous:
            return value
        self.records.append(SolveRecord(criterion, label, g.n, h.n, mode.k, str(mode), value))
        key = (g, h, mode)
        if formulas and self.check_formulas and value < INF and key not in self._seen:
            self._seen.add(key)
            f = formula_from_strategy(g, h, table)
            info = fragment_info(f)
            self.formula_checks.append(
                FormulaCheck(
                    criterion,
                    label,
                    str(mode),
                    value,
                    info.qdepth,
                    info.sigma_level,
                    info.pi_level,
                    evaluate(f, g),
                    not evaluate(f, h),
                )
            )
        return value

    def alternation(self, criterion: str, label: str, g: ColoredGraph, h: ColoredGraph, k: int) -> NatInf:
        full = self.depth(criterion, label, g, h, self.mode("full", k))
        if full == INF:
            return INF
        for i in range(1, int(full) + 1):
            if self.depth(criterion, label, g, h, self.mode(f"sigma:{i}", k)) < INF:
                return i
            if self.depth(criterion, label, g, h, self.mode(f"pi:{i}", k)) < INF:
                return i
        raise AssertionError("alternation search exceeded the full-game depth")


def _row(params, computed, bounds, ok: bool, reason: str = "") -> Row:
    return Row(params, computed, bounds, PASS if ok else FAIL, reason)


def _skip(params, exc: PositionLimitExceeded, required: bool = False) -> Row:
    reason = f"documented limit: needs {exc.required} positions, limit {exc.limit}"
    return Row(params, {}, {}, SKIP, reason, required)


# corpora ----------------------------------------------------------------


@lru_cache(maxsize=None)
def small_graphs(max_n: int = 6) -> tuple[ColoredGraph, ...]:
    """All uncolored graphs with 1..max_n vertices up to isomorphism (atlas order)."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    return tuple(from_networkx(g) for g in nx.graph_atlas_g() if 1 <= g.number_of_nodes() <= max_n)


@lru_cache(maxsize=None)
def small_trees(max_n: int = 8) -> tuple[ColoredGraph, ...]:
    out = [make_graph(1)]
    for n in range(2, max_n + 1):
        out.extend(from_networkx(t) for t in nx.nonisomorphic_trees(n))
    return tuple(out)


TREE_COLORS = ("red", "blue")


def random_tree(rng: np.random.Generator, n: int, colors: tuple[str, ...] = TREE_COLORS) -> ColoredGraph:
    if n == 1:
        edges = []
    elif n == 2:
        edges = [(0, 1)]
    else:
        edges = list(nx.from_prufer_sequence([int(x) for x in rng.integers(0, n, n - 2)]).edges)
    return make_graph(n, edges, [colors[int(c)] for c in rng.integers(0, len(colors), n)])


def _move_leaf(rng: np.random.Generator, t: ColoredGraph) -> ColoredGraph:
    leaves = [v for v in range(t.n) if t.degree(v) == 1]
    leaf = leaves[int(rng.integers(len(leaves)))]
    rest = [v for v in range(t.n) if v != leaf]
    target = rest[int(rng.integers(len(rest)))]
    edges = [e for e in t.edges if leaf not in e] + [(leaf, target)]
    return make_graph(t.n, edges, t.colors)


def tree_pairs(count: int = 50, max_n: int = 16, seed: int = 3) -> list[tuple[ColoredGraph, ColoredGraph]]:
    """Seeded colored tree pairs of equal size: independent trees, moved leaves, single recolorings."""
    rng = np.random.default_rng(seed)
    out = []
    for j in range(count):
        n = int(rng.integers(4, max_n + 1))
        t = random_tree(rng, n)
        kind = j % 3
        if kind == 0:
            u = random_tree(rng, n)
        elif kind == 1:
            u = _move_leaf(rng, t)
        else:
            v = int(rng.integers(n))
            cols = list(t.colors)
            cols[v] = TREE_COLORS[1 - TREE_COLORS.index(cols[v])]
            u = make_graph(n, t.edges, cols)
        out.append((t, u))
    return out


def bushy_tree(rng: np.random.Generator, k: int, max_n: int = 12) -> ColoredGraph:
    """A small random tree with more than ``k`` identical branches hung at one or two vertices."""
    base = random_tree(rng, int(rng.integers(2, 5)))
    colors, edges = list(base.colors), list(base.edges)
    for _ in range(2):
        size = int(rng.integers(1, 3))
        copies = int(rng.integers(k + 1, k + 3))
        if len(colors) + size * copies > max_n:
            continue
        branch = random_tree(rng, size)
        at = int(rng.integers(len(colors)))
        for _ in range(copies):
            off = len(colors)
            colors.extend(branch.colors)
            edges.extend((u + off, v + off) for u, v in branch.edges)
            edges.append((at, off))
    return make_graph(len(colors), edges, colors)


def truncation_samples(count: int = 30, seed: int = 11) -> list[tuple[int, ColoredGraph, ColoredGraph]]:
    """``(k, T, G)`` with ``T`` rich in repeated branches and ``G`` a nearby or random partner."""
    rng = np.random.default_rng(seed)
    out = []
    for j in range(count):
        k = 2 + j % 2
        t = bushy_tree(rng, k)
        kind = (j // 2) % 4
        if kind == 0:
            g = truncate(t, k)
        elif kind == 1:
            g = _move_leaf(rng, truncate(t, k))
        elif kind == 2:
            g = random_tree(rng, int(rng.integers(3, 11)))
        else:
            n = int(rng.integers(3, 11))
            nxg = nx.gnp_random_graph(n, 0.3, seed=int(rng.integers(1 << 30)))
            g = make_graph(n, nxg.edges, [TREE_COLORS[int(c)] for c in rng.integers(0, 2, n)])
        if g.n > 10:
            g = random_tree(rng, 10)
        out.append((k, t, g))
    return out


# independent oracle -----------------------------------------------------


def minimax_depth(
    g: ColoredGraph, h: ColoredGraph, k: int, variant: str = "full", i: Optional[int] = None, cap: int = 8
) -> NatInf:
    """Depth-capped exhaustive game-tree search over explicit slot positions.

    Returns the least number of rounds Spoiler needs if it is at most ``cap``,
    otherwise infinity. Shares no code with the table-based solver.
    """
    ag, ah = g.adjacency, h.adjacency
    cg, ch = g.colors, h.colors

    def consistent(slots, j) -> bool:
        u, v = slots[j]
        if cg[u] != ch[v]:
            return False
        for t, p in enumerate(slots):
            if t == j or p is None:
                continue
            a, b = p
            if (a == u) != (b == v) or ag[a, u] != ah[b, v]:
                return False
        return True

    # memo: position -> exact value, or the largest budget known to be insufficient
    exact: dict = {}
    fails: dict = {}

    def sides(last, jumps):
        if variant == "full":
            return ((0, None), (1, None))
        if last is None:
            return ((0 if variant == "sigma" else 1, i - 1),)
        opts = [(last, jumps)]
        if jumps > 0:
            opts.append((1 - last, jumps - 1))
        return tuple(opts)

    def best(slots, last, jumps, budget) -> NatInf:
        key = (slots, last, jumps)
        if key in exact:
            return exact[key] if exact[key] <= budget else INF
        if fails.get(key, -1) >= budget or budget <= 0:
            return INF
        result = INF
        for side, nj in sides(last, jumps):
            mine, theirs = (g.n, h.n) if side == 0 else (h.n, g.n)
            for j in range(k):
                for x in range(mine):
                    worst = 0
                    limit = min(budget, result - 1) if result < INF else budget
                    for y in range(theirs):
                        nxt = list(slots)
                        nxt[j] = (x, y) if side == 0 else (y, x)
                        if not consistent(nxt, j):
                            r = 1
                        else:
                            r = 1 + best(tuple(nxt), side, nj, limit - 1)
                        worst = max(worst, r)
                        if worst > limit:
                            break
                    if worst <= limit:
                        result = worst
        if result <= budget:
            exact[key] = result
            return result
        fails[key] = max(fails.get(key, -1), budget)
        return INF

    return best((None,) * k, None, i - 1 if variant != "full" else None, cap)


# criteria ---------------------------------------------------------------


def _bound_ok(value: NatInf, upper: NatInf) -> bool:
    return value < INF and value <= upper


def crit_thm1(session: Session, max_i: int = 3) -> list[Row]:
    rows = []
    for i in range(1, max_i + 1):
        g, h = gen.colored_tree_pair(i)
        label = f"colored_tree_pair({i})"
        sig = session.depth("thm1-colored-trees", label, g, h, session.mode(f"sigma:{i}", 2))
        pi = session.depth("thm1-colored-trees", label, g, h, session.mode(f"pi:{i}", 2))
        alt = session.alternation("thm1-colored-trees", label, g, h, 2)
        ok = sig <= i and pi == INF and alt == i
        rows.append(
            _row({"i": i, "n": g.n}, {"sigma": sig, "pi": pi, "alternation": alt}, {"sigma_max": i, "pi": INF, "alternation": i}, ok)
        )
    return rows


def crit_thm2(session: Session, max_i: int = 2) -> list[Row]:
    rows = []
    for i in range(1, max_i + 1):
        params = {"k": 3, "i": i}
        g, h = gen.uncolored_tree_pair(3, i)
        params["n"] = g.n
        label = f"uncolored_tree_pair(3,{i})"
        try:
            sig = session.depth("thm2-uncolored-trees", label, g, h, session.mode("sigma:1" if i == 1 else f"sigma:{i}", 3))
            pi = session.depth("thm2-uncolored-trees", label, g, h, session.mode("pi:1" if i == 1 else f"pi:{i}", 3))
        except PositionLimitExceeded as exc:
            rows.append(_skip(params, exc, required=i == 1))
            continue
        rows.append(_row(params, {"sigma": sig, "pi": pi}, {"sigma_max": i + 5, "pi": INF}, sig <= i + 5 and pi == INF))
    return rows


def crit_thm3(session: Session, count: int = 50, max_n: int = 16) -> list[Row]:
    rows = []
    for j, (t, u) in enumerate(tree_pairs(count, max_n)):
        d = session.depth("thm3-tree-log-bound", f"tree_pair#{j}", t, u, session.mode("full", 3))
        bound = 6 * math.log2(t.n)
        rows.append(_row({"sample": j, "n": t.n}, {"depth": d}, {"strict_upper": round(bound, 6)}, d == INF or d < bound))
    return rows


def crit_claim1(session: Session, count: int = 30) -> list[Row]:
    rows = []
    for j, (k, t, g) in enumerate(truncation_samples(count)):
        tk = truncate(t, k)
        mode = session.mode("full", k)
        a = session.depth("claim1-truncation", f"T#{j}", t, g, mode)
        b = session.depth("claim1-truncation", f"T#{j} mod {k}", tk, g, mode)
        rows.append(_row({"sample": j, "k": k, "n_t": t.n, "n_trunc": tk.n, "n_g": g.n}, {"depth": a, "depth_truncated": b}, {}, a == b))
    return rows


def crit_thm4(session: Session, max_m: int = 4) -> list[Row]:
    rows = []
    for m in range(2, max_m + 1):
        g, h = gen.ladder_pair(m)
        alt = session.alternation("thm4-ladder", f"ladder_pair({m})", g, h, 2)
        rows.append(_row({"m": m, "n": g.n}, {"alternation": alt}, {"alternation": m - 1}, alt == m - 1))
    return rows


def _cycle_bounds(m: int) -> tuple[int, int]:
    return 6 * m * m - 15 * m + 8, 6 * m * m - 3 * m + 2


def crit_thm5(session: Session, max_m: int = 4) -> list[Row]:
    rows = []
    cases = [("cycle_pair", m, *gen.cycle_pair(m)) for m in range(2, max_m + 1)]
    cases.append(("padded_cycle_pair", 3, *gen.padded_cycle_pair(3)))
    for name, m, g, h in cases:
        d = session.depth("thm5-cycle", f"{name}({m})", g, h, session.mode("sigma:1", 2))
        lo, hi = _cycle_bounds(m)
        rows.append(_row({"family": name, "m": m, "n_g": g.n, "n_h": h.n}, {"sigma1": d}, {"lower": lo, "upper": hi}, d < INF and lo <= d <= hi))
    return rows


def crit_lemma2(session: Session) -> list[Row]:
    rows = []
    cid = "lemma2-lifting"
    g0, h0 = gen.cycle_pair(2)
    bases = {
        "plain": (g0, h0, gen.lift_pair(g0, h0, 1, 3)),
        "succinct": (g0, gen.dandelion_clique(h0), gen.succinct_cycle_pair(2, 1)),
    }
    for name, (b_g, b_h, (g1, h1)) in bases.items():
        r = session.depth(cid, f"{name} base", b_g, b_h, session.mode("sigma:1", 2, continuous=True))
        d_exists = session.depth(cid, f"{name} base", b_g, b_h, session.mode("sigma:1", 2))
        sig1 = session.depth(cid, f"{name} lift", g1, h1, session.mode("sigma:1", 2))
        pi1 = session.depth(cid, f"{name} lift", g1, h1, session.mode("pi:1", 2))
        pi2 = session.depth(cid, f"{name} lift", g1, h1, session.mode("pi:2", 2))
        params = {"variant": name, "m": 2, "i": 1, "n_g": g1.n, "n_h": h1.n}
        upper = min(r, d_exists) + 1
        rows.append(_row({**params, "part": 1}, {"sigma1": sig1, "r": r, "exists_base": d_exists}, {"strict_upper": upper}, upper < INF and sig1 < upper))
        rows.append(_row({**params, "part": 2}, {"pi2": pi2, "exists_base": d_exists}, {"lower": d_exists}, pi2 >= d_exists))
        rows.append(_row({**params, "part": 3}, {"pi1": pi1}, {"pi1": INF}, pi1 == INF))
        if name == "succinct":
            s = session.depth(cid, f"{name} base", b_g, b_h, session.mode("sigma:2", 2, continuous=True))
            sig2 = session.depth(cid, f"{name} lift", g1, h1, session.mode("sigma:2", 2))
            ok = s < INF and sig2 <= s + 1
            rows.append(_row({**params, "part": 4}, {"sigma2": sig2, "s": s}, {"upper": s + 1 if s < INF else INF}, ok))
            gap = sig2 < INF and pi2 >= d_exists and sig2 < d_exists
            rows.append(_row({**params, "part": "gap"}, {"sigma2": sig2, "pi2": pi2, "exists_base": d_exists}, {}, gap))
    return rows


def crit_thm9(session: Session, max_n: int = 6) -> list[Row]:
    graphs = small_graphs(max_n)
    types = [graph_type(g) for g in graphs]
    cells: dict[tuple[int, int], dict[str, int]] = {}
    for (a, g), (b, h) in itertools.combinations(enumerate(graphs), 2):
        label = f"atlas({a},{b})"
        d = session.depth("thm9-collapse", label, g, h, session.mode("full", 2))
        cell = cells.setdefault((g.n, h.n), {"pairs": 0, "equivalent": 0, "type_mismatch": 0, "alternation_miss": 0})
        cell["pairs"] += 1
        same = types[a] == types[b]
        cell["equivalent"] += same
        if same != (d == INF):
            cell["type_mismatch"] += 1
        if d < INF:
            s = session.depth("thm9-collapse", label, g, h, session.mode("sigma:2", 2))
            if s == INF and session.depth("thm9-collapse", label, g, h, session.mode("pi:2", 2)) == INF:
                cell["alternation_miss"] += 1
    rows = []
    for (na, nb), cell in sorted(cells.items()):
        ok = cell["type_mismatch"] == 0 and cell["alternation_miss"] == 0
        rows.append(_row({"n_g": na, "n_h": nb}, dict(cell), {"type_mismatch": 0, "alternation_miss": 0}, ok))
    return rows


def crit_lemma4(session: Session, max_n: int = 6) -> list[Row]:
    graphs = small_graphs(max_n)
    types = [graph_type(g) for g in graphs]
    rows = []
    for t in sorted(set(types), key=lambda t: json.dumps(t.to_dict(), sort_keys=True)):
        f = type_sentence(t)
        info = fragment_info(f)
        wrong = sum(evaluate(f, g) != (tg == t) for g, tg in zip(graphs, types))
        members = sum(tg == t for tg in types)
        rows.append(
            _row(t.to_dict(), {"members": members, "misclassified": wrong, "altdepth": info.altdepth}, {"misclassified": 0, "altdepth_max": 2}, wrong == 0 and info.altdepth <= 2)
        )
    return rows


def crit_wheel(session: Session) -> list[Row]:
    rows = []
    for n in (5, 6, 7):
        c, w = gen.named_graph("cycle", n), gen.named_graph("wheel", n)
        label = f"C{n} vs W{n}"
        alt = session.alternation("remark-wheel", label, c, w, 2)
        sig = session.depth("remark-wheel", label, c, w, session.mode("sigma:1", 2))
        pi = session.depth("remark-wheel", label, c, w, session.mode("pi:1", 2))
        rows.append(_row({"n": n}, {"alternation": alt, "sigma1": sig, "pi1": pi}, {"alternation": 2, "sigma1": INF, "pi1": INF}, alt == 2 and sig == INF and pi == INF))
    return rows


def crit_thm8(session: Session) -> list[Row]:
    per: dict[str, dict[str, Any]] = {}
    for rec in session.records:
        if rec.mode == "full" or rec.value == INF:
            continue
        bound = (rec.n_g * rec.n_h) ** (rec.k - 1) + 1
        cell = per.setdefault(rec.criterion, {"finite_values": 0, "violations": 0, "max_value": 0})
        cell["finite_values"] += 1
        cell["max_value"] = max(cell["max_value"], rec.value)
        if rec.value > bound:
            cell["violations"] += 1
    return [_row({"source": src}, cell, {"violations": 0}, cell["violations"] == 0) for src, cell in sorted(per.items())]


def crit_formulas(session: Session) -> list[Row]:
    per: dict[str, dict[str, int]] = {}
    for chk in session.formula_checks:
        cell = per.setdefault(chk.criterion, {"formulas": 0, "failures": 0})
        cell["formulas"] += 1
        cell["failures"] += not chk.ok
    return [_row({"source": src}, cell, {"failures": 0}, cell["failures"] == 0) for src, cell in sorted(per.items())]


ORACLE_MODES = ("full", "sigma:1", "pi:1", "sigma:2", "pi:2")


def oracle_k3_sample(count: int = 20, seed: int = 5) -> list[tuple[ColoredGraph, ColoredGraph]]:
    rng = np.random.default_rng(seed)
    pool = [g for g in small_graphs(4) if g.n >= 2]
    out = []
    for _ in range(count):
        a, b = (pool[int(x)] for x in rng.integers(0, len(pool), 2))
        if rng.random() < 0.5:
            a = make_graph(a.n, a.edges, [TREE_COLORS[int(c)] for c in rng.integers(0, 2, a.n)])
            b = make_graph(b.n, b.edges, [TREE_COLORS[int(c)] for c in rng.integers(0, 2, b.n)])
        out.append((a, b))
    return out


def crit_oracle(session: Session, cap: int = 8, k3_count: int = 20) -> list[Row]:
    cases = []
    graphs = small_graphs(4)
    for g, h in itertools.product(graphs, repeat=2):
        for m in ORACLE_MODES:
            cases.append((2, m, g, h))
    k3 = oracle_k3_sample(k3_count)
    for g, h in k3:
        for m in ("full", "sigma:1"):
            cases.append((3, m, g, h))
    cells: dict[tuple[int, str], dict[str, int]] = {}
    for k, m, g, h in cases:
        solved = session.depth("oracle-equivalence", m, g, h, session.mode(m, k), formulas=False)
        variant, _, i = m.partition(":")
        oracle = minimax_depth(g, h, k, variant, int(i) if i else None, cap)
        expect = solved if solved <= cap else INF
        cell = cells.setdefault((k, m), {"pairs": 0, "mismatches": 0})
        cell["pairs"] += 1
        cell["mismatches"] += oracle != expect
    return [_row({"k": k, "mode": m, "cap": cap}, cell, {"mismatches": 0}, cell["mismatches"] == 0) for (k, m), cell in sorted(cells.items())]


@dataclass(frozen=True)
class Criterion:
    id: str
    title: str
    run: Callable[..., list[Row]]
    piggyback: bool = False


CRITERIA: dict[str, Criterion] = {
    c.id: c
    for c in [
        Criterion("thm1-colored-trees", "alternation on colored lifted trees", crit_thm1),
        Criterion("thm2-uncolored-trees", "uncolored lifted trees with three pebbles", crit_thm2),
        Criterion("thm3-tree-log-bound", "logarithmic depth on colored trees", crit_thm3),
        Criterion("claim1-truncation", "truncation preserves game values", crit_claim1),
        Criterion("thm4-ladder", "ladder alternation numbers", crit_thm4),
        Criterion("thm5-cycle", "quadratic existential depth on cycles", crit_thm5),
        Criterion("lemma2-lifting", "lifting bounds", crit_lemma2),
        Criterion("thm8-bound", "general depth bound over all solved games", crit_thm8, piggyback=True),
        Criterion("thm9-collapse", "two-variable hierarchy collapse on small graphs", crit_thm9),
        Criterion("lemma4-sentences", "type sentences", crit_lemma4),
        Criterion("remark-wheel", "cycle versus wheel", crit_wheel),
        Criterion("formula-soundness", "synthesized formulas model-check", crit_formulas, piggyback=True),
        Criterion("oracle-equivalence", "solver versus exhaustive minimax", crit_oracle),
    ]
}

_CAPPED = {"thm4-ladder": "max_m", "thm5-cycle": "max_m"}


def run_criterion(cid: str, session: Optional[Session] = None, **params) -> Report:
    """Run one criterion; piggyback criteria run the others first on a fresh session."""
    if cid not in CRITERIA:
        raise KeyError(f"unknown criterion {cid!r}; known: {', '.join(CRITERIA)}")
    crit = CRITERIA[cid]
    if session is None:
        session = Session()
        if crit.piggyback:
            for other in CRITERIA.values():
                if not other.piggyback:
                    other.run(session)
    t0 = time.perf_counter()
    rows = crit.run(session, **params)
    return Report(cid, rows, {"seconds": round(time.perf_counter() - t0, 3)})


def run_all(
    ids: Optional[Iterable[str]] = None,
    session: Optional[Session] = None,
    max_m: Optional[int] = None,
    on_report: Optional[Callable[[Report], None]] = None,
) -> list[Report]:
    """Run criteria, piggyback ones last so they see every solve; reports come back in registry order."""
    wanted = set(CRITERIA if ids is None else ids)
    session = session or Session()
    order = sorted((c for c in CRITERIA if c in wanted), key=lambda c: CRITERIA[c].piggyback)
    done = {}
    for cid in order:
        params = {}
        if max_m is not None and cid in _CAPPED:
            params[_CAPPED[cid]] = max_m
        done[cid] = rep = run_criterion(cid, session, **params)
        if on_report:
            on_report(rep)
    return [done[c] for c in CRITERIA if c in done]
