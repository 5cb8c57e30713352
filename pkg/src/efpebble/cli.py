"""Command line entry point: ``efpebble <command> ...``."""

from __future__ import annotations

import argparse
import inspect
import json
import sys
import time
from pathlib import Path
from typing import Optional, Sequence

from . import generators as gen
from .fo2type import fo2_equivalent, graph_type
from .formula import evaluate, formula_from_strategy, fragment_info, serialize_formula
from .game import INF, GameMode, PositionLimitExceeded, alternation_number, solve
from .structures import load, save
from .treekit import branching_index, separator, tree_center, truncate_with_mapping
from .verify import CRITERIA, reports_to_csv, run_all

EXIT_OK, EXIT_FAIL, EXIT_LIMIT = 0, 1, 3

PAIR_FAMILIES = {
    "colored_tree": gen.colored_tree_pair,
    "uncolored_tree": gen.uncolored_tree_pair,
    "ladder": gen.ladder_pair,
    "cycle": gen.cycle_pair,
    "padded_cycle": gen.padded_cycle_pair,
    "succinct_cycle": gen.succinct_cycle_pair,
}


def _value(x) -> object:
    return "inf" if x == INF else int(x)


def _emit(obj: dict) -> None:
    print(json.dumps(obj, sort_keys=True))


def _mode(args) -> GameMode:
    kw = {"position_limit": args.limit} if getattr(args, "limit", None) else {}
    return GameMode.parse(args.mode, args.k, **kw)


def cmd_gen(args) -> int:
    if args.family == "named":
        if len(args.params) != 1 or not args.out:
            raise SystemExit("usage: gen named <name> <n> --out FILE")
        save(gen.named_graph(args.name, int(args.params[0])), args.out)
        return EXIT_OK
    builder = PAIR_FAMILIES[args.family]
    names = list(inspect.signature(builder).parameters)
    values = [args.name, *args.params] if args.name is not None else list(args.params)
    if len(values) != len(names):
        raise SystemExit(f"{args.family} takes parameters: {' '.join(names)}")
    g, h = builder(*(int(v) for v in values))
    if not (args.out_g and args.out_h):
        raise SystemExit("pair families need --out-g and --out-h")
    save(g, args.out_g)
    save(h, args.out_h)
    return EXIT_OK


def cmd_solve(args) -> int:
    g, h = load(args.g), load(args.h)
    mode = _mode(args)
    t0 = time.perf_counter()
    table = solve(g, h, mode)
    ms = (time.perf_counter() - t0) * 1000
    _emit(
        {
            "mode": str(mode),
            "value": _value(table.root_value),
            "positions_explored": table.positions_explored,
            "elapsed_ms": round(ms, 3),
        }
    )
    return EXIT_OK


def cmd_alt(args) -> int:
    g, h = load(args.g), load(args.h)
    kw = {"position_limit": args.limit} if args.limit else {}
    _emit({"k": args.k, "alternation": _value(alternation_number(g, h, args.k, **kw))})
    return EXIT_OK


def cmd_formula(args) -> int:
    g, h = load(args.g), load(args.h)
    table = solve(g, h, _mode(args))
    f = formula_from_strategy(g, h, table)
    ok = evaluate(f, g) and not evaluate(f, h)
    text = serialize_formula(f)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    info = fragment_info(f)
    _emit(
        {
            "qdepth": info.qdepth,
            "altdepth": info.altdepth,
            "sigma_level": info.sigma_level,
            "pi_level": info.pi_level,
            "verified": ok,
        }
    )
    return EXIT_OK if ok else EXIT_FAIL


def cmd_classify(args) -> int:
    _emit(graph_type(load(args.file)).to_dict())
    return EXIT_OK


def cmd_equiv(args) -> int:
    g, h = load(args.file_g), load(args.file_h)
    verdict = fo2_equivalent(g, h)
    out: dict = {"equivalent": verdict}
    code = EXIT_OK
    if args.oracle:
        depth = solve(g, h, GameMode.full(2)).root_value
        out["game_depth"] = _value(depth)
        out["agrees"] = verdict == (depth == INF)
        code = EXIT_OK if out["agrees"] else EXIT_FAIL
    _emit(out)
    return code


def cmd_truncate(args) -> int:
    t = load(args.file)
    tk, mapping = truncate_with_mapping(t, args.k)
    save(tk, args.out)
    sidecar = Path(str(args.out) + ".map.json")
    sidecar.write_text(json.dumps({str(k): v for k, v in sorted(mapping.items())}, indent=1) + "\n")
    return EXIT_OK


def cmd_treeinfo(args) -> int:
    t = load(args.file)
    c = tree_center(t)
    info = {"n": t.n, "center": list(c.center), "radius": c.radius, "diameter": c.diameter, "separator": separator(t)}
    info["branching_index"] = branching_index(t) if t.n >= 2 else None
    _emit(info)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.id != "all" and args.id not in CRITERIA:
        raise SystemExit(f"unknown criterion {args.id!r}; known: all, {', '.join(CRITERIA)}")
    ids = None
    if args.id != "all":
        ids = [args.id]
        if CRITERIA[args.id].piggyback:
            # cross-cutting checks need the games of the other experiments
            ids = [c for c, crit in CRITERIA.items() if not crit.piggyback] + ids

    def show(rep) -> None:
        if args.id in ("all", rep.criterion):
            print(rep.summary())

    reports = run_all(ids, max_m=args.max_m, on_report=show)
    if args.id != "all":
        reports = [r for r in reports if r.criterion == args.id]
    if args.csv:
        Path(args.csv).write_text(reports_to_csv(reports))
    if args.json:
        Path(args.json).write_text(json.dumps([r.to_dict() for r in reports], sort_keys=True, indent=1) + "\n")
    if not all(r.passed for r in reports):
        return EXIT_FAIL
    if any(r.limit_hit for r in reports):
        return EXIT_LIMIT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="efpebble", description="Pebble games, alternation and two-variable types.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("gen", help="build a graph pair or a named graph")
    s.add_argument("family", choices=[*PAIR_FAMILIES, "named"])
    s.add_argument("name", nargs="?", help="graph name for 'named', else the first parameter")
    s.add_argument("params", nargs="*")
    s.add_argument("--out-g")
    s.add_argument("--out-h")
    s.add_argument("--out")
    s.set_defaults(func=cmd_gen)

    def game_args(s, with_mode: bool = True) -> None:
        s.add_argument("--g", required=True)
        s.add_argument("--h", required=True)
        s.add_argument("-k", type=int, required=True)
        if with_mode:
            s.add_argument("--mode", default="full")
        s.add_argument("--limit", type=int)

    s = sub.add_parser("solve", help="value of a game")
    game_args(s)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("alt", help="alternation number")
    game_args(s, with_mode=False)
    s.set_defaults(func=cmd_alt)

    s = sub.add_parser("formula", help="distinguishing formula from an optimal strategy")
    game_args(s)
    s.add_argument("--out")
    s.set_defaults(func=cmd_formula)

    s = sub.add_parser("classify", help="two-variable type of an uncolored graph")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("equiv", help="two-variable equivalence of two uncolored graphs")
    s.add_argument("file_g")
    s.add_argument("file_h")
    s.add_argument("--oracle", action="store_true", help="cross-check against the two-pebble game")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("truncate", help="cut repeated tree branches down to k copies")
    s.add_argument("file")
    s.add_argument("-k", type=int, required=True)
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_truncate)

    s = sub.add_parser("treeinfo", help="center, radius, diameter, branching index, separator")
    s.add_argument("file")
    s.set_defaults(func=cmd_treeinfo)

    s = sub.add_parser("verify", help="run acceptance experiments")
    s.add_argument("id", help="criterion id or 'all'")
    s.add_argument("--max-m", type=int)
    s.add_argument("--csv")
    s.add_argument("--json")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PositionLimitExceeded as exc:
        print(f"position limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
