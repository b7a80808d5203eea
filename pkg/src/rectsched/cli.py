"""Command-line front end.

Exit codes: 0 solved or verified, 2 infeasible or rejected, 1 any error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .errors import RectSchedError, UnsupportedMode
from .event_parallel import solve_parallel_lp
from .event_serial import solve_serial_lp
from .geometry import Rect, fmt, rational
from .grid import build_grid
from .grid_search import solve_serial_grid
from .model import PARALLEL, Infeasible, Instance, parse_instance, parse_schedule, serialize_schedule, verify_schedule
from .oracle import bfs_parallel, bfs_serial
from .render import render_schedule


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(message)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}") from exc


def _load_instance(path: str) -> Instance:
    try:
        return parse_instance(_read(path))
    except RectSchedError as exc:
        raise CliError(f"{path}: {exc}") from exc


def _window(text: Optional[str]) -> Optional[Rect]:
    if text is None:
        return None
    parts = text.split(",")
    if len(parts) != 4:
        raise CliError("--window takes cx,cy,w,h")
    try:
        return Rect(*(rational(p.strip()) for p in parts))
    except (ValueError, ZeroDivisionError, RectSchedError) as exc:
        raise CliError(f"bad --window: {exc}") from exc


def solve(inst: Instance, solver: Optional[str] = None, max_moves: Optional[int] = None,
          threads: int = 1, legacy: bool = False):
    """Route to the right solver; the grid search is the default where it applies."""
    if inst.mode == PARALLEL:
        if solver == "grid":
            raise UnsupportedMode("the grid solver handles serial instances only")
        return solve_parallel_lp(inst, max_moves=max_moves, threads=threads)
    grid_ok = inst.box is None and inst.dirs.is_axis_aligned()
    if solver == "grid" or (solver is None and grid_ok and not legacy):
        return solve_serial_grid(inst, max_moves=max_moves)
    return solve_serial_lp(inst, legacy=legacy, max_moves=max_moves, threads=threads)


def _cmd_solve(args) -> int:
    inst = _load_instance(args.instance)
    result = solve(inst, args.solver, args.max_moves, args.threads, args.legacy_cases)
    if isinstance(result, Infeasible):
        print(f"infeasible within {result.bound} moves")
        return 2
    text = serialize_schedule(result)
    if args.out:
        Path(args.out).write_text(text + "\n")
        print(f"solved: {len(result)} steps -> {args.out}")
    else:
        print(text)
    return 0


def _cmd_verify(args) -> int:
    inst = _load_instance(args.instance)
    try:
        sched = parse_schedule(_read(args.schedule))
    except RectSchedError as exc:
        raise CliError(f"{args.schedule}: {exc}") from exc
    report = verify_schedule(inst, sched)
    print(report)
    return 0 if report.ok else 2


def _cmd_grid(args) -> int:
    inst = _load_instance(args.instance)
    g = build_grid(inst, args.depth)
    print(json.dumps({"xs": [fmt(x) for x in g.xs], "ys": [fmt(y) for y in g.ys]}))
    return 0


def _cmd_oracle(args) -> int:
    inst = _load_instance(args.instance)
    fn = bfs_parallel if inst.mode == PARALLEL else bfs_serial
    result = fn(inst, _window(args.window))
    if isinstance(result, int):
        print(result)
        return 0
    print("infeasible")
    return 2


def _cmd_render(args) -> int:
    inst = _load_instance(args.instance)
    try:
        sched = parse_schedule(_read(args.schedule))
    except RectSchedError as exc:
        raise CliError(f"{args.schedule}: {exc}") from exc
    paths = render_schedule(inst, sched, args.out)
    print(f"wrote {len(paths)} frames to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rectsched", description="Exact motion planning for translating rectangles.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="find a minimum-length schedule")
    s.add_argument("--instance", required=True)
    s.add_argument("--solver", choices=("grid", "lp"))
    s.add_argument("--max-moves", type=int)
    s.add_argument("--out")
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--legacy-cases", action="store_true", help="segment-pair case branching (serial LP)")
    s.set_defaults(fn=_cmd_solve)

    v = sub.add_parser("verify", help="check a schedule against an instance")
    v.add_argument("--instance", required=True)
    v.add_argument("--schedule", required=True)
    v.set_defaults(fn=_cmd_verify)

    g = sub.add_parser("grid", help="dump the instance grid")
    g.add_argument("--instance", required=True)
    g.add_argument("--depth", type=int, required=True)
    g.set_defaults(fn=_cmd_grid)

    o = sub.add_parser("oracle", help="brute-force optimum for lattice instances")
    o.add_argument("--instance", required=True)
    o.add_argument("--window", help="cx,cy,w,h")
    o.set_defaults(fn=_cmd_oracle)

    r = sub.add_parser("render", help="write SVG frames of a schedule")
    r.add_argument("--instance", required=True)
    r.add_argument("--schedule", required=True)
    r.add_argument("--out", required=True)
    r.set_defaults(fn=_cmd_render)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
        if getattr(args, "max_moves", None) is not None and args.max_moves < 0:
            raise CliError("--max-moves must be nonnegative")
        if getattr(args, "threads", 1) < 1:
            raise CliError("--threads must be positive")
        return args.fn(args)
    except (CliError, RectSchedError, OSError) as exc:
        print(f"rectsched: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())
