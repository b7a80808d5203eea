"""Minimum-length serial axis-aligned schedules by search along the instance grid."""
from __future__ import annotations

import logging
from bisect import bisect_left, bisect_right
from fractions import Fraction
from typing import Optional

from .errors import UnsupportedMode
from .geometry import Rect, interiors_overlap
from .grid import Grid, build_grid
from .model import MINUS_X, MINUS_Y, PLUS_X, PLUS_Y, SERIAL, Infeasible, Instance, Move, Schedule, verify_schedule

log = logging.getLogger(__name__)

Centers = tuple[tuple[Fraction, Fraction], ...]


def default_free_budget(inst: Instance) -> int:
    cap = 4 * inst.k
    return cap if inst.budget is None else min(inst.budget, cap)


def _lower_bound(state: Centers, goals: Centers) -> int:
    return sum((p[0] != g[0]) + (p[1] != g[1]) for p, g in zip(state, goals))


class _Search:
    def __init__(self, inst: Instance, grid: Grid, depth: int):
        self.sizes = [(r.start.w, r.start.h) for r in inst.robots]
        self.goals: Centers = tuple((r.goal.cx, r.goal.cy) for r in inst.robots)
        self.grid = grid
        self.depth = depth
        self.failed: dict[tuple[Centers, int, int], int] = {}
        self.nodes = 0

    def _rect(self, i: int, c) -> Rect:
        w, h = self.sizes[i]
        return Rect(c[0], c[1], w, h)

    def _moves(self, state: Centers, last: Optional[tuple[int, int]]):
        """Legal grid moves in canonical order (robot, direction, destination)."""
        k = len(state)
        for i in range(k):
            x, y = state[i]
            w, h = self.sizes[i]
            others = [self._rect(j, state[j]) for j in range(k) if j != i]
            for axis in (0, 1):
                if last == (i, axis):
                    # two consecutive moves of one robot along one axis merge into one
                    continue
                lines = self.grid.xs if axis == 0 else self.grid.ys
                here = state[i][axis]
                lo_i, hi_i = bisect_left(lines, here), bisect_right(lines, here)
                for sign in (1, -1):
                    dests = lines[hi_i:] if sign > 0 else lines[:lo_i]
                    for d in dests:
                        if axis == 0:
                            sweep = Rect((x + d) / 2, y, w + abs(d - x), h)
                        else:
                            sweep = Rect(x, (y + d) / 2, w, h + abs(d - y))
                        if any(interiors_overlap(sweep, o) for o in others):
                            continue
                        new = (d, y) if axis == 0 else (x, d)
                        yield i, axis, sign, d, state[:i] + (new,) + state[i + 1:]

    def run(self, state: Centers, remaining: int, last, path: list) -> Optional[list]:
        self.nodes += 1
        h = _lower_bound(state, self.goals)
        if h == 0:
            return path
        if h > remaining:
            return None
        key = (state, last if last else (-1, -1))
        if self.failed.get(key, -1) >= remaining:
            return None
        for i, axis, sign, d, nxt in self._moves(state, last):
            found = self.run(nxt, remaining - 1, (i, axis), path + [(i, axis, sign, d, state[i][axis])])
            if found is not None:
                return found
        self.failed[key] = remaining
        return None


_DIRS = {(0, 1): PLUS_X, (0, -1): MINUS_X, (1, 1): PLUS_Y, (1, -1): MINUS_Y}


def _to_schedule(path) -> Schedule:
    moves = []
    for i, axis, sign, dest, origin in path:
        moves.append(Move(i, _DIRS[(axis, sign)], abs(dest - origin)))
    return Schedule.serial(moves)


def solve_serial_grid(inst: Instance, max_moves: Optional[int] = None):
    """Shortest serial schedule whose moves end on instance-grid lines.

    Iterative deepening on the length; the grid is rebuilt at each depth.
    Among optimal schedules the lexicographically least (robot, direction
    in +x,-x,+y,-y order, destination) is returned. Returns ``Infeasible``
    if nothing exists within ``min(budget, 4k)`` moves.
    """
    if inst.mode != SERIAL or inst.box is not None or not inst.dirs.is_axis_aligned():
        raise UnsupportedMode("grid search handles serial, axis-aligned, free-plane instances")
    bound = default_free_budget(inst)
    if max_moves is not None:
        bound = min(bound, max_moves)
    start: Centers = tuple((r.start.cx, r.start.cy) for r in inst.robots)
    for depth in range(bound + 1):
        search = _Search(inst, build_grid(inst, depth), depth)
        path = search.run(start, depth, None, [])
        log.debug("depth %d: %d nodes", depth, search.nodes)
        if path is not None:
            sched = _to_schedule(path)
            report = verify_schedule(inst, sched)
            if not report.ok:
                raise AssertionError(f"grid search produced an invalid schedule: {report}")
            return sched
    return Infeasible(bound)
