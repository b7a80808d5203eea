"""Brute-force optimal lengths for unit squares on the integer lattice.

States are tuples of integer centers; a transition slides robots by positive
integer distances along the axes. Only the geometry predicates decide
collisions, so these searches share nothing with the solvers.
"""
from __future__ import annotations

import heapq
import math
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Optional

from .errors import NonLatticeInstance, StateSpaceExceeded
from .geometry import Rect, Vec2, parallel_collision, serial_collision
from .grid import build_grid
from .model import Infeasible, Instance

State = tuple[tuple[int, int], ...]
UNITS = ((1, 0), (-1, 0), (0, 1), (0, -1))
HALF = Fraction(1, 2)


def _lattice(inst: Instance) -> tuple[State, State]:
    if not inst.dirs.is_axis_aligned():
        raise NonLatticeInstance("the oracle needs the axis direction set")
    starts, goals = [], []
    for i, r in enumerate(inst.robots):
        for rect, out in ((r.start, starts), (r.goal, goals)):
            if rect.w != 1 or rect.h != 1 or rect.cx.denominator != 1 or rect.cy.denominator != 1:
                raise NonLatticeInstance(f"robot {i} is not a unit square at an integer center")
            out.append((int(rect.cx), int(rect.cy)))
    return tuple(starts), tuple(goals)


def default_window(inst: Instance) -> Rect:
    """The box, or else the extent of the instance grid at the move cap."""
    if inst.box is not None:
        return inst.box
    depth = 4 * inst.k if inst.budget is None else min(inst.budget, 4 * inst.k)
    g = build_grid(inst, depth)
    return Rect((g.xs[0] + g.xs[-1]) / 2, (g.ys[0] + g.ys[-1]) / 2,
                g.xs[-1] - g.xs[0] + 1, g.ys[-1] - g.ys[0] + 1)


def _center_range(lo, hi) -> range:
    # integer centers c with lo <= c - 1/2 and c + 1/2 <= hi
    return range(math.ceil(lo + HALF), math.floor(hi - HALF) + 1)


@lru_cache(maxsize=None)
def _slide_blocked(ox: int, oy: int, ux: int, uy: int, dist: int) -> bool:
    """Does a unit square sliding ``dist`` along (ux, uy) hit one at offset (ox, oy)?"""
    return serial_collision(Rect(0, 0, 1, 1), Vec2(ux * dist, uy * dist), Rect(ox, oy, 1, 1))


def _span(c: int, u: int, d: int) -> tuple[int, int]:
    # doubled coordinates of a unit square's sweep along one axis
    a, b = 2 * c, 2 * (c + u * d)
    return min(a, b) - 1, max(a, b) + 1


def _sweeps_apart(ox, oy, ua, da, ub, db) -> bool:
    ax, ay = _span(0, ua[0], da), _span(0, ua[1], da)
    bx, by = _span(ox, ub[0], db), _span(oy, ub[1], db)
    return ax[1] <= bx[0] or bx[1] <= ax[0] or ay[1] <= by[0] or by[1] <= ay[0]


@lru_cache(maxsize=None)
def _joint_blocked(ox: int, oy: int, ua, da: int, ub, db: int) -> bool:
    if _sweeps_apart(ox, oy, ua, da, ub, db):
        return False
    return parallel_collision(Rect(0, 0, 1, 1), Vec2(*ua), da, Rect(ox, oy, 1, 1), Vec2(*ub), db)


class _Lattice:
    def __init__(self, window: Rect):
        self.xr = _center_range(window.left, window.right)
        self.yr = _center_range(window.bottom, window.top)

    def inside(self, p) -> bool:
        return p[0] in self.xr and p[1] in self.yr

    def slides(self, state: State, i: int):
        """Serial successors moving robot ``i``."""
        x, y = state[i]
        for ux, uy in UNITS:
            d = 1
            while True:
                nx, ny = x + ux * d, y + uy * d
                if not self.inside((nx, ny)):
                    break
                if any(_slide_blocked(ox - x, oy - y, ux, uy, d) for j, (ox, oy) in enumerate(state) if j != i):
                    break  # blocking is monotone in the distance
                yield state[:i] + ((nx, ny),) + state[i + 1:]
                d += 1

    def options(self, state: State, i: int):
        """(unit, distance) moves of robot ``i`` staying in the window."""
        x, y = state[i]
        out = []
        for ux, uy in UNITS:
            d = 1
            while self.inside((x + ux * d, y + uy * d)):
                out.append(((ux, uy), d))
                d += 1
        return out


def _check(inst: Instance, window: Optional[Rect]):
    starts, goals = _lattice(inst)
    window = window if window is not None else default_window(inst)
    lat = _Lattice(window)
    if not all(lat.inside(p) for p in starts + goals):
        raise NonLatticeInstance("window does not contain every start and goal")
    return starts, goals, lat


def bfs_serial(inst: Instance, window: Optional[Rect] = None, state_cap: int = 10**7):
    """Optimal serial move count inside ``window``, or ``Infeasible``.

    Serial moves are reversible, so the search grows from both ends.
    """
    starts, goals, lat = _check(inst, window)
    if starts == goals:
        return 0
    k = len(starts)
    dist = [{starts: 0}, {goals: 0}]
    frontier = [[starts], [goals]]
    while frontier[0] and frontier[1]:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        mine, theirs = dist[side], dist[1 - side]
        nxt, best = [], None
        for s in frontier[side]:
            for i in range(k):
                for t in lat.slides(s, i):
                    if t in theirs:
                        cand = mine[s] + 1 + theirs[t]
                        best = cand if best is None else min(best, cand)
                    if t not in mine:
                        mine[t] = mine[s] + 1
                        nxt.append(t)
        if best is not None:
            return best
        if len(dist[0]) + len(dist[1]) > state_cap:
            raise StateSpaceExceeded(f"more than {state_cap} states")
        frontier[side] = nxt
    return Infeasible()


def _joint_successors(lat: _Lattice, state: State):
    k = len(state)
    per_robot = [[None] + lat.options(state, i) for i in range(k)]
    for combo in product(*per_robot):
        movers = [i for i in range(k) if combo[i] is not None]
        if not movers:
            continue
        ok = True
        for i in movers:
            (ux, uy), d = combo[i]
            x, y = state[i]
            for j in range(k):
                if j == i:
                    continue
                ox, oy = state[j][0] - x, state[j][1] - y
                if combo[j] is None:
                    if _slide_blocked(ox, oy, ux, uy, d):
                        ok = False
                        break
                elif j > i and _joint_blocked(ox, oy, (ux, uy), d, combo[j][0], combo[j][1]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield tuple(
                p if c is None else (p[0] + c[0][0] * c[1], p[1] + c[0][1] * c[1])
                for p, c in zip(state, combo)
            )


def _steps_needed(state: State, goals: State) -> int:
    # each step changes at most one coordinate of every robot
    return max((p[0] != g[0]) + (p[1] != g[1]) for p, g in zip(state, goals))


def bfs_parallel(inst: Instance, window: Optional[Rect] = None, state_cap: int = 10**7):
    """Optimal parallel step count inside ``window``, or ``Infeasible``.

    Uniform-cost search ordered by depth plus a consistent lower bound, so
    the first goal popped is optimal and an exhausted queue means no schedule.
    """
    starts, goals, lat = _check(inst, window)
    if starts == goals:
        return 0
    best = {starts: 0}
    heap = [(_steps_needed(starts, goals), 0, starts)]
    while heap:
        f, g, s = heapq.heappop(heap)
        if s == goals:
            return g
        if g > best[s]:
            continue
        for t in _joint_successors(lat, s):
            if g + 1 < best.get(t, g + 2):
                best[t] = g + 1
                heapq.heappush(heap, (g + 1 + _steps_needed(t, goals), g + 1, t))
                if len(best) > state_cap:
                    raise StateSpaceExceeded(f"more than {state_cap} states")
    return Infeasible()
