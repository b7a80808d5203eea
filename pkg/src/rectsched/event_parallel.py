"""Parallel (simultaneous, equal-speed) solver over guessed event sequences.

Each event moves a nonempty set of robots along axis directions at once.
For a fixed event sequence the amplitudes are LP variables; every moving
pair picks one of a few relative-motion cases, each a conjunction of linear
constraints, and every mover/stationary pair picks a separating side.

The pair cases are written once for a canonical frame (first robot moving
+x) and carried to the other orientations by reflections and an axis swap.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import partial
from itertools import product
from typing import Callable, Iterator, Optional, Sequence

from .branching import SearchStats, search
from .configurations import boxed_budget
from .errors import InconsistentCases, NonAxisAligned, UnsupportedMode
from .event_serial import LinPoint, Witness, direction_needs, witness_constraints, witnesses
from .geometry import Vec2
from .linexpr import Cons, Lin, eq, ge, le
from .lp import LinProblem
from .model import AXIS_DIRS, PARALLEL, Infeasible, Instance, Move, Schedule, verify_schedule
from .ordered_pool import first_in_order

log = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class ParallelEvent:
    movers: tuple[tuple[int, Vec2], ...]

    def __post_init__(self):
        movers = tuple(sorted(self.movers, key=lambda m: m[0]))
        if not movers:
            raise InconsistentCases("an event needs at least one mover")
        if len({r for r, _ in movers}) != len(movers):
            raise InconsistentCases("a robot appears twice in one event")
        if any(v not in AXIS_DIRS for _, v in movers):
            raise InconsistentCases("parallel events use axis directions")
        object.__setattr__(self, "movers", movers)

    def robots(self) -> list[int]:
        return [r for r, _ in self.movers]

    def dir_of(self, robot: int) -> Optional[Vec2]:
        return dict(self.movers).get(robot)


# -- pair cases in a canonical frame ----------------------------------------------

@dataclass(frozen=True)
class Body:
    """A moving rectangle seen in some (reflected or swapped) frame."""

    cx: Lin
    cy: Lin
    w: object
    h: object
    alpha: Lin
    dir: Vec2

    @property
    def left(self) -> Lin:
        return self.cx - self.w / 2

    @property
    def right(self) -> Lin:
        return self.cx + self.w / 2

    @property
    def bottom(self) -> Lin:
        return self.cy - self.h / 2

    @property
    def top(self) -> Lin:
        return self.cy + self.h / 2

    def reflect_x(self) -> Body:
        return Body(-self.cx, self.cy, self.w, self.h, self.alpha, Vec2(-self.dir.x, self.dir.y))

    def reflect_y(self) -> Body:
        return Body(self.cx, -self.cy, self.w, self.h, self.alpha, Vec2(self.dir.x, -self.dir.y))

    def swap_axes(self) -> Body:
        return Body(self.cy, self.cx, self.h, self.w, self.alpha, Vec2(self.dir.y, self.dir.x))


def _same_direction(p: Body, q: Body, escape: bool) -> dict[str, list[Cons]]:
    # both move +x; while both move their offset is fixed, so only a catch-up
    # after the leader halts can collide
    return {
        "above": [ge(p.bottom, q.top)],
        "below": [le(p.top, q.bottom)],
        "q-ahead": [ge(q.left, p.right), ge(q.left + q.alpha, p.right + p.alpha)],
        "p-ahead": [ge(p.left, q.right), ge(p.left + p.alpha, q.right + q.alpha)],
    }


def _opposite_directions(p: Body, q: Body, escape: bool) -> dict[str, list[Cons]]:
    # p moves +x, q moves -x
    return {
        "above": [ge(p.bottom, q.top)],
        "below": [le(p.top, q.bottom)],
        "receding": [ge(p.left, q.right)],
        "approaching": [ge(q.left - q.alpha, p.right + p.alpha)],
    }


def _crossing(p: Body, q: Body, escape: bool) -> dict[str, list[Cons]]:
    # p moves +x, q moves +y
    dv = p.bottom - q.top
    dh = q.right - p.left
    dh2 = q.left - p.right
    dv2 = p.top - q.bottom
    p_escapes = [ge(dv, 0), ge(dv, dh)]
    q_escapes = [ge(dh2, 0), ge(dh2, dv2)]
    if escape:
        p_escapes.append(ge(p.alpha, dh))
        q_escapes.append(ge(q.alpha, dv2))
    return {
        "q-above-row": [ge(q.bottom, p.top)],
        "q-behind": [le(q.right, p.left)],
        "q-stops-below": [le(q.top + q.alpha, p.bottom)],
        "p-stops-before": [le(p.right + p.alpha, q.left)],
        "p-escapes": p_escapes,
        "q-escapes": q_escapes,
    }


def canonical_frame(p: Body, q: Body) -> tuple[str, Callable, Body, Body]:
    """Map the pair so ``p`` moves +x and, if ``q`` moves vertically, +y."""
    if p.dir.x == 0:
        p, q = p.swap_axes(), q.swap_axes()
    if p.dir.x < 0:
        p, q = p.reflect_x(), q.reflect_x()
    if q.dir.y == 0:
        return ("same", _same_direction, p, q) if q.dir.x > 0 else ("opposite", _opposite_directions, p, q)
    if q.dir.y < 0:
        p, q = p.reflect_y(), q.reflect_y()
    return "crossing", _crossing, p, q


def pair_cases(p: Body, q: Body, escape_augmentation: bool = True) -> dict[str, list[Cons]]:
    kind, fn, cp, cq = canonical_frame(p, q)
    return {f"{kind}:{name}": cons for name, cons in fn(cp, cq, escape_augmentation).items()}


# -- LP model -------------------------------------------------------------------

class ParallelModel:
    def __init__(self, inst: Instance, events: Sequence[ParallelEvent], escape_augmentation: bool = True):
        self.inst, self.events, self.escape = inst, list(events), escape_augmentation
        self.vars: list[str] = []
        self.base: list[Cons] = []
        self.dims = [(r.start.w, r.start.h) for r in inst.robots]
        self.alpha: list[dict[int, Lin]] = []
        self.start_of: list[dict[int, LinPoint]] = []
        self.pos_during: list[list[LinPoint]] = []
        current: list[LinPoint] = [(Lin(const=r.start.cx), Lin(const=r.start.cy)) for r in inst.robots]
        disp: list[list[Lin]] = [[Lin(), Lin()] for _ in inst.robots]
        for i, e in enumerate(self.events):
            if any(not (0 <= r < inst.k) for r in e.robots()):
                raise InconsistentCases(f"event {i} names a robot outside the instance")
            self.pos_during.append(list(current))
            al_i, st_i = {}, {}
            for r, v in e.movers:
                xs, ys, a = f"x{i}_{r}", f"y{i}_{r}", f"a{i}_{r}"
                self.vars += [xs, ys, a]
                x, y, al = Lin.var(xs), Lin.var(ys), Lin.var(a)
                self.base += [ge(al, 0), eq(x, current[r][0]), eq(y, current[r][1])]
                al_i[r], st_i[r] = al, (x, y)
                end = (x + al * v.x, y + al * v.y)
                if inst.box is not None:
                    w, h = self.dims[r]
                    b = inst.box
                    self.base += [
                        ge(end[0] - w / 2, b.left), le(end[0] + w / 2, b.right),
                        ge(end[1] - h / 2, b.bottom), le(end[1] + h / 2, b.top),
                    ]
                disp[r] = [disp[r][0] + al * v.x, disp[r][1] + al * v.y]
            for r, v in e.movers:
                current[r] = (st_i[r][0] + al_i[r] * v.x, st_i[r][1] + al_i[r] * v.y)
            self.alpha.append(al_i)
            self.start_of.append(st_i)
        for r, robot in enumerate(inst.robots):
            self.base += [eq(disp[r][0] + robot.start.cx, robot.goal.cx),
                          eq(disp[r][1] + robot.start.cy, robot.goal.cy)]

        self.slot_keys: list[tuple[int, int, int]] = []
        self.slot_labels: list[list] = []
        self.slots: list[list[list[Cons]]] = []
        for i, e in enumerate(self.events):
            movers = e.robots()
            for a in movers:
                for b in range(inst.k):
                    if b in movers:
                        if b > a:
                            cases = self._pair(i, a, b)
                            self._slot((i, a, b), list(cases), list(cases.values()))
                    elif b != a:
                        ws = witnesses(e.dir_of(a))
                        self._slot((i, a, b), ws, [self._witness(i, a, b, w) for w in ws])

    def _slot(self, key, labels, options):
        self.slot_keys.append(key)
        self.slot_labels.append(labels)
        self.slots.append(options)

    def body(self, i: int, r: int) -> Body:
        (x, y), (w, h) = self.start_of[i][r], self.dims[r]
        return Body(x, y, w, h, self.alpha[i][r], self.events[i].dir_of(r))

    def _pair(self, i: int, p: int, q: int) -> dict[str, list[Cons]]:
        return pair_cases(self.body(i, p), self.body(i, q), self.escape)

    def _witness(self, i: int, r: int, j: int, w: Witness) -> list[Cons]:
        return witness_constraints(
            self.start_of[i][r], self.dims[r], self.events[i].dir_of(r), self.alpha[i][r],
            self.pos_during[i][j], self.dims[j], w,
        )

    def case_constraints(self, key, choice) -> list[Cons]:
        i, a, b = key
        if not (0 <= i < len(self.events)) or a not in self.events[i].robots() or not (0 <= b < self.inst.k):
            raise InconsistentCases(f"no mover pair {key}")
        if b in self.events[i].robots():
            if b <= a:
                raise InconsistentCases(f"mover pairs are keyed with the smaller robot first: {key}")
            cases = self._pair(i, a, b)
            if choice not in cases:
                raise InconsistentCases(f"{choice!r} is not a case for pair {key}")
            return cases[choice]
        if choice not in witnesses(self.events[i].dir_of(a)):
            raise InconsistentCases(f"{choice!r} is not a separating witness for {key}")
        return self._witness(i, a, b, choice)

    def problem(self, cases) -> LinProblem:
        p = LinProblem(list(self.vars))
        for c in self.base:
            c.add_to(p)
        for key, choice in cases.items():
            for c in self.case_constraints(key, choice):
                c.add_to(p)
        return p


def build_parallel_lp(inst: Instance, events: Sequence[ParallelEvent], cases: dict,
                      escape_augmentation: bool = True) -> LinProblem:
    """LP for one parallel event sequence under the given case choices.

    Keys are ``(event, mover, other)``; for two movers the smaller robot
    index comes first and the value is a case name from :func:`pair_cases`,
    otherwise the value is a :class:`Witness`.
    """
    if not inst.dirs.is_axis_aligned():
        raise NonAxisAligned("parallel events need the axis direction set")
    return ParallelModel(inst, events, escape_augmentation).problem(cases)


# -- search ---------------------------------------------------------------------

def event_alphabet(k: int) -> list[ParallelEvent]:
    """All events, ordered by per-robot choice with "stays" before +x, -x, +y, -y."""
    choices = [None, *AXIS_DIRS]
    out = []
    for combo in product(range(len(choices)), repeat=k):
        movers = tuple((r, choices[c]) for r, c in enumerate(combo) if c)
        if movers:
            out.append(ParallelEvent(movers))
    return out


def parallel_sequences(inst: Instance, length: int) -> Iterator[list[ParallelEvent]]:
    """Candidate sequences in canonical order, pruned by per-robot direction needs."""
    needs = direction_needs(inst)
    if any(n.extra() is None for n in needs):
        return
    alphabet = event_alphabet(inst.k)
    index = {v: i for i, v in enumerate(inst.dirs)}
    used = [frozenset()] * inst.k
    seq: list[ParallelEvent] = []

    def rec():
        if len(seq) == length:
            yield list(seq)
            return
        for e in alphabet:
            saved = list(used)
            for r, v in e.movers:
                used[r] = used[r] | {index[v]}
            owed = [n.extra(u) for n, u in zip(needs, used)]
            if None not in owed and max(owed) <= length - len(seq) - 1:
                seq.append(e)
                yield from rec()
                seq.pop()
            used[:] = saved

    yield from rec()


def parallel_length_cap(inst: Instance) -> int:
    cap = 4 * inst.k if inst.box is None else boxed_budget(inst.k)
    return cap if inst.budget is None else min(inst.budget, cap)


def _attempt(inst: Instance, escape: bool, stats: Optional[SearchStats], events: list[ParallelEvent]):
    for r in range(inst.k):
        if all(e.dir_of(r) is None for e in events) and inst.robots[r].start != inst.robots[r].goal:
            return None
    model = ParallelModel(inst, events, escape)
    found = search(model.vars, model.base, model.slots, stats)
    return None if found is None else found.point


def schedule_from_parallel_point(events: Sequence[ParallelEvent], point) -> Schedule:
    steps = []
    for i, e in enumerate(events):
        # a mover given zero amplitude simply stays put during this step
        step = tuple(Move(r, v, point[f"a{i}_{r}"]) for r, v in e.movers if point[f"a{i}_{r}"] > 0)
        if not step:
            raise AssertionError(f"event {i} has no positive amplitude at minimum length")
        steps.append(step)
    return Schedule(tuple(steps))


def solve_parallel_lp(inst: Instance, max_moves: Optional[int] = None, escape_augmentation: bool = True,
                      stats: Optional[SearchStats] = None, threads: int = 1):
    """Minimum-length parallel schedule, or ``Infeasible`` within the length cap."""
    if not inst.dirs.is_axis_aligned():
        raise NonAxisAligned("parallel solving needs the axis direction set")
    if inst.mode != PARALLEL:
        raise UnsupportedMode("solve_parallel_lp handles parallel instances")
    cap = parallel_length_cap(inst)
    if max_moves is not None:
        cap = min(cap, max_moves)
    stats = stats if stats is not None else SearchStats()
    if inst.solved_at_start():
        return Schedule()
    for length in range(1, cap + 1):
        hit = first_in_order(partial(_attempt, inst, escape_augmentation, stats if threads <= 1 else None),
                             parallel_sequences(inst, length), threads)
        if hit is None:
            log.debug("length %d infeasible (%d LPs so far)", length, stats.lp_calls)
            continue
        events, point = hit
        sched = schedule_from_parallel_point(events, point)
        report = verify_schedule(inst, sched)
        if not report.ok:
            raise AssertionError(f"parallel solver emitted an invalid schedule: {report}")
        return sched
    return Infeasible(cap)
