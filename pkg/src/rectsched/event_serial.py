"""Serial solver over guessed event sequences with amplitudes decided by exact LP.

An event is a (robot, direction) pair. For a fixed event sequence the start
centers and amplitudes are LP variables; reaching the goals and chaining
positions are equalities, and each (event, other robot) pair must be
non-colliding. Non-collision of the convex swept region with a rectangle is
a disjunction over separating axes, which the branch-and-prune search in
:mod:`rectsched.branching` resolves.

``legacy=True`` adds, on top of the separating-axis witness, the classical
segment-pair branching: for every non-parallel pair of a trace edge and a
rectangle edge, their supporting lines meet at a point that must lie outside
one of the two segments, on one of its two ends (four cases).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Optional, Sequence, Union

from .branching import SearchStats, search
from .configurations import boxed_budget
from .errors import BudgetRequired, InconsistentCases, UnsupportedMode
from .geometry import Rect, Vec2, convex_hull, separating_axes
from .linexpr import Cons, Lin, eq, ge, le
from .lp import GE, LinProblem, solve_feasibility
from .ordered_pool import first_in_order
from .model import SERIAL, Infeasible, Instance, Move, Schedule, verify_schedule

log = logging.getLogger(__name__)

LinPoint = tuple[Lin, Lin]


@dataclass(frozen=True, slots=True)
class Event:
    robot: int
    dir: Vec2


@dataclass(frozen=True, slots=True)
class Witness:
    """The other robot lies on the ``side`` (+1/-1) of the sweep along ``axis``."""

    axis: Vec2
    side: int


CaseKey = Union[tuple[int, int], tuple[int, int, int, int]]
CaseAssignment = dict


def witnesses(v: Vec2) -> list[Witness]:
    return [Witness(a, s) for a in separating_axes(v) for s in (-1, 1)]


def _dot(axis: Vec2, p: LinPoint) -> Lin:
    return p[0] * axis.x + p[1] * axis.y


def witness_constraints(
    mover: LinPoint, mdims: tuple[Fraction, Fraction], v: Vec2, alpha: Lin,
    other: LinPoint, odims: tuple[Fraction, Fraction], w: Witness,
) -> list[Cons]:
    a = w.axis
    em = abs(a.x) * mdims[0] / 2 + abs(a.y) * mdims[1] / 2
    eo = abs(a.x) * odims[0] / 2 + abs(a.y) * odims[1] / 2
    cm = _dot(a, mover)
    shift = a.dot(v)
    lo = cm - em + (alpha * shift if shift < 0 else 0)
    hi = cm + em + (alpha * shift if shift > 0 else 0)
    co = _dot(a, other)
    if w.side > 0:
        return [ge(co - eo, hi)]
    return [le(co + eo, lo)]


# -- classical segment-pair cases ---------------------------------------------

@dataclass(frozen=True)
class Segment:
    """Segment from ``p`` along direction ``d`` for parameter 0..length."""

    p: LinPoint
    d: Vec2
    length: Lin


def _oriented(p: LinPoint, d: Vec2, length: Lin) -> Segment:
    # orient so the direction has positive x (positive y if vertical)
    if d.x < 0 or (d.x == 0 and d.y < 0):
        end = (p[0] + length * d.x, p[1] + length * d.y)
        return Segment(end, -d, length)
    return Segment(p, d, length)


def _trace_layout(w: Fraction, h: Fraction, v: Vec2) -> list[tuple[int, int]]:
    """Hull vertices of the sweep as (0=start/1=end, corner index), counterclockwise."""
    t = min(w, h) / (2 * (abs(v.x) + abs(v.y)))
    start = Rect(0, 0, w, h).corners()
    end = [(x + t * v.x, y + t * v.y) for x, y in start]
    label = {p: (0, i) for i, p in enumerate(start)}
    label.update({p: (1, i) for i, p in enumerate(end)})
    return [label[p] for p in convex_hull(start + end)]


def trace_segments(center: LinPoint, w: Fraction, h: Fraction, v: Vec2, alpha: Lin) -> list[Segment]:
    offsets = [(-w / 2, -h / 2), (w / 2, -h / 2), (w / 2, h / 2), (-w / 2, h / 2)]
    layout = _trace_layout(w, h, v)
    verts = []
    for tag, i in layout:
        ox, oy = offsets[i]
        px, py = center[0] + ox, center[1] + oy
        if tag:
            px, py = px + alpha * v.x, py + alpha * v.y
        verts.append(((px, py), tag, i))
    segs = []
    for n in range(len(verts)):
        (p, tp, ip), (_, tq, iq) = verts[n], verts[(n + 1) % len(verts)]
        if tp == tq:
            ox0, oy0 = offsets[ip]
            ox1, oy1 = offsets[iq]
            dx, dy = ox1 - ox0, oy1 - oy0
            size = abs(dx) + abs(dy)
            segs.append(_oriented(p, Vec2(dx / size, dy / size), Lin(const=size)))
        else:
            # an edge parallel to the motion joins a start corner and an end corner
            d = v if tp == 0 else -v
            segs.append(_oriented(p, d, alpha))
    return segs


def rect_segments(center: LinPoint, w: Fraction, h: Fraction) -> list[Segment]:
    x, y = center
    return [
        Segment((x - w / 2, y - h / 2), Vec2(1, 0), Lin(const=w)),
        Segment((x + w / 2, y - h / 2), Vec2(0, 1), Lin(const=h)),
        Segment((x - w / 2, y + h / 2), Vec2(1, 0), Lin(const=w)),
        Segment((x - w / 2, y - h / 2), Vec2(0, 1), Lin(const=h)),
    ]


def _cross_lin(a: LinPoint, d: Vec2) -> Lin:
    return a[0] * d.y - a[1] * d.x


def segment_case(pq: Segment, rs: Segment, case: int) -> Cons:
    """Linear constraint for one of the four exteriority cases.

    With the lines of ``pq`` and ``rs`` meeting at ``p + t*d1 = r + u*d2``:
    case 1 is ``t <= 0``, case 2 ``t >= |pq|``, case 3 ``u <= 0`` and
    case 4 ``u >= |rs|``. Parallel pairs have no cases.
    """
    d1, d2 = pq.d, rs.d
    den = d1.cross(d2)
    if den == 0:
        raise InconsistentCases("parallel segments have no crossing point")
    r_minus_p = (rs.p[0] - pq.p[0], rs.p[1] - pq.p[1])
    t_num = _cross_lin(r_minus_p, d2)  # t = t_num / den
    u_num = _cross_lin(r_minus_p, d1)  # u = u_num / den
    if case == 1:
        return le(t_num * (1 / Fraction(den)), 0)
    if case == 2:
        return ge(t_num * (1 / Fraction(den)), pq.length)
    if case == 3:
        return le(u_num * (1 / Fraction(den)), 0)
    if case == 4:
        return ge(u_num * (1 / Fraction(den)), rs.length)
    raise InconsistentCases(f"unknown case {case}")


def legacy_pairs(trace: Sequence[Segment], rect: Sequence[Segment]) -> list[tuple[int, int]]:
    """Edge pairs needing a case; pairs of parallel edges are skipped."""
    return [
        (a, b) for a, s in enumerate(trace) for b, r in enumerate(rect) if not s.d.parallel_to(r.d)
    ]


# -- LP model -------------------------------------------------------------------

class EventModel:
    """Variables, base constraints and collision slots for one event sequence."""

    def __init__(self, inst: Instance, events: Sequence[Event], legacy: bool = False):
        self.inst, self.events, self.legacy = inst, list(events), legacy
        self.vars: list[str] = []
        self.base: list[Cons] = []
        self.alpha: list[Lin] = []
        self.start_of: list[LinPoint] = []
        self.pos_during: list[list[LinPoint]] = []
        dims = [(r.start.w, r.start.h) for r in inst.robots]
        self.dims = dims
        current: list[LinPoint] = [(Lin(const=r.start.cx), Lin(const=r.start.cy)) for r in inst.robots]
        for i, e in enumerate(self.events):
            if not (0 <= e.robot < inst.k) or e.dir not in inst.dirs:
                raise InconsistentCases(f"event {i} is not a (robot, direction) of the instance")
            xs, ys, a = f"x{i}", f"y{i}", f"a{i}"
            self.vars += [xs, ys, a]
            x, y, al = Lin.var(xs), Lin.var(ys), Lin.var(a)
            self.base += [ge(al, 0), eq(x, current[e.robot][0]), eq(y, current[e.robot][1])]
            self.alpha.append(al)
            self.start_of.append((x, y))
            self.pos_during.append(list(current))
            end = (x + al * e.dir.x, y + al * e.dir.y)
            if inst.box is not None:
                w, h = dims[e.robot]
                b = inst.box
                self.base += [
                    ge(end[0] - w / 2, b.left), le(end[0] + w / 2, b.right),
                    ge(end[1] - h / 2, b.bottom), le(end[1] + h / 2, b.top),
                ]
            current[e.robot] = end
        for r, robot in enumerate(inst.robots):
            dx, dy = Lin(), Lin()
            for i, e in enumerate(self.events):
                if e.robot == r:
                    dx, dy = dx + self.alpha[i] * e.dir.x, dy + self.alpha[i] * e.dir.y
            self.base += [eq(dx + robot.start.cx, robot.goal.cx), eq(dy + robot.start.cy, robot.goal.cy)]

        self.slot_keys: list[CaseKey] = []
        self.slots: list[list[list[Cons]]] = []
        for i, e in enumerate(self.events):
            for j in range(inst.k):
                if j == e.robot:
                    continue
                self.slot_keys.append((i, j))
                self.slots.append([self._witness(i, j, w) for w in witnesses(e.dir)])
        if legacy:
            for i, e in enumerate(self.events):
                trace = self._trace(i)
                for j in range(inst.k):
                    if j == e.robot:
                        continue
                    rect = rect_segments(self.pos_during[i][j], *dims[j])
                    for a, b in legacy_pairs(trace, rect):
                        self.slot_keys.append((i, j, a, b))
                        self.slots.append([[segment_case(trace[a], rect[b], c)] for c in (1, 2, 3, 4)])

    def _trace(self, i: int) -> list[Segment]:
        e = self.events[i]
        return trace_segments(self.start_of[i], *self.dims[e.robot], e.dir, self.alpha[i])

    def _witness(self, i: int, j: int, w: Witness) -> list[Cons]:
        e = self.events[i]
        return witness_constraints(
            self.start_of[i], self.dims[e.robot], e.dir, self.alpha[i],
            self.pos_during[i][j], self.dims[j], w,
        )

    def case_constraints(self, key: CaseKey, choice) -> list[Cons]:
        if len(key) == 2:
            i, j = key
            if not (0 <= i < len(self.events)) or j == self.events[i].robot or not (0 <= j < self.inst.k):
                raise InconsistentCases(f"no (event, robot) pair {key}")
            if not isinstance(choice, Witness) or choice not in witnesses(self.events[i].dir):
                raise InconsistentCases(f"{choice!r} is not a separating witness for event {i}")
            return self._witness(i, j, choice)
        i, j, a, b = key
        if not (0 <= i < len(self.events)) or j == self.events[i].robot or not (0 <= j < self.inst.k):
            raise InconsistentCases(f"no (event, robot) pair {key[:2]}")
        trace = self._trace(i)
        rect = rect_segments(self.pos_during[i][j], *self.dims[j])
        if (a, b) not in legacy_pairs(trace, rect):
            raise InconsistentCases(f"edge pair {(a, b)} is absent or parallel")
        return [segment_case(trace[a], rect[b], choice)]

    def problem(self, cases: CaseAssignment) -> LinProblem:
        p = LinProblem(list(self.vars))
        for c in self.base:
            c.add_to(p)
        for key, choice in cases.items():
            for c in self.case_constraints(key, choice):
                c.add_to(p)
        return p

    def choice_of(self, slot: int, option: int):
        key = self.slot_keys[slot]
        if len(key) == 2:
            return witnesses(self.events[key[0]].dir)[option]
        return option + 1


def build_lp(inst: Instance, events: Sequence[Event], cases: CaseAssignment, legacy: bool = False) -> LinProblem:
    """LP for one event sequence under the given case choices.

    ``cases`` maps ``(event, other robot)`` to a :class:`Witness`, and in
    legacy form ``(event, other robot, trace edge, rectangle edge)`` to a case
    number 1-4. Pairs absent from ``cases`` are left unconstrained.
    """
    return EventModel(inst, events, legacy).problem(cases)


# -- search ---------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _cone_reachable(d: Vec2, dirs: tuple[Vec2, ...]) -> bool:
    if d.is_zero():
        return True
    if not dirs:
        return False
    names = [f"c{i}" for i in range(len(dirs))]
    p = LinProblem(names)
    p.add({n: v.x for n, v in zip(names, dirs)}, "=", d.x)
    p.add({n: v.y for n, v in zip(names, dirs)}, "=", d.y)
    for n in names:
        p.add({n: 1}, GE, 0)
    return bool(solve_feasibility(p))


class DirectionNeed:
    """How many more distinct directions a robot must use to reach its goal.

    Given the directions it has already used, the answer is 0 when the
    displacement lies in their cone, else 1 or 2 (a planar cone needs at
    most two generators), or None when no choice of directions works.
    """

    def __init__(self, disp: Vec2, dirs: Sequence[Vec2], allowed: Optional[Sequence[int]] = None):
        self.disp, self.dirs = disp, tuple(dirs)
        self.allowed = tuple(range(len(self.dirs)) if allowed is None else allowed)
        self._memo: dict[frozenset, Optional[int]] = {}

    def _reaches(self, used: frozenset) -> bool:
        return _cone_reachable(self.disp, tuple(self.dirs[i] for i in sorted(used)))

    def extra(self, used: frozenset = frozenset()) -> Optional[int]:
        if used not in self._memo:
            ok = self.allowed
            if self._reaches(used):
                ans = 0
            elif any(self._reaches(used | {i}) for i in ok):
                ans = 1
            elif any(self._reaches(used | {i, j}) for i in ok for j in ok if i < j):
                ans = 2
            else:
                ans = None
            self._memo[used] = ans
        return self._memo[used]


def usable_dirs(inst: Instance, robot: int) -> list[Vec2]:
    """Directions the robot can take any positive step along without leaving the box."""
    if inst.box is None:
        return list(inst.dirs)
    r = inst.robots[robot].start
    return [
        v for v in inst.dirs
        if (v.x == 0 or inst.box.w > r.w) and (v.y == 0 or inst.box.h > r.h)
    ]


def direction_needs(inst: Instance) -> list[DirectionNeed]:
    return [
        DirectionNeed(
            Vec2(r.goal.cx - r.start.cx, r.goal.cy - r.start.cy),
            list(inst.dirs),
            [d for d, v in enumerate(inst.dirs) if v in usable_dirs(inst, i)],
        )
        for i, r in enumerate(inst.robots)
    ]


def moves_needed(inst: Instance) -> list[Optional[int]]:
    """Per-robot lower bound on its number of moves; None if unreachable."""
    return [n.extra() for n in direction_needs(inst)]


def event_sequences(inst: Instance, length: int) -> Iterator[list[Event]]:
    """Candidate sequences in canonical order (robot index, then direction index).

    Skips immediate repeats of one robot along parallel directions, which
    always merge into a single move, and prefixes after which the robots'
    remaining direction needs exceed the events left.
    """
    needs = direction_needs(inst)
    if any(n.extra() is None for n in needs):
        return
    alphabet = [Event(r, v) for r in range(inst.k) for v in inst.dirs if v in usable_dirs(inst, r)]
    index = {v: i for i, v in enumerate(inst.dirs)}
    used = [frozenset()] * inst.k
    seq: list[Event] = []

    def owed() -> Optional[int]:
        total = 0
        for n, u in zip(needs, used):
            e = n.extra(u)
            if e is None:
                return None
            total += e
        return total

    def rec():
        if len(seq) == length:
            yield list(seq)
            return
        for e in alphabet:
            if seq and seq[-1].robot == e.robot and seq[-1].dir.parallel_to(e.dir):
                continue
            seq.append(e)
            before = used[e.robot]
            used[e.robot] = before | {index[e.dir]}
            o = owed()
            if o is not None and o <= length - len(seq):
                yield from rec()
            used[e.robot] = before
            seq.pop()

    yield from rec()


def serial_length_cap(inst: Instance) -> int:
    if inst.box is None:
        if inst.dirs.spans_plane():
            return 4 * inst.k if inst.budget is None else min(inst.budget, 4 * inst.k)
    elif inst.dirs.is_axis_aligned():
        cap = boxed_budget(inst.k)
        return cap if inst.budget is None else min(inst.budget, cap)
    if inst.budget is None:
        raise BudgetRequired("no move bound applies to this instance; give an explicit budget")
    return inst.budget


def schedule_from_point(events: Sequence[Event], point, prefix: str = "a") -> Schedule:
    moves = []
    for i, e in enumerate(events):
        amp = point[f"{prefix}{i}"]
        if amp <= 0:
            raise AssertionError(f"event {i} got amplitude {amp} at minimum length")
        moves.append(Move(e.robot, e.dir, amp))
    return Schedule.serial(moves)


def solve_events(inst: Instance, events: Sequence[Event], legacy: bool = False,
                 stats: Optional[SearchStats] = None):
    """Feasible point and case choices for one event sequence, or None."""
    for r in range(inst.k):
        if not any(e.robot == r for e in events) and inst.robots[r].start != inst.robots[r].goal:
            return None
    model = EventModel(inst, events, legacy)
    found = search(model.vars, model.base, model.slots, stats)
    if found is None:
        return None
    cases = {model.slot_keys[s]: model.choice_of(s, o) for s, o in enumerate(found.choices)}
    return found.point, cases


class SequenceSolver:
    """Decides event sequences of one instance, pruning with robot pairs.

    For three or more robots each pair, restricted to its own events and
    ignoring everyone else, must already be solvable; those sub-results are
    cached and shared by the many sequences with the same pair projection.
    """

    def __init__(self, inst: Instance, legacy: bool = False, stats: Optional[SearchStats] = None):
        self.inst, self.legacy, self.stats = inst, legacy, stats
        self._pairs: dict = {}

    def _pair_ok(self, a: int, b: int, events: Sequence[Event]) -> bool:
        sub = tuple(Event(0 if e.robot == a else 1, e.dir) for e in events if e.robot in (a, b))
        key = (a, b, sub)
        if key not in self._pairs:
            inst = self.inst
            pair = Instance((inst.robots[a], inst.robots[b]), dirs=inst.dirs, box=inst.box, mode=inst.mode)
            self._pairs[key] = solve_events(pair, sub, self.legacy, self.stats) is not None
        return self._pairs[key]

    def __call__(self, events: list[Event]):
        k = self.inst.k
        if k >= 3 and not all(self._pair_ok(a, b, events) for a in range(k) for b in range(a + 1, k)):
            return None
        found = solve_events(self.inst, events, self.legacy, self.stats)
        return None if found is None else found[0]


def solve_serial_lp(inst: Instance, legacy: bool = False, max_moves: Optional[int] = None,
                    stats: Optional[SearchStats] = None, threads: int = 1):
    """Minimum-length serial schedule, or ``Infeasible`` within the length cap."""
    if inst.mode != SERIAL:
        raise UnsupportedMode("solve_serial_lp handles serial instances")
    cap = serial_length_cap(inst)
    if max_moves is not None:
        cap = min(cap, max_moves)
    stats = stats if stats is not None else SearchStats()
    if inst.solved_at_start():
        return Schedule()
    for length in range(1, cap + 1):
        hit = first_in_order(SequenceSolver(inst, legacy, stats if threads <= 1 else None),
                             event_sequences(inst, length), threads)
        if hit is None:
            log.debug("length %d infeasible (%d LPs so far)", length, stats.lp_calls)
            continue
        events, point = hit
        sched = schedule_from_point(events, point)
        report = verify_schedule(inst, sched)
        if not report.ok:
            raise AssertionError(f"event solver emitted an invalid schedule: {report}")
        return sched
    return Infeasible(cap)
