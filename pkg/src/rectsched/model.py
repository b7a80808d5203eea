"""Instances, schedules, their JSON encoding, and the exact schedule verifier."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import InvariantViolation, MalformedInput, UnsupportedDirection
from .geometry import (
    Rect,
    Vec2,
    contains,
    fmt,
    interiors_overlap,
    parallel_collision,
    rational,
    serial_collision,
    translate,
)

SERIAL = "serial"
PARALLEL = "parallel"


@dataclass(frozen=True, slots=True)
class DirectionSet:
    dirs: tuple[Vec2, ...]

    @classmethod
    def of(cls, vectors: Sequence[Vec2]) -> DirectionSet:
        """Close ``vectors`` under negation, keeping first-seen order."""
        out: list[Vec2] = []
        for v in vectors:
            if v.is_zero():
                raise InvariantViolation("zero-direction", "direction vectors must be nonzero")
            for u in (v, -v):
                if u not in out:
                    out.append(u)
        return cls(tuple(out))

    def __iter__(self):
        return iter(self.dirs)

    def __len__(self) -> int:
        return len(self.dirs)

    def __contains__(self, v: object) -> bool:
        return v in self.dirs

    def index(self, v: Vec2) -> int:
        return self.dirs.index(v)

    def is_axis_aligned(self) -> bool:
        return set(self.dirs) == set(AXIS_DIRS.dirs)

    def spans_plane(self) -> bool:
        return any(not a.parallel_to(b) for a in self.dirs for b in self.dirs)


PLUS_X, MINUS_X, PLUS_Y, MINUS_Y = Vec2(1, 0), Vec2(-1, 0), Vec2(0, 1), Vec2(0, -1)
AXIS_DIRS = DirectionSet((PLUS_X, MINUS_X, PLUS_Y, MINUS_Y))


@dataclass(frozen=True, slots=True)
class Robot:
    start: Rect
    goal: Rect


@dataclass(frozen=True)
class Instance:
    robots: tuple[Robot, ...]
    dirs: DirectionSet = AXIS_DIRS
    box: Optional[Rect] = None
    budget: Optional[int] = None
    mode: str = SERIAL

    def __post_init__(self):
        object.__setattr__(self, "robots", tuple(self.robots))
        check_instance(self)

    @property
    def k(self) -> int:
        return len(self.robots)

    @property
    def starts(self) -> list[Rect]:
        return [r.start for r in self.robots]

    @property
    def goals(self) -> list[Rect]:
        return [r.goal for r in self.robots]

    def solved_at_start(self) -> bool:
        return all(r.start == r.goal for r in self.robots)


def check_instance(inst: Instance) -> None:
    if inst.mode not in (SERIAL, PARALLEL):
        raise InvariantViolation("mode", f"unknown mode {inst.mode!r}")
    if not inst.robots:
        raise InvariantViolation("no-robots", "an instance needs at least one robot")
    if inst.budget is not None and (not isinstance(inst.budget, int) or inst.budget < 0):
        raise InvariantViolation("budget", "budget must be a nonnegative integer")
    for i, r in enumerate(inst.robots):
        if (r.start.w, r.start.h) != (r.goal.w, r.goal.h):
            raise InvariantViolation("goal-dimension-mismatch", f"robot {i}")
    for label, rects in (("overlapping-starts", inst.starts), ("overlapping-goals", inst.goals)):
        for i in range(len(rects)):
            for j in range(i + 1, len(rects)):
                if interiors_overlap(rects[i], rects[j]):
                    raise InvariantViolation(label, f"robots {i} and {j}")
    if inst.box is not None:
        for i, r in enumerate(inst.robots):
            if not contains(inst.box, r.start):
                raise InvariantViolation("start-outside-box", f"robot {i}")
            if not contains(inst.box, r.goal):
                raise InvariantViolation("goal-outside-box", f"robot {i}")


@dataclass(frozen=True, slots=True)
class Move:
    robot: int
    dir: Vec2
    amp: Fraction

    def __post_init__(self):
        object.__setattr__(self, "amp", rational(self.amp))

    @property
    def displacement(self) -> Vec2:
        return self.dir * self.amp


Step = tuple[Move, ...]


@dataclass(frozen=True)
class Schedule:
    steps: tuple[Step, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(tuple(s) for s in self.steps))

    @classmethod
    def serial(cls, moves: Sequence[Move]) -> Schedule:
        return cls(tuple((m,) for m in moves))

    def __len__(self) -> int:
        return len(self.steps)

    def moves(self) -> list[Move]:
        return [m for step in self.steps for m in step]


# -- JSON -------------------------------------------------------------------

class Infeasible:
    """No schedule exists within the searched length bound."""

    def __init__(self, bound: Optional[int] = None):
        self.bound = bound

    def __repr__(self) -> str:
        return f"Infeasible(bound={self.bound})"

    def __bool__(self) -> bool:
        return False


def _num(value) -> Fraction:
    try:
        return rational(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"not an exact number: {value!r}") from exc


def _rect(obj) -> Rect:
    try:
        return Rect(_num(obj["cx"]), _num(obj["cy"]), _num(obj["w"]), _num(obj["h"]))
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"bad rectangle: {obj!r}") from exc
    except ValueError as exc:
        raise InvariantViolation("degenerate-rectangle", str(exc)) from exc


def _vec(obj) -> Vec2:
    if not isinstance(obj, (list, tuple)) or len(obj) != 2:
        raise MalformedInput(f"bad vector: {obj!r}")
    return Vec2(_num(obj[0]), _num(obj[1]))


def _load(text: Union[str, bytes]):
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        return json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc


def instance_from_dict(doc) -> Instance:
    if not isinstance(doc, dict):
        raise MalformedInput("instance document must be a JSON object")
    try:
        robots_doc = doc["robots"]
    except KeyError as exc:
        raise MalformedInput("missing 'robots'") from exc
    if not isinstance(robots_doc, list):
        raise MalformedInput("'robots' must be a list")
    robots = []
    for r in robots_doc:
        if not isinstance(r, dict) or "start" not in r or "goal" not in r:
            raise MalformedInput(f"bad robot entry: {r!r}")
        robots.append(Robot(_rect(r["start"]), _rect(r["goal"])))
    dirs_doc = doc.get("dirs")
    dirs = AXIS_DIRS if dirs_doc is None else DirectionSet.of([_vec(v) for v in dirs_doc])
    box = None if doc.get("box") is None else _rect(doc["box"])
    budget = doc.get("budget")
    if budget is not None and (isinstance(budget, bool) or not isinstance(budget, int)):
        raise MalformedInput("'budget' must be an integer or null")
    mode = doc.get("mode", SERIAL)
    return Instance(tuple(robots), dirs, box, budget, mode)


def parse_instance(text: Union[str, bytes]) -> Instance:
    return instance_from_dict(_load(text))


def _rect_doc(r: Rect) -> dict:
    return {"cx": fmt(r.cx), "cy": fmt(r.cy), "w": fmt(r.w), "h": fmt(r.h)}


def _vec_doc(v: Vec2) -> list:
    return [fmt(v.x), fmt(v.y)]


def instance_to_dict(inst: Instance) -> dict:
    return {
        "mode": inst.mode,
        "dirs": [_vec_doc(v) for v in inst.dirs],
        "box": None if inst.box is None else _rect_doc(inst.box),
        "budget": inst.budget,
        "robots": [{"start": _rect_doc(r.start), "goal": _rect_doc(r.goal)} for r in inst.robots],
    }


def serialize_instance(inst: Instance) -> str:
    return json.dumps(instance_to_dict(inst), indent=2)


def schedule_to_dict(s: Schedule) -> dict:
    return {
        "steps": [
            [{"robot": m.robot, "dir": _vec_doc(m.dir), "amp": fmt(m.amp)} for m in step]
            for step in s.steps
        ]
    }


def serialize_schedule(s: Schedule) -> str:
    return json.dumps(schedule_to_dict(s), indent=2)


def schedule_from_dict(doc) -> Schedule:
    if not isinstance(doc, dict) or not isinstance(doc.get("steps"), list):
        raise MalformedInput("schedule document needs a 'steps' list")
    steps = []
    for step in doc["steps"]:
        if not isinstance(step, list):
            raise MalformedInput(f"each step must be a list of moves, got {step!r}")
        moves = []
        for m in step:
            try:
                robot = m["robot"]
                if isinstance(robot, bool) or not isinstance(robot, int):
                    raise MalformedInput(f"robot index must be an integer: {robot!r}")
                moves.append(Move(robot, _vec(m["dir"]), _num(m["amp"])))
            except (KeyError, TypeError) as exc:
                raise MalformedInput(f"bad move: {m!r}") from exc
        steps.append(tuple(moves))
    return Schedule(tuple(steps))


def parse_schedule(text: Union[str, bytes]) -> Schedule:
    return schedule_from_dict(_load(text))


# -- verification -------------------------------------------------------------

@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    step: Optional[int] = None
    reason: Optional[str] = None
    detail: str = field(default="", compare=False)

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "pass"
        return f"fail({self.reason}) at step {self.step}: {self.detail}".rstrip(": ")


def _fail(step: int, reason: str, detail: str = "") -> VerifyReport:
    return VerifyReport(False, step, reason, detail)


def verify_schedule(inst: Instance, s: Schedule) -> VerifyReport:
    """Simulate ``s`` exactly and report the first violation.

    Failure reasons: ``over-budget``, ``bad-step``, ``bad-robot``,
    ``bad-direction``, ``bad-amplitude``, ``unsupported-direction``,
    ``collision``, ``out-of-box``, ``not-at-goal``. Checks run step by step in
    that order, so the reported step is the first offending one.
    """
    pos = list(inst.starts)
    k = inst.k
    for idx, step in enumerate(s.steps):
        if inst.budget is not None and idx >= inst.budget:
            return _fail(idx, "over-budget", f"schedule longer than budget {inst.budget}")
        if not step:
            return _fail(idx, "bad-step", "empty step")
        if inst.mode == SERIAL and len(step) != 1:
            return _fail(idx, "bad-step", "serial steps move exactly one robot")
        seen = set()
        for m in step:
            if not (0 <= m.robot < k):
                return _fail(idx, "bad-robot", f"no robot {m.robot}")
            if m.robot in seen:
                return _fail(idx, "bad-step", f"robot {m.robot} appears twice")
            seen.add(m.robot)
        for m in step:
            if m.dir not in inst.dirs:
                return _fail(idx, "bad-direction", f"{m.dir} not in direction set")
            if m.amp <= 0:
                return _fail(idx, "bad-amplitude", f"robot {m.robot} amplitude {m.amp}")
        for m in step:
            for j in range(k):
                if j not in seen and serial_collision(pos[m.robot], m.displacement, pos[j]):
                    return _fail(idx, "collision", f"robot {m.robot} hits stationary robot {j}")
        for a in range(len(step)):
            for b in range(a + 1, len(step)):
                ma, mb = step[a], step[b]
                try:
                    hit = parallel_collision(pos[ma.robot], ma.dir, ma.amp, pos[mb.robot], mb.dir, mb.amp)
                except UnsupportedDirection as exc:
                    return _fail(idx, "unsupported-direction", str(exc))
                if hit:
                    return _fail(idx, "collision", f"robots {ma.robot} and {mb.robot} collide while moving")
        if inst.box is not None:
            for m in step:
                if not contains(inst.box, translate(pos[m.robot], m.displacement)):
                    return _fail(idx, "out-of-box", f"robot {m.robot} leaves the box")
        for m in step:
            pos[m.robot] = translate(pos[m.robot], m.displacement)
    for i, (p, r) in enumerate(zip(pos, inst.robots)):
        if p != r.goal:
            return _fail(len(s.steps), "not-at-goal", f"robot {i} ends at ({p.cx}, {p.cy})")
    return VerifyReport(True)
