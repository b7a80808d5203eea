from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rectsched.errors import InvariantViolation, MalformedInput
from rectsched.geometry import Rect, Vec2
from rectsched.model import (
    AXIS_DIRS,
    MINUS_X,
    MINUS_Y,
    PLUS_X,
    PLUS_Y,
    DirectionSet,
    Instance,
    Move,
    Robot,
    Schedule,
    instance_to_dict,
    parse_instance,
    parse_schedule,
    serialize_instance,
    serialize_schedule,
    verify_schedule,
)
from reference import reference_check
from strategies import positive
from suites import SWAP, lattice_instance, sq

F = Fraction


def _doc(**over):
    doc = {
        "mode": "serial",
        "dirs": [["1", "0"], ["0", "1"]],
        "box": None,
        "budget": None,
        "robots": [{"start": {"cx": "0", "cy": "0", "w": "1", "h": "1"},
                    "goal": {"cx": "5", "cy": "0", "w": "1", "h": "1"}}],
    }
    doc.update(over)
    return json.dumps(doc)


ONE = Instance((Robot(sq(0, 0), sq(5, 0)),))


def test_parse_minimal_instance():
    inst = parse_instance(_doc())
    assert inst.k == 1
    assert inst.robots[0].goal == sq(5, 0)
    assert set(inst.dirs) == set(AXIS_DIRS)


def test_negation_closure():
    inst = parse_instance(_doc(dirs=[["1", "0"]]))
    assert list(inst.dirs) == [Vec2(1, 0), Vec2(-1, 0)]


def test_decimal_literals_are_exact():
    inst = parse_instance(_doc(robots=[{"start": {"cx": 0.1, "cy": "1/3", "w": 1, "h": 1},
                                        "goal": {"cx": 0.1, "cy": "1/3", "w": 1, "h": 1}}]))
    assert inst.robots[0].start.cx == F(1, 10)
    assert inst.robots[0].start.cy == F(1, 3)


@pytest.mark.parametrize(
    "robots, name",
    [
        ([((0, 0), (0, 5)), ((F(1, 2), 0), (3, 5))], "overlapping-starts"),
        ([((0, 0), (5, 5)), ((3, 0), (5, 5))], "overlapping-goals"),
    ],
)
def test_invariant_violations(robots, name):
    doc = _doc(robots=[{"start": {"cx": str(s[0]), "cy": str(s[1]), "w": "1", "h": "1"},
                        "goal": {"cx": str(g[0]), "cy": str(g[1]), "w": "1", "h": "1"}} for s, g in robots])
    with pytest.raises(InvariantViolation) as err:
        parse_instance(doc)
    assert err.value.invariant == name


def test_goal_dimension_and_box_checks():
    bad = _doc(robots=[{"start": {"cx": "0", "cy": "0", "w": "1", "h": "1"},
                        "goal": {"cx": "5", "cy": "0", "w": "2", "h": "1"}}])
    with pytest.raises(InvariantViolation) as err:
        parse_instance(bad)
    assert err.value.invariant == "goal-dimension-mismatch"
    with pytest.raises(InvariantViolation) as err:
        parse_instance(_doc(box={"cx": "0", "cy": "0", "w": "2", "h": "2"}))
    assert err.value.invariant == "goal-outside-box"


@pytest.mark.parametrize("text", ["{", "[]", '{"robots": 3}', _doc(mode="sideways"), _doc(budget=-1)])
def test_malformed_documents(text):
    with pytest.raises((MalformedInput, InvariantViolation)):
        parse_instance(text)


def test_verify_examples():
    assert verify_schedule(ONE, Schedule.serial([Move(0, PLUS_X, 5)])).ok
    rep = verify_schedule(ONE, Schedule.serial([Move(0, PLUS_X, 4)]))
    assert (rep.ok, rep.reason, rep.step) == (False, "not-at-goal", 1)
    swap = lattice_instance(SWAP)
    sched = Schedule.serial([Move(1, PLUS_Y, 1), Move(0, PLUS_X, 4), Move(1, MINUS_X, 4), Move(1, MINUS_Y, 1)])
    assert verify_schedule(swap, sched).ok


def test_verify_reasons():
    swap = lattice_instance(SWAP)
    assert verify_schedule(swap, Schedule.serial([Move(0, PLUS_X, 4)])).reason == "collision"
    assert verify_schedule(swap, Schedule.serial([Move(0, Vec2(1, 1), 4)])).reason == "bad-direction"
    assert verify_schedule(swap, Schedule.serial([Move(2, PLUS_X, 4)])).reason == "bad-robot"
    assert verify_schedule(swap, Schedule.serial([Move(0, PLUS_X, 0)])).reason == "bad-amplitude"
    both = Schedule(((Move(0, PLUS_Y, 1), Move(1, PLUS_Y, 1)),))
    assert verify_schedule(swap, both).reason == "bad-step"
    assert verify_schedule(swap, Schedule(((),))).reason == "bad-step"
    boxed = Instance(ONE.robots, box=Rect(F(5, 2), 0, 6, 1))
    assert verify_schedule(boxed, Schedule.serial([Move(0, PLUS_Y, 1), Move(0, PLUS_X, 5),
                                                   Move(0, MINUS_Y, 1)])).reason == "out-of-box"
    budgeted = Instance(ONE.robots, budget=1)
    assert verify_schedule(budgeted, Schedule.serial([Move(0, PLUS_X, 2), Move(0, PLUS_X, 3)])).reason == "over-budget"


def test_parallel_verify():
    swap = lattice_instance(SWAP, "parallel")
    good = Schedule((
        (Move(1, PLUS_Y, 1),),
        (Move(0, PLUS_X, 4), Move(1, MINUS_X, 4)),
        (Move(1, MINUS_Y, 1),),
    ))
    assert verify_schedule(swap, good).ok
    head_on = Schedule(((Move(0, PLUS_X, 4), Move(1, MINUS_X, 4)),))
    assert verify_schedule(swap, head_on).reason == "collision"
    twice = Schedule(((Move(0, PLUS_Y, 1), Move(0, PLUS_X, 1)),))
    assert verify_schedule(swap, twice).reason == "bad-step"


def test_empty_schedule_iff_solved():
    assert verify_schedule(Instance((Robot(sq(1, 1), sq(1, 1)),)), Schedule()).ok
    assert not verify_schedule(ONE, Schedule()).ok


def test_schedule_serialization_examples():
    assert json.loads(serialize_schedule(Schedule())) == {"steps": []}
    doc = json.loads(serialize_schedule(Schedule.serial([Move(0, PLUS_X, 5)])))
    assert doc["steps"][0][0]["amp"] == "5/1"
    s = Schedule.serial([Move(0, PLUS_X, F(7, 3))])
    assert parse_schedule(serialize_schedule(s)) == s


def test_instance_round_trip():
    inst = Instance(
        (Robot(Rect(F(1, 3), 0, 2, F(1, 2)), Rect(4, F(-7, 5), 2, F(1, 2))),),
        dirs=DirectionSet.of([Vec2(1, 1), Vec2(2, -1)]),
        box=Rect(0, 0, 20, 20),
        budget=7,
    )
    assert parse_instance(serialize_instance(inst)) == inst
    assert instance_to_dict(inst)["budget"] == 7


moves = st.builds(
    Move,
    st.integers(0, 2),
    st.sampled_from([PLUS_X, MINUS_X, PLUS_Y, MINUS_Y, Vec2(1, 1)]),
    positive(5),
)
schedules = st.lists(st.lists(moves, min_size=1, max_size=2).map(tuple), max_size=4).map(
    lambda steps: Schedule(tuple(steps))
)


@given(schedules)
def test_schedule_round_trip(s):
    assert parse_schedule(serialize_schedule(s)) == s


@given(schedules, st.sampled_from(["serial", "parallel"]))
def test_verifier_agrees_with_reference(s, mode):
    inst = lattice_instance([((0, 0), (2, 0)), ((2, 0), (0, 0)), ((0, 2), (0, 2))], mode)
    rep = verify_schedule(inst, s)
    ok, reason = reference_check(inst, s)
    assert rep.ok == ok
    if not ok and reason != "collision" and rep.reason != "unsupported-direction":
        assert rep.reason == reason
    if not ok and reason == "collision":
        assert rep.reason in ("collision", "unsupported-direction")


@given(positive(3))
def test_amplitude_perturbation_breaks_goal(extra):
    s = Schedule.serial([Move(0, PLUS_X, 5 + extra)])
    assert verify_schedule(ONE, s).reason == "not-at-goal"
