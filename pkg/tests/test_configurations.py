from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from rectsched.configurations import boxed_budget, compute_configuration, interval_signs, morph
from rectsched.errors import ConfigurationMismatch, OutOfBox, OverlappingRealization
from rectsched.geometry import Rect, interiors_overlap
from rectsched.model import MINUS_X, PLUS_X, Instance, Robot, verify_schedule
from strategies import positive, rationals, rects
from suites import MORPH_BOX, morph_suite, sq

F = Fraction


def test_fully_left_pair():
    c = compute_configuration([sq(0, 0), sq(3, 0)])
    assert c.signs(0, 1) == ((-1, -1, -1, -1), (0, -1, 1, 0))


def test_single_robot_has_no_pairs():
    assert compute_configuration([sq(4, 4)]).pairs == ()


def test_overlap_is_rejected():
    with pytest.raises(OverlappingRealization):
        compute_configuration([sq(0, 0), sq(F(1, 2), 0)])


def test_touching_is_a_tie():
    xs, _ = compute_configuration([sq(0, 0), sq(1, 0)]).signs(0, 1)
    assert xs == (-1, -1, 0, -1)


@pytest.mark.parametrize("k, expect", [(1, 2), (2, 100), (3, 93750)])
def test_boxed_budget(k, expect):
    assert boxed_budget(k) == expect


def test_boxed_budget_rejects_zero():
    with pytest.raises(ValueError):
        boxed_budget(0)


@given(rationals(), rationals(), rationals(), rationals())
def test_interval_signs_are_consistent(a, b, c, d):
    lo_i, hi_i = min(a, b), max(a, b)
    lo_j, hi_j = min(c, d), max(c, d)
    s = interval_signs(lo_i, hi_i, lo_j, hi_j)
    # lo <= hi on both intervals orders the four differences
    assert s[1] <= s[0] <= s[2] and s[1] <= s[3] <= s[2]


placements = st.lists(rects, min_size=2, max_size=4)


@given(placements, rationals(), rationals())
def test_translation_invariance(rs, dx, dy):
    assume(not any(interiors_overlap(a, b) for i, a in enumerate(rs) for b in rs[i + 1:]))
    moved = [r.moved_to(r.cx + dx, r.cy + dy) for r in rs]
    assert compute_configuration(moved) == compute_configuration(rs)


@given(placements, positive(), rationals(), rationals())
def test_scaling_invariance(rs, s, px, py):
    assume(not any(interiors_overlap(a, b) for i, a in enumerate(rs) for b in rs[i + 1:]))
    scaled = [Rect(px + s * (r.cx - px), py + s * (r.cy - py), s * r.w, s * r.h) for r in rs]
    assert compute_configuration(scaled) == compute_configuration(rs)


def test_morph_identity_is_empty():
    rs = [sq(0, 0), sq(3, 0)]
    assert len(morph(MORPH_BOX, rs, rs)) == 0


def test_morph_rightmost_right_mover_goes_first():
    s = morph(Rect(0, 0, 20, 20), [sq(0, 0), sq(3, 0)], [sq(1, 0), sq(4, 0)])
    assert [(step[0].robot, step[0].dir, step[0].amp) for step in s.steps] == [(1, PLUS_X, 1), (0, PLUS_X, 1)]


def test_morph_leftmost_left_mover_goes_first():
    s = morph(Rect(0, 0, 20, 20), [sq(0, 0), sq(1, 0)], [sq(-1, 0), sq(0, 0)])
    assert [(step[0].robot, step[0].dir) for step in s.steps] == [(0, MINUS_X), (1, MINUS_X)]


def test_morph_two_axes_uses_at_most_four_moves():
    box = Rect(0, 0, 20, 20)
    start, goal = [sq(0, 0), sq(2, 1)], [sq(1, 2), sq(3, 3)]
    s = morph(box, start, goal)
    assert len(s) == 4
    dirs = [step[0].dir for step in s.steps]
    assert all(d.y == 0 for d in dirs[:2]) and all(d.x == 0 for d in dirs[2:])


def test_morph_errors():
    box = Rect(0, 0, 10, 10)
    with pytest.raises(ConfigurationMismatch):
        morph(box, [sq(0, 0), sq(3, 0)], [sq(3, 0), sq(0, 0)])
    with pytest.raises(ConfigurationMismatch):
        morph(box, [sq(0, 0)], [sq(0, 0), sq(2, 2)])
    with pytest.raises(ConfigurationMismatch):
        morph(box, [sq(0, 0)], [Rect(0, 0, 2, 1)])
    with pytest.raises(OutOfBox):
        morph(box, [sq(0, 0)], [sq(20, 0)])


@pytest.mark.parametrize("n", range(len(morph_suite())))
def test_morph_suite(n):
    start, goal = morph_suite()[n]
    s = morph(MORPH_BOX, start, goal)
    assert len(s) <= 2 * len(start)
    inst = Instance(tuple(Robot(a, b) for a, b in zip(start, goal)), box=MORPH_BOX)
    assert verify_schedule(inst, s).ok
