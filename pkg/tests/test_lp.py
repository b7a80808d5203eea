from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rectsched.errors import DimensionMismatch
from rectsched.lp import EQ, GE, LE, Constraint, LinProblem, check_certificate, check_point, solve_feasibility
from campaigns import lp_campaign, random_system

F = Fraction


def test_contradictory_bounds():
    p = LinProblem(["x"])
    p.add({"x": 1}, GE, 1)
    p.add({"x": 1}, LE, 0)
    res = solve_feasibility(p)
    assert not res
    assert res.certificate == (1, 1)
    assert check_certificate(p, res.certificate)


def test_simplex_vertex():
    p = LinProblem(["x", "y"])
    p.add({"x": 1, "y": 1}, EQ, 2)
    p.add({"x": 1}, GE, 0)
    p.add({"y": 1}, GE, 0)
    res = solve_feasibility(p)
    assert res and res["x"] + res["y"] == 2 and res["x"] >= 0 and res["y"] >= 0


def test_exact_third():
    p = LinProblem(["x"])
    p.add([3], LE, 1)
    p.add([-3], LE, -1)
    assert solve_feasibility(p)["x"] == F(1, 3)


def test_empty_problem_and_trivial_rows():
    assert solve_feasibility(LinProblem(["x"]))
    p = LinProblem(["x"])
    p.add([0], EQ, 1)
    res = solve_feasibility(p)
    assert not res and check_certificate(p, res.certificate)


def test_dimension_errors():
    p = LinProblem(["x", "y"])
    p.constraints.append(Constraint((F(1),), LE, F(0)))
    with pytest.raises(DimensionMismatch):
        solve_feasibility(p)
    q = LinProblem(["x"])
    q.constraints.append(Constraint((F(1),), "<", F(0)))
    with pytest.raises(DimensionMismatch):
        solve_feasibility(q)


def test_random_systems_small_sample():
    stats = lp_campaign(150, seed=3)
    assert stats["unverified"] == 0 and stats["disagree"] == 0
    assert 0 < stats["feasible"] < stats["systems"]


@settings(max_examples=200)
@given(st.integers(0, 2**32))
def test_results_always_reverify(seed):
    p = random_system(random.Random(seed))
    res = solve_feasibility(p)
    if res:
        assert check_point(p, res.values)
    else:
        assert check_certificate(p, res.certificate)


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=2), st.integers(-5, 5))
def test_bad_certificates_rejected(mult, rhs):
    p = LinProblem(["x"])
    p.add([1], LE, rhs)
    p.add([1], GE, rhs - 1)
    assert not check_certificate(p, [F(m) for m in mult])
