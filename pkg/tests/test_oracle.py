from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import pytest

from rectsched.errors import NonLatticeInstance, StateSpaceExceeded
from rectsched.geometry import Rect, Vec2, contains, parallel_collision, serial_collision
from rectsched.model import PARALLEL, DirectionSet, Infeasible, Instance, Robot
from rectsched.oracle import bfs_parallel, bfs_serial, default_window
from suites import SWAP, lattice_instance, random_lattice, serial_suite, sq

UNITS = [Vec2(1, 0), Vec2(-1, 0), Vec2(0, 1), Vec2(0, -1)]


def _moves(window: Rect, c):
    for u in UNITS:
        d = 1
        while contains(window, sq(c[0] + u.x * d, c[1] + u.y * d)):
            yield u, d
            d += 1


def naive_serial(starts, goals, window):
    """Level-by-level BFS straight on the collision predicate."""
    seen, level, n = {starts}, [starts], 0
    while level:
        if goals in level:
            return n
        nxt = []
        for s in level:
            for i, c in enumerate(s):
                for u, d in _moves(window, c):
                    if any(serial_collision(sq(*c), u * d, sq(*o)) for j, o in enumerate(s) if j != i):
                        continue
                    t = s[:i] + ((c[0] + u.x * d, c[1] + u.y * d),) + s[i + 1:]
                    if t not in seen:
                        seen.add(t)
                        nxt.append(t)
        level, n = nxt, n + 1
    return None


def naive_parallel(starts, goals, window):
    seen, level, n = {starts}, [starts], 0
    while level:
        if goals in level:
            return n
        nxt = []
        for s in level:
            opts = [[None, *_moves(window, c)] for c in s]
            for combo in product(*opts):
                if all(m is None for m in combo):
                    continue
                ok = True
                for i, j in product(range(len(s)), repeat=2):
                    if i == j or combo[i] is None:
                        continue
                    a, b = sq(*s[i]), sq(*s[j])
                    if combo[j] is None:
                        ok = not serial_collision(a, combo[i][0] * combo[i][1], b)
                    elif i < j:
                        ok = not parallel_collision(a, *combo[i], b, *combo[j])
                    if not ok:
                        break
                if not ok:
                    continue
                t = tuple(c if m is None else (c[0] + m[0].x * m[1], c[1] + m[0].y * m[1]) for c, m in zip(s, combo))
                if t not in seen:
                    seen.add(t)
                    nxt.append(t)
        level, n = nxt, n + 1
    return None


def cells(inst):
    return (tuple((int(r.start.cx), int(r.start.cy)) for r in inst.robots),
            tuple((int(r.goal.cx), int(r.goal.cy)) for r in inst.robots))


def as_int(res):
    return None if isinstance(res, Infeasible) else res


def test_single_slide():
    inst = lattice_instance([((0, 0), (5, 0))])
    assert bfs_serial(inst, Rect(0, 0, 13, 13)) == 1


def test_swap():
    assert bfs_serial(lattice_instance(SWAP), Rect(2, 0, 13, 13)) == 4
    assert bfs_parallel(lattice_instance(SWAP, PARALLEL), Rect(2, 0, 9, 9)) == 3


def test_tight_row_box_is_infeasible():
    inst = lattice_instance([((0, 0), (2, 0)), ((2, 0), (0, 0))], box=Rect(1, 0, 4, 1))
    assert isinstance(bfs_serial(inst), Infeasible)
    assert isinstance(bfs_parallel(inst), Infeasible)


def test_parallel_rows_and_rest():
    rows = lattice_instance([((0, 0), (3, 0)), ((0, 3), (3, 3))], PARALLEL)
    assert bfs_parallel(rows, Rect(2, 2, 9, 9)) == 1
    rest = lattice_instance([((0, 0), (0, 0)), ((2, 0), (2, 0))], PARALLEL)
    assert bfs_parallel(rest, Rect(1, 0, 5, 5)) == 0
    assert bfs_serial(rest, Rect(1, 0, 5, 5)) == 0


def test_rejects_non_lattice_instances():
    with pytest.raises(NonLatticeInstance):
        bfs_serial(Instance((Robot(Rect(0, 0, 1, 2), Rect(3, 0, 1, 2)),)))
    with pytest.raises(NonLatticeInstance):
        bfs_serial(Instance((Robot(Rect(Fraction(1, 2), 0, 1, 1), Rect(3, 0, 1, 1)),)))
    with pytest.raises(NonLatticeInstance):
        bfs_serial(Instance((Robot(sq(0, 0), sq(3, 3)),), dirs=DirectionSet.of([Vec2(1, 1), Vec2(1, -1)])))
    with pytest.raises(NonLatticeInstance):
        bfs_serial(lattice_instance([((0, 0), (5, 0))]), Rect(0, 0, 3, 3))


def test_state_cap():
    with pytest.raises(StateSpaceExceeded):
        bfs_serial(lattice_instance(SWAP), Rect(2, 0, 13, 13), state_cap=50)
    with pytest.raises(StateSpaceExceeded):
        bfs_parallel(lattice_instance(SWAP, PARALLEL), Rect(2, 0, 9, 9), state_cap=50)


def test_default_window_covers_the_grid():
    inst = lattice_instance(SWAP)
    w = default_window(inst)
    assert contains(w, sq(0, 0)) and contains(w, sq(4, 0))
    boxed = lattice_instance(SWAP, box=Rect(2, 0, 7, 3))
    assert default_window(boxed) == boxed.box


def small_cases(seed: int, count: int):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = rng.choice([1, 2, 2, 3])
        window = Rect(0, 0, 5, 3 if k == 3 else 4)
        inst = random_lattice(rng, k, 1)
        if all(contains(window, r) for rb in inst.robots for r in (rb.start, rb.goal)):
            out.append((inst, window))
    return out


@pytest.mark.parametrize("inst, window", small_cases(11, 20))
def test_serial_agrees_with_naive_search(inst, window):
    assert as_int(bfs_serial(inst, window)) == naive_serial(*cells(inst), window)


# joint steps of three robots are too many for the naive search
@pytest.mark.parametrize("inst, window", [c for c in small_cases(12, 16) if c[0].k <= 2])
def test_parallel_agrees_with_naive_search(inst, window):
    par = Instance(inst.robots, mode=PARALLEL)
    assert as_int(bfs_parallel(par, window)) == naive_parallel(*cells(inst), window)


@pytest.mark.parametrize("name, inst, window", [c for c in serial_suite() if c[1].k <= 2][:20])
def test_parallel_never_worse_than_serial(name, inst, window):
    par = Instance(inst.robots, mode=PARALLEL)
    small = Rect(window.cx, window.cy, 9, 9)
    assert bfs_parallel(par, small) <= bfs_serial(inst, small)


@pytest.mark.parametrize("name, inst, window", serial_suite()[:20:2])
def test_window_margin_does_not_change_answer(name, inst, window):
    wider = Rect(window.cx, window.cy, window.w + 4, window.h + 4)
    assert bfs_serial(inst, window) == bfs_serial(inst, wider)
