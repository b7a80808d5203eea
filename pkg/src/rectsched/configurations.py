"""Relative-order configurations of rectangle placements, and moving between two
placements of one configuration inside a box."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ConfigurationMismatch, OutOfBox, OverlappingRealization
from .geometry import Rect, contains, interiors_overlap
from .model import MINUS_X, MINUS_Y, PLUS_X, PLUS_Y, Move, Schedule

Signs = tuple[int, int, int, int]


def _sign(q: Fraction) -> int:
    return (q > 0) - (q < 0)


def interval_signs(lo_i, hi_i, lo_j, hi_j) -> Signs:
    return (_sign(lo_i - lo_j), _sign(lo_i - hi_j), _sign(hi_i - lo_j), _sign(hi_i - hi_j))


@dataclass(frozen=True, slots=True)
class Configuration:
    """Per pair ``(i, j)`` with ``i < j``: the x and y edge-sign tuples."""

    pairs: tuple[tuple[tuple[int, int], Signs, Signs], ...]

    def signs(self, i: int, j: int) -> tuple[Signs, Signs]:
        for key, xs, ys in self.pairs:
            if key == (i, j):
                return xs, ys
        raise KeyError((i, j))


def compute_configuration(rects: Sequence[Rect]) -> Configuration:
    out = []
    for i in range(len(rects)):
        for j in range(i + 1, len(rects)):
            a, b = rects[i], rects[j]
            if interiors_overlap(a, b):
                raise OverlappingRealization(f"robots {i} and {j} overlap")
            out.append((
                (i, j),
                interval_signs(a.left, a.right, b.left, b.right),
                interval_signs(a.bottom, a.top, b.bottom, b.top),
            ))
    return Configuration(tuple(out))


def boxed_budget(k: int) -> int:
    if k < 1:
        raise ValueError("k must be positive")
    return 2 * k * 5 ** (k * (k - 1))


def _phase(current: list[Rect], target: list[Rect], axis: int) -> list[Move]:
    """Moves along one axis: negative movers by ascending low edge, then
    positive movers by descending high edge."""
    lo = (lambda r: r.left) if axis == 0 else (lambda r: r.bottom)
    hi = (lambda r: r.right) if axis == 0 else (lambda r: r.top)
    pos_of = (lambda r: r.cx) if axis == 0 else (lambda r: r.cy)
    delta = [pos_of(t) - pos_of(c) for c, t in zip(current, target)]
    neg = sorted((i for i, d in enumerate(delta) if d < 0), key=lambda i: (lo(current[i]), i))
    pos = sorted((i for i, d in enumerate(delta) if d > 0), key=lambda i: (-hi(current[i]), i))
    minus, plus = (MINUS_X, PLUS_X) if axis == 0 else (MINUS_Y, PLUS_Y)
    moves = [Move(i, minus, -delta[i]) for i in neg] + [Move(i, plus, delta[i]) for i in pos]
    for m in moves:
        d = m.displacement
        current[m.robot] = current[m.robot].moved_to(current[m.robot].cx + d.x, current[m.robot].cy + d.y)
    return moves


def morph(box: Rect, start: Sequence[Rect], goal: Sequence[Rect]) -> Schedule:
    """Serial schedule of at most ``2k`` moves carrying ``start`` to ``goal``.

    Both placements must share a configuration and lie in ``box``. All
    horizontal moves come first, then all vertical ones.
    """
    if len(start) != len(goal):
        raise ConfigurationMismatch("placements have different robot counts")
    for i, (a, b) in enumerate(zip(start, goal)):
        if (a.w, a.h) != (b.w, b.h):
            raise ConfigurationMismatch(f"robot {i} changes size")
        if not (contains(box, a) and contains(box, b)):
            raise OutOfBox(f"robot {i} is not inside the box")
    if compute_configuration(start) != compute_configuration(goal):
        raise ConfigurationMismatch("placements realize different configurations")
    current = list(start)
    moves = _phase(current, list(goal), 0) + _phase(current, list(goal), 1)
    return Schedule.serial(moves)
