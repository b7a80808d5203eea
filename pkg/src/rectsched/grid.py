"""The instance grid: basic center lines plus lines from robot stackings."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .errors import NonAxisAlignedDirections
from .model import Instance


@dataclass(frozen=True)
class Grid:
    xs: tuple[Fraction, ...]
    ys: tuple[Fraction, ...]


def line_bound(k: int, depth: int) -> int:
    """Upper bound on the vertical (or horizontal) line count."""
    return k**3 * 2 ** (k + depth + 1)


def compositions(total: int, parts: int):
    """Ordered ways to write ``total`` as ``parts`` positive integers."""
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def multiset_sums(sizes: list[Fraction], i: int) -> set[Fraction]:
    """Sums over all ``i``-multisets drawn from ``sizes`` (indexed by robot).

    Enumerated as a subset of robots plus a multiplicity vector for it.
    """
    out = set()
    k = len(sizes)
    for r in range(1, min(i, k) + 1):
        for subset in combinations(range(k), r):
            for mult in compositions(i, r):
                out.add(sum((m * sizes[j] for m, j in zip(mult, subset)), Fraction(0)))
    return out


def _axis_lines(basics: list[tuple[Fraction, Fraction]], sizes: list[Fraction], depth: int) -> tuple[Fraction, ...]:
    # basics: (line coordinate, size of a robot centered on it)
    lines = {b for b, _ in basics}
    if depth == 0:
        return tuple(sorted(lines))
    sums = set()
    for i in range(1, depth + 1):
        sums |= multiset_sums(sizes, i)
    others = set(sizes)
    for b, wb in set(basics):
        for w in others:
            for s in sums:
                off = wb / 2 + w / 2 + s
                lines.add(b + off)
                lines.add(b - off)
    return tuple(sorted(lines))


def build_grid(inst: Instance, depth: int) -> Grid:
    if not inst.dirs.is_axis_aligned():
        raise NonAxisAlignedDirections("the instance grid is defined for axis-aligned motion only")
    if depth < 0:
        raise ValueError("grid depth must be nonnegative")
    xb, yb = [], []
    for r in inst.robots:
        for rect in (r.start, r.goal):
            xb.append((rect.cx, rect.w))
            yb.append((rect.cy, rect.h))
    widths = [r.start.w for r in inst.robots]
    heights = [r.start.h for r in inst.robots]
    return Grid(_axis_lines(xb, widths, depth), _axis_lines(yb, heights, depth))
