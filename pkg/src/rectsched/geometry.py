"""Exact planar primitives for axis-aligned rectangular robots.

Every coordinate is a :class:`fractions.Fraction`; nothing here rounds.
Overlap is always judged on open interiors, so touching never collides.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DegenerateAmplitude, DegenerateDirection, UnsupportedDirection

Rational = Fraction
Number = Union[int, str, Fraction, Decimal]
Point = tuple[Fraction, Fraction]

ZERO = Fraction(0)
HALF = Fraction(1, 2)


def rational(value: Number) -> Fraction:
    """Exact conversion from int, Fraction, Decimal or a ``"p/q"``/decimal string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, (int, Decimal)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} exactly to a rational")


def fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True, slots=True)
class Vec2:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", rational(self.x))
        object.__setattr__(self, "y", rational(self.y))

    def __add__(self, other: Vec2) -> Vec2:
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: Vec2) -> Vec2:
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> Vec2:
        return Vec2(-self.x, -self.y)

    def __mul__(self, s) -> Vec2:
        s = rational(s)
        return Vec2(self.x * s, self.y * s)

    __rmul__ = __mul__

    def dot(self, other: Vec2) -> Fraction:
        return self.x * other.x + self.y * other.y

    def cross(self, other: Vec2) -> Fraction:
        return self.x * other.y - self.y * other.x

    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0

    def is_axis_parallel(self) -> bool:
        return (self.x == 0) != (self.y == 0)

    def parallel_to(self, other: Vec2) -> bool:
        return self.cross(other) == 0

    def __str__(self) -> str:
        return f"({self.x}, {self.y})"


@dataclass(frozen=True, slots=True)
class Rect:
    """Axis-aligned rectangle given by its center and full width/height."""

    cx: Fraction
    cy: Fraction
    w: Fraction
    h: Fraction

    def __post_init__(self):
        for name in ("cx", "cy", "w", "h"):
            object.__setattr__(self, name, rational(getattr(self, name)))
        if self.w <= 0 or self.h <= 0:
            raise ValueError(f"rectangle needs positive width and height, got {self.w} x {self.h}")

    @property
    def left(self) -> Fraction:
        return self.cx - self.w / 2

    @property
    def right(self) -> Fraction:
        return self.cx + self.w / 2

    @property
    def bottom(self) -> Fraction:
        return self.cy - self.h / 2

    @property
    def top(self) -> Fraction:
        return self.cy + self.h / 2

    @property
    def center(self) -> Vec2:
        return Vec2(self.cx, self.cy)

    def corners(self) -> list[Point]:
        """Counterclockwise from the bottom-left corner."""
        return [
            (self.left, self.bottom),
            (self.right, self.bottom),
            (self.right, self.top),
            (self.left, self.top),
        ]

    def moved_to(self, cx, cy) -> Rect:
        return Rect(cx, cy, self.w, self.h)

    def extent(self, axis: Vec2) -> Fraction:
        """Half-length of the projection of this rectangle onto ``axis``."""
        return abs(axis.x) * self.w / 2 + abs(axis.y) * self.h / 2


@dataclass(frozen=True, slots=True)
class ConvexPolygon:
    vertices: tuple[Point, ...]

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise ValueError("a convex polygon needs at least three vertices")


def translate(r: Rect, v: Vec2) -> Rect:
    return Rect(r.cx + v.x, r.cy + v.y, r.w, r.h)


def interiors_overlap(a: Rect, b: Rect) -> bool:
    return a.left < b.right and b.left < a.right and a.bottom < b.top and b.bottom < a.top


def contains(outer: Rect, inner: Rect) -> bool:
    """Closed containment; boundary contact is allowed."""
    return (
        outer.left <= inner.left
        and inner.right <= outer.right
        and outer.bottom <= inner.bottom
        and inner.top <= outer.top
    )


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull(points: Iterable[Point]) -> list[Point]:
    """Monotone chain hull, counterclockwise, collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    # start at the lowest vertex, leftmost among ties
    start = min(range(len(hull)), key=lambda i: (hull[i][1], hull[i][0]))
    return hull[start:] + hull[:start]


def _require_direction(v: Vec2) -> None:
    if v.is_zero():
        raise DegenerateDirection("direction vector must be nonzero")


def trace_polygon(r: Rect, v: Vec2) -> ConvexPolygon:
    """Boundary of the region swept while ``r`` translates by ``v``."""
    _require_direction(v)
    end = translate(r, v)
    return ConvexPolygon(tuple(convex_hull(r.corners() + end.corners())))


def swept_rect(r: Rect, v: Vec2) -> Rect:
    """Swept region of an axis-parallel translation, which is itself a rectangle."""
    if not v.is_axis_parallel():
        raise UnsupportedDirection(f"{v} is not axis-parallel")
    return Rect(r.cx + v.x / 2, r.cy + v.y / 2, r.w + abs(v.x), r.h + abs(v.y))


def separating_axes(v: Vec2) -> list[Vec2]:
    """Candidate axes for a swept rectangle against another rectangle."""
    axes = [Vec2(1, 0), Vec2(0, 1)]
    if not v.is_axis_parallel():
        axes.append(Vec2(-v.y, v.x))
    return axes


def _sweep_projection(r: Rect, v: Vec2, axis: Vec2) -> tuple[Fraction, Fraction]:
    c = axis.dot(r.center)
    e = r.extent(axis)
    shift = axis.dot(v)
    return c - e + min(ZERO, shift), c + e + max(ZERO, shift)


def serial_collision(mover: Rect, v: Vec2, stationary: Rect) -> bool:
    """True iff some intermediate position of ``mover`` overlaps ``stationary``.

    The swept region is convex, so separating-axis testing against its edge
    normals and the rectangle's is exact. This also catches a stationary
    robot lying strictly inside the sweep.
    """
    _require_direction(v)
    for axis in separating_axes(v):
        lo, hi = _sweep_projection(mover, v, axis)
        c = axis.dot(stationary.center)
        e = stationary.extent(axis)
        if not (lo < c + e and c - e < hi):
            return False
    return True


def _unit_axis(v: Vec2) -> tuple[Vec2, Fraction]:
    if v.is_zero():
        raise DegenerateDirection("direction vector must be nonzero")
    if not v.is_axis_parallel():
        raise UnsupportedDirection(f"parallel motion supports axis-parallel directions only, got {v}")
    length = abs(v.x) + abs(v.y)
    return Vec2(v.x / length, v.y / length), length


class _Window:
    """Set of times satisfying strict linear inequalities, clipped to [t0, t1]."""

    __slots__ = ("lo", "lo_open", "hi", "hi_open", "empty")

    def __init__(self, t0: Fraction, t1: Fraction):
        self.lo, self.lo_open, self.hi, self.hi_open = t0, False, t1, False
        self.empty = False

    def require_positive(self, const: Fraction, slope: Fraction) -> None:
        # const + slope * t > 0
        if self.empty:
            return
        if slope == 0:
            if const <= 0:
                self.empty = True
            return
        bound = -const / slope
        if slope > 0:
            if bound > self.lo or (bound == self.lo and not self.lo_open):
                self.lo, self.lo_open = bound, True
        else:
            if bound < self.hi or (bound == self.hi and not self.hi_open):
                self.hi, self.hi_open = bound, True
        if self.lo > self.hi or (self.lo == self.hi and (self.lo_open or self.hi_open)):
            self.empty = True


def parallel_collision(
    a: Rect, va: Vec2, amp_a: Fraction, b: Rect, vb: Vec2, amp_b: Fraction
) -> bool:
    """Collision test for two robots moving at once with equal unit speed.

    Each robot starts at time 0 and halts once it has covered its own
    displacement ``amp * |v|``. The time axis is split at both halting times;
    within a phase every edge moves linearly, so overlap reduces to strict
    linear inequalities in ``t``.
    """
    amp_a, amp_b = rational(amp_a), rational(amp_b)
    if amp_a <= 0 or amp_b <= 0:
        raise DegenerateAmplitude("amplitudes must be positive")
    ua, la = _unit_axis(va)
    ub, lb = _unit_axis(vb)
    da, db = amp_a * la, amp_b * lb
    cuts = sorted({ZERO, da, db})
    for t0, t1 in zip(cuts, cuts[1:]):
        # position = c + u * t while t < d, else frozen at c + u * d
        sa = ua if t0 < da else Vec2(0, 0)
        sb = ub if t0 < db else Vec2(0, 0)
        oa = a.center if t0 < da else a.center + ua * da
        ob = b.center if t0 < db else b.center + ub * db
        win = _Window(t0, t1)
        for coord, ha, hb in (("x", a.w / 2, b.w / 2), ("y", a.h / 2, b.h / 2)):
            ca, cb = getattr(oa, coord), getattr(ob, coord)
            ka, kb = getattr(sa, coord), getattr(sb, coord)
            # a.lo < b.hi  and  b.lo < a.hi
            win.require_positive((cb + hb) - (ca - ha), kb - ka)
            win.require_positive((ca + ha) - (cb - hb), ka - kb)
        if not win.empty:
            return True
    return False


def polygon_from(points: Sequence[Point]) -> ConvexPolygon:
    return ConvexPolygon(tuple(convex_hull(points)))
