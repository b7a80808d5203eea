"""Affine expressions over named LP variables."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Union

from .lp import EQ, GE, LE, LinProblem

Scalar = Union[int, Fraction]


def _q(v) -> Fraction:
    return v if type(v) is Fraction else Fraction(v)


class Lin:
    __slots__ = ("terms", "const")

    def __init__(self, terms: Mapping[str, Fraction] | None = None, const: Scalar = 0):
        self.terms = {k: _q(v) for k, v in (terms or {}).items() if v}
        self.const = _q(const)

    @classmethod
    def _raw(cls, terms: dict, const: Fraction) -> Lin:
        out = cls.__new__(cls)
        out.terms, out.const = terms, const
        return out

    @classmethod
    def var(cls, name: str) -> Lin:
        return cls._raw({name: Fraction(1)}, Fraction(0))

    def __add__(self, other) -> Lin:
        if not isinstance(other, Lin):
            return Lin._raw(dict(self.terms), self.const + _q(other))
        terms = dict(self.terms)
        for k, v in other.terms.items():
            t = terms.get(k)
            if t is None:
                terms[k] = v
            else:
                t += v
                if t:
                    terms[k] = t
                else:
                    del terms[k]
        return Lin._raw(terms, self.const + other.const)

    __radd__ = __add__

    def __neg__(self) -> Lin:
        return Lin._raw({k: -v for k, v in self.terms.items()}, -self.const)

    def __sub__(self, other) -> Lin:
        if not isinstance(other, Lin):
            return Lin._raw(dict(self.terms), self.const - _q(other))
        return self + (-other)

    def __rsub__(self, other) -> Lin:
        return (-self) + other

    def __mul__(self, s: Scalar) -> Lin:
        s = _q(s)
        if not s:
            return Lin._raw({}, Fraction(0))
        return Lin._raw({k: v * s for k, v in self.terms.items()}, self.const * s)

    __rmul__ = __mul__

    def value(self, point: Mapping[str, Fraction]) -> Fraction:
        return self.const + sum((v * point[k] for k, v in self.terms.items()), Fraction(0))

    def __repr__(self) -> str:
        parts = [f"{v}*{k}" for k, v in sorted(self.terms.items())]
        if self.const or not parts:
            parts.append(str(self.const))
        return " + ".join(parts)


class Cons:
    """``expr rel 0`` with rel one of ``>=``, ``<=``, ``=``."""

    __slots__ = ("expr", "rel")

    def __init__(self, expr: Lin, rel: str = GE):
        self.expr, self.rel = expr, rel

    def holds(self, point: Mapping[str, Fraction]) -> bool:
        v = self.expr.value(point)
        return v >= 0 if self.rel == GE else v <= 0 if self.rel == LE else v == 0

    def add_to(self, p: LinProblem) -> None:
        p.add(self.expr.terms, self.rel, -self.expr.const)

    def __repr__(self) -> str:
        return f"{self.expr!r} {self.rel} 0"


def ge(a, b) -> Cons:
    """a >= b"""
    return Cons(Lin() + a - b, GE)


def le(a, b) -> Cons:
    return Cons(Lin() + b - a, GE)


def eq(a, b) -> Cons:
    return Cons(Lin() + a - b, EQ)
