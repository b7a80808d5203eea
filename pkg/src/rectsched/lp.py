"""Exact rational LP feasibility with Farkas certificates.

Variables are free unless constrained by rows. Feasibility is decided by a
phase-1 simplex with Bland's rule on a dense ``Fraction`` tableau, after a
presolve that eliminates equality rows by substitution and turns single
variable lower-bound rows into column shifts.

Certificates refer to the rows in ``<=`` orientation: a ``>=`` row is read
as its negation, so its multiplier is nonnegative like any ``<=`` row;
multipliers of ``=`` rows may have either sign. A valid certificate
combines the rows into ``0 <= -1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

from .errors import DimensionMismatch

LE, EQ, GE = "<=", "=", ">="
ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    rel: str
    rhs: Fraction


@dataclass
class LinProblem:
    vars: list[str]
    constraints: list[Constraint] = field(default_factory=list)

    def __post_init__(self):
        self._index = {v: i for i, v in enumerate(self.vars)}

    def add_var(self, name: str) -> str:
        if name in self._index:
            raise ValueError(f"duplicate variable {name}")
        self._index[name] = len(self.vars)
        self.vars.append(name)
        self.constraints = [
            Constraint(c.coeffs + (ZERO,), c.rel, c.rhs) for c in self.constraints
        ]
        return name

    def add(self, coeffs: Union[Mapping[str, Fraction], Sequence[Fraction]], rel: str, rhs) -> None:
        if isinstance(coeffs, Mapping):
            row = [ZERO] * len(self.vars)
            for name, c in coeffs.items():
                row[self._index[name]] += c if type(c) is Fraction else Fraction(c)
        else:
            row = [Fraction(c) for c in coeffs]
        self.constraints.append(Constraint(tuple(row), rel, Fraction(rhs)))

    def copy(self) -> LinProblem:
        return LinProblem(list(self.vars), list(self.constraints))


@dataclass(frozen=True)
class FeasiblePoint:
    values: dict[str, Fraction]

    def __bool__(self) -> bool:
        return True

    def __getitem__(self, name: str) -> Fraction:
        return self.values[name]


@dataclass(frozen=True)
class Infeasible:
    certificate: tuple[Fraction, ...]

    def __bool__(self) -> bool:
        return False


def _normalized(c: Constraint) -> tuple[dict[int, Fraction], Fraction]:
    sign = -1 if c.rel == GE else 1
    return {j: sign * a for j, a in enumerate(c.coeffs) if a != 0}, sign * c.rhs


def _validate(p: LinProblem) -> None:
    n = len(p.vars)
    if len(set(p.vars)) != n:
        raise DimensionMismatch("duplicate variable names")
    for i, c in enumerate(p.constraints):
        if len(c.coeffs) != n:
            raise DimensionMismatch(f"row {i} has {len(c.coeffs)} coefficients for {n} variables")
        if c.rel not in (LE, EQ, GE):
            raise DimensionMismatch(f"row {i} has unknown relation {c.rel!r}")


def check_point(p: LinProblem, values: Mapping[str, Fraction]) -> bool:
    for c in p.constraints:
        lhs = sum((a * values[v] for a, v in zip(c.coeffs, p.vars) if a), ZERO)
        if c.rel == LE and not lhs <= c.rhs:
            return False
        if c.rel == GE and not lhs >= c.rhs:
            return False
        if c.rel == EQ and lhs != c.rhs:
            return False
    return True


def check_certificate(p: LinProblem, mult: Sequence[Fraction]) -> bool:
    if len(mult) != len(p.constraints):
        return False
    total = [ZERO] * len(p.vars)
    rhs = ZERO
    for lam, c in zip(mult, p.constraints):
        if c.rel != EQ and lam < 0:
            return False
        row, b = _normalized(c)
        for j, a in row.items():
            total[j] += lam * a
        rhs += lam * b
    return all(t == 0 for t in total) and rhs < 0


class _Row:
    __slots__ = ("coef", "rhs", "comb")

    def __init__(self, coef: dict[int, Fraction], rhs: Fraction, comb: dict[int, Fraction]):
        self.coef, self.rhs, self.comb = coef, rhs, comb

    def axpy(self, f: Fraction, other: _Row) -> None:
        """self += f * other"""
        for j, a in other.coef.items():
            v = self.coef.get(j, ZERO) + f * a
            if v:
                self.coef[j] = v
            else:
                self.coef.pop(j, None)
        self.rhs += f * other.rhs
        for i, a in other.comb.items():
            v = self.comb.get(i, ZERO) + f * a
            if v:
                self.comb[i] = v
            else:
                self.comb.pop(i, None)


def _certificate(n_rows: int, combo: dict[int, Fraction], rhs_total: Fraction) -> Infeasible:
    scale = -ONE / rhs_total if rhs_total < 0 else ONE
    mult = [ZERO] * n_rows
    for i, a in combo.items():
        mult[i] = a * scale
    return Infeasible(tuple(mult))


def _combine(rows: list[tuple[Fraction, _Row]]) -> dict[int, Fraction]:
    out: dict[int, Fraction] = {}
    for lam, row in rows:
        if not lam:
            continue
        for i, a in row.comb.items():
            out[i] = out.get(i, ZERO) + lam * a
    return out


def solve_feasibility(p: LinProblem) -> Union[FeasiblePoint, Infeasible]:
    _validate(p)
    n = len(p.vars)
    m_orig = len(p.constraints)
    eqs: list[_Row] = []
    ineqs: list[_Row] = []
    for i, c in enumerate(p.constraints):
        coef, rhs = _normalized(c)
        row = _Row(coef, rhs, {i: ONE})
        (eqs if c.rel == EQ else ineqs).append(row)

    # variables with a single-variable lower-bound row keep their sign structure
    bounded = {next(iter(r.coef)) for r in ineqs if len(r.coef) == 1 and next(iter(r.coef.values())) < 0}

    eliminated: list[tuple[int, _Row]] = []
    pending = list(eqs)
    while pending:
        e = pending.pop(0)
        if not e.coef:
            if e.rhs != 0:
                return _certificate(m_orig, e.comb, -abs(e.rhs)) if e.rhs < 0 else _certificate(
                    m_orig, {i: -a for i, a in e.comb.items()}, -e.rhs
                )
            continue
        free = [j for j in e.coef if j not in bounded]
        j = min(free) if free else min(e.coef)
        a = e.coef[j]
        for other in pending + ineqs:
            c = other.coef.get(j)
            if c:
                other.axpy(-c / a, e)
        eliminated.append((j, e))

    # lower bounds: first single-variable row c*x_j <= b with c < 0 gives x_j >= b/c
    lower: dict[int, tuple[Fraction, _Row, Fraction]] = {}
    rows: list[_Row] = []
    for r in ineqs:
        if len(r.coef) == 1:
            (j, c), = r.coef.items()
            if c < 0 and j not in lower:
                lower[j] = (r.rhs / c, r, c)
                continue
        if not r.coef:
            if r.rhs < 0:
                return _certificate(m_orig, r.comb, r.rhs)
            continue
        rows.append(r)

    elim_vars = {j for j, _ in eliminated}
    live = sorted({j for r in rows for j in r.coef} | set(lower))
    live = [j for j in live if j not in elim_vars]
    # column layout: bounded vars get one shifted column, free vars get +/- columns
    cols: list[tuple[int, int]] = []  # (var, sign)
    for j in live:
        cols.append((j, 1))
        if j not in lower:
            cols.append((j, -1))
    nx = len(cols)
    m = len(rows)

    x_vals: dict[int, Fraction] = {j: ZERO for j in range(n)}
    if m:
        col_of: dict[int, list[tuple[int, int]]] = {}
        for ci, (j, s) in enumerate(cols):
            col_of.setdefault(j, []).append((ci, s))
        sigma: list[int] = []
        art_rows = []
        for i, r in enumerate(rows):
            h = r.rhs - sum((a * lower[j][0] for j, a in r.coef.items() if j in lower), ZERO)
            sigma.append(1 if h >= 0 else -1)
            if h < 0:
                art_rows.append(i)
        n_art = len(art_rows)
        width = nx + m + n_art
        art_col = {i: nx + m + t for t, i in enumerate(art_rows)}
        T: list[list[Fraction]] = []
        basis: list[int] = []
        for i, r in enumerate(rows):
            s = sigma[i]
            line = [ZERO] * (width + 1)
            for j, a in r.coef.items():
                for ci, cs in col_of[j]:
                    line[ci] = s * cs * a
            line[nx + i] = Fraction(s)
            h = r.rhs - sum((a * lower[j][0] for j, a in r.coef.items() if j in lower), ZERO)
            line[width] = s * h
            if s < 0:
                line[art_col[i]] = ONE
                basis.append(art_col[i])
            else:
                basis.append(nx + i)
            T.append(line)
        # reduced costs of phase 1: minimize the sum of artificials
        z = [ZERO] * (width + 1)
        for i in art_rows:
            for c in range(width + 1):
                if T[i][c]:
                    z[c] -= T[i][c]
        for i in art_rows:
            z[art_col[i]] = ZERO
        # z[width] holds -objective

        while True:
            enter = next((c for c in range(width) if z[c] < 0), None)
            if enter is None:
                break
            best = None
            for i in range(m):
                a = T[i][enter]
                if a > 0:
                    ratio = T[i][width] / a
                    if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                        best = (ratio, i)
            if best is None:  # cannot happen in phase 1; objective is bounded below
                raise RuntimeError("unbounded phase-1 problem")
            r = best[1]
            prow = T[r]
            piv = prow[enter]
            if piv != 1:
                inv = ONE / piv
                prow = [v * inv if v else v for v in prow]
                T[r] = prow
            nz = [c for c in range(width + 1) if prow[c]]
            for i in range(m):
                if i != r:
                    f = T[i][enter]
                    if f:
                        row_i = T[i]
                        for c in nz:
                            row_i[c] -= f * prow[c]
            f = z[enter]
            for c in nz:
                z[c] -= f * prow[c]
            basis[r] = enter

        if z[width] != 0:
            # optimum of phase 1 is positive; read duals off the reduced costs
            lam: list[Fraction] = []
            for i in range(m):
                y = ONE - z[art_col[i]] if sigma[i] < 0 else -z[nx + i]
                lam.append(-y * sigma[i])
            parts = [(lam[i], rows[i]) for i in range(m)]
            for j, (lb, brow, c) in lower.items():
                rho = sum((lam[i] * rows[i].coef.get(j, ZERO) for i in range(m)), ZERO)
                if rho:
                    parts.append((-rho / c, brow))
            combo = _combine(parts)
            rhs_total = sum((a * _normalized(p.constraints[i])[1] for i, a in combo.items()), ZERO)
            return _certificate(m_orig, combo, rhs_total)

        col_val = [ZERO] * nx
        for i, b in enumerate(basis):
            if b < nx:
                col_val[b] = T[i][width]
        for ci, (j, s) in enumerate(cols):
            x_vals[j] += s * col_val[ci]
    for j, (lb, _, _) in lower.items():
        x_vals[j] += lb
    for j, e in reversed(eliminated):
        a = e.coef[j]
        rest = sum((c * x_vals[l] for l, c in e.coef.items() if l != j), ZERO)
        x_vals[j] = (e.rhs - rest) / a
    values = {p.vars[j]: x_vals[j] for j in range(n)}
    if not check_point(p, values):
        raise AssertionError("exact LP produced a point violating its constraints")
    return FeasiblePoint(values)
