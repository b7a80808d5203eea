"""Depth-first search over disjunctive linear constraints, pruned by exact LP.

A *slot* is a disjunction: at least one of its options (each a conjunction
of linear constraints) must hold. The search keeps a witness point for the
constraints committed so far. A slot already satisfied at that point costs
nothing; the others are forward-checked by LP, and the most constrained one
is branched on.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .linexpr import Cons
from .lp import LinProblem, solve_feasibility

Option = Sequence[Cons]
Slot = Sequence[Option]


@dataclass
class SearchStats:
    lp_calls: int = 0
    nodes: int = 0


@dataclass
class DisjunctiveResult:
    point: dict[str, Fraction]
    choices: list[int]


def lp_point(variables: Sequence[str], cons: Sequence[Cons], stats: Optional[SearchStats] = None):
    if stats is not None:
        stats.lp_calls += 1
    p = LinProblem(list(variables))
    for c in cons:
        c.add_to(p)
    res = solve_feasibility(p)
    return res.values if res else None


def _satisfied(option: Option, point) -> bool:
    return all(c.holds(point) for c in option)


def search(
    variables: Sequence[str],
    base: Sequence[Cons],
    slots: Sequence[Slot],
    stats: Optional[SearchStats] = None,
    point=None,
) -> Optional[DisjunctiveResult]:
    """Find a point satisfying ``base`` and one option of every slot."""
    stats = stats if stats is not None else SearchStats()
    if point is None:
        point = lp_point(variables, base, stats)
        if point is None:
            return None
    found = _dfs(variables, list(base), {}, point, slots, stats)
    if found is None:
        return None
    pt, choices = found
    return DisjunctiveResult(pt, [choices[s] for s in range(len(slots))])


def _dfs(variables, committed, choices, point, slots, stats):
    stats.nodes += 1
    pending = []
    hinted = {}
    for s in range(len(slots)):
        if s in choices:
            continue
        hit = next((o for o, opt in enumerate(slots[s]) if _satisfied(opt, point)), None)
        if hit is None:
            pending.append(s)
        else:
            hinted[s] = hit
    if not pending:
        return point, {**choices, **hinted}
    # forward check: a slot with no feasible option fails the node, one with a
    # single option is forced; counting stops at two since that is enough to
    # know a slot would branch
    best = None
    for s in pending:
        feasible = []
        for o, opt in enumerate(slots[s]):
            pt = lp_point(variables, committed + list(opt), stats)
            if pt is not None:
                feasible.append((o, pt))
                if len(feasible) == 2 and best is not None:
                    break
        if not feasible:
            return None
        if best is None or len(feasible) < len(best[1]):
            best = (s, feasible)
            if len(feasible) == 1:
                break
    s, feasible = best
    for o, pt in feasible:
        found = _dfs(variables, committed + list(slots[s][o]), {**choices, s: o}, pt, slots, stats)
        if found is not None:
            return found
    return None
