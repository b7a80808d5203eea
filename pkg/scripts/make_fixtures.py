"""Write small instance files for trying the CLI, with oracle optima where they apply.

    python3 scripts/make_fixtures.py fixtures/
"""
from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

from rectsched.geometry import Rect, Vec2
from rectsched.model import PARALLEL, DirectionSet, Infeasible, Instance, Robot, serialize_instance
from rectsched.oracle import bfs_parallel, bfs_serial


def sq(x, y) -> Rect:
    return Rect(x, y, 1, 1)


FIXTURES = {
    "one_robot": Instance((Robot(sq(0, 0), sq(5, 0)),)),
    "swap": Instance((Robot(sq(0, 0), sq(4, 0)), Robot(sq(4, 0), sq(0, 0)))),
    "three_cycle": Instance((Robot(sq(0, 0), sq(2, 0)), Robot(sq(2, 0), sq(4, 0)), Robot(sq(4, 0), sq(0, 0)))),
    "tight_row": Instance((Robot(sq(0, 0), sq(2, 0)), Robot(sq(2, 0), sq(0, 0))), box=Rect(1, 0, 4, 1), budget=6),
    "parallel_swap": Instance((Robot(sq(0, 0), sq(4, 0)), Robot(sq(4, 0), sq(0, 0))), mode=PARALLEL),
    "escape": Instance((Robot(sq(0, 2), sq(3, 2)), Robot(sq(0, 0), sq(0, 3))), mode=PARALLEL),
    "diagonal": Instance(
        (Robot(Rect(0, 0, 2, 1), Rect(3, 1, 2, 1)), Robot(Rect(3, 0, 1, Fraction(3, 2)), Rect(0, 1, 1, Fraction(3, 2)))),
        dirs=DirectionSet.of([Vec2(1, 1), Vec2(1, -1)]),
    ),
}


def oracle(inst: Instance):
    if any(r.start.w != 1 or r.start.h != 1 for r in inst.robots) or not inst.dirs.is_axis_aligned():
        return None
    res = (bfs_parallel if inst.mode == PARALLEL else bfs_serial)(inst)
    return "infeasible" if isinstance(res, Infeasible) else res


def main() -> int:
    out = Path(sys.argv[1] if len(sys.argv) > 1 else "fixtures")
    out.mkdir(parents=True, exist_ok=True)
    for name, inst in FIXTURES.items():
        (out / f"{name}.json").write_text(serialize_instance(inst) + "\n")
        opt = oracle(inst)
        print(f"{name:<14} k={inst.k} mode={inst.mode:<8} oracle={'-' if opt is None else opt}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
