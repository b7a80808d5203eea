"""Solve a fixture and write its SVG frames.

    python3 scripts/render_demo.py fixtures/swap.json frames/
"""
from __future__ import annotations

import sys
from pathlib import Path

from rectsched.cli import solve
from rectsched.model import Infeasible, parse_instance
from rectsched.render import render_schedule


def main() -> int:
    if len(sys.argv) != 3:
        print(__doc__.strip(), file=sys.stderr)
        return 1
    inst = parse_instance(Path(sys.argv[1]).read_text())
    sched = solve(inst)
    if isinstance(sched, Infeasible):
        print(f"infeasible within {sched.bound} moves")
        return 2
    paths = render_schedule(inst, sched, sys.argv[2])
    print(f"{len(sched)} steps, {len(paths)} frames in {sys.argv[2]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
