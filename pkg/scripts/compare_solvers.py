"""Run the solvers against the brute-force oracle on one of the test suites.

    python3 scripts/compare_solvers.py --suite serial --limit 10
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from suites import free_plane_suite, parallel_suite, serial_suite  # noqa: E402

from rectsched.cli import solve  # noqa: E402
from rectsched.event_serial import solve_serial_lp  # noqa: E402
from rectsched.grid_search import solve_serial_grid  # noqa: E402
from rectsched.model import Infeasible, verify_schedule  # noqa: E402
from rectsched.oracle import bfs_parallel, bfs_serial  # noqa: E402


def length(res) -> str:
    return "inf" if isinstance(res, Infeasible) else str(len(res))


def timed(fn, *args, **kw):
    t = time.perf_counter()
    res = fn(*args, **kw)
    return res, time.perf_counter() - t


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--suite", choices=("serial", "parallel", "free"), default="serial")
    ap.add_argument("--limit", type=int)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args()

    mismatches = 0
    if args.suite == "serial":
        print(f"{'name':<18} k oracle grid  lp   t_grid  t_lp")
        for name, inst, window in serial_suite()[: args.limit]:
            opt = bfs_serial(inst, window)
            grid, tg = timed(solve_serial_grid, inst)
            lp, tl = timed(solve_serial_lp, inst, threads=args.threads)
            ok = length(grid) == length(lp) == str(opt)
            mismatches += not ok
            print(f"{name:<18} {inst.k} {opt!s:>6} {length(grid):>4} {length(lp):>3} {tg:7.2f} {tl:6.2f}"
                  + ("" if ok else "  MISMATCH"))
    elif args.suite == "parallel":
        print(f"{'name':<18} k oracle  lp    t_lp")
        for name, inst, window in parallel_suite()[: args.limit]:
            opt = bfs_parallel(inst, window)
            lp, tl = timed(solve, inst, threads=args.threads)
            ok = length(lp) == str(opt)
            mismatches += not ok
            print(f"{name:<18} {inst.k} {opt!s:>6} {length(lp):>3} {tl:7.2f}" + ("" if ok else "  MISMATCH"))
    else:
        print(f"{'n':>3} k dirs len  4k  valid  time")
        for n, inst in enumerate(free_plane_suite()[: args.limit]):
            s, t = timed(solve, inst, threads=args.threads)
            ok = not isinstance(s, Infeasible) and len(s) <= 4 * inst.k and verify_schedule(inst, s).ok
            mismatches += not ok
            print(f"{n:>3} {inst.k} {len(inst.dirs):>4} {length(s):>3} {4 * inst.k:>3} {ok!s:>6} {t:5.2f}")
    print(f"{mismatches} mismatches")
    return 1 if mismatches else 0


if __name__ == "__main__":
    sys.exit(main())
