#!/usr/bin/env python3
"""Run every verification suite and print a summary table.

Equivalent to `hhbv verify`, but prints per-check failures in full, which is
handy when digging into a regression.
"""

import argparse
import sys
import time

from hhbv.verification import SUITES


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--suite", action="append", choices=sorted(SUITES),
                    help="run only the named suite(s); default: all")
    ap.add_argument("--show-pass", action="store_true",
                    help="also list passing checks")
    args = ap.parse_args()

    names = args.suite or sorted(SUITES)
    total_failed = 0
    for name in names:
        start = time.perf_counter()
        results = SUITES[name]()
        elapsed = time.perf_counter() - start
        failed = [r for r in results if not r.ok]
        total_failed += len(failed)
        print(f"{name:18s} {len(results):4d} checks  "
              f"{len(failed):3d} failed  {elapsed:6.2f}s")
        shown = results if args.show_pass else failed
        for r in shown:
            mark = "ok " if r.ok else "FAIL"
            detail = f"  {r.detail}" if r.detail else ""
            print(f"    [{mark}] {r.name}{detail}")
    print("overall:", "pass" if total_failed == 0 else
          f"{total_failed} failures")
    return 0 if total_failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
