#!/usr/bin/env python3
"""Run every verification suite at desk scale and print the combined summary.

Exit status 0 iff nothing failed (skips are fine).  --json streams one
CheckReport per line instead of the human summary.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from supercoinv.verify import SUITES, run_suite, summary_lines


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--json", action="store_true")
    parser.add_argument("--suite", choices=sorted(SUITES), action="append",
                        help="restrict to specific suites (repeatable)")
    args = parser.parse_args()

    names = args.suite or sorted(SUITES)
    everything = []
    for name in names:
        t0 = time.time()
        reports = run_suite(name)
        everything.extend(reports)
        if args.json:
            for r in reports:
                print(r.to_json())
        else:
            print(f"== {name} ({time.time() - t0:.1f}s)")
            for line in summary_lines(reports):
                print("   " + line)
    bad = [r for r in everything if not r.ok]
    if not args.json:
        print()
        print(f"total: {len(everything)} checks, {len(bad)} failing")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
