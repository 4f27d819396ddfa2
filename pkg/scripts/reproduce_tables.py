#!/usr/bin/env python3
"""Recompute the two-column Hilbert series table and diff it against the
published values.

By default runs the desk-scale groups (seconds each).  --stretch adds the
heavy rows (S_5, B_4, D_4, minutes to an hour in total); --group m p n runs a
single group.  Exit status 0 iff every computed row matches its golden row.
"""

import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from supercoinv import harmonics
from supercoinv.groups import build_group
from supercoinv.verify import DESK_SCALE_GROUPS, GOLDEN_TABLE

STRETCH_GROUPS = [(1, 1, 5), (2, 1, 4), (2, 2, 4)]


def z_string(coeffs):
    from supercoinv.qseries import format_poly

    return format_poly(dict(coeffs), var="z")


def run_group(key, budget):
    gd = build_group(*key)
    t0 = time.time()
    table = harmonics.sh_dim_table(gd, budget=budget)
    closure = harmonics.derivative_closure(gd, budget=budget)
    elapsed = time.time() - t0
    return table, closure, elapsed


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--stretch", action="store_true",
                        help="include S_5, B_4, D_4 (slow)")
    parser.add_argument("--group", type=int, nargs=3, metavar=("M", "P", "N"))
    parser.add_argument("--cell-budget", type=int, default=10**9)
    parser.add_argument("--latex", action="store_true",
                        help="also print the LaTeX table")
    args = parser.parse_args()

    if args.group:
        keys = [tuple(args.group)]
    else:
        keys = list(DESK_SCALE_GROUPS)
        if args.stretch:
            keys += STRETCH_GROUPS

    rows = []
    all_ok = True
    for key in keys:
        table, closure, elapsed = run_group(key, args.cell_budget)
        label = table.group.label()
        sh = table.z_coefficients_at_q1()
        cl = closure.z_coefficients_at_q1()
        rows.append((label, z_string(sh), z_string(cl)))
        golden = GOLDEN_TABLE.get(key)
        if golden is None:
            status = "no golden row"
        else:
            want_sh = {k: c for k, c in enumerate(golden[0]) if c}
            want_cl = {k: c for k, c in enumerate(golden[1] or golden[0]) if c}
            ok = sh == want_sh and cl == want_cl
            all_ok = all_ok and ok
            status = "ok" if ok else "MISMATCH"
        closure_txt = "(same)" if cl == sh else z_string(cl)
        print(f"{label:>10}  {z_string(sh):<55} {closure_txt:<45} "
              f"[{status}, {elapsed:.1f}s]")

    if args.latex:
        print()
        print(harmonics.latex_table(rows))
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
