#!/usr/bin/env python3
"""Print the one-pointed disk counts for the stock fans and check the
coefficient-sum law against the closed forms.

Usage: python scripts/invariant_report.py [--max-n 8]
"""

import argparse
import time

from opengw import (
    Ambient,
    builtin_fan,
    chekanov_superpotential,
    closed_form_invariant,
    invariant_table,
)


def print_table(title, spec):
    w = chekanov_superpotential(spec, Ambient.COMPACT)
    table = invariant_table(w)
    print(f"\n{title}  ({len(table)} classes)")
    width = max(len(row.name) for row in table)
    for row in table:
        print(f"  {row.name.ljust(width)}  {row.value}")


def sum_law(max_n):
    print("\ncoefficient-sum law over the sphere classes")
    print("  fan            sum        expected")
    for n in range(1, max_n + 1):
        spec = builtin_fan("cpn", n=n)
        t0 = time.perf_counter()
        table = invariant_table(chekanov_superpotential(spec, Ambient.COMPACT))
        total = sum(row.value for row in table if any(row.cls.h))
        dt = time.perf_counter() - t0
        mark = "ok" if total == n**n else "MISMATCH"
        print(f"  CP^{n:<2}         {str(total):>9}  {n**n:>9}  {mark}  [{dt:.2f}s]")
    for n, r in [(2, 1), (4, 1), (5, 2), (6, 3)]:
        spec = builtin_fan("cp_product", n=n, r=r)
        table = invariant_table(chekanov_superpotential(spec, Ambient.COMPACT))
        total = sum(row.value for row in table if any(row.cls.h))
        want = n**r + n ** (n - r)
        mark = "ok" if total == want else "MISMATCH"
        print(f"  CP^{r}xCP^{n - r}      {str(total):>9}  {want:>9}  {mark}")


def oracle_check():
    print("\nclosed-form spot checks")
    for label, family, params, want in [
        ("CP^3 k=(0,0)", "cpn", {"n": 3, "k": (0, 0)}, 6),
        ("CP^3 k=(1,1)", "cpn", {"n": 3, "k": (1, 1)}, 0),
        ("F_1  H1 k=0", "f1", {"branch": "H1", "k": 0}, 2),
        ("CP^1xCP^1 H2 l=(1)", "cp_product", {"n": 2, "r": 1, "branch": "H2", "k": (1,)}, 1),
    ]:
        got = closed_form_invariant(family, params)
        mark = "ok" if got == want else "MISMATCH"
        print(f"  {label:<22} {got}  {mark}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=8)
    args = ap.parse_args()

    print_table("CP^2", builtin_fan("cpn", n=2))
    print_table("CP^1 x CP^1", builtin_fan("cp_product", n=2, r=1))
    print_table("CP^3", builtin_fan("cpn", n=3))
    print_table("F_1", builtin_fan("hirzebruch_f1"))
    sum_law(args.max_n)
    oracle_check()


if __name__ == "__main__":
    main()
