#!/usr/bin/env python3
"""Tabulate quadruple cells S_{j,k} over F_p next to the staged-count formula.

    python3 scripts/bijection_tables.py 2 1 1 0 --p 2
"""

from __future__ import annotations

import argparse

from qpfaff.fq_subspaces import (
    BijectionContext,
    PrimeField,
    bijection_forward,
    enumerate_quadruples,
    enumerate_T,
    quadruple_cell,
    quadruple_formula,
)
from qpfaff.q_gaussian import qps_lhs, qps_summand


def main() -> None:
    ap = argparse.ArgumentParser()
    for name in "mste":
        ap.add_argument(name, type=int)
    ap.add_argument("--p", type=int, default=2)
    a = ap.parse_args()
    F = PrimeField(a.p)
    ctx = BijectionContext.create(a.m, a.s, a.t, a.e, F)

    images = {}
    for A, B in enumerate_T(ctx):
        cell = quadruple_cell(bijection_forward(A, B, ctx), ctx)
        images[cell] = images.get(cell, 0) + 1

    print(f"(m,s,t,e)=({a.m},{a.s},{a.t},{a.e}) over F_{a.p}")
    print(f"{'j':>3}{'k':>3}{'|S_jk|':>9}{'formula':>9}{'images':>8}")
    by_j = {}
    for j in range(a.s + a.t + a.e + 1):
        for k in range(a.s + a.t + 1):
            count, _ = enumerate_quadruples(a.m, a.s, a.t, a.e, j, k, F)
            formula = int(quadruple_formula(a.m, a.s, a.t, a.e, j, k).evaluate(a.p))
            if count or formula or images.get((j, k)):
                print(f"{j:>3}{k:>3}{count:>9}{formula:>9}{images.get((j, k), 0):>8}")
            by_j[j] = by_j.get(j, 0) + count
    print("per-j totals against the summands of the identity at q = p:")
    for j, total in by_j.items():
        summand = int(qps_summand(a.m, a.s, a.t, a.e, j).evaluate(a.p))
        if total or summand:
            print(f"  j={j}: {total} quadruples, summand {summand}")
    print(f"|T| = {sum(images.values())}, left side at p = {int(qps_lhs(a.m, a.s, a.t, a.e).evaluate(a.p))}")


if __name__ == "__main__":
    main()
