"""Acceptance gate: each criterion runs its full parameter box under a time limit.

Run directly (``python3 tests/test_acceptance.py``) for one PASS/FAIL line per
criterion, or through pytest, which prints the same lines in its summary.
"""

from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass

import pytest

from qpfaff import cartan_u0 as cu
from qpfaff import fq_subspaces as fq
from qpfaff import integral_form as itf
from qpfaff.cli import SweepConfig, bijection_box, counting_reports, qps_box
from qpfaff.q_gaussian import (
    verify_classical_limit,
    verify_qps,
    verify_stanley,
    verify_zeilberger,
)
from qpfaff.quantum_binom import verify_bridge, verify_quantum_ps

BOX6 = list(qps_box(SweepConfig(max_m=6, max_s=6, max_t=6)))
RESULTS: list[str] = []


@dataclass
class Outcome:
    checks: int = 0
    failures: int = 0
    first: str = ""

    def add(self, ok: bool, label) -> None:
        self.checks += 1
        if not ok:
            self.failures += 1
            self.first = self.first or str(label)

    def report(self, rep, extra: bool = True) -> None:
        self.add(rep.equal and extra, (rep.suite, rep.params, rep.notes[:2]))


def qps_sweep(o: Outcome):
    for args in BOX6:
        rep = verify_qps(*args)
        o.report(rep, not any("outside window" in n for n in rep.notes))


def finite_geometry(o: Outcome):
    for p, top in ((2, 6), (3, 4)):
        F = fq.PrimeField(p)
        for n in range(top + 1):
            for k in range(n + 1):
                o.report(fq.verify_subspace_count(n, k, F))
    F3 = fq.PrimeField(3)
    lines = fq.enumerate_subspaces(2, 1, F3)
    o.add(len(lines) == 4, f"{len(lines)} lines in F_3^2")
    for L in lines:
        rep = fq.count_complements(L, fq.Subspace.full(2, 3))
        o.report(rep, rep.lhs == "3")


def counting_counting(o: Outcome):
    F2 = fq.PrimeField(2)
    for n in range(6):
        for rep in counting_reports(n, F2):
            o.report(rep)
    # every subspace of F_2^n, not only the canonical ones
    for n in range(5):
        full = fq.Subspace.full(n, 2)
        for k in range(n + 1):
            for U in fq.enumerate_subspaces(n, k, F2):
                o.report(fq.count_complements(U, full))
                for s in range(n + 1):
                    o.report(fq.count_disjoint(U, s))
                for v in range(k, n + 1):
                    for V in fq.enumerate_subspaces(n, v, F2):
                        if U <= V:
                            for l in range(k, v + 1):
                                o.report(fq.count_intermediate(U, V, l))
                            if n <= 3:
                                for m in range(n + 1):
                                    o.report(fq.count_extensions(U, V, m))


def bijection(o: Outcome):
    for p, total in ((2, 4), (3, 3)):
        F = fq.PrimeField(p)
        for args in bijection_box(total):
            o.report(fq.verify_bijection(*args, F))


def quantum_bridge(o: Outcome):
    for n in range(13):
        for k in range(n + 1):
            o.report(verify_bridge(n, k))
    for args in BOX6:
        o.report(verify_quantum_ps(*args))


def cartan_engine(o: Outcome):
    for c in range(-2, 4):
        for t in range(4):
            for b in range(-2, 4):
                for s in range(4):
                    if t - c + b >= 0 and s - b + c >= 0:
                        rep = cu.verify_multiply_rule(c, t, b, s)
                        o.report(rep, all(n.endswith("True") for n in rep.notes[:2]))
    for c in range(-4, 5):
        for t in range(5):
            o.report(cu.verify_normal_form(c, t))
    o.report(cu.verify_k_inverse())
    for c in range(-4, 5):
        for t in range(1, 6):
            o.report(cu.verify_shift_relation(c, t))


def straightening(o: Outcome):
    for N in range(6):
        for name, ok in itf.oracle_soundness(N):
            o.add(ok, f"V({N}): {name}")
    corpus = itf.short_words(3)
    rng = random.Random(20240601)
    corpus += [itf.random_word(rng) for _ in range(200)]
    for w in corpus:
        o.report(itf.verify_straighten(w, (1, 2, 3, 4), confluence=itf.STRATEGIES[1:]))


def classical_limit(o: Outcome):
    for args in BOX6:
        o.report(verify_classical_limit(*args))


def equivalence_forms(o: Outcome):
    r = range(1, 5)
    for x in r:
        for y in r:
            for A in r:
                for B in r:
                    rep = verify_stanley(x, y, A, B)
                    o.report(rep, "substitution consistent: True" in rep.notes)
    for a in range(5):
        for b in range(5):
            for c in range(5):
                for k in range(min(a, b, c) + 1):
                    rep = verify_zeilberger(a, b, c, k)
                    o.report(rep, "substitution consistent: True" in rep.notes)


CRITERIA = [
    (1, "q-Pfaff-Saalschütz sweep m,s,t <= 6", qps_sweep, 60),
    (2, "subspace counts p=2 n<=6, p=3 n<=4; lines of F_3^2", finite_geometry, 60),
    (3, "subspace counting formulas and Vandermonde pairs at p=2", counting_counting, 120),
    (4, "bijection T <-> S, p=2 m+e<=4, p=3 m+e<=3", bijection, 300),
    (5, "quantum bridge n<=12 and quantum sweep", quantum_bridge, 30),
    (6, "Cartan rule, normal forms, K K^-1, shift relation", cartan_engine, 120),
    (7, "straightening soundness, corpus, confluence", straightening, 300),
    (8, "classical limit q -> 1", classical_limit, 10),
    (9, "Stanley and Zeilberger forms with substitution", equivalence_forms, 30),
]


def run_criterion(num, label, fn, limit) -> tuple[bool, str]:
    o = Outcome()
    start = time.perf_counter()
    fn(o)
    elapsed = time.perf_counter() - start
    ok = o.failures == 0 and o.checks > 0 and elapsed < limit
    line = (
        f"{'PASS' if ok else 'FAIL'} criterion {num}: {label} "
        f"[{o.checks} checks, {o.failures} failed, {elapsed:.1f}s / {limit}s]"
    )
    if o.first:
        line += f" first failure: {o.first}"
    RESULTS.append(line)
    print(line)
    return ok, line


@pytest.mark.parametrize("num,label,fn,limit", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_acceptance(num, label, fn, limit):
    ok, line = run_criterion(num, label, fn, limit)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c)[0] for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
