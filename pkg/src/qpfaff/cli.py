"""qpfaff command line: parameter sweeps, normal forms, straightening.

    qpfaff verify --suites qps,quantum --max 4 --json out.ndjson
    qpfaff nf "K[0;1] * K[0;1]" --check oracle
    qpfaff straighten "E(1) F(1)" --check weyl=1,2,3

Sweeps print one JSON report per line in a fixed lexicographic order.
Exit status: 0 all checks equal, 1 some mismatch, 2 usage error.
"""

from __future__ import annotations

import argparse
import logging
import random
import sys
from dataclasses import dataclass, field
from typing import Callable, Iterator

from . import cartan_u0 as cu
from . import fq_subspaces as fq
from . import integral_form as itf
from . import q_gaussian as qg
from .quantum_binom import verify_bridge, verify_quantum_ps
from .errors import BudgetExceeded, PreconditionViolated, QPfaffError
from .report import VerificationReport

log = logging.getLogger("qpfaff")

ALL_SUITES = (
    "qps", "vandermonde", "trinomial", "symmetry", "stanley", "zeilberger",
    "quantum", "classical", "subspaces", "counting", "bijection", "cartan", "straighten",
)


class UsageError(Exception):
    pass


@dataclass
class SweepConfig:
    max_m: int = 4
    max_s: int = 4
    max_t: int = 4
    max_n: int = 3
    primes: list[int] = field(default_factory=lambda: [2, 3])
    budget: int = fq.DEFAULT_BUDGET
    seed: int = 0
    random_words: int = 200
    suites: list[str] = field(default_factory=lambda: ["qps"])

    def __post_init__(self):
        for name in ("max_m", "max_s", "max_t", "max_n", "random_words"):
            if getattr(self, name) < 0:
                raise UsageError(f"{name} must be nonnegative")
        if self.budget <= 0:
            raise UsageError("budget must be positive")
        for p in self.primes:
            try:
                fq.PrimeField(p)
            except (ValueError, PreconditionViolated) as exc:
                raise UsageError(str(exc)) from None
        unknown = [s for s in self.suites if s not in ALL_SUITES]
        if unknown:
            raise UsageError(f"unknown suites {unknown}; choose from {', '.join(ALL_SUITES)}")

    @property
    def max_all(self) -> int:
        return min(self.max_m, self.max_s, self.max_t)


# --- sweeps, each a generator of reports in lexicographic parameter order


def qps_box(cfg: SweepConfig) -> Iterator[tuple[int, int, int, int]]:
    for m in range(cfg.max_m + 1):
        for s in range(cfg.max_s + 1):
            for t in range(cfg.max_t + 1):
                for e in range(-t, s + 1):
                    yield m, s, t, e


def _qps(cfg):
    for args in qps_box(cfg):
        yield qg.verify_qps(*args)


def _vandermonde(cfg):
    for n in range(cfg.max_m + 1):
        for m in range(n + 1):
            for l in range(n + 1):
                yield qg.verify_vandermonde(n, m, l)


def _trinomial(cfg):
    for n in range(cfg.max_m + 1):
        for l in range(n + 1):
            for k in range(l + 1):
                yield qg.verify_trinomial(n, l, k)


def _symmetry(cfg):
    for n in range(cfg.max_m + 1):
        for k in range(n + 1):
            yield qg.verify_symmetry(n, k)


def _stanley(cfg):
    top = min(cfg.max_all, 4)
    r = range(1, top + 1)
    for x in r:
        for y in r:
            for A in r:
                for B in r:
                    yield qg.verify_stanley(x, y, A, B)


def _zeilberger(cfg):
    top = min(cfg.max_all, 4)
    for a in range(top + 1):
        for b in range(top + 1):
            for c in range(top + 1):
                for k in range(min(a, b, c) + 1):
                    yield qg.verify_zeilberger(a, b, c, k)


def _quantum(cfg):
    for n in range(2 * cfg.max_m + 1):
        for k in range(n + 1):
            yield verify_bridge(n, k)
    for args in qps_box(cfg):
        yield verify_quantum_ps(*args)


def _classical(cfg):
    for args in qps_box(cfg):
        yield qg.verify_classical_limit(*args)


def _subspaces(cfg):
    for p in cfg.primes:
        F = fq.PrimeField(p)
        for n in range(cfg.max_n + 1):
            for k in range(n + 1):
                yield fq.verify_subspace_count(n, k, F, cfg.budget)
        if cfg.max_n >= 2:
            full = fq.Subspace.full(2, p)
            for line in fq.enumerate_subspaces(2, 1, F, cfg.budget):
                rep = fq.count_complements(line, full)
                rep.params["line"] = str(line)
                yield rep


def counting_reports(n: int, F: fq.PrimeField) -> Iterator[VerificationReport]:
    """Every subspace count on nested canonical subspaces of F^n."""
    full = fq.Subspace.full(n, F.p)
    for v in range(n + 1):
        V = fq.fixed_subspace(full, v)
        for k in range(v + 1):
            U = fq.fixed_subspace(V, k)
            for l in range(k, v + 1):
                yield fq.count_intermediate(U, V, l)
            yield fq.count_complements(U, V)
            for m in range(n + 1):
                yield fq.count_extensions(U, V, m)
    for r in range(n + 1):
        U = fq.fixed_subspace(full, r)
        for s in range(n + 1):
            yield fq.count_disjoint(U, s)
    for m in range(n + 1):
        for l in range(n + 1):
            yield fq.vandermonde_pair_count(n, m, l, F)


def _counting(cfg):
    for p in cfg.primes:
        for n in range(cfg.max_n + 1):
            yield from counting_reports(n, fq.PrimeField(p))


def bijection_box(total: int) -> Iterator[tuple[int, int, int, int]]:
    """(m, s, t, e) with 0 <= e <= s <= m + e <= total and t <= m."""
    for m in range(total + 1):
        for e in range(total - m + 1):
            for s in range(e, m + e + 1):
                for t in range(m + 1):
                    yield m, s, t, e


def _bijection(cfg):
    for p in cfg.primes:
        F = fq.PrimeField(p)
        for args in bijection_box(cfg.max_n):
            yield fq.verify_bijection(*args, F)


def _cartan(cfg):
    h3 = min(cfg.max_all, 3)
    for c in range(-2, 4):
        for t in range(h3 + 1):
            for b in range(-2, 4):
                for s in range(h3 + 1):
                    if t - c + b >= 0 and s - b + c >= 0:
                        yield cu.verify_multiply_rule(c, t, b, s)
    for c in range(-4, 5):
        for t in range(min(cfg.max_all, 4) + 1):
            yield cu.verify_normal_form(c, t)
    for c in range(-4, 5):
        for t in range(1, min(cfg.max_all, 5) + 1):
            yield cu.verify_shift_relation(c, t)
    yield cu.verify_k_inverse()


def _straighten(cfg):
    Ns = (1, 2, 3, 4)
    for w in itf.short_words(min(cfg.max_all, 3)):
        yield itf.verify_straighten(w, Ns, confluence=itf.STRATEGIES[1:])
    rng = random.Random(cfg.seed)
    for _ in range(cfg.random_words):
        w = itf.random_word(rng)
        yield itf.verify_straighten(w, Ns, confluence=itf.STRATEGIES[1:])


SUITES: dict[str, Callable[[SweepConfig], Iterator[VerificationReport]]] = {
    "qps": _qps, "vandermonde": _vandermonde, "trinomial": _trinomial,
    "symmetry": _symmetry, "stanley": _stanley, "zeilberger": _zeilberger,
    "quantum": _quantum, "classical": _classical, "subspaces": _subspaces,
    "counting": _counting, "bijection": _bijection, "cartan": _cartan,
    "straighten": _straighten,
}


def run_sweep(cfg: SweepConfig) -> Iterator[VerificationReport]:
    for name in cfg.suites:
        yield from SUITES[name](cfg)


def cmd_verify(cfg: SweepConfig, out=None, json_path: str | None = None) -> int:
    out = out or sys.stdout
    total = failed = 0
    sink = open(json_path, "w") if json_path else None
    try:
        for rep in run_sweep(cfg):
            line = rep.to_json()
            print(line, file=out)
            if sink:
                print(line, file=sink)
            total += 1
            failed += not rep.equal
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    finally:
        if sink:
            sink.close()
    log.info("%d checks, %d mismatches", total, failed)
    return 1 if failed else 0


def cmd_nf(expr: str, check: str | None = None, out=None) -> int:
    out = out or sys.stdout
    node = cu.parse_cartan(expr)
    nf = cu.eval_cartan(node)
    print(nf, file=out)
    if check == "oracle":
        ok = nf.to_oracle() == cu.eval_oracle(node)
        print(f"oracle: {'ok' if ok else 'MISMATCH'}", file=out)
        return 0 if ok else 1
    return 0


def _parse_weyl(text: str) -> list[int]:
    if not text.startswith("weyl="):
        raise UsageError("--check expects weyl=N1,N2,...")
    try:
        Ns = [int(x) for x in text[5:].split(",") if x]
    except ValueError:
        raise UsageError(f"bad module list {text!r}") from None
    if not Ns or min(Ns) < 0:
        raise UsageError("module sizes must be nonnegative")
    return Ns


def cmd_straighten(word: str, check: str | None = None, out=None) -> int:
    out = out or sys.stdout
    Ns = _parse_weyl(check) if check else None
    w = itf.parse_word(word)
    print(itf.straighten(w), file=out)
    if Ns is not None:
        rep = itf.verify_straighten(w, Ns)
        print(f"weyl {Ns}: {'ok' if rep.equal else 'MISMATCH'}", file=out)
        return 0 if rep.equal else 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qpfaff", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run identity and oracle sweeps")
    v.add_argument("--suites", default="qps", help="comma list or 'all'")
    v.add_argument("--max", type=int, default=4, help="bound on m, s, t")
    v.add_argument("--max-n", type=int, default=3, help="ambient dimension / m+e bound")
    v.add_argument("--primes", default="2,3")
    v.add_argument("--budget", type=int, default=fq.DEFAULT_BUDGET)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--random-words", type=int, default=200)
    v.add_argument("--json", metavar="PATH", help="also write the report stream here")

    n = sub.add_parser("nf", help="normal form of a Cartan expression")
    n.add_argument("expr")
    n.add_argument("--check", choices=["oracle"])

    s = sub.add_parser("straighten", help="PBW expansion of a word")
    s.add_argument("word")
    s.add_argument("--check", metavar="weyl=N1,N2")
    return ap


def _config(args) -> SweepConfig:
    suites = list(ALL_SUITES) if args.suites == "all" else [x for x in args.suites.split(",") if x]
    try:
        primes = [int(x) for x in args.primes.split(",") if x]
    except ValueError:
        raise UsageError(f"bad prime list {args.primes!r}") from None
    return SweepConfig(
        max_m=args.max, max_s=args.max, max_t=args.max, max_n=args.max_n,
        primes=primes, budget=args.budget, seed=args.seed,
        random_words=args.random_words, suites=suites,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
    )
    try:
        if args.command == "verify":
            return cmd_verify(_config(args), json_path=args.json)
        if args.command == "nf":
            return cmd_nf(args.expr, args.check)
        return cmd_straighten(args.word, args.check)
    except (UsageError, QPfaffError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
