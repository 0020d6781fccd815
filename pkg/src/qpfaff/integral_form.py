"""Straightening in Lusztig's integral form U_A(sl2).

Words in the generators E^(n), F^(n), K^±1 and [K;c//t] are rewritten to
A-linear combinations of PBW monomials F^(a) [K;c//t] E^(b) with (c, t) in
basis B.  The rewrite rules are the divided-power relations

    E^(n) E^(m) = {n+m, n} E^(n+m)          (same for F)
    E^(n) [K;c//t] = [K;c-2n//t] E^(n)
    [K;c//t] F^(n) = F^(n) [K;c-2n//t]
    E^(n) F^(m) = sum_t F^(m-t) [K;2t-m-n//t] E^(n-t)

together with the Cartan normal form and product from :mod:`cartan_u0`.
Results are checked on the finite-dimensional modules V(N).
"""

from __future__ import annotations

import random
import re
from collections import defaultdict
from typing import Iterable, Mapping, Sequence

from .cartan_u0 import (
    K_ELEMENT,
    K_INV_ELEMENT,
    CartanElement,
    in_basis,
    normal_form,
    product,
    render_combination,
    specialize,
)
from .errors import IntegralityViolated, NotDivisible, ParseError
from .exact_arith import ONE, ZERO, LaurentPoly
from .quantum_binom import quantum_binom, quantum_factorial, quantum_int
from .report import VerificationReport, timed

# Generators are tagged tuples:
#   ("E", n), ("F", n)   divided powers, n >= 1
#   ("K", +1 | -1)       K and K^-1
#   ("C", c, t)          Lusztig element [K;c//t], any c, t >= 1


def E(n: int) -> tuple:
    if n < 1:
        raise ValueError("divided powers need n >= 1")
    return ("E", n)


def F(n: int) -> tuple:
    if n < 1:
        raise ValueError("divided powers need n >= 1")
    return ("F", n)


def KPower(sign: int) -> tuple:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return ("K", sign)


def Cartan(c: int, t: int) -> tuple:
    if t < 0:
        raise ValueError("height must be >= 0")
    return ("C", c, t)


Word = tuple  # of generators

# PBW monomial F^(a) [K;c//t] E^(b) as (a, c, t, b); unit Cartan part is (0, 0)
Monomial = tuple


class AlgebraElement:
    """A-linear combination of PBW monomials."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[Monomial, LaurentPoly] | None = None):
        out = {}
        for mono, v in (coeffs or {}).items():
            a, c, t, b = mono
            if t == 0:
                c = 0
            if a < 0 or b < 0 or not in_basis((c, t)):
                raise ValueError(f"{mono} is not a PBW monomial")
            if isinstance(v, int):
                v = LaurentPoly.const(v)
            if v:
                key = (a, c, t, b)
                out[key] = out[key] + v if key in out else v
        self._coeffs = {k: v for k, v in out.items() if v}

    def items(self):
        return sorted(
            self._coeffs.items(),
            key=lambda kv: (-(kv[0][0] + kv[0][3]), -kv[0][0], kv[0][2], -kv[0][1]),
        )

    def coeff(self, mono: Monomial) -> LaurentPoly:
        return self._coeffs.get(mono, ZERO)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __len__(self):
        return len(self._coeffs)

    def __str__(self) -> str:
        return render_combination([(monomial_label(m), v) for m, v in self.items()])

    def __repr__(self):
        return f"AlgebraElement({self})"

    def words(self) -> list[tuple[LaurentPoly, Word]]:
        """Each monomial re-encoded as a word, with its coefficient."""
        return [(v, monomial_word(m)) for m, v in self.items()]


def monomial_word(mono: Monomial) -> Word:
    a, c, t, b = mono
    w = []
    if a:
        w.append(("F", a))
    if t:
        w.append(("C", c, t))
    if b:
        w.append(("E", b))
    return tuple(w)


def monomial_label(mono: Monomial) -> str:
    return "*".join(_gen_str(g) for g in monomial_word(mono))


def _gen_str(g) -> str:
    if g[0] in ("E", "F"):
        return f"{g[0]}({g[1]})"
    if g[0] == "K":
        return "K" if g[1] == 1 else "K^-1"
    return f"K[{g[1]};{g[2]}]"


def render_word(w: Word) -> str:
    return " ".join(_gen_str(g) for g in w)


_GEN = re.compile(r"^(?:([EF])\((\d+)\)|K\^(-?1)|(K)|K\[(-?\d+);(\d+)\])$")


def parse_word(text: str) -> Word:
    out = []
    for tok in text.split():
        m = _GEN.match(tok)
        if not m:
            raise ParseError(f"bad generator {tok!r}")
        if m.group(1):
            n = int(m.group(2))
            if n < 1:
                raise ParseError("divided powers need n >= 1")
            out.append((m.group(1), n))
        elif m.group(3):
            out.append(("K", int(m.group(3))))
        elif m.group(4):
            out.append(("K", 1))
        else:
            out.append(("C", int(m.group(5)), int(m.group(6))))
    return tuple(out)


# ---------------------------------------------------------------------------
# rewriting
# ---------------------------------------------------------------------------

_PAIR_KINDS = {("E", "E"), ("F", "F"), ("E", "C"), ("C", "F"), ("E", "F"), ("C", "C")}


def _single_redex(g) -> bool:
    if g[0] == "K":
        return True
    if g[0] == "C":
        return g[2] == 0 or not in_basis((g[1], g[2]))
    return g[1] == 0


def redexes(w: Word) -> list[tuple[int, int]]:
    """(position, length) of every applicable rewrite, left to right."""
    out = []
    for i, g in enumerate(w):
        if _single_redex(g):
            out.append((i, 1))
        elif i + 1 < len(w) and not _single_redex(w[i + 1]):
            if (g[0], w[i + 1][0]) in _PAIR_KINDS:
                out.append((i, 2))
    return out


def _cartan_tokens(x: CartanElement) -> list[tuple[LaurentPoly, tuple]]:
    out = []
    for (c, t), v in x.items():
        out.append((v, () if t == 0 else (("C", c, t),)))
    return out


def _clean(tokens: Iterable[tuple]) -> tuple:
    return tuple(g for g in tokens if not (g[0] in ("E", "F") and g[1] == 0) and not (g[0] == "C" and g[2] == 0))


def rewrite(w: Word, pos: int, length: int) -> list[tuple[LaurentPoly, Word]]:
    """Apply the rule at w[pos:pos+length]; returns (coefficient, word) pairs."""
    pre, post = w[:pos], w[pos + length:]
    if length == 1:
        g = w[pos]
        if g[0] == "K":
            repl = _cartan_tokens(K_ELEMENT if g[1] == 1 else K_INV_ELEMENT)
        elif g[0] == "C":
            repl = _cartan_tokens(normal_form((g[1], g[2])))
        else:
            repl = [(ONE, ())]
        return [(v, pre + mid + post) for v, mid in repl]

    g, h = w[pos], w[pos + 1]
    kinds = (g[0], h[0])
    if kinds in (("E", "E"), ("F", "F")):
        n, m = g[1], h[1]
        return [(quantum_binom(n + m, n), pre + ((g[0], n + m),) + post)]
    if kinds == ("E", "C"):
        n, (c, t) = g[1], h[1:]
        return [(ONE, pre + (("C", c - 2 * n, t), g) + post)]
    if kinds == ("C", "F"):
        (c, t), n = g[1:], h[1]
        return [(ONE, pre + (h, ("C", c - 2 * n, t)) + post)]
    if kinds == ("E", "F"):
        n, m = g[1], h[1]
        out = []
        for t in range(min(n, m) + 1):
            mid = _clean([("F", m - t), ("C", 2 * t - m - n, t), ("E", n - t)])
            out.append((ONE, pre + mid + post))
        return out
    if kinds == ("C", "C"):
        x = product(CartanElement.basis(g[1], g[2]), CartanElement.basis(h[1], h[2]))
        return [(v, pre + mid + post) for v, mid in _cartan_tokens(x)]
    raise ValueError(f"no rule for {kinds}")


STRATEGIES = ("leftmost-ef", "leftmost", "rightmost")


def pick_redex(w: Word, strategy: str) -> tuple[int, int] | None:
    rs = redexes(w)
    if not rs:
        return None
    if strategy == "leftmost":
        return rs[0]
    if strategy == "rightmost":
        return rs[-1]
    if strategy == "leftmost-ef":
        for pos, length in rs:
            if length == 2 and (w[pos][0], w[pos + 1][0]) == ("E", "F"):
                return pos, length
        return rs[0]
    if strategy.startswith("random:"):
        return random.Random(f"{strategy}:{w}").choice(rs)
    raise ValueError(f"unknown strategy {strategy!r}")


def _to_monomial(w: Word) -> Monomial:
    a = c = t = b = 0
    for g in w:
        if g[0] == "F":
            a = g[1]
        elif g[0] == "E":
            b = g[1]
        else:
            c, t = g[1], g[2]
    return (a, c, t, b)


def straighten(w: Word, strategy: str = "leftmost-ef") -> AlgebraElement:
    """Rewrite a word into PBW normal form.

    Each summand is rewritten independently until no rule applies; the
    surviving words are exactly F^(a) [K;c//t] E^(b) with (c, t) in B.
    """
    pending: dict[Word, LaurentPoly] = {tuple(w): ONE}
    done: dict[Monomial, LaurentPoly] = defaultdict(lambda: ZERO)
    while pending:
        word, coeff = pending.popitem()
        r = pick_redex(word, strategy)
        if r is None:
            done[_to_monomial(word)] += coeff
            continue
        for v, w2 in rewrite(word, *r):
            new = pending.get(w2, ZERO) + coeff * v
            if new:
                pending[w2] = new
            else:
                pending.pop(w2, None)
    return AlgebraElement(dict(done))


def confluence_check(w: Word, strategies: Sequence[str] = STRATEGIES) -> bool:
    if len(strategies) < 2:
        raise ValueError("need at least two strategies")
    results = [straighten(w, s) for s in strategies]
    return all(r == results[0] for r in results[1:])


# ---------------------------------------------------------------------------
# Weyl-module oracle
# ---------------------------------------------------------------------------

Matrix = list  # list of rows of LaurentPoly; entry [i][j] = coeff of v_i in x v_j


def identity(N: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(N + 1)] for i in range(N + 1)]


def zeros(N: int) -> Matrix:
    return [[ZERO] * (N + 1) for _ in range(N + 1)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    out = zeros(n - 1)
    for i in range(n):
        for k in range(n):
            a = A[i][k]
            if a:
                row = B[k]
                for j in range(n):
                    if row[j]:
                        out[i][j] = out[i][j] + a * row[j]
    return out


def matadd(A: Matrix, B: Matrix, scale: LaurentPoly = ONE) -> Matrix:
    return [[a + scale * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def matscale(A: Matrix, s: LaurentPoly) -> Matrix:
    return [[a * s for a in row] for row in A]


def matrix_str(A: Matrix) -> str:
    return "[" + "; ".join(", ".join(str(x) for x in row) for row in A) + "]"


def _E_matrix(N: int) -> Matrix:
    M = zeros(N)
    for k in range(1, N + 1):
        M[k - 1][k] = quantum_int(N - k + 1)
    return M


def _F_matrix(N: int) -> Matrix:
    M = zeros(N)
    for k in range(N):
        M[k + 1][k] = quantum_int(k + 1)
    return M


def _divided(M: Matrix, r: int, N: int) -> Matrix:
    P = identity(N)
    for _ in range(r):
        P = matmul(P, M)
    fact = quantum_factorial(r)
    try:
        return [[x.exact_div(fact) for x in row] for row in P]
    except NotDivisible as exc:
        raise IntegralityViolated(f"divided power {r} is not integral on V({N})") from exc


def generator_matrix(g, N: int) -> Matrix:
    kind = g[0]
    if kind == "E":
        return _divided(_E_matrix(N), g[1], N)
    if kind == "F":
        return _divided(_F_matrix(N), g[1], N)
    M = zeros(N)
    for k in range(N + 1):
        if kind == "K":
            M[k][k] = LaurentPoly.monomial(g[1] * (N - 2 * k))
        else:
            M[k][k] = specialize((g[1], g[2]), N - 2 * k)
    return M


def weyl_action(x, N: int) -> Matrix:
    """Matrix of a Word or AlgebraElement on V(N), basis v_0..v_N.

    K v_k = q^(N-2k) v_k, E v_k = {N-k+1} v_(k-1), F v_k = {k+1} v_(k+1);
    divided powers by exact division, Lusztig elements by specialization at
    weight N - 2k.  A word acts factor by factor from the right.
    """
    if N < 0:
        raise ValueError("N must be >= 0")
    if isinstance(x, AlgebraElement):
        total = zeros(N)
        for mono, v in x.items():
            total = matadd(total, weyl_action(monomial_word(mono), N), v)
        return total
    M = identity(N)
    for g in x:
        M = matmul(M, generator_matrix(g, N))
    return M


def verify_straighten(
    w: Word,
    Ns: Iterable[int] = (1, 2, 3, 4),
    strategy: str = "leftmost-ef",
    confluence: Sequence[str] = (),
) -> VerificationReport:
    """Compare the actions of w and straighten(w) on each V(N).

    With ``confluence`` set, the word is also straightened under those
    strategies and any disagreement marks the report as failed.
    """
    Ns = list(Ns)
    notes = []
    with timed() as clock:
        result = straighten(w, strategy)
        lhs = " | ".join(matrix_str(weyl_action(w, N)) for N in Ns)
        rhs = " | ".join(matrix_str(weyl_action(result, N)) for N in Ns)
        notes.append(f"normal form: {result}")
        if confluence:
            others = [s for s in confluence if straighten(w, s) != result]
            if others:
                rhs += f" [strategies disagree: {others}]"
            notes.append(f"confluence over {list(confluence)}: {not others}")
    return VerificationReport(
        "straighten", dict(word=render_word(w), Ns=Ns, strategy=strategy),
        lhs, rhs, notes, clock[0],
    )


def oracle_soundness(N: int, max_power: int = 3, shifts: Iterable[int] = range(-3, 4), max_height: int = 3) -> list[tuple[str, bool]]:
    """Check the defining relations as matrix identities on V(N).

    Run before trusting :func:`weyl_action` as a judge.
    """
    shifts = list(shifts)
    checks = []
    Kp, Km = generator_matrix(("K", 1), N), generator_matrix(("K", -1), N)
    Em, Fm = generator_matrix(("E", 1), N), generator_matrix(("F", 1), N)
    I = identity(N)
    checks.append(("K K^-1 = 1", matmul(Kp, Km) == I))
    checks.append(("K E K^-1 = q^2 E", matmul(matmul(Kp, Em), Km) == matscale(Em, LaurentPoly.monomial(2))))
    checks.append(("K F K^-1 = q^-2 F", matmul(matmul(Kp, Fm), Km) == matscale(Fm, LaurentPoly.monomial(-2))))
    comm = matadd(matmul(Em, Fm), matmul(Fm, Em), -ONE)
    q_minus = LaurentPoly({1: 1, -1: -1})
    checks.append(("(q-q^-1)(EF-FE) = K-K^-1", matscale(comm, q_minus) == matadd(Kp, Km, -ONE)))
    checks.append(("EF-FE = [K;0//1]", comm == generator_matrix(("C", 0, 1), N)))
    for n in range(1, max_power + 1):
        for m in range(1, max_power + 1):
            for X in ("E", "F"):
                lhs = matmul(generator_matrix((X, n), N), generator_matrix((X, m), N))
                rhs = matscale(generator_matrix((X, n + m), N), quantum_binom(n + m, n))
                checks.append((f"{X}({n}){X}({m})", lhs == rhs))
            lhs = matmul(generator_matrix(("E", n), N), generator_matrix(("F", m), N))
            rhs = zeros(N)
            for t in range(min(n, m) + 1):
                term = weyl_action(_clean([("F", m - t), ("C", 2 * t - m - n, t), ("E", n - t)]), N)
                rhs = matadd(rhs, term)
            checks.append((f"E({n})F({m})", lhs == rhs))
        for c in shifts:
            for t in range(1, max_height + 1):
                C = generator_matrix(("C", c, t), N)
                En, Fn = generator_matrix(("E", n), N), generator_matrix(("F", n), N)
                checks.append((
                    f"[K;{c}//{t}]E({n})",
                    matmul(C, En) == matmul(En, generator_matrix(("C", c + 2 * n, t), N)),
                ))
                checks.append((
                    f"[K;{c}//{t}]F({n})",
                    matmul(C, Fn) == matmul(Fn, generator_matrix(("C", c - 2 * n, t), N)),
                ))
    return checks


def random_word(rng: random.Random, max_len: int = 5, max_power: int = 3) -> Word:
    gens = []
    for _ in range(rng.randint(1, max_len)):
        kind = rng.choice("EFKC")
        if kind in "EF":
            gens.append((kind, rng.randint(1, max_power)))
        elif kind == "K":
            gens.append(("K", rng.choice((1, -1))))
        else:
            gens.append(("C", rng.randint(-3, 3), rng.randint(1, 2)))
    return tuple(gens)


SHORT_ALPHABET = (
    ("E", 1), ("E", 2), ("F", 1), ("F", 2), ("K", 1), ("K", -1),
    ("C", 0, 1), ("C", 1, 1), ("C", 2, 1), ("C", -1, 2),
)


def short_words(max_len: int = 3, alphabet=SHORT_ALPHABET) -> list[Word]:
    from itertools import product as iproduct

    out = [()]
    for n in range(1, max_len + 1):
        out.extend(tuple(w) for w in iproduct(alphabet, repeat=n))
    return out
