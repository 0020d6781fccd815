"""Subspaces of F_p^n in reduced row-echelon form, exhaustive enumeration,
and the counting constructions behind the bijective q-Pfaff-Saalschütz
argument.

Vectors are tuples of residues.  They are totally ordered as tuples: first
coordinate most significant, residues 0 < 1 < ... < p-1.  Both canonical
choices (fixed subspace, fixed complement) are defined relative to this
order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, product
from typing import Iterable, Sequence

from .errors import AmbientMismatch, BudgetExceeded, PreconditionViolated
from .exact_arith import LaurentPoly
from .q_gaussian import q_binom, qps_lhs
from .report import VerificationReport, timed

DEFAULT_BUDGET = 2**20

Vec = tuple


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        p = self.p
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise PreconditionViolated(f"{p} is not prime")

    def inv(self, a: int) -> int:
        return pow(a, -1, self.p)


def _rref(rows: Iterable[Sequence[int]], n: int, p: int) -> tuple[Vec, ...]:
    m = [[x % p for x in r] for r in rows]
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][col], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            f = m[i][col]
            if i != r and f:
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r])


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^n, stored by its reduced row-echelon basis.

    Two Subspace values compare equal exactly when they are the same space.
    """

    basis: tuple[Vec, ...]
    n: int
    p: int

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], n: int, p: int) -> Subspace:
        vectors = list(vectors)
        for v in vectors:
            if len(v) != n:
                raise AmbientMismatch(f"vector {v} not in F_{p}^{n}")
        return cls(_rref(vectors, n, p), n, p)

    @classmethod
    def zero(cls, n: int, p: int) -> Subspace:
        return cls((), n, p)

    @classmethod
    def full(cls, n: int, p: int) -> Subspace:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n, p)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(row) if x) for row in self.basis)

    @cached_property
    def vectors(self) -> tuple[Vec, ...]:
        """All p^dim vectors, sorted in the package-wide vector order."""
        out = []
        for coeffs in product(range(self.p), repeat=self.dim):
            v = [0] * self.n
            for c, row in zip(coeffs, self.basis):
                if c:
                    for i, x in enumerate(row):
                        v[i] += c * x
            out.append(tuple(x % self.p for x in v))
        return tuple(sorted(out))

    def contains_vector(self, v: Sequence[int]) -> bool:
        v = [x % self.p for x in v]
        for piv, row in zip(self.pivots, self.basis):
            f = v[piv]
            if f:
                v = [(a - f * b) % self.p for a, b in zip(v, row)]
        return not any(v)

    def __le__(self, other: Subspace) -> bool:
        _same_ambient(self, other)
        return self.dim <= other.dim and all(other.contains_vector(r) for r in self.basis)

    def __str__(self) -> str:
        return str(list(self.basis))

    def to_rows(self) -> list[list[int]]:
        return [list(r) for r in self.basis]


def _same_ambient(U: Subspace, W: Subspace) -> None:
    if U.n != W.n or U.p != W.p:
        raise AmbientMismatch(f"F_{U.p}^{U.n} vs F_{W.p}^{W.n}")


def subspace_sum(U: Subspace, W: Subspace) -> Subspace:
    _same_ambient(U, W)
    return Subspace.span(U.basis + W.basis, U.n, U.p)


def intersect(U: Subspace, W: Subspace) -> Subspace:
    """Zassenhaus: row-reduce [[U, U], [W, 0]]; left-zero rows span U ∩ W."""
    _same_ambient(U, W)
    n, p = U.n, U.p
    zero = (0,) * n
    block = [u + u for u in U.basis] + [w + zero for w in W.basis]
    rows = _rref(block, 2 * n, p)
    return Subspace.span([r[n:] for r in rows if not any(r[:n])], n, p)


def contains(U: Subspace, W: Subspace) -> bool:
    """True iff W ≤ U."""
    return W <= U


def dim(U: Subspace) -> int:
    return U.dim


def is_complement(X: Subspace, W: Subspace, Y: Subspace) -> bool:
    return intersect(X, W).dim == 0 and subspace_sum(X, W) == Y


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _check_budget(n: int, p: int, budget: int) -> None:
    if p**n > budget:
        raise BudgetExceeded(f"{p}^{n} exceeds budget {budget}")


@lru_cache(maxsize=None)
def _enumerate(n: int, k: int, p: int) -> tuple[Subspace, ...]:
    out = []
    for pivots in combinations(range(n), k):
        pivset = set(pivots)
        free = [(i, j) for i, pc in enumerate(pivots) for j in range(pc + 1, n) if j not in pivset]
        for fill in product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, j), x in zip(free, fill):
                rows[i][j] = x
            out.append(Subspace(tuple(tuple(r) for r in rows), n, p))
    return tuple(out)


def enumerate_subspaces(
    n: int, k: int, F: PrimeField, budget: int = DEFAULT_BUDGET
) -> tuple[Subspace, ...]:
    """Every k-dimensional subspace of F_p^n exactly once, via echelon forms."""
    if not 0 <= k <= n:
        raise PreconditionViolated("need 0 <= k <= n")
    _check_budget(n, F.p, budget)
    return _enumerate(n, k, F.p)


def subspaces_of(Y: Subspace, k: int, budget: int = DEFAULT_BUDGET) -> list[Subspace]:
    if not 0 <= k <= Y.dim:
        return []
    return [W for W in enumerate_subspaces(Y.n, k, PrimeField(Y.p), budget) if W <= Y]


# ---------------------------------------------------------------------------
# canonical choices
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def fixed_subspace(X: Subspace, d: int) -> Subspace:
    """Span of the greedy-first d independent vectors of X in vector order.

    Greedy over a matroid yields the lexicographically smallest independent
    label set, so this is the canonical d-dimensional subspace of X.
    """
    if not 0 <= d <= X.dim:
        raise PreconditionViolated(f"need 0 <= d <= dim X = {X.dim}")
    S = Subspace.zero(X.n, X.p)
    for v in X.vectors:
        if S.dim == d:
            break
        if not S.contains_vector(v):
            S = Subspace.span(S.basis + (v,), X.n, X.p)
    return S


def complements(X: Subspace, Y: Subspace, budget: int = DEFAULT_BUDGET) -> list[Subspace]:
    """All complements of X inside Y.

    Extend a basis of X by w_1..w_r to one of Y; each complement has a unique
    basis w_i + u_i with u_i in X, giving p^(dim X * r) of them.
    """
    if not X <= Y:
        raise PreconditionViolated("X must lie in Y")
    ext, S = [], X
    for row in Y.basis:
        if not S.contains_vector(row):
            ext.append(row)
            S = Subspace.span(S.basis + (row,), Y.n, Y.p)
    k, r, p = X.dim, len(ext), Y.p
    if p ** (k * r) > budget:
        raise BudgetExceeded(f"{p}^{k * r} complements exceed budget {budget}")
    xs = X.vectors
    out = []
    for us in product(xs, repeat=r):
        rows = [tuple((a + b) % p for a, b in zip(w, u)) for w, u in zip(ext, us)]
        out.append(Subspace.span(rows, Y.n, p))
    return out


@lru_cache(maxsize=None)
def fixed_complement(X: Subspace, Y: Subspace, budget: int = DEFAULT_BUDGET) -> Subspace:
    """The complement of X in Y whose sorted vector list is smallest."""
    return min(complements(X, Y, budget), key=lambda W: W.vectors)


# ---------------------------------------------------------------------------
# subspace counts against closed formulas
# ---------------------------------------------------------------------------


def _count_report(suite, params, count, formula: LaurentPoly, p, notes=()):
    return VerificationReport(suite, params, str(count), str(formula.evaluate(p)), list(notes))


def count_intermediate(U: Subspace, V: Subspace, l: int) -> VerificationReport:
    """#{W : dim W = l, U ≤ W ≤ V} against [dim V - dim U, l - dim U]."""
    if not U <= V:
        raise PreconditionViolated("need U ≤ V")
    with timed() as clock:
        count = sum(1 for W in subspaces_of(V, l) if U <= W)
    rep = _count_report(
        "count_intermediate", dict(n=U.n, p=U.p, k=U.dim, v=V.dim, l=l),
        count, q_binom(V.dim - U.dim, l - U.dim), U.p,
    )
    rep.elapsed = clock[0]
    return rep


def count_complements(U: Subspace, V: Subspace) -> VerificationReport:
    if not U <= V:
        raise PreconditionViolated("need U ≤ V")
    k, n = U.dim, V.dim
    with timed() as clock:
        count = sum(1 for W in subspaces_of(V, n - k) if intersect(U, W).dim == 0)
    rep = _count_report(
        "count_complements", dict(n=U.n, p=U.p, k=k, v=n),
        count, LaurentPoly.monomial(k * (n - k)), U.p,
    )
    rep.elapsed = clock[0]
    return rep


def count_disjoint(U: Subspace, s: int) -> VerificationReport:
    """#{W : dim W = s, U ∩ W = 0} against q^(r s) [n - r, s].

    The note records whether the exponent r(n-r) would give the same number;
    it does only in degenerate cases such as s = n - r or r = 0.
    """
    n, r = U.n, U.dim
    if not 0 <= s <= n:
        raise PreconditionViolated("need 0 <= s <= n")
    with timed() as clock:
        count = sum(
            1 for W in enumerate_subspaces(n, s, PrimeField(U.p)) if intersect(U, W).dim == 0
        )
    formula = q_binom(n - r, s).shift(r * s)
    alt = q_binom(n - r, s).shift(r * (n - r)).evaluate(U.p)
    rep = _count_report(
        "count_disjoint", dict(n=n, p=U.p, r=r, s=s), count, formula, U.p,
        [f"exponent r(n-r) form gives {alt} ({'agrees' if alt == count else 'differs'})"],
    )
    rep.elapsed = clock[0]
    return rep


def count_extensions(U: Subspace, W: Subspace, m: int) -> VerificationReport:
    """#{E : dim E = m, U ≤ E, E ∩ W = U} against q^((m-k)(l-k)) [n-l, m-k]."""
    if not U <= W:
        raise PreconditionViolated("need U ≤ W")
    n, k, l = U.n, U.dim, W.dim
    if not 0 <= m <= n:
        raise PreconditionViolated("need 0 <= m <= n")
    with timed() as clock:
        count = sum(
            1
            for E in enumerate_subspaces(n, m, PrimeField(U.p))
            if U <= E and intersect(E, W) == U
        )
    formula = q_binom(n - l, m - k)
    if formula:
        formula = formula.shift((m - k) * (l - k))
    rep = _count_report(
        "count_extensions", dict(n=n, p=U.p, k=k, l=l, m=m), count, formula, U.p
    )
    rep.elapsed = clock[0]
    return rep


def vandermonde_pair_count(n: int, m: int, l: int, F: PrimeField) -> VerificationReport:
    """Tally m-dimensional E by k = m - dim(E ∩ W) for a fixed (n-l)-space W.

    Each cell should hold q^(k(n-l-m+k)) [l, k] [n-l, m-k] subspaces.
    """
    if not (0 <= m <= n and 0 <= l <= n):
        raise PreconditionViolated("need 0 <= m, l <= n")
    p = F.p
    with timed() as clock:
        W = fixed_subspace(Subspace.full(n, p), n - l)
        tally = Counter(m - intersect(E, W).dim for E in enumerate_subspaces(n, m, F))
        expected = {}
        for k in range(m + 1):
            term = q_binom(l, k) * q_binom(n - l, m - k)
            if term:
                expected[k] = int(term.shift(k * (n - l - m + k)).evaluate(p))
    lhs = ", ".join(f"{k}:{tally[k]}" for k in sorted(tally))
    rhs = ", ".join(f"{k}:{v}" for k, v in sorted(expected.items()))
    notes = [f"total {sum(tally.values())}, [n,m] at p = {q_binom(n, m).evaluate(p)}"]
    return VerificationReport(
        "vandermonde_pairs", dict(n=n, m=m, l=l, p=p), lhs, rhs, notes, clock[0]
    )


# ---------------------------------------------------------------------------
# quadruples and the bijection
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Quadruple:
    A: Subspace
    B: Subspace
    C: Subspace
    D: Subspace


@dataclass(frozen=True)
class BijectionContext:
    m: int
    s: int
    t: int
    e: int
    p: int
    V: Subspace
    W: Subspace

    @classmethod
    def create(cls, m: int, s: int, t: int, e: int, F: PrimeField) -> BijectionContext:
        if min(m, s, t, e) < 0 or m + e < 0:
            raise PreconditionViolated("need m, s, t, e >= 0")
        V = Subspace.full(m + e, F.p)
        return cls(m, s, t, e, F.p, V, fixed_subspace(V, m))


def quadruple_formula(m: int, s: int, t: int, e: int, j: int, k: int) -> LaurentPoly:
    """Product of the four staged counts for the cell S_{j,k}."""
    parts = [
        q_binom(m, s + t - k),
        q_binom(s - e, s - j),
        q_binom(t + e - k, j - k),
        q_binom(t + e, k),
    ]
    out = parts[0] * parts[1] * parts[2] * parts[3]
    if not out:
        return out
    return out.shift((s - j) * (t + e - j) + k * (m - s - t + k))


def _cell_feasible(ctx: BijectionContext, j: int, k: int) -> bool:
    m, s, t, e = ctx.m, ctx.s, ctx.t, ctx.e
    dC, dD = s + t - k, j - e
    return 0 <= dC <= m and 0 <= dD <= s - e and 0 <= s - e <= dC and t <= dC


def satisfies_cell(Q: Quadruple, ctx: BijectionContext, j: int, k: int) -> bool:
    """The defining conditions of S_{j,k}."""
    s, t, e = ctx.s, ctx.t, ctx.e
    A, B, C, D = Q.A, Q.B, Q.C, Q.D
    if (A.dim, B.dim, C.dim, D.dim) != (t, s, s + t - k, j - e):
        return False
    if s - e > C.dim or s - e < 0:
        return False
    if not (A <= C and C <= ctx.W):
        return False
    U = fixed_subspace(C, s - e)
    if not D <= U or intersect(A, U) != D:
        return False
    Ap = fixed_complement(A, ctx.W)
    return intersect(B, Ap) == intersect(Ap, C)


def enumerate_quadruples(
    m: int, s: int, t: int, e: int, j: int, k: int, F: PrimeField,
    budget: int = DEFAULT_BUDGET,
) -> tuple[int, list[Quadruple]]:
    """All quadruples in the cell S_{j,k}, by exhaustive filtered search."""
    if e < 0:
        raise PreconditionViolated("quadruples need e >= 0")
    _check_budget(m + e, F.p, budget)
    ctx = BijectionContext.create(m, s, t, e, F)
    if not _cell_feasible(ctx, j, k):
        return 0, []
    n = m + e
    V, W = ctx.V, ctx.W
    out = []
    all_B = enumerate_subspaces(n, s, F, budget)
    for C in enumerate_subspaces(n, s + t - k, F, budget):
        if not C <= W:
            continue
        U = fixed_subspace(C, s - e)
        for D in enumerate_subspaces(n, j - e, F, budget):
            if not D <= U:
                continue
            for A in enumerate_subspaces(n, t, F, budget):
                if not A <= C or intersect(A, U) != D:
                    continue
                Ap = fixed_complement(A, W)
                target = intersect(Ap, C)
                for B in all_B:
                    if intersect(B, Ap) == target:
                        out.append(Quadruple(A, B, C, D))
    return len(out), out


def enumerate_T(ctx: BijectionContext) -> list[tuple[Subspace, Subspace]]:
    F = PrimeField(ctx.p)
    n = ctx.m + ctx.e
    if ctx.t > ctx.m or ctx.s > n:
        return []
    As = [A for A in enumerate_subspaces(n, ctx.t, F) if A <= ctx.W]
    Bs = enumerate_subspaces(n, ctx.s, F)
    return [(A, B) for A in As for B in Bs]


def bijection_forward(A: Subspace, B: Subspace, ctx: BijectionContext) -> Quadruple:
    """(A, B) -> (A, B, A ⊕ (B ∩ A^⊥W), A ∩ U_{C, s-e})."""
    if A.dim != ctx.t or B.dim != ctx.s or not A <= ctx.W:
        raise PreconditionViolated("(A, B) is not in T")
    Ap = fixed_complement(A, ctx.W)
    C = subspace_sum(A, intersect(B, Ap))
    D = intersect(A, fixed_subspace(C, ctx.s - ctx.e))
    return Quadruple(A, B, C, D)


def bijection_backward(Q: Quadruple) -> tuple[Subspace, Subspace]:
    return Q.A, Q.B


def quadruple_cell(Q: Quadruple, ctx: BijectionContext) -> tuple[int, int]:
    return Q.D.dim + ctx.e, ctx.s + ctx.t - Q.C.dim


def verify_bijection(m: int, s: int, t: int, e: int, F: PrimeField) -> VerificationReport:
    """Exhaustive check of the T <-> S bijection for one parameter tuple.

    lhs is |T|, rhs is |S| (sum of enumerated cells); any failed sub-check
    is listed in notes and marked on rhs.
    """
    if not 0 <= e <= s:
        raise PreconditionViolated("the bijection needs 0 <= e <= s")
    ctx = BijectionContext.create(m, s, t, e, F)
    notes, ok = [], True
    with timed() as clock:
        T = enumerate_T(ctx)
        image_cells: Counter = Counter()
        images = set()
        for A, B in T:
            Q = bijection_forward(A, B, ctx)
            j, k = quadruple_cell(Q, ctx)
            if not satisfies_cell(Q, ctx, j, k):
                ok = False
                notes.append(f"forward image violates S_{j},{k}")
            if bijection_backward(Q) != (A, B):
                ok = False
            image_cells[(j, k)] += 1
            images.add(Q)

        S_total = 0
        for j in range(0, s + t + e + 1):
            for k in range(0, s + t + 1):
                count, quads = enumerate_quadruples(m, s, t, e, j, k, F)
                formula = int(quadruple_formula(m, s, t, e, j, k).evaluate(F.p))
                S_total += count
                if count != formula:
                    ok = False
                    notes.append(f"cell ({j},{k}): enumerated {count}, formula {formula}")
                if count != image_cells.get((j, k), 0):
                    ok = False
                    notes.append(f"cell ({j},{k}): {image_cells.get((j, k), 0)} forward images")
                for Q in quads:
                    if bijection_forward(*bijection_backward(Q), ctx) != Q:
                        ok = False
                        notes.append(f"forward∘backward moves a quadruple in ({j},{k})")
                        break
        lhs_formula = int(qps_lhs(m, s, t, e).evaluate(F.p))
        if len(T) != lhs_formula:
            ok = False
            notes.append(f"|T| = {len(T)} but the left side at p is {lhs_formula}")
        if len(images) != len(T):
            ok = False
            notes.append("forward map is not injective")
    rhs = str(S_total) if ok else f"{S_total} [failed]"
    return VerificationReport(
        "bijection", dict(m=m, s=s, t=t, e=e, p=F.p), str(len(T)), rhs, notes, clock[0]
    )


def verify_subspace_count(n: int, k: int, F: PrimeField, budget: int = DEFAULT_BUDGET):
    with timed() as clock:
        count = len(enumerate_subspaces(n, k, F, budget))
    rep = _count_report("subspaces", dict(n=n, k=k, p=F.p), count, q_binom(n, k), F.p)
    rep.elapsed = clock[0]
    return rep
