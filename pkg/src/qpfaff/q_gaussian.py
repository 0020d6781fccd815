"""q-integers, Gaussian binomial coefficients and the q-binomial identities
they satisfy, including the q-Pfaff-Saalschütz identity.

Every verifier returns a :class:`VerificationReport` whose two sides are the
canonical renderings of exact Laurent polynomials.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

from .errors import PreconditionViolated
from .exact_arith import ONE, ZERO, LaurentPoly
from .report import VerificationReport, timed


def q_int(n: int) -> LaurentPoly:
    """[n]_q = 1 + q + ... + q^(n-1)."""
    if n < 0:
        raise PreconditionViolated("q_int needs n >= 0")
    return LaurentPoly({e: 1 for e in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> LaurentPoly:
    if n < 0:
        raise PreconditionViolated("q_factorial needs n >= 0")
    if n == 0:
        return ONE
    return q_factorial(n - 1) * q_int(n)


@lru_cache(maxsize=None)
def q_binom(n: int, k: int) -> LaurentPoly:
    """Gaussian coefficient [n choose k]_q, zero outside 0 <= k <= n.

    Uses the division-free recurrence [n,k] = [n-1,k-1] + q^k [n-1,k].
    """
    if k < 0 or n < k:
        return ZERO
    if k == 0 or k == n:
        return ONE
    return q_binom(n - 1, k - 1) + q_binom(n - 1, k).shift(k)


def q_binom_quotient(n: int, k: int) -> LaurentPoly:
    """The same coefficient as a factorial quotient (exact division)."""
    if k < 0 or n < k:
        return ZERO
    return q_factorial(n).exact_div(q_factorial(k) * q_factorial(n - k))


def shifted_factorial(x: int, alpha: int) -> LaurentPoly:
    """(q^x; q)_alpha = (1 - q^x)(1 - q^(x+1)) ... (1 - q^(x+alpha-1))."""
    if alpha < 0:
        raise PreconditionViolated("alpha must be >= 0")
    out = ONE
    for i in range(alpha):
        out = out * (ONE - LaurentPoly.monomial(x + i))
    return out


def _qpow(e: int) -> LaurentPoly:
    return LaurentPoly.monomial(e)


def _check_qps_range(m, s, t, e):
    if min(m, s, t) < 0:
        raise PreconditionViolated("m, s, t must be nonnegative")
    if not -t <= e <= s:
        raise PreconditionViolated(f"need -t <= e <= s, got e={e}, s={s}, t={t}")


def qps_summand(m: int, s: int, t: int, e: int, j: int) -> LaurentPoly:
    """One summand q^((s-j)(t+e-j)) [t+e,j][s-e,s-j][m+j,s+t]; any integers."""
    prod = q_binom(t + e, j) * q_binom(s - e, s - j) * q_binom(m + j, s + t)
    if prod.is_zero():
        return ZERO
    return prod.shift((s - j) * (t + e - j))


def qps_lhs(m: int, s: int, t: int, e: int) -> LaurentPoly:
    return q_binom(m, t) * q_binom(m + e, s)


def qps_j_range(s: int, t: int, e: int) -> range:
    return range(max(0, e), min(t + e, s) + 1)


def qps_rhs(m: int, s: int, t: int, e: int) -> LaurentPoly:
    total = ZERO
    for j in qps_j_range(s, t, e):
        total = total + qps_summand(m, s, t, e, j)
    return total


def verify_qps(m: int, s: int, t: int, e: int) -> VerificationReport:
    """q-Pfaff-Saalschütz: [m,t][m+e,s] = sum_j q^(..)[t+e,j][s-e,s-j][m+j,s+t]."""
    _check_qps_range(m, s, t, e)
    notes = []
    with timed() as clock:
        lhs = qps_lhs(m, s, t, e)
        rhs = qps_rhs(m, s, t, e)
        # every j >= 0 outside the stated window must contribute nothing
        inside = set(qps_j_range(s, t, e))
        for j in range(0, s + t + abs(e) + 2):
            if j not in inside and qps_summand(m, s, t, e, j):
                notes.append(f"nonzero summand outside window at j={j}")
        if m + e < 0:
            notes.append("m+e < 0: both sides vanish by convention")
    return VerificationReport(
        "qps", dict(m=m, s=s, t=t, e=e), str(lhs), str(rhs), notes, clock[0]
    )


def verify_vandermonde(n: int, m: int, l: int) -> VerificationReport:
    if min(n, m, l) < 0 or m > n or l > n:
        raise PreconditionViolated("need 0 <= m, l <= n")
    with timed() as clock:
        rhs = ZERO
        for k in range(m + 1):
            term = q_binom(l, k) * q_binom(n - l, m - k)
            if term:
                rhs = rhs + term.shift(k * (n - l - m + k))
        lhs = q_binom(n, m)
    return VerificationReport(
        "vandermonde", dict(n=n, m=m, l=l), str(lhs), str(rhs), [], clock[0]
    )


def verify_trinomial(n: int, l: int, k: int) -> VerificationReport:
    if not 0 <= k <= l <= n:
        raise PreconditionViolated("need 0 <= k <= l <= n")
    with timed() as clock:
        lhs = q_binom(n, l) * q_binom(l, k)
        rhs = q_binom(n, k) * q_binom(n - k, l - k)
    return VerificationReport(
        "trinomial", dict(n=n, l=l, k=k), str(lhs), str(rhs), [], clock[0]
    )


def verify_symmetry(n: int, k: int) -> VerificationReport:
    if not 0 <= k <= n:
        raise PreconditionViolated("need 0 <= k <= n")
    with timed() as clock:
        lhs, rhs = q_binom(n, k), q_binom(n, n - k)
    return VerificationReport(
        "symmetry", dict(n=n, k=k), str(lhs), str(rhs), [], clock[0]
    )


def stanley_sides(x: int, y: int, A: int, B: int):
    lhs = q_binom(x + A, B) * q_binom(y + B, A)
    summands = {}
    for K in range(min(A, B) + 1):
        term = q_binom(x + y + K, K) * q_binom(y, A - K) * q_binom(x, B - K)
        summands[K] = term.shift((A - K) * (B - K)) if term else ZERO
    return lhs, summands


def verify_stanley(x: int, y: int, A: int, B: int) -> VerificationReport:
    """Stanley's form, plus the substitution that turns it into verify_qps."""
    if min(x, y, A, B) < 1:
        raise PreconditionViolated("Stanley's identity takes positive x, y, A, B")
    notes = []
    with timed() as clock:
        lhs, summands = stanley_sides(x, y, A, B)
        rhs = sum(summands.values(), ZERO)

        m, e, s, t = B + y, A + x - B - y, A + x - B, B + y - A
        if s < 0 or t < 0:
            notes.append(f"mapped (s,t)=({s},{t}) outside the identity's range; zero conventions")
        mapped_lhs = q_binom(m, t) * q_binom(m + e, s)
        ok = mapped_lhs == lhs
        # K ranges over 0..min(A,B); j = K - B + x.  Summands on either side
        # with no partner must vanish.
        js = set()
        for K, term in summands.items():
            j = K - B + x
            js.add(j)
            if j < 0:
                ok &= term.is_zero()
            else:
                ok &= qps_summand(m, s, t, e, j) == term
        for j in range(0, m + s + t + abs(e) + 2):
            if j not in js:
                ok &= qps_summand(m, s, t, e, j).is_zero()
        notes.append(f"substitution consistent: {ok}")
    if not ok:
        # force a visible mismatch in the report
        rhs_str = f"{rhs} [substitution mismatch]"
    else:
        rhs_str = str(rhs)
    return VerificationReport(
        "stanley", dict(x=x, y=y, A=A, B=B), str(lhs), rhs_str, notes, clock[0]
    )


def verify_zeilberger(a: int, b: int, c: int, k: int) -> VerificationReport:
    """Foata/Zeilberger symmetric form and its substitution into verify_qps."""
    if min(a, b, c, k) < 0 or k > min(a, b, c):
        raise PreconditionViolated("need 0 <= k <= min(a, b, c)")
    notes = []
    ok = True
    with timed() as clock:
        # the identity after substitution, summed over n
        lhs1 = q_binom(b + c, c - k) * q_binom(b + a, a + k)
        terms1 = {}
        for n in range(0, a + 1):
            term = (
                q_binom(a - k, a - n)
                * q_binom(c + k, n + k)
                * q_binom(a + b + c - n, a + c)
            )
            terms1[n] = term.shift((n - k) * (n + k)) if term else ZERO
        rhs1 = sum(terms1.values(), ZERO)
        ok &= lhs1 == rhs1

        m, e, s, t = b + c, a - c, a + k, c - k
        ok &= qps_lhs(m, s, t, e) == lhs1
        for n, term in terms1.items():
            ok &= qps_summand(m, s, t, e, a - n) == term
        for j in range(a + 1, m + s + t + abs(e) + 2):
            ok &= qps_summand(m, s, t, e, j).is_zero()
        notes.append(f"substitution consistent: {ok}")

        # the symmetric factorial form
        lhs = q_binom(a + b, a + k) * q_binom(b + c, b + k) * q_binom(c + a, c + k)
        rhs = ZERO
        for n in range(k, min(a, b, c) + 1):
            den = (
                q_factorial(a - n)
                * q_factorial(b - n)
                * q_factorial(c - n)
                * q_factorial(n + k)
                * q_factorial(n - k)
            )
            rhs = rhs + q_factorial(a + b + c - n).exact_div(den).shift(n * n - k * k)
    rhs_str = str(rhs) if ok else f"{rhs} [substituted form or substitution mismatch]"
    return VerificationReport(
        "zeilberger", dict(a=a, b=b, c=c, k=k), str(lhs), rhs_str, notes, clock[0]
    )


def _binom0(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


def verify_classical_limit(m: int, s: int, t: int, e: int) -> VerificationReport:
    """q -> 1 in the q-Pfaff-Saalschütz identity, against integer binomials."""
    _check_qps_range(m, s, t, e)
    notes = []
    with timed() as clock:
        lhs = qps_lhs(m, s, t, e).evaluate(1)
        rhs = qps_rhs(m, s, t, e).evaluate(1)
        int_lhs = _binom0(m, t) * _binom0(m + e, s)
        int_rhs = sum(
            _binom0(t + e, j) * _binom0(s - e, s - j) * _binom0(m + j, s + t)
            for j in range(0, s + t + abs(e) + 2)
        )
        if (lhs, rhs) != (int_lhs, int_rhs):
            notes.append(f"integer binomials give {int_lhs} = {int_rhs}")
            rhs = f"{rhs} [integer oracle {int_rhs}]"
    return VerificationReport(
        "classical", dict(m=m, s=s, t=t, e=e), str(lhs), str(rhs), notes, clock[0]
    )
