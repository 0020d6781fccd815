"""Exact arithmetic in q: Laurent polynomials, rational functions, and
Laurent polynomials in K over the rational function field Q(q).

Everything here is immutable.  Coefficients are Python ints, so there is
no overflow to worry about at any size.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping, Union

from .errors import DivisionByZero, NotDivisible, ParseError, ZeroPoint

# ---------------------------------------------------------------------------
# dense integer polynomials: tuple of coefficients, index = exponent
# ---------------------------------------------------------------------------

Poly = tuple


def _trim(coeffs) -> Poly:
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def _padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _trim(out)


def _pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def _psub(a: Poly, b: Poly) -> Poly:
    return _padd(a, _pneg(b))


def _pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pscale(a: Poly, c: int) -> Poly:
    if c == 0:
        return ()
    return tuple(x * c for x in a)


def _content(a: Poly) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
    return g


def _primitive(a: Poly) -> Poly:
    """Primitive part, normalized to a positive leading coefficient."""
    if not a:
        return ()
    g = _content(a)
    if a[-1] < 0:
        g = -g
    return tuple(c // g for c in a)


def _prem(a: Poly, b: Poly) -> Poly:
    """Pseudo-remainder of a by b (b nonzero)."""
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    while len(r) - 1 >= db and r:
        lr = r[-1]
        shift = len(r) - 1 - db
        r = [c * lb for c in r]
        for i, c in enumerate(b):
            r[i + shift] -= lr * c
        r = list(_trim(r))
    return tuple(r)


def _pgcd(a: Poly, b: Poly) -> Poly:
    """Primitive gcd via the primitive polynomial remainder sequence."""
    a, b = _primitive(a), _primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        a, b = b, _primitive(_prem(a, b))
    return a


def _pdivexact(a: Poly, b: Poly) -> Poly:
    """Quotient a / b in Z[q]; raises NotDivisible on any remainder."""
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if not a:
        return ()
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    quot = [0] * max(len(a) - db, 0)
    while r and len(r) - 1 >= db:
        lr = r[-1]
        if lr % lb:
            raise NotDivisible("leading coefficient not divisible")
        c = lr // lb
        shift = len(r) - 1 - db
        quot[shift] = c
        for i, bc in enumerate(b):
            r[i + shift] -= c * bc
        r = list(_trim(r))
    if r:
        raise NotDivisible("nonzero remainder")
    return _trim(quot)


# ---------------------------------------------------------------------------
# LaurentPoly
# ---------------------------------------------------------------------------

Scalar = Union[int, "LaurentPoly"]


class LaurentPoly:
    """Element of Z[q, q^-1], stored sparsely as {exponent: coefficient}."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        t = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[int(e)] = int(c)
        self._terms = t
        self._hash = None

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> LaurentPoly:
        return cls({exponent: coeff})

    @classmethod
    def const(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def from_poly(cls, coeffs: Iterable[int], shift: int = 0) -> LaurentPoly:
        return cls({i + shift: c for i, c in enumerate(coeffs)})

    @staticmethod
    def _coerce(x) -> LaurentPoly:
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int):
            return LaurentPoly.const(x)
        return NotImplemented

    # -- inspection --
    def items(self) -> list[tuple[int, int]]:
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.items())

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of zero")
        return max(self._terms)

    def min_degree(self) -> int:
        if not self._terms:
            raise ValueError("degree of zero")
        return min(self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_palindromic(self) -> bool:
        return self == self.invert_q()

    def coefficients(self) -> list[int]:
        return [c for _, c in self.items()]

    def to_poly(self) -> tuple[int, Poly]:
        """Return (shift, dense coefficients) with the constant term nonzero."""
        if not self._terms:
            return 0, ()
        lo, hi = self.min_degree(), self.degree()
        return lo, tuple(self._terms.get(e, 0) for e in range(lo, hi + 1))

    # -- ring operations --
    def __eq__(self, other) -> bool:
        other = LaurentPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __add__(self, other) -> LaurentPoly:
        other = LaurentPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        t = dict(self._terms)
        for e, c in other._terms.items():
            t[e] = t.get(e, 0) + c
        return LaurentPoly(t)

    __radd__ = __add__

    def __sub__(self, other) -> LaurentPoly:
        other = LaurentPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other) -> LaurentPoly:
        other = LaurentPoly._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        t: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                t[e] = t.get(e, 0) + c1 * c2
        return LaurentPoly(t)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if not self.is_monomial():
                raise NotDivisible("only monomials are units")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise NotDivisible("only +-q^k are units")
            return LaurentPoly({e * n: c ** (-n)})
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by q^k."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def exact_div(self, other: Scalar) -> LaurentPoly:
        other = LaurentPoly._coerce(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly()
        sa, pa = self.to_poly()
        sb, pb = other.to_poly()
        # both constant terms are nonzero, so the quotient's shift is forced
        return LaurentPoly.from_poly(_pdivexact(pa, pb), sa - sb)

    def substitute_power(self, r: int) -> LaurentPoly:
        """q -> q^r."""
        if r <= 0:
            raise ValueError("r must be positive")
        return LaurentPoly({e * r: c for e, c in self._terms.items()})

    def invert_q(self) -> LaurentPoly:
        """q -> q^-1."""
        return LaurentPoly({-e: c for e, c in self._terms.items()})

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        if x == 0:
            raise ZeroPoint("evaluation at q = 0")
        return sum((c * x**e for e, c in self._terms.items()), Fraction(0))

    # -- text --
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (e, c) in enumerate(self.items()):
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                mono = "q" if e == 1 else f"q^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if i == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    _TERM = re.compile(r"([+-])?(\d+)?(?:\*?(q)(?:\^(-?\d+))?)?")

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        s = text.replace(" ", "")
        if not s:
            raise ParseError("empty Laurent polynomial")
        pos, terms = 0, {}
        while pos < len(s):
            m = cls._TERM.match(s, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
                raise ParseError(f"cannot parse Laurent polynomial at {s[pos:]!r}")
            if pos > 0 and m.group(1) is None:
                raise ParseError(f"missing sign at {s[pos:]!r}")
            sign = -1 if m.group(1) == "-" else 1
            c = int(m.group(2)) if m.group(2) else 1
            e = 0
            if m.group(3):
                e = int(m.group(4)) if m.group(4) else 1
            terms[e] = terms.get(e, 0) + sign * c
            pos = m.end()
        return cls(terms)


Q = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def lp_arith(a: LaurentPoly, b: LaurentPoly, op: str) -> LaurentPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def lp_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a.exact_div(b)


def lp_substitute_power(a: LaurentPoly, r: int) -> LaurentPoly:
    return a.substitute_power(r)


def lp_eval(a: LaurentPoly, x) -> Fraction:
    return a.evaluate(x)


# ---------------------------------------------------------------------------
# RatFunc
# ---------------------------------------------------------------------------


class RatFunc:
    """Element of Q(q) as a reduced quotient of integer polynomials.

    Canonical form: gcd(num, den) = 1 in Q[q], the combined integer content
    is 1, and den has a positive leading coefficient.  Zero is 0/1.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly = (1,), *, _reduced: bool = False):
        num, den = _trim(num), _trim(den)
        if not den:
            raise DivisionByZero("zero denominator")
        if not _reduced:
            num, den = RatFunc._normalize(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
        if not num:
            return (), (1,)
        # strip common powers of q first; cheap and very common here
        k = 0
        while num[k] == 0 and den[k] == 0:
            k += 1
        if k:
            num, den = num[k:], den[k:]
        if len(den) > 1:
            g = _pgcd(num, den)
            if len(g) > 1:
                num, den = _pdivexact(num, g), _pdivexact(den, g)
        c = gcd(_content(num), _content(den))
        if den[-1] < 0:
            c = -c
        if c != 1:
            num = tuple(x // c for x in num)
            den = tuple(x // c for x in den)
        return num, den

    @classmethod
    def from_laurent(cls, a: LaurentPoly) -> RatFunc:
        shift, p = a.to_poly()
        if shift >= 0:
            return cls((0,) * shift + p, (1,), _reduced=True)
        return cls(p, (0,) * (-shift) + (1,))

    @classmethod
    def coerce(cls, x) -> RatFunc:
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, LaurentPoly):
            return cls.from_laurent(x)
        if isinstance(x, int):
            return cls((x,), (1,), _reduced=True)
        if isinstance(x, Fraction):
            return cls((x.numerator,), (x.denominator,), _reduced=True)
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        try:
            other = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __neg__(self) -> RatFunc:
        return RatFunc(_pneg(self.num), self.den, _reduced=True)

    def __add__(self, other) -> RatFunc:
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            return RatFunc(_padd(self.num, o.num), self.den)
        return RatFunc(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den),
        )

    __radd__ = __add__

    def __sub__(self, other) -> RatFunc:
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other) -> RatFunc:
        return (-self) + other

    def __mul__(self, other) -> RatFunc:
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num or not o.num:
            return RatFunc((), (1,), _reduced=True)
        return RatFunc(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if not self.num:
            raise DivisionByZero("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> RatFunc:
        try:
            o = RatFunc.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other) -> RatFunc:
        return RatFunc.coerce(other) * self.inverse()

    def evaluate(self, x) -> Fraction:
        x = Fraction(x)
        d = sum((c * x**i for i, c in enumerate(self.den)), Fraction(0))
        if d == 0:
            raise DivisionByZero(f"denominator vanishes at {x}")
        return sum((c * x**i for i, c in enumerate(self.num)), Fraction(0)) / d

    def to_laurent(self) -> LaurentPoly:
        """Convert to Z[q, q^-1]; raises NotDivisible otherwise."""
        nz = [i for i, d in enumerate(self.den) if d]
        if len(nz) != 1:
            raise NotDivisible(f"{self} is not a Laurent polynomial")
        k = nz[0]
        lead = self.den[k]
        if lead not in (1, -1):
            raise NotDivisible(f"{self} has non-unit denominator")
        return LaurentPoly.from_poly([c * lead for c in self.num], -k)

    def __str__(self) -> str:
        n = str(LaurentPoly.from_poly(self.num))
        if self.den == (1,):
            return n
        return f"({n})/({LaurentPoly.from_poly(self.den)})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


RF_ZERO = RatFunc((), (1,), _reduced=True)
RF_ONE = RatFunc((1,), (1,), _reduced=True)


# ---------------------------------------------------------------------------
# KLaurent: Q(q)[K, K^-1]
# ---------------------------------------------------------------------------


class KLaurent:
    """Laurent polynomial in K with RatFunc coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, RatFunc] | None = None):
        t = {}
        if terms:
            for e, c in terms.items():
                c = RatFunc.coerce(c)
                if c:
                    t[int(e)] = c
        self._terms = t

    @classmethod
    def K(cls, power: int = 1) -> KLaurent:
        return cls({power: RF_ONE})

    @classmethod
    def const(cls, c) -> KLaurent:
        return cls({0: RatFunc.coerce(c)})

    def items(self) -> list[tuple[int, RatFunc]]:
        return sorted(self._terms.items())

    def coeff(self, e: int) -> RatFunc:
        return self._terms.get(e, RF_ZERO)

    def support(self) -> list[int]:
        return sorted(self._terms)

    def radius(self) -> int:
        """Smallest d with support inside [-d, d]."""
        return max((abs(e) for e in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @staticmethod
    def _coerce(x) -> KLaurent:
        if isinstance(x, KLaurent):
            return x
        return KLaurent.const(x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KLaurent):
            try:
                other = KLaurent._coerce(other)
            except TypeError:
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __neg__(self) -> KLaurent:
        return KLaurent({e: -c for e, c in self._terms.items()})

    def __add__(self, other) -> KLaurent:
        o = KLaurent._coerce(other)
        t = dict(self._terms)
        for e, c in o._terms.items():
            t[e] = t[e] + c if e in t else c
        return KLaurent(t)

    __radd__ = __add__

    def __sub__(self, other) -> KLaurent:
        return self + (-KLaurent._coerce(other))

    def __rsub__(self, other) -> KLaurent:
        return (-self) + other

    def __mul__(self, other) -> KLaurent:
        if not isinstance(other, KLaurent):
            c = RatFunc.coerce(other)
            return KLaurent({e: v * c for e, v in self._terms.items()})
        t: dict[int, RatFunc] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                p = c1 * c2
                t[e] = t[e] + p if e in t else p
        return KLaurent(t)

    __rmul__ = __mul__

    def __truediv__(self, other) -> KLaurent:
        c = RatFunc.coerce(other)
        if c.is_zero():
            raise DivisionByZero("division of KLaurent by zero")
        inv = c.inverse()
        return KLaurent({e: v * inv for e, v in self._terms.items()})

    def shift_K(self, c: int) -> KLaurent:
        """K -> q^c K (so the K^e coefficient gains q^(c e))."""
        return KLaurent(
            {e: v * LaurentPoly.monomial(c * e) for e, v in self._terms.items()}
        )

    def at_q_power(self, h: int) -> RatFunc:
        """Substitute K = q^h."""
        total = RF_ZERO
        for e, v in self._terms.items():
            total = total + v * LaurentPoly.monomial(h * e)
        return total

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({c})*K^{e}" for e, c in self.items())

    def __repr__(self) -> str:
        return f"KLaurent({self})"


def klaurent_from_laurent(terms: Mapping[int, LaurentPoly]) -> KLaurent:
    return KLaurent({e: RatFunc.from_laurent(c) for e, c in terms.items() if c})
