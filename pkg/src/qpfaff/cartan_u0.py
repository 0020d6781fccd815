"""The integral Cartan algebra U^0_A(sl2) spanned by Lusztig elements

    [K; c // t] = [K;c][K;c-1]...[K;c-t+1] / {t}!,   [K;a] = (q^a K - q^-a K^-1)/(q - q^-1).

Elements are kept in the basis B = {[K;0//t] : t >= 0} ∪ {[K;1//t] : t >= 1}
with coefficients in Z[q, q^-1].  Every operation can be checked against the
K-Laurent oracle, the image of the same element in Q(q)[K, K^-1].

A symbol is a pair (c, t); (0, 0) is the unit.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Mapping

from .errors import IntegralityViolated, NotDivisible, ParseError, PreconditionViolated
from .exact_arith import ONE, ZERO, KLaurent, LaurentPoly, Q, RatFunc
from .quantum_binom import quantum_binom, quantum_binom_general
from .report import VerificationReport, timed

Sym = tuple  # (c, t)

UNIT: Sym = (0, 0)


def in_basis(sym: Sym) -> bool:
    c, t = sym
    return t >= 0 and (c == 0 or (c == 1 and t >= 1))


def _coerce_lp(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a coefficient")


def render_combination(terms) -> str:
    """Render [(label, coeff)] with '' as the unit label.

    A coefficient that is a single negative monomial becomes a minus sign;
    other non-unit coefficients are parenthesized in front of the label.
    """
    parts = []
    for label, c in terms:
        neg = c.is_monomial() and c.coefficients()[0] < 0
        if neg:
            c = -c
        if not label:
            body = str(c) if c.is_monomial() else f"({c})"
        elif c == 1:
            body = label
        else:
            body = f"({c})*{label}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts) if parts else "0"


def symbol_label(sym: Sym) -> str:
    return "" if sym[1] == 0 else f"K[{sym[0]};{sym[1]}]"


class CartanElement:
    """Finite A-linear combination of basis-B symbols."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Mapping[Sym, LaurentPoly] | None = None):
        out = {}
        for sym, v in (coeffs or {}).items():
            sym = (int(sym[0]), int(sym[1]))
            if sym[1] == 0:
                sym = UNIT
            if not in_basis(sym):
                raise ValueError(f"{sym} is not in basis B")
            v = _coerce_lp(v)
            if v:
                out[sym] = out[sym] + v if sym in out else v
        self._coeffs = {k: v for k, v in out.items() if v}

    @classmethod
    def basis(cls, c: int, t: int) -> CartanElement:
        return cls({(c, t): ONE})

    @classmethod
    def unit(cls) -> CartanElement:
        return cls({UNIT: ONE})

    @classmethod
    def scalar(cls, a) -> CartanElement:
        return cls({UNIT: _coerce_lp(a)})

    def items(self) -> list[tuple[Sym, LaurentPoly]]:
        return sorted(self._coeffs.items(), key=lambda kv: (kv[0][1], -kv[0][0]))

    def coeff(self, sym: Sym) -> LaurentPoly:
        return self._coeffs.get(sym, ZERO)

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self):
        return bool(self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CartanElement):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self._coeffs.items()))

    def __neg__(self) -> CartanElement:
        return CartanElement({k: -v for k, v in self._coeffs.items()})

    def __add__(self, other) -> CartanElement:
        if not isinstance(other, CartanElement):
            other = CartanElement.scalar(other)
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out[k] + v if k in out else v
        return CartanElement(out)

    __radd__ = __add__

    def __sub__(self, other) -> CartanElement:
        if not isinstance(other, CartanElement):
            other = CartanElement.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> CartanElement:
        if isinstance(other, CartanElement):
            return product(self, other)
        a = _coerce_lp(other)
        return CartanElement({k: v * a for k, v in self._coeffs.items()})

    def __rmul__(self, other) -> CartanElement:
        return self * other  # commutative algebra

    def to_oracle(self) -> KLaurent:
        total = KLaurent()
        for sym, v in self._coeffs.items():
            total = total + expand(sym) * v
        return total

    def __str__(self) -> str:
        return render_combination([(symbol_label(s), v) for s, v in self.items()])

    def __repr__(self) -> str:
        return f"CartanElement({self})"


# ---------------------------------------------------------------------------
# the K-Laurent oracle
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _expand(c: int, t: int) -> KLaurent:
    num: dict[int, LaurentPoly] = {0: ONE}
    for s in range(t):
        a = c - s
        new: dict[int, LaurentPoly] = {}
        for e, v in num.items():
            new[e + 1] = new.get(e + 1, ZERO) + v.shift(a)
            new[e - 1] = new.get(e - 1, ZERO) - v.shift(-a)
        num = new
    den = ONE
    for s in range(1, t + 1):
        den = den * (LaurentPoly.monomial(s) - LaurentPoly.monomial(-s))
    inv = RatFunc.from_laurent(den).inverse()
    return KLaurent({e: RatFunc.from_laurent(v) * inv for e, v in num.items() if v})


def expand(sym: Sym) -> KLaurent:
    """Exact image of [K; c // t] in Q(q)[K, K^-1]."""
    c, t = sym
    if t < 0:
        return KLaurent()
    return _expand(c, t)


def specialize(sym: Sym, h: int) -> LaurentPoly:
    """Value of [K; c // t] at K = q^h, namely {h+c choose t}.

    For h + c < 0 that binomial is read as the product {h+c}...{h+c-t+1}/{t}!
    (upper negation), not as zero, because that is what the element takes.
    """
    c, t = sym
    if t < 0:
        return ZERO
    return quantum_binom_general(h + c, t)


def shift_automorphism(x: KLaurent, c: int) -> KLaurent:
    """K -> q^c K, K^-1 -> q^-c K^-1."""
    return x.shift_K(c)


def equal_by_specialization(x: KLaurent, y: KLaurent) -> bool:
    """Decide x == y from the values at K = q^h, h = 0..2d.

    With both supports inside [-d, d], K^d (x - y) is a polynomial of degree
    at most 2d, so 2d + 1 distinct points q^h settle it.
    """
    d = max(x.radius(), y.radius())
    return all(x.at_q_power(h) == y.at_q_power(h) for h in range(2 * d + 1))


def specialization_witness(x: KLaurent, y: KLaurent) -> int | None:
    d = max(x.radius(), y.radius())
    for h in range(2 * d + 1):
        if x.at_q_power(h) != y.at_q_power(h):
            return h
    return None


# ---------------------------------------------------------------------------
# multiplication rule and the shift relation
# ---------------------------------------------------------------------------


def multiply_rule(c: int, t: int, b: int, s: int) -> dict[int, LaurentPoly]:
    """Coefficients of [K;i // t+s] in [K;c // t][K;b // s]."""
    if t < 0 or s < 0:
        raise PreconditionViolated("t, s must be nonnegative")
    if t - c + b < 0 or s - b + c < 0:
        raise PreconditionViolated("need t-c+b >= 0 and s-b+c >= 0")
    out = {}
    for i in range(max(b, c), min(t + b, s + c) + 1):
        v = quantum_binom(t - c + b, i - c) * quantum_binom(s - b + c, i - b)
        if v:
            out[i] = v
    return out


def _rule_oracle(rule: dict[int, LaurentPoly], height: int) -> KLaurent:
    total = KLaurent()
    for i, v in rule.items():
        total = total + expand((i, height)) * v
    return total


def rule_by_specialization(c: int, t: int, b: int, s: int) -> bool:
    """Check the rule at 2(t+s)+1 points K = q^h with quantum binomials.

    Starts at h0 = max(0, -b, -c) so every binomial has a nonnegative top.
    Shares nothing with the K-Laurent route.
    """
    rule = multiply_rule(c, t, b, s)
    h0 = max(0, -b, -c)
    for h in range(h0, h0 + 2 * (t + s) + 1):
        lhs = quantum_binom(h + c, t) * quantum_binom(h + b, s)
        rhs = ZERO
        for i, v in rule.items():
            rhs = rhs + v * quantum_binom(h + i, t + s)
        if lhs != rhs:
            return False
    return True


def verify_multiply_rule(c: int, t: int, b: int, s: int) -> VerificationReport:
    notes = []
    with timed() as clock:
        rule = multiply_rule(c, t, b, s)
        lhs = expand((c, t)) * expand((b, s))
        rhs = _rule_oracle(rule, t + s)
        spec_ok = rule_by_specialization(c, t, b, s)
        espec_ok = equal_by_specialization(lhs, rhs)
        notes.append(f"specialization route: {spec_ok}")
        notes.append(f"oracle specialization at 2d+1 points: {espec_ok}")
        negative = sorted(i for i in rule if i < 0)
        notes.append(
            "literal i >= 0 range differs (nonzero i = %s)" % negative
            if negative else "literal i >= 0 range agrees"
        )
    rhs_str = str(rhs) if spec_ok and espec_ok else f"{rhs} [specialization mismatch]"
    return VerificationReport(
        "cartan_rule", dict(c=c, t=t, b=b, s=s), str(lhs), rhs_str, notes, clock[0]
    )


def shift_reduce(c: int, t: int, direction: str = "down") -> tuple[Sym, dict[Sym, LaurentPoly]]:
    """The relation [K;c+2//t] = (q^t+q^-t)[K;c+1//t] - [K;c//t] + [K;c//t-2].

    ``down`` solves for (c+2, t); ``up`` solves for (c, t).  A height t-2 < 0
    term is zero and is left out.
    """
    if t < 1:
        raise PreconditionViolated("shift relation needs t >= 1")
    qq = LaurentPoly({t: 1, -t: 1})
    rel: dict[Sym, LaurentPoly] = {(c + 1, t): qq}
    if direction == "down":
        target = (c + 2, t)
        rel[(c, t)] = -ONE
    elif direction == "up":
        target = (c, t)
        rel[(c + 2, t)] = -ONE
    else:
        raise ValueError(f"direction must be 'up' or 'down', got {direction!r}")
    if t >= 2:
        rel[(c, t - 2)] = ONE
    return target, rel


def verify_shift_relation(c: int, t: int) -> VerificationReport:
    with timed() as clock:
        target, rel = shift_reduce(c, t, "down")
        rhs = KLaurent()
        for sym, v in rel.items():
            rhs = rhs + expand(sym) * v
        lhs = expand(target)
    return VerificationReport(
        "cartan_shift", dict(c=c, t=t), str(lhs), str(rhs), [], clock[0]
    )


# ---------------------------------------------------------------------------
# normal forms and products
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def normal_form(sym: Sym) -> CartanElement:
    """Rewrite [K;c//t] in basis B by the shift relation.

    Double induction: height t outside, shift c inside, moving c toward
    {0, 1} from above (c >= 2) or below (c < 0).
    """
    c, t = sym
    if t < 0:
        return CartanElement()
    if t == 0:
        return CartanElement.unit()
    if c in (0, 1):
        return CartanElement.basis(c, t)
    direction = "down" if c >= 2 else "up"
    base = c - 2 if c >= 2 else c
    _, rel = shift_reduce(base, t, direction)
    out = CartanElement()
    # lower height first, then the two same-height neighbours
    for other, v in sorted(rel.items(), key=lambda kv: kv[0][1]):
        out = out + normal_form(other) * v
    return out


@lru_cache(maxsize=None)
def _basis_product(x: Sym, y: Sym) -> CartanElement:
    (c, t), (b, s) = x, y
    if t == 0:
        return CartanElement.basis(b, s) if s else CartanElement.unit()
    if s == 0:
        return CartanElement.basis(c, t)
    out = CartanElement()
    for i, v in multiply_rule(c, t, b, s).items():
        out = out + normal_form((i, t + s)) * v
    return out


def product(x: CartanElement, y: CartanElement) -> CartanElement:
    out = CartanElement()
    for sx, vx in x.items():
        for sy, vy in y.items():
            out = out + _basis_product(sx, sy) * (vx * vy)
    return out


K_ELEMENT = CartanElement({(1, 1): ONE, (0, 1): -LaurentPoly.monomial(-1)})
K_INV_ELEMENT = CartanElement({(1, 1): ONE, (0, 1): -Q})


def k_multiply(x: CartanElement, sign: int) -> CartanElement:
    """x * K (sign +1) or x * K^-1 (sign -1), written in basis B."""
    if sign == 1:
        return product(x, K_ELEMENT)
    if sign == -1:
        return product(x, K_INV_ELEMENT)
    raise ValueError("sign must be +1 or -1")


def decompose(x: KLaurent) -> CartanElement:
    """Solve x = sum a_sym * expand(sym) over basis B, independently of
    :func:`normal_form`, peeling off the K^±d coefficients top-down.

    Raises IntegralityViolated if a coefficient is not in Z[q, q^-1].
    """
    coeffs: dict[Sym, RatFunc] = {}
    rest = x
    while rest:
        d = rest.radius()
        if d == 0:
            coeffs[UNIT] = rest.coeff(0)
            break
        e0, e1 = expand((0, d)), expand((1, d))
        a0, a1, b0, b1 = e0.coeff(d), e1.coeff(d), e0.coeff(-d), e1.coeff(-d)
        top, bot = rest.coeff(d), rest.coeff(-d)
        det = a0 * b1 - a1 * b0
        alpha = (top * b1 - a1 * bot) / det
        beta = (a0 * bot - top * b0) / det
        coeffs[(0, d)] = alpha
        coeffs[(1, d)] = beta
        rest = rest - e0 * alpha - e1 * beta
        assert rest.radius() < d or not rest
    out = {}
    for sym, v in coeffs.items():
        try:
            out[sym] = v.to_laurent()
        except NotDivisible as exc:
            raise IntegralityViolated(f"coefficient of {sym} is {v}") from exc
    return CartanElement(out)


def verify_normal_form(c: int, t: int) -> VerificationReport:
    """normal_form((c, t)) expands back to [K;c//t]; the independent
    top-down solve must produce the same coefficients."""
    notes = []
    with timed() as clock:
        nf = normal_form((c, t))
        lhs = expand((c, t))
        rhs = nf.to_oracle()
        try:
            solved = decompose(lhs)
            agree = solved == nf
        except IntegralityViolated as exc:
            agree = False
            notes.append(str(exc))
        notes.append(f"normal form: {nf}")
    rhs_str = str(rhs) if agree else f"{rhs} [decomposition disagrees]"
    return VerificationReport("cartan_nf", dict(c=c, t=t), str(lhs), rhs_str, notes, clock[0])


def verify_k_inverse() -> VerificationReport:
    with timed() as clock:
        x = product(K_ELEMENT, K_INV_ELEMENT)
    return VerificationReport("cartan_k_inverse", {}, str(x), str(CartanElement.unit()), [], clock[0])


# ---------------------------------------------------------------------------
# Lusztig's basis K^δ [K;0 // t]
# ---------------------------------------------------------------------------


def to_lusztig_basis(x: CartanElement) -> dict[tuple[int, int], LaurentPoly]:
    """Coordinates in {[K//t]} ∪ {K [K//t]}, keyed by (δ, t).

    Uses [K;1//t] = q^-(t-1) (K [K//t-1] + q^-1 [K//t]).
    """
    out: dict[tuple[int, int], LaurentPoly] = {}

    def add(key, v):
        out[key] = out.get(key, ZERO) + v

    for (c, t), v in x.items():
        if c == 0:
            add((0, t), v)
        else:
            add((1, t - 1), v.shift(-(t - 1)))
            add((0, t), v.shift(-t))
    return {k: v for k, v in out.items() if v}


def from_lusztig_basis(coords: Mapping[tuple[int, int], LaurentPoly]) -> CartanElement:
    """Inverse of :func:`to_lusztig_basis`: K [K//t] = q^t [K;1//t+1] - q^-1 [K//t+1]."""
    out = CartanElement()
    for (delta, t), v in coords.items():
        v = _coerce_lp(v)
        if delta == 0:
            out = out + normal_form((0, t)) * v
        elif delta == 1:
            out = out + CartanElement({(1, t + 1): v.shift(t), (0, t + 1): -v.shift(-1)})
        else:
            raise ValueError("delta must be 0 or 1")
    return out


def lusztig_oracle(coords: Mapping[tuple[int, int], LaurentPoly]) -> KLaurent:
    total = KLaurent()
    for (delta, t), v in coords.items():
        total = total + KLaurent.K(delta) * expand((0, t)) * _coerce_lp(v)
    return total


# ---------------------------------------------------------------------------
# text grammar: K[c;t], K, K^-1, q, integers, + - * ^ and parentheses
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(K\[\s*-?\d+\s*;\s*\d+\s*\])|(\d+)|(.))")


def _tokenize(text: str) -> list[str]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"bad input at {text[pos:]!r}")
        tok = m.group(1) or m.group(2) or m.group(3)
        tokens.append(tok.replace(" ", ""))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'}, got {tok!r}")
        self.i += 1
        return tok

    def parse(self):
        node = self.expr()
        if self.peek() is not None:
            raise ParseError(f"unexpected {self.peek()!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            tok = self.take()
            node = ("add" if tok == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek() == "*":
            self.take()
            node = ("mul", node, self.unary())
        return node

    def unary(self):
        if self.peek() == "-":
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            if tok == "-":
                tok = "-" + self.take()
            try:
                n = int(tok)
            except ValueError:
                raise ParseError(f"bad exponent {tok!r}") from None
            node = ("pow", node, n)
        return node

    def atom(self):
        tok = self.take()
        if tok == "(":
            node = self.expr()
            self.take(")")
            return node
        if tok.startswith("K["):
            c, t = tok[2:-1].split(";")
            return ("sym", int(c), int(t))
        if tok == "K":
            return ("K",)
        if tok == "q":
            return ("q",)
        if tok.isdigit():
            return ("int", int(tok))
        raise ParseError(f"unexpected {tok!r}")


def parse_cartan(text: str):
    """Parse into a small AST; evaluate with :func:`eval_cartan`/:func:`eval_oracle`."""
    return _Parser(text).parse()


def _eval(node, dom):
    kind = node[0]
    if kind in ("add", "sub", "mul"):
        a, b = _eval(node[1], dom), _eval(node[2], dom)
        return a + b if kind == "add" else a - b if kind == "sub" else dom["mul"](a, b)
    if kind == "neg":
        return -_eval(node[1], dom)
    if kind == "pow":
        return dom["pow"](node[1], node[2])
    return dom[kind](*node[1:])


def _cartan_pow(base, n):
    if base == ("K",):
        out = CartanElement.unit()
        for _ in range(abs(n)):
            out = k_multiply(out, 1 if n > 0 else -1)
        return out
    if base == ("q",):
        return CartanElement.scalar(LaurentPoly.monomial(n))
    if n < 0:
        raise ParseError("negative powers only for K and q")
    x = _eval(base, _CARTAN)
    out = CartanElement.unit()
    for _ in range(n):
        out = product(out, x)
    return out


def _oracle_pow(base, n):
    if base == ("K",):
        return KLaurent.K(n)
    if base == ("q",):
        return KLaurent.const(LaurentPoly.monomial(n))
    if n < 0:
        raise ParseError("negative powers only for K and q")
    x = _eval(base, _ORACLE)
    out = KLaurent.const(1)
    for _ in range(n):
        out = out * x
    return out


_CARTAN = {
    "mul": lambda a, b: product(a, b),
    "pow": _cartan_pow,
    "sym": lambda c, t: normal_form((c, t)),
    "K": lambda: k_multiply(CartanElement.unit(), 1),
    "q": lambda: CartanElement.scalar(Q),
    "int": lambda n: CartanElement.scalar(n),
}

_ORACLE = {
    "mul": lambda a, b: a * b,
    "pow": _oracle_pow,
    "sym": lambda c, t: expand((c, t)),
    "K": lambda: KLaurent.K(1),
    "q": lambda: KLaurent.const(Q),
    "int": lambda n: KLaurent.const(n),
}


def eval_cartan(node) -> CartanElement:
    return _eval(node, _CARTAN)


def eval_oracle(node) -> KLaurent:
    return _eval(node, _ORACLE)


def parse_cartan_element(text: str) -> CartanElement:
    return eval_cartan(parse_cartan(text))
