import pytest
from hypothesis import given, strategies as st

from oracles import same, sym_quantum_binom
from qpfaff.errors import PreconditionViolated
from qpfaff.exact_arith import ONE, LaurentPoly
from qpfaff.q_gaussian import q_binom, q_int
from qpfaff.quantum_binom import (
    quantum_binom,
    quantum_binom_general,
    quantum_binom_quotient,
    quantum_int,
    shifted_i_range,
    verify_bridge,
    verify_quantum_ps,
    verify_quantum_ps_shifted,
)

P = LaurentPoly.parse


def test_quantum_int():
    assert quantum_int(2) == P("q + q^-1")
    assert quantum_int(1) == ONE
    for n in range(1, 8):
        assert q_int(n).substitute_power(2) == quantum_int(n).shift(n - 1)


def test_quantum_binom_values():
    assert quantum_binom(2, 1) == P("q + q^-1")
    assert quantum_binom(3, 1) == P("q^2 + 1 + q^-2")
    assert quantum_binom(6, 6) == ONE


@pytest.mark.parametrize("n", range(0, 9))
def test_quantum_binom_matches_sympy(n):
    for k in range(n + 1):
        assert same(quantum_binom(n, k), sym_quantum_binom(n, k))


@pytest.mark.parametrize("n", range(0, 13))
def test_bridge(n):
    for k in range(n + 1):
        assert verify_bridge(n, k).equal
        assert quantum_binom_quotient(n, k).shift(k * (n - k)) == q_binom(n, k).substitute_power(2)


def test_upper_negation():
    # {-1, k} = (-1)^k
    for k in range(5):
        assert quantum_binom_general(-1, k) == ONE * (-1) ** k
    assert quantum_binom_general(-2, 1) == -quantum_int(2)


def test_quantum_ps_examples():
    r = verify_quantum_ps(1, 1, 1, 0)
    assert r.equal and r.lhs == "1"
    r = verify_quantum_ps(2, 1, 1, 0)
    assert r.equal and P(r.lhs) == P("q + q^-1") ** 2
    assert P(r.rhs) == ONE + P("q^2 + 1 + q^-2")
    assert verify_quantum_ps(3, 2, 1, 1).equal


@given(st.integers(0, 6), st.integers(0, 6), st.integers(0, 6), st.data())
def test_quantum_ps_property(m, s, t, data):
    e = data.draw(st.integers(-t, s))
    r = verify_quantum_ps(m, s, t, e)
    assert r.equal and not r.notes


def test_shifted_examples():
    r = verify_quantum_ps_shifted(2, 1, 1, 0, 0)
    assert r.equal and r.lhs == verify_quantum_ps(2, 1, 1, 0).lhs
    assert verify_quantum_ps_shifted(3, 1, 1, 1, 0).equal
    r = verify_quantum_ps_shifted(4, 2, 1, -1, 0)
    assert r.equal
    # nonzero summands begin at max(b, c) = 0, not at i = -1
    assert shifted_i_range(2, 1, -1, 0)[0] == 0
    assert not r.notes


def test_shifted_preconditions():
    with pytest.raises(PreconditionViolated):
        verify_quantum_ps_shifted(1, 1, 1, 0, -2)


@given(st.integers(0, 5), st.integers(0, 3), st.integers(0, 3), st.integers(-2, 3), st.integers(-2, 3))
def test_shifted_property(h, s, t, b, c):
    if t - c + b < 0 or s - b + c < 0 or h + c < 0 or h + b < 0:
        return
    assert verify_quantum_ps_shifted(h, s, t, b, c).equal
