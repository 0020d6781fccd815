import random

import pytest
from hypothesis import given, strategies as st

from qpfaff.cartan_u0 import normal_form
from qpfaff.errors import ParseError
from qpfaff.exact_arith import ONE, LaurentPoly
from qpfaff.integral_form import (
    STRATEGIES,
    AlgebraElement,
    confluence_check,
    generator_matrix,
    identity,
    matmul,
    oracle_soundness,
    parse_word,
    random_word,
    render_word,
    straighten,
    verify_straighten,
    weyl_action,
)
from qpfaff.quantum_binom import quantum_binom

P = LaurentPoly.parse
W = parse_word


def test_merge_divided_powers():
    assert straighten(W("E(1) E(1)")) == AlgebraElement({(0, 0, 0, 2): P("q + q^-1")})
    assert str(straighten(W("E(1) E(1)"))) == "(q^-1 + q)*E(2)"
    assert straighten(W("F(2) F(1)")) == AlgebraElement({(3, 0, 0, 0): quantum_binom(3, 2)})


def test_commutator():
    x = straighten(W("E(1) F(1)"))
    assert x == AlgebraElement({(1, 0, 0, 1): ONE, (0, 0, 1, 0): ONE})
    assert str(x) == "F(1)*E(1) + K[0;1]"


def test_cartan_past_divided_power():
    # K[0;1] E(2) = E(2) K[4;1]; in F-K-E order the left side is already straight
    assert str(straighten(W("K[0;1] E(2)"))) == "K[0;1]*E(2)"
    assert straighten(W("E(2) K[4;1]")) == straighten(W("K[0;1] E(2)"))
    # F moves left past a Cartan factor with c -> c - 2n
    x = straighten(W("K[1;1] F(1)"))
    y = AlgebraElement({(1, c, t, 0): v for (c, t), v in normal_form((-1, 1)).items()})
    assert x == y


def test_unit_word():
    assert straighten(()) == AlgebraElement({(0, 0, 0, 0): ONE})
    assert verify_straighten((), [0, 1, 2]).equal
    assert str(straighten(W("K K^-1"))) == "1"


def test_verify_examples():
    assert verify_straighten(W("E(1) F(1)"), [1, 2, 3]).equal


@pytest.mark.parametrize("N", range(0, 6))
def test_oracle_soundness(N):
    failures = [name for name, ok in oracle_soundness(N) if not ok]
    assert failures == []


def test_divided_power_action():
    N = 4
    for r in range(N + 2):
        M = generator_matrix(("E", r), N) if r else identity(N)
        for k in range(N + 1):
            for i in range(N + 1):
                want = quantum_binom(N - k + r, r) if i == k - r else LaurentPoly()
                assert M[i][k] == want


def test_word_acts_right_to_left():
    N = 2
    EF = weyl_action(W("E(1) F(1)"), N)
    assert EF == matmul(generator_matrix(("E", 1), N), generator_matrix(("F", 1), N))


def test_confluence_examples():
    assert confluence_check(W("E(1) F(1) E(1)"))
    assert confluence_check(W("E(1) F(1)  K[0;1] F(2)"))
    with pytest.raises(ValueError):
        confluence_check(W("E(1)"), ["leftmost"])


def test_projection():
    rng = random.Random(7)
    for _ in range(20):
        x = straighten(random_word(rng, 4, 2))
        total = {}
        for v, w in x.words():
            for mono, c in straighten(w)._coeffs.items():
                total[mono] = total.get(mono, LaurentPoly()) + v * c
        assert AlgebraElement(total) == x


words = st.lists(
    st.one_of(
        st.tuples(st.sampled_from("EF"), st.integers(1, 3)),
        st.tuples(st.just("K"), st.sampled_from([1, -1])),
        st.tuples(st.just("C"), st.integers(-3, 3), st.integers(1, 2)),
    ),
    max_size=5,
).map(tuple)


@given(words)
def test_straighten_property(w):
    assert verify_straighten(w, [1, 2, 3, 4]).equal


@given(words)
def test_confluence_property(w):
    assert confluence_check(w, STRATEGIES + ("random:1",))


@given(words)
def test_word_roundtrip(w):
    assert W(render_word(w)) == w


@pytest.mark.parametrize("bad", ["E(0)", "E(-1)", "K^2", "G(1)", "K[1]", "E (1)"])
def test_word_parse_errors(bad):
    with pytest.raises(ParseError):
        W(bad)
