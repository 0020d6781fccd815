from itertools import combinations, product

import pytest
from hypothesis import given, strategies as st

from qpfaff.errors import AmbientMismatch, BudgetExceeded, PreconditionViolated
from qpfaff.fq_subspaces import (
    BijectionContext,
    PrimeField,
    Subspace,
    bijection_backward,
    bijection_forward,
    complements,
    contains,
    count_complements,
    count_disjoint,
    count_extensions,
    count_intermediate,
    enumerate_quadruples,
    enumerate_subspaces,
    enumerate_T,
    fixed_complement,
    fixed_subspace,
    intersect,
    is_complement,
    quadruple_formula,
    subspace_sum,
    vandermonde_pair_count,
    verify_bijection,
    verify_subspace_count,
)
from qpfaff.q_gaussian import qps_lhs

F2, F3 = PrimeField(2), PrimeField(3)


def brute_force_count(n, k, p):
    """Distinct spans of k-subsets of nonzero vectors with full rank."""
    vecs = [v for v in product(range(p), repeat=n) if any(v)]
    seen = set()
    for combo in combinations(vecs, k):
        S = Subspace.span(combo, n, p)
        if S.dim == k:
            seen.add(S)
    return len(seen) if k else 1


def test_non_prime_rejected():
    with pytest.raises(PreconditionViolated):
        PrimeField(4)


def test_lines_in_plane_over_f3():
    lines = enumerate_subspaces(2, 1, F3)
    assert len(lines) == 4
    for L in lines:
        assert len(complements(L, Subspace.full(2, 3))) == 3


def test_zero_dimensional():
    assert list(enumerate_subspaces(3, 0, F2)) == [Subspace.zero(3, 2)]


@pytest.mark.parametrize("n,k,p", [(4, 2, 2), (3, 1, 3), (3, 2, 2), (2, 1, 5)])
def test_counts_against_brute_force(n, k, p):
    got = len(enumerate_subspaces(n, k, PrimeField(p)))
    assert got == brute_force_count(n, k, p)
    assert verify_subspace_count(n, k, PrimeField(p)).equal


def test_count_35():
    assert len(enumerate_subspaces(4, 2, F2)) == 35


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_subspaces(6, 3, F3, budget=100)


def test_ambient_mismatch():
    with pytest.raises(AmbientMismatch):
        intersect(Subspace.full(2, 2), Subspace.full(3, 2))


vector = st.lists(st.integers(0, 2), min_size=3, max_size=3)


@given(st.lists(vector, max_size=3), st.lists(vector, max_size=3))
def test_dimension_formula(us, ws):
    U, W = Subspace.span(us, 3, 3), Subspace.span(ws, 3, 3)
    assert subspace_sum(U, W).dim + intersect(U, W).dim == U.dim + W.dim
    assert contains(subspace_sum(U, W), U)
    assert intersect(U, W) <= W


def test_fixed_subspace_examples():
    X = Subspace.full(3, 2)
    assert fixed_subspace(X, 3) == X
    assert fixed_subspace(X, 0) == Subspace.zero(3, 2)
    # greedy-first vectors in lexicographic order are (0,0,1), (0,1,0)
    assert fixed_subspace(X, 2) == Subspace.span([(0, 0, 1), (0, 1, 0)], 3, 2)


def test_fixed_complement_examples():
    Y = Subspace.full(2, 3)
    assert fixed_complement(Y, Y) == Subspace.zero(2, 3)
    assert fixed_complement(Subspace.zero(2, 3), Y) == Y
    L = Subspace.span([(1, 1)], 2, 3)
    comps = complements(L, Y)
    best = fixed_complement(L, Y)
    assert best == min(comps, key=lambda W: W.vectors)
    assert best == Subspace.span([(0, 1)], 2, 3)
    assert is_complement(L, best, Y)


@pytest.mark.parametrize("p", [2, 3])
def test_complements_parameterization_is_exhaustive(p):
    Y = Subspace.full(3, p)
    for X in enumerate_subspaces(3, 1, PrimeField(p)):
        expected = {W for W in enumerate_subspaces(3, 2, PrimeField(p)) if is_complement(X, W, Y)}
        assert set(complements(X, Y)) == expected


def test_counting_examples():
    Y = Subspace.full(2, 3)
    L = Subspace.span([(1, 0)], 2, 3)
    r = count_complements(L, Y)
    assert (r.lhs, r.rhs) == ("3", "3")
    r = count_intermediate(Subspace.zero(4, 2), Subspace.full(4, 2), 2)
    assert r.lhs == "35" and r.equal


def test_extension_reductions():
    V = Subspace.full(4, 2)
    U = fixed_subspace(V, 1)
    W = fixed_subspace(V, 2)
    # k = l: extensions are the intermediate spaces over W meeting W in U
    assert count_extensions(U, U, 2).lhs == count_intermediate(U, V, 2).lhs
    # k = 0, m = n - l: complements
    assert count_extensions(Subspace.zero(4, 2), W, 2).lhs == count_complements(W, V).lhs


@pytest.mark.parametrize("p,N", [(2, 4), (3, 3)])
def test_counts_over_every_subspace(p, N):
    F = PrimeField(p)
    full = Subspace.full(N, p)
    for k in range(N + 1):
        for U in enumerate_subspaces(N, k, F):
            assert count_complements(U, full).equal
            for s in range(N + 1):
                assert count_disjoint(U, s).equal


def test_disjoint_formula_note():
    r = count_disjoint(fixed_subspace(Subspace.full(4, 2), 1), 1)
    assert r.equal and r.lhs == "14"
    assert "differs" in r.notes[0]


@pytest.mark.parametrize("n", range(0, 5))
def test_vandermonde_pairs(n):
    for m in range(n + 1):
        for l in range(n + 1):
            assert vandermonde_pair_count(n, m, l, F2).equal


def test_quadruple_cells_examples():
    count, _ = enumerate_quadruples(2, 1, 1, 0, 1, 0, F2)
    assert count == int(quadruple_formula(2, 1, 1, 0, 1, 0).evaluate(2))
    count, _ = enumerate_quadruples(2, 1, 1, 0, 0, 0, F2)
    assert count == int(quadruple_formula(2, 1, 1, 0, 0, 0).evaluate(2))


def test_out_of_range_cells_empty():
    assert enumerate_quadruples(2, 1, 1, 0, 5, 0, F2)[0] == 0
    assert quadruple_formula(2, 1, 1, 0, 5, 0).is_zero()
    assert quadruple_formula(2, 1, 1, 0, 0, 3).is_zero()


def test_bijection_roundtrip_small():
    ctx = BijectionContext.create(2, 1, 1, 0, F2)
    T = enumerate_T(ctx)
    assert len(T) == int(qps_lhs(2, 1, 1, 0).evaluate(2))
    for A, B in T:
        assert bijection_backward(bijection_forward(A, B, ctx)) == (A, B)
    r = verify_bijection(2, 1, 1, 0, F2)
    assert r.equal and r.lhs == str(len(T))


def test_bijection_needs_nonnegative_e():
    with pytest.raises(PreconditionViolated):
        verify_bijection(2, 1, 1, -1, F2)
