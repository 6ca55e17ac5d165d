from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

import reference as ref
from connquery.certificates.cuts import universal_cut_incidence
from connquery.certificates.linalg import (exact_rank, in_row_space, integer_rows, mat_vec,
                                           row_basis, transpose_vec)


def test_rank_examples():
    assert exact_rank(np.eye(5, dtype=int)) == 5
    assert exact_rank([[0, 0], [0, 0]]) == 0
    assert exact_rank([]) == 0
    assert exact_rank(universal_cut_incidence(3)) == 3 == ref.rank(universal_cut_incidence(3).tolist())


def test_rank_of_universal_incidence_is_full():
    for n in range(2, 8):
        assert exact_rank(universal_cut_incidence(n)) == n * (n - 1) // 2


def test_rank_sees_tiny_dependencies():
    # rows that differ by one part in 10^12 in a single entry
    a = [Fraction(1, 3), Fraction(2, 7), Fraction(-5, 11)]
    b = [a[0], a[1], a[2] * Fraction(10**12 + 1, 10**12)]
    assert exact_rank([a, b]) == 2
    assert exact_rank([a, [3 * x for x in a]]) == 1


def test_integer_rows_clears_denominators_per_row():
    assert integer_rows([[Fraction(1, 2), Fraction(1, 3)], [2, 4]]) == [[3, 2], [2, 4]]


def test_row_basis_and_membership():
    M = [[1, 1, 0], [2, 2, 0], [0, 1, 1], [1, 2, 1]]
    basis = row_basis(M)
    assert basis == [0, 2]
    assert in_row_space(M, [3, 5, 2])
    assert not in_row_space(M, [0, 0, 1])
    assert in_row_space([], [0, 0])
    assert not in_row_space([], [1, 0])


def test_products():
    A = [[1, Fraction(1, 2)], [0, 3]]
    assert mat_vec(A, [2, 4]) == [4, 12]
    assert transpose_vec(A, [1, 1], 2) == [1, Fraction(7, 2)]


matrices = st.integers(1, 7).flatmap(lambda cols: st.lists(
    st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=6), min_size=cols, max_size=cols),
    min_size=0, max_size=7))


@settings(max_examples=200, deadline=None)
@given(matrices, st.integers(0, 3))
def test_rank_matches_reference(M, dup):
    # append combinations of existing rows, which must not raise the rank
    M = [list(r) for r in M]
    for i in range(min(dup, len(M))):
        M.append([a - 2 * b for a, b in zip(M[i], M[-1])])
    r = exact_rank(M)
    assert r == ref.rank(M)
    basis = row_basis(M)
    assert len(basis) == r and ref.rank([M[i] for i in basis]) == r


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 10**6))
def test_large_integer_entries(rows, cols, seed):
    rng = np.random.default_rng(seed)
    M = [[int(x) * 10**15 + int(y) for x, y in zip(rng.integers(-9, 9, cols), rng.integers(-9, 9, cols))]
         for _ in range(rows)]
    assert exact_rank(M) == ref.rank(M)
