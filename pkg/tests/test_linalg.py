import random
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rootforest.linalg import (Echelon, IntPoly, char_poly_shifted, det, identity, rank,
                               smith_normal_form, submatrix, transpose, zeros)

from oracles import cofactor_det, fraction_rank, symbolic_shifted_charpoly


def square(max_n=6, lo=-3, hi=3):
    return st.integers(0, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n),
                           min_size=n, max_size=n))


def rect(max_n=6, lo=-3, hi=3):
    return st.tuples(st.integers(1, max_n), st.integers(1, max_n)).flatmap(
        lambda s: st.lists(st.lists(st.integers(lo, hi), min_size=s[1], max_size=s[1]),
                           min_size=s[0], max_size=s[0]))


def test_det_trivial():
    assert det(identity(3)) == 1
    assert det([]) == 1
    assert det([[0, 1], [1, 0]]) == -1


def test_det_rejects_non_square():
    with pytest.raises(ValueError):
        det([[1, 2, 3], [4, 5, 6]])


def test_det_random_5x5_matches_cofactor():
    rng = random.Random(5)
    for _ in range(20):
        M = [[rng.randint(-9, 9) for _ in range(5)] for _ in range(5)]
        assert det(M) == cofactor_det(M)


def test_det_needs_row_swaps():
    M = [[0, 0, 1], [0, 2, 0], [3, 0, 0]]
    assert det(M) == -6


@settings(max_examples=150, deadline=None)
@given(square())
def test_det_property(M):
    assert det(M) == cofactor_det(M)


def test_det_big_integers_exact():
    M = [[10 ** 30, 1], [1, 10 ** 30]]
    assert det(M) == 10 ** 60 - 1


def test_rank_examples():
    assert rank(zeros(3, 4)) == 0
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[0, 1, 0], [0, 0, 0], [0, 2, 1]]) == 2


@settings(max_examples=150, deadline=None)
@given(rect())
def test_rank_matches_oracle_and_transpose(M):
    assert rank(M) == fraction_rank(M) == rank(transpose(M))


def test_char_poly_zero_matrix():
    assert char_poly_shifted(zeros(3, 3)) == IntPoly([0, 0, 0, 1])


def test_char_poly_empty():
    assert char_poly_shifted([]) == IntPoly([1])


def test_char_poly_symmetric_4x4():
    rng = random.Random(4)
    for _ in range(10):
        A = [[rng.randint(-4, 4) for _ in range(4)] for _ in range(4)]
        M = [[A[i][j] + A[j][i] for j in range(4)] for i in range(4)]
        assert list(char_poly_shifted(M).coeffs) == symbolic_shifted_charpoly(M)


@settings(max_examples=60, deadline=None)
@given(square(max_n=5, lo=-5, hi=5), st.integers(-6, 6))
def test_char_poly_evaluates_to_shifted_det(M, t):
    p = char_poly_shifted(M)
    assert p(0) == det(M)
    shifted = [[M[i][j] + (t if i == j else 0) for j in range(len(M))] for i in range(len(M))]
    assert p(t) == det(shifted)


def test_smith_identity_and_diagonal():
    assert smith_normal_form(identity(4)).invariant_factors == (1, 1, 1, 1)
    assert smith_normal_form([[2, 0], [0, 6]]).invariant_factors == (2, 6)
    assert smith_normal_form([[6, 0], [0, 4]]).invariant_factors == (2, 12)


def test_smith_known_example():
    m = [[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]]
    assert smith_normal_form(m).invariant_factors == (1, 10, 30, 0)


def test_smith_rectangular_and_empty():
    assert smith_normal_form([[3, 0, 0, 0], [0, 0, 0, 0], [0, 0, 2, 0]]).invariant_factors == (1, 6, 0)
    assert smith_normal_form([]).invariant_factors == ()
    assert smith_normal_form([[0, -2]]).invariant_factors == (2,)


@settings(max_examples=100, deadline=None)
@given(rect(max_n=5, lo=-6, hi=6))
def test_smith_divisibility_and_rank(M):
    sf = smith_normal_form(M)
    nz = [d for d in sf.invariant_factors if d]
    assert nz == list(sf.invariant_factors[:len(nz)])
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert len(nz) == fraction_rank(M)
    if len(M) == len(M[0]) and det(M):
        assert prod(nz) == abs(det(M))


def test_submatrix():
    M = [[1, 2, 3], [4, 5, 6], [7, 8, 9]]
    assert submatrix(M, [0, 1, 2], [0, 1, 2]) == M
    assert submatrix(M, [], []) == []
    assert submatrix(M, [2, 0], [1]) == [[8], [2]]
    with pytest.raises(IndexError):
        submatrix(M, [3], [0])
    with pytest.raises(ValueError):
        submatrix(M, [0, 0], [1, 2])


def test_echelon_push_pop():
    e = Echelon(3)
    assert e.push([1, 2, 3])
    assert e.push([0, 1, 1])
    assert not e.push([2, 5, 7])
    e.pop()
    assert e.push([2, 5, 7])
    assert not e.push([0, 0, 0])


def test_intpoly_arithmetic_and_str():
    p = IntPoly.from_roots_powers([(0, 4), (5, 3), (3, 2)])
    assert p == IntPoly([0, 0, 0, 0, 1125, 1425, 710, 174, 21, 1])
    assert str(p) == "x^9 + 21x^8 + 174x^7 + 710x^6 + 1425x^5 + 1125x^4"
    assert str(IntPoly([-1, 0, -2])) == "-2x^2 - 1"
    assert str(IntPoly()) == "0"
    assert IntPoly([1, 2, 0, 0]).coeffs == (1, 2)
    assert IntPoly([1, 1])(3) == 4
