from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linpowers.errors import SingularSystem
from linpowers.exactmath import (
    PRIMES,
    RationalMatrix,
    UniPoly,
    binom,
    binom_poly,
    interpolate,
    pascal,
    pascal_signed,
    rank,
    rank_exact,
    rank_mod_p,
    same_solution_set,
    solve_exact,
)


@pytest.mark.parametrize("top,bottom,expected", [(4, 2, 6), (2, 5, 0), (7, 3, 35), (5, -1, 0), (0, 0, 1)])
def test_binom(top, bottom, expected):
    assert binom(top, bottom) == expected


def test_binom_rejects_negative_top():
    with pytest.raises(ValueError):
        binom(-1, 0)


def test_pascal_small():
    assert pascal(2).tolist() == [[1, 1], [0, 1]]
    assert pascal_signed(3).row(1) == [0, 1, -2]


@pytest.mark.parametrize("s", range(1, 13))
def test_pascal_inverse(s):
    assert pascal(s) @ pascal_signed(s) == RationalMatrix.identity(s)
    assert pascal_signed(s) @ pascal(s) == RationalMatrix.identity(s)


def test_solve_identity_and_pascal():
    v = [Fraction(3), Fraction(-1, 2), Fraction(7)]
    assert solve_exact(RationalMatrix.identity(3), v) == v
    assert solve_exact(pascal_signed(3), [1, 0, 0]) == pascal(3) @ [1, 0, 0]


def test_solve_singular():
    with pytest.raises(SingularSystem):
        solve_exact(RationalMatrix([[1, 2], [2, 4]]), [1, 2])


def test_solve_rectangular_consistent():
    M = RationalMatrix([[1, 0], [0, 1], [1, 1]])
    assert solve_exact(M, [2, 3, 5]) == [2, 3]
    with pytest.raises(SingularSystem):
        solve_exact(M, [2, 3, 6])


def test_rank_basics():
    assert rank_exact(RationalMatrix.sparse(3, 4, {})) == 0
    assert rank_exact(pascal(5)) == 5
    assert rank_mod_p(pascal(5), PRIMES[0]) == 5


def test_rank_mod_p_requires_prime():
    with pytest.raises(ValueError):
        rank_mod_p(pascal(2), 4294967296)


def test_rank_random_agrees():
    rng = random.Random(7)
    for _ in range(20):
        r = rng.randint(1, 20)
        c = rng.randint(1, 20)
        # low-rank products give interesting ranks
        inner = rng.randint(1, 20)
        A = [[rng.randint(-3, 3) for _ in range(inner)] for _ in range(r)]
        B = [[rng.randint(-3, 3) for _ in range(c)] for _ in range(inner)]
        M = RationalMatrix(A) @ RationalMatrix(B)
        ex = rank_exact(M)
        assert rank_mod_p(M, PRIMES[0]) == ex
        assert rank_mod_p(M, PRIMES[1]) == ex
        assert rank(M) == ex


def test_rank_layout_independent():
    dense = RationalMatrix([[1, 2, 0], [0, 0, 0], [2, 4, 1]])
    sparse = RationalMatrix.sparse(3, 3, {(0, 0): 1, (0, 1): 2, (2, 0): 2, (2, 1): 4, (2, 2): 1})
    assert dense == sparse
    assert rank_exact(dense) == rank_exact(sparse) == 2


def test_rank_mod_small_prime_can_drop():
    M = RationalMatrix([[2, 0], [0, 1]])
    assert rank_mod_p(M, 2) == 1 <= rank_exact(M)


def test_same_solution_set():
    A = RationalMatrix([[1, 1], [1, -1]])
    B = RationalMatrix([[2, 0], [0, 2]])
    assert same_solution_set(A, [3, 1], B, [4, 2])
    assert not same_solution_set(A, [3, 1], B, [4, 4])


def test_unipoly_basics():
    k = UniPoly.k()
    p = (k * k * k - k) * Fraction(2, 3)
    assert str(p) == "2/3*k^3 - 2/3*k"
    assert UniPoly.zero().degree is None
    assert UniPoly([1, 0, 0]).degree == 0
    assert (k * k)(3) == 9


def test_binom_poly_examples():
    k = UniPoly.k()
    assert binom_poly(2, 1, 2) == 2 * k * k + k
    assert binom_poly(3, 2, 2)(1) == 10
    assert binom_poly(2, 0, 0) == UniPoly.const(1)


@pytest.mark.parametrize("c", range(1, 5))
@pytest.mark.parametrize("shift", range(-2, 4))
@pytest.mark.parametrize("i", range(0, 5))
def test_binom_poly_grid(c, shift, i):
    p = binom_poly(c, shift, i)
    for kk in range(0, 6):
        if c * kk + shift >= 0:
            assert p(kk) == binom(c * kk + shift, i)


def test_interpolate_examples():
    assert interpolate([(1, 1), (2, 4), (3, 9)]) == UniPoly([0, 0, 1])
    assert interpolate([(1, 5), (4, 5)]).degree == 0
    with pytest.raises(ValueError):
        interpolate([(1, 1), (1, 2)])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.fractions(min_value=-50, max_value=50, max_denominator=7), min_size=1, max_size=6),
       st.integers(min_value=-3, max_value=3))
def test_interpolation_round_trip(coeffs, start):
    p = UniPoly(coeffs)
    m = len(coeffs)
    pts = [(start + t, p(start + t)) for t in range(m)]
    assert interpolate(pts) == p
