from __future__ import annotations

from fractions import Fraction

import pytest

from linpowers.betti_oracle import koszul_betti, kpoly_betti, linearity_jmax
from linpowers.exactmath import UniPoly
from linpowers.families import sqfree_beta1, sqfree_betan
from linpowers.herzog_kuhl import (
    betti_from_counts,
    complete_betti,
    hk_raw_system,
    hk_system,
    hk_verify,
    solve_dim1,
    solve_dim2,
    solve_with_known,
    systems_equivalent,
)
from linpowers.monomials import power, squarefree_ideal, transversal_ideal

k = UniPoly.k()


def test_raw_rows():
    A, b = hk_raw_system(4, 1, 2, 1)
    assert A.row(0) == [-1, 1, -1, 1] and b[0] == -1
    assert A @ [6, 8, 3, 0] == b
    # row 1: sum (-1)^i (dk+i-1) beta_i
    assert -2 * 6 + 3 * 8 - 4 * 3 + 5 * 0 == 0


def test_pascal_form():
    S = hk_system(4, 1, 2, 1)
    assert list(S.rhs) == [1, 2, 3]
    assert S.matrix.row(0) == [1, -1, 1, -1]
    assert S.matrix @ [6, 8, 3, 0] == list(S.rhs)
    assert S.nrows == 3


def test_symbolic_rhs():
    S = hk_system(4, 1, 2, None)
    assert S.rhs[2] == (2 * k + 1) * (2 * k) / 2
    assert all(p(3) == q for p, q in zip(S.rhs, hk_system(4, 1, 2, 3).rhs))


@pytest.mark.parametrize("beta,args,ok", [
    ((6, 8, 3, 0), (4, 1, 2, 1), True),
    ((6, 7, 3, 0), (4, 1, 2, 1), False),
    ((10, 15, 6, 0, 0), (5, 2, 3, 1), True),
    ((6, 8, 3), (4, 1, 2, 1), False),
])
def test_hk_verify(beta, args, ok):
    assert hk_verify(beta, *args) is ok


@pytest.mark.parametrize("n", range(2, 8))
def test_systems_equivalent_grid(n):
    for delta in range(0, min(3, n - 1) + 1):
        for d in range(1, 5):
            for kk in range(1, 5):
                assert systems_equivalent(n, delta, d, kk)


def test_bad_arguments():
    with pytest.raises(ValueError):
        hk_system(3, 3, 2, 1)
    with pytest.raises(ValueError):
        hk_raw_system(3, 1, 0, 1)


def test_solve_dim1_squarefree_4_2():
    b1 = (2 * k * k * k + 6 * k * k + 7 * k + 3) / 3
    b2, b3, b4 = solve_dim1(4, 2, b1)
    assert b4 == (k * k * k - k) * Fraction(2, 3)
    assert b2 == 2 * k * k * k + 4 * k * k + 2 * k
    assert b3 == 2 * k * k * k + 2 * k * k - k


def test_solve_dim1_transversal():
    assert solve_dim1(3, 3, 7, 1) == [9, 3]
    T = koszul_betti(transversal_ideal(3, 2), linearity_jmax(transversal_ideal(3, 2)))
    assert T.totals().as_tuple() == (7, 9, 3)


def test_solve_dim2_n5():
    b1 = (11 * k ** 4 + 50 * k ** 3 + 85 * k * k + 70 * k + 24) / 24
    b5 = (11 * k ** 4 - 18 * k ** 3 - 11 * k * k + 18 * k) / 24
    b2, b3, b4 = solve_dim2(5, 3, b1, b5)
    assert b2 == Fraction(11, 6) * k ** 4 + Fraction(11, 2) * k ** 3 + Fraction(17, 3) * k * k + 2 * k
    assert b3 == Fraction(11, 4) * k ** 4 + 4 * k ** 3 + Fraction(1, 4) * k * k - k
    assert [p(1) for p in (b2, b3, b4)] == [15, 6, 0]


@pytest.mark.parametrize("n,d,kk", [(n, d, kk) for n in range(3, 7) for d in (2, 3) for kk in (1, 2, 3)])
def test_symbolic_and_numeric_commute(n, d, kk):
    b1 = k * k + 3 * k + 5
    bn = 2 * k + 1
    for sym, num in ((solve_dim1(n, d, b1), solve_dim1(n, d, b1(kk), kk)),
                     (solve_dim2(n, d, b1, bn), solve_dim2(n, d, b1(kk), bn(kk), kk))):
        assert [p(kk) for p in sym] == num


def test_complete_betti_and_known():
    assert complete_betti(4, 1, 2, 1, 6) == [6, 8, 3, 0]
    assert complete_betti(5, 2, 3, 1, 10, 0) == [10, 15, 6, 0, 0]
    with pytest.raises(ValueError):
        complete_betti(5, 2, 3, 1, 10)
    with pytest.raises(ValueError):
        complete_betti(5, 3, 3, 1, 10, 0)
    assert solve_with_known(5, 2, 3, 1, {1: 10, 5: 0}) == [10, 15, 6, 0, 0]


@pytest.mark.parametrize("I,delta,kk", [
    (power(squarefree_ideal(4, 2), 2), 1, 2),
    (power(squarefree_ideal(5, 3), 2), 2, 2),
    (transversal_ideal(4, 2), 2, 1),
])
def test_betti_from_counts_matches_oracle(I, delta, kk):
    assert tuple(betti_from_counts(I, delta, kk)) == kpoly_betti(I).as_tuple()


def test_outputs_nonnegative_integers():
    for kk in range(1, 6):
        for n in range(3, 7):
            v1 = complete_betti(n, 1, 2, kk, sqfree_beta1(n, 2, kk))
            assert all(Fraction(x).denominator == 1 and x >= 0 for x in v1)
            if n >= 4:
                v2 = complete_betti(n, 2, 3, kk, sqfree_beta1(n, 3, kk), sqfree_betan(n, 3, kk))
                assert all(Fraction(x).denominator == 1 and x >= 0 for x in v2)
