from __future__ import annotations

from fractions import Fraction

import pytest

from linpowers.betti_oracle import (
    BettiVector,
    betti_fit,
    has_linear_powers_up_to,
    hilbert_numerator,
    is_linear,
    koszul_betti,
    kpoly_betti,
    linearity_jmax,
    socle_dimension,
)
from linpowers.errors import HeldOutMismatch, NotLinearShape, ResourceCapExceeded
from linpowers.exactmath import UniPoly
from linpowers.graphs import NONQUADRATIC_GRAPH, edge_ideal
from linpowers.monomials import (
    ideal_from_generators,
    power,
    socle_monomials,
    squarefree_ideal,
    transversal_ideal,
)


def _kz(I):
    return koszul_betti(I, linearity_jmax(I))


def test_koszul_squarefree_4_2():
    T = _kz(squarefree_ideal(4, 2))
    assert T[(1, 2)] == 6 and T[(2, 3)] == 8 and T[(3, 4)] == 3
    assert T.totals().as_tuple() == (6, 8, 3, 0)
    assert T[(0, 0)] == 1


def test_koszul_trivial():
    assert _kz(ideal_from_generators(3, [(1, 0, 0)])).totals().as_tuple() == (1, 0, 0)
    assert _kz(squarefree_ideal(3, 2)).totals().as_tuple() == (3, 2, 0)


def test_koszul_complete_intersection():
    I = ideal_from_generators(2, [(2, 0), (0, 2)])
    T = _kz(I)
    assert T[(2, 4)] == 1 and not T.is_linear(2)
    assert T.nonlinear_entries(2) == [(2, 4, 1)]
    assert not is_linear(I)


def test_koszul_jmax_precondition():
    with pytest.raises(ValueError):
        koszul_betti(squarefree_ideal(4, 2), 3)


def test_koszul_cap():
    with pytest.raises(ResourceCapExceeded):
        koszul_betti(squarefree_ideal(4, 2), 6, cap=5)


def test_table_invariants():
    T = _kz(power(squarefree_ideal(4, 2), 2))
    assert all(b > 0 and j >= i for (i, j), b in T.entries.items())
    assert [(i, j) for (i, j) in T.entries if i == 0] == [(0, 0)]


@pytest.mark.parametrize("flags", [dict(prune=False), dict(restrict_to_lcm=False), dict(exact=True)])
def test_koszul_shortcuts_do_not_change_results(flags):
    for I in (squarefree_ideal(4, 2), ideal_from_generators(3, [(2, 0, 0), (1, 1, 0), (0, 1, 1)]),
              edge_ideal(NONQUADRATIC_GRAPH)):
        jmax = linearity_jmax(I)
        assert koszul_betti(I, jmax, **flags).entries == koszul_betti(I, jmax).entries


def test_is_linear_examples():
    assert is_linear(squarefree_ideal(4, 2))
    assert has_linear_powers_up_to(edge_ideal(NONQUADRATIC_GRAPH), 2)
    assert not is_linear(ideal_from_generators(2, [(2, 0), (0, 1)]))


def test_kpoly_examples():
    assert kpoly_betti(power(squarefree_ideal(4, 2), 2)).as_tuple() == (19, 36, 22, 4)
    assert kpoly_betti(ideal_from_generators(2, [(1, 1)])).as_tuple() == (1, 0)
    assert kpoly_betti(squarefree_ideal(5, 3)).as_tuple() == (10, 15, 6, 0, 0)


def test_kpoly_rejects_nonlinear():
    with pytest.raises(NotLinearShape):
        kpoly_betti(ideal_from_generators(2, [(2, 0), (0, 2)]))


def test_hilbert_numerator_stable_in_top():
    I = squarefree_ideal(4, 2)
    short = hilbert_numerator(I, 5)
    assert hilbert_numerator(I, 9)[:6] == short
    assert short == [1, 0, -6, 8, -3, 0]


LINEAR_CORPUS = [
    squarefree_ideal(4, 2), power(squarefree_ideal(4, 2), 2), squarefree_ideal(5, 3),
    squarefree_ideal(4, 3), power(squarefree_ideal(4, 3), 2), transversal_ideal(3, 2),
    power(transversal_ideal(3, 2), 2), transversal_ideal(4, 2), edge_ideal(NONQUADRATIC_GRAPH),
    power(edge_ideal(NONQUADRATIC_GRAPH), 2), squarefree_ideal(5, 2),
]


@pytest.mark.parametrize("I", LINEAR_CORPUS, ids=range(len(LINEAR_CORPUS)))
def test_koszul_agrees_with_kpoly_and_socle(I):
    T = _kz(I)
    D = max(sum(g) for g in I.exps)
    assert T.is_linear(D)
    beta = T.totals()
    assert beta == kpoly_betti(I)
    assert beta.alternating_sum() == -1
    # Tor_n is the socle
    assert beta[I.nvars] == len(socle_monomials(I, 0, linearity_jmax(I))) == socle_dimension(I)


def test_betti_vector_indexing():
    b = BettiVector(3, (3, 2, 0))
    assert b[1] == 3 and b[3] == 0 and b.alternating_sum() == -1
    with pytest.raises(IndexError):
        b[0]
    with pytest.raises(ValueError):
        BettiVector(2, (1,))


def test_betti_fit_examples():
    fam = lambda k: power(squarefree_ideal(4, 2), k)  # noqa: E731
    kk = UniPoly.k()
    assert betti_fit(fam, 4, range(1, 6)) == (kk * kk * kk - kk) * Fraction(2, 3)
    assert betti_fit(fam, 1, range(1, 5)) == (2 * kk * kk * kk + 6 * kk * kk + 7 * kk + 3) / 3
    const = lambda k: power(ideal_from_generators(2, [(1, 0)]), k)  # noqa: E731
    assert betti_fit(const, 1, range(1, 3)) == UniPoly.const(1)


def test_betti_fit_held_out_mismatch():
    fam = lambda k: power(squarefree_ideal(4, 2), k)  # noqa: E731
    with pytest.raises(HeldOutMismatch):
        betti_fit(fam, 1, range(1, 3))
