"""Herzog-Kuehl linear constraints on the Betti numbers of S/I^k.

For I generated in degree d with linear powers and dim S/I = delta, the
vector (beta_1, ..., beta_n) of S/I^k satisfies n - delta equations.  Two
equivalent forms are built here: the raw falling-factorial form, and the
Pascal form  [(-1)^(i+j) C(j, i)] beta = [C(dk+i-1, i)]  with column j
carrying beta_(j+1).

Every entry point accepts ``k`` either as an integer or as ``None``; ``None``
means "symbolic in k" and yields ``UniPoly`` right-hand sides and results.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactmath import (
    RationalMatrix,
    UniPoly,
    binom,
    binom_poly,
    pascal,
    same_solution_set,
    solve_exact,
)


@dataclass(frozen=True)
class HKSystem:
    n: int
    delta: int
    d: int
    k: int | None
    matrix: RationalMatrix
    rhs: tuple

    @property
    def nrows(self) -> int:
        return self.n - self.delta


def _check(n: int, delta: int, d: int, k) -> None:
    if not 0 <= delta < n:
        raise ValueError(f"need 0 <= delta < n, got delta={delta}, n={n}")
    if d < 1:
        raise ValueError("generator degree must be positive")
    if k is not None and k < 1:
        raise ValueError("k must be positive")


def _binom_dk(d: int, k, shift: int, i: int):
    """C(d*k + shift, i), numerically or as a polynomial in k."""
    if k is None:
        return binom_poly(d, shift, i)
    return Fraction(binom(d * k + shift, i))


def hk_raw_system(n: int, delta: int, d: int, k: int):
    """Rows r = 0..n-delta-1: sum_i (-1)^i (dk+i-1)...(dk+i-r) beta_i = -[r=0]."""
    _check(n, delta, d, k)
    rows = []
    for r in range(n - delta):
        row = []
        for i in range(1, n + 1):
            v = (-1) ** i
            for t in range(1, r + 1):
                v *= d * k + i - t
            row.append(v)
        rows.append(row)
    rhs = [Fraction(-1)] + [Fraction(0)] * (n - delta - 1)
    return RationalMatrix(rows), rhs


def hk_system(n: int, delta: int, d: int, k: int | None) -> HKSystem:
    _check(n, delta, d, k)
    M = RationalMatrix([[(-1) ** (i + j) * binom(j, i) for j in range(n)]
                        for i in range(n - delta)])
    rhs = tuple(_binom_dk(d, k, i - 1, i) for i in range(n - delta))
    return HKSystem(n, delta, d, k, M, rhs)


def hk_verify(beta: Sequence[int], n: int, delta: int, d: int, k: int) -> bool:
    """Whether beta_1..beta_n satisfies both forms of the system exactly."""
    beta = [Fraction(b) for b in beta]
    if len(beta) != n:
        return False
    A, b = hk_raw_system(n, delta, d, k)
    if A @ beta != b:
        return False
    sys_ = hk_system(n, delta, d, k)
    return sys_.matrix @ beta == list(sys_.rhs)


def systems_equivalent(n: int, delta: int, d: int, k: int) -> bool:
    A, b = hk_raw_system(n, delta, d, k)
    sys_ = hk_system(n, delta, d, k)
    return same_solution_set(A, b, sys_.matrix, sys_.rhs)


def solve_dim1(n: int, d: int, beta1, k: int | None = None) -> list:
    """beta_2..beta_n when dim S/I = 1.

    Result is  pascal(n-1) . [beta_1 - C(dk+i, i)]_{i=0..n-2}.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if k is None:
        beta1 = UniPoly._lift(beta1)
    col = [beta1 - _binom_dk(d, k, i, i) for i in range(n - 1)]
    return pascal(n - 1) @ col


def solve_dim2(n: int, d: int, beta1, betan, k: int | None = None) -> list:
    """beta_2..beta_{n-1} when dim S/I = 2, given beta_1 and beta_n."""
    if n < 3:
        raise ValueError("need n >= 3")
    if k is None:
        beta1, betan = UniPoly._lift(beta1), UniPoly._lift(betan)
    col = [beta1 - (-1) ** (n + i) * binom(n - 2, i) * betan - _binom_dk(d, k, i, i)
           for i in range(n - 2)]
    return pascal(n - 2) @ col


def complete_betti(n: int, delta: int, d: int, k: int | None, beta1, betan=None) -> list:
    """Full beta_1..beta_n from beta_1 (and beta_n when delta = 2)."""
    if delta == 1:
        return [beta1] + solve_dim1(n, d, beta1, k)
    if delta == 2:
        if betan is None:
            raise ValueError("dimension 2 needs beta_n as well")
        return [beta1] + solve_dim2(n, d, beta1, betan, k) + [betan]
    raise ValueError(f"closed forms cover dimension 1 and 2 only, not {delta}")


def solve_with_known(n: int, delta: int, d: int, k: int, known: dict[int, int]) -> list[Fraction]:
    """Solve the Pascal-form system at numeric k after fixing ``known``
    Betti numbers (1-based index -> value); the rest must be determined."""
    sys_ = hk_system(n, delta, d, k)
    unknown = [i for i in range(1, n + 1) if i not in known]
    rows, rhs = [], []
    for r in range(sys_.nrows):
        full = sys_.matrix.row(r)
        rows.append([full[i - 1] for i in unknown])
        rhs.append(sys_.rhs[r] - sum(full[i - 1] * v for i, v in known.items()))
    sol = solve_exact(RationalMatrix(rows, ncols=len(unknown)), rhs)
    out = dict(known)
    out.update(zip(unknown, sol))
    return [Fraction(out[i]) for i in range(1, n + 1)]


def betti_from_counts(I, delta: int, k: int = 1) -> list:
    """Betti numbers of S/I from the generator count and, in dimension 2,
    the socle count; I is assumed to be the k-th power of an ideal with
    linear powers generated in degree deg(I)/k."""
    from .monomials import is_equigenerated, socle_monomials

    D = is_equigenerated(I)
    if D is None or D % k:
        raise ValueError("need an ideal generated in a degree divisible by k")
    beta1 = len(I)
    betan = None
    if delta == 2:
        betan = len(socle_monomials(I, D - 1, D + I.nvars))
    return complete_betti(I.nvars, delta, D // k, k, beta1, betan)
