"""Closed-form Betti numbers of S/I^k for the named families.

* ``SquareFree(n, d)``: all square-free monomials of degree d; dim S/I = d-1.
* ``Transversal(n, s)``: product of the ideals generated by each s-subset of
  the variables; generated in degree C(n, s), dim S/I = n-s.

Closed forms exist for square-free d = 2, 3, n-1 and transversal s = n-1,
n-2.  Everything else falls back to interpolating oracle values.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .betti_oracle import BettiVector, betti_fit
from .errors import ConsistencyError
from .exactmath import UniPoly, binom, binom_poly
from .herzog_kuhl import betti_from_counts, complete_betti
from .monomials import (
    MonomialIdeal,
    power,
    socle_monomials,
    squarefree_ideal,
    transversal_ideal,
)

SQUAREFREE = "squarefree"
TRANSVERSAL = "transversal"


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: int
    param: int  # d for squarefree, s for transversal

    def __post_init__(self):
        if self.kind == SQUAREFREE:
            if not 2 <= self.param <= self.n:
                raise ValueError(f"squarefree family needs 2 <= d <= n, got {self}")
        elif self.kind == TRANSVERSAL:
            if not 1 <= self.param <= self.n - 1:
                raise ValueError(f"transversal family needs 1 <= s <= n-1, got {self}")
        else:
            raise ValueError(f"unknown family kind {self.kind!r}")

    @property
    def degree(self) -> int:
        """Generator degree D of I."""
        if self.kind == SQUAREFREE:
            return self.param
        return comb(self.n, self.param)

    @property
    def delta(self) -> int:
        """Krull dimension of S/I."""
        if self.kind == SQUAREFREE:
            return self.param - 1
        return self.n - self.param

    def ideal(self) -> MonomialIdeal:
        if self.kind == SQUAREFREE:
            return squarefree_ideal(self.n, self.param)
        return transversal_ideal(self.n, self.param)

    def power(self, k: int) -> MonomialIdeal:
        return power(self.ideal(), k)

    def __str__(self):
        key = "d" if self.kind == SQUAREFREE else "s"
        return f"{self.kind}:n={self.n},{key}={self.param}"


def SquareFree(n: int, d: int) -> FamilySpec:
    return FamilySpec(SQUAREFREE, n, d)


def Transversal(n: int, s: int) -> FamilySpec:
    return FamilySpec(TRANSVERSAL, n, s)


_SPEC = re.compile(r"^(squarefree|transversal):n=(\d+),([ds])=(\d+)$")


def parse_family(text: str) -> FamilySpec:
    """Parse ``squarefree:n=4,d=2`` or ``transversal:n=5,s=3``."""
    m = _SPEC.match(text.replace(" ", ""))
    if not m:
        raise ValueError(f"cannot parse family {text!r}")
    kind, n, key, p = m.group(1), int(m.group(2)), m.group(3), int(m.group(4))
    if (kind == SQUAREFREE) != (key == "d"):
        raise ValueError(f"{kind} takes parameter {'d' if kind == SQUAREFREE else 's'}")
    return FamilySpec(kind, n, p)


# ---------------------------------------------------------------------------
# square-free families
# ---------------------------------------------------------------------------


def sqfree_beta1(n: int, d: int, k: int) -> int:
    """Number of degree-dk monomials with all exponents <= k."""
    total = 0
    m = 0
    while m <= n and m * (k + 1) <= d * k:
        total += (-1) ** m * comb(n, m) * binom(n + d * k - m * (k + 1) - 1, n - 1)
        m += 1
    return total


def sqfree_betan(n: int, d: int, k: int) -> int:
    """Number of degree dk-1 monomials with all exponents < k."""
    return sum((-1) ** m * comb(n, m) * binom(n + (d - m) * k - 2, n - 1)
               for m in range(min(d, n + 1)))


def sqfree_beta1_poly(n: int, d: int) -> UniPoly:
    # terms with m(k+1) > dk vanish at every k >= 1, so the range can be fixed
    return sum((binom_poly(d - m, n - m - 1, n - 1) * ((-1) ** m * comb(n, m))
                for m in range(min(d, n + 1))), UniPoly.zero())


def sqfree_betan_poly(n: int, d: int) -> UniPoly:
    return sum((binom_poly(d - m, n - 2, n - 1) * ((-1) ** m * comb(n, m))
                for m in range(min(d, n + 1))), UniPoly.zero())


def _vector(n: int, values) -> BettiVector:
    out = []
    for v in values:
        v = Fraction(v)
        if v.denominator != 1 or v < 0:
            raise ConsistencyError(f"closed form produced non-integral value {v}")
        out.append(int(v))
    return BettiVector(n, tuple(out))


def _socle_count(I: MonomialIdeal, D: int) -> int:
    """Socle size of S/I in degree D-1, after checking it is empty elsewhere
    up to degree D+n."""
    soc = socle_monomials(I, 0, D + I.nvars)
    stray = [m for m in soc if m.degree != D - 1]
    if stray:
        raise ConsistencyError(f"socle element {stray[0]} outside degree {D - 1}")
    return len(soc)


def sqfree_d2(n: int, k: int) -> BettiVector:
    if n < 3:
        raise ValueError("need n >= 3")
    b1 = sqfree_beta1(n, 2, k)
    return _vector(n, complete_betti(n, 1, 2, k, b1))


def sqfree_d3(n: int, k: int, cross_check: bool = True) -> BettiVector:
    if n < 4:
        raise ValueError("need n >= 4")
    b1, bn = sqfree_beta1(n, 3, k), sqfree_betan(n, 3, k)
    if cross_check:
        counted = _socle_count(power(squarefree_ideal(n, 3), k), 3 * k)
        if counted != bn:
            raise ConsistencyError(f"socle count {counted} != closed form {bn}")
    return _vector(n, complete_betti(n, 2, 3, k, b1, bn))


def sqfree_top(n: int, k: int, i: int) -> int:
    """beta_i for the ideal of all square-free monomials of degree n-1."""
    if not 1 <= i <= n:
        raise ValueError("need 1 <= i <= n")
    return binom(n + k - i, n - 1) * binom(n - 1, i - 1)


# ---------------------------------------------------------------------------
# transversal families
# ---------------------------------------------------------------------------


def trans_nm1_beta1(n: int, k: int) -> int:
    return binom(n * (k + 1) - 1, n - 1) - n * binom(n + k - 2, n - 1)


def trans_nm1(n: int, k: int) -> BettiVector:
    """Betti numbers for s = n-1; generators have degree n."""
    if n < 2:
        raise ValueError("need n >= 2")
    b1 = trans_nm1_beta1(n, k)
    return _vector(n, complete_betti(n, 1, n, k, b1))


def _two_variable_count(n: int, k: int, degree: int, cap: int) -> int:
    """Monomials x_i^a x_j^(degree-a), a and degree-a in [1, cap], per pair."""
    lo = max(1, degree - cap)
    hi = min(cap, degree - 1)
    return max(0, hi - lo + 1)


def trans_nm2_beta1(n: int, k: int) -> int:
    """Degree k*C(n,2) monomials, exponents <= k*C(n-1,2), >= 3 positive."""
    N, cap = k * comb(n, 2), k * comb(n - 1, 2)
    bounded = binom(n + N - 1, n - 1) - n * binom(n + N - cap - 2, n - 1)
    return bounded - comb(n, 2) * _two_variable_count(n, k, N, cap)


def trans_nm2_betan(n: int, k: int) -> int:
    """Degree k*C(n,2)-1 monomials, exponents < k*C(n-1,2), >= 3 positive."""
    N, cap = k * comb(n, 2) - 1, k * comb(n - 1, 2) - 1
    bounded = binom(n + N - 1, n - 1) - n * binom(n + N - cap - 2, n - 1)
    return bounded - comb(n, 2) * _two_variable_count(n, k, N, cap)


def trans_nm2(n: int, k: int, cross_check: bool = True) -> BettiVector:
    """Betti numbers for s = n-2; generators have degree C(n,2), dim 2."""
    if n < 4:
        raise ValueError("need n >= 4")
    D = comb(n, 2)
    b1, bn = trans_nm2_beta1(n, k), trans_nm2_betan(n, k)
    if cross_check:
        counted = _socle_count(power(transversal_ideal(n, n - 2), k), D * k)
        if counted != bn:
            raise ConsistencyError(f"socle count {counted} != closed form {bn}")
    return _vector(n, complete_betti(n, 2, D, k, b1, bn))


def trans_nm2_beta1_display(n: int, k: int) -> Fraction:
    """The simplified two-variable correction 1 + k(n-1)(n/2-1), kept only
    to report how far it is from the direct count."""
    N, cap = k * comb(n, 2), k * comb(n - 1, 2)
    bounded = binom(n + N - 1, n - 1) - n * binom(n + N - cap - 2, n - 1)
    return bounded - comb(n, 2) * (1 + k * (n - 1) * (Fraction(n, 2) - 1))


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------


def has_closed_form(spec: FamilySpec) -> bool:
    """Whether a closed form in k is available (and valid for every k)."""
    if spec.kind == SQUAREFREE:
        return spec.param in (2, 3, spec.n - 1)
    # s = n-2 has counts that hold at k = 1 only; see family_notes
    return spec.param == spec.n - 1


def family_betti(spec: FamilySpec, k: int) -> BettiVector:
    """Closed-form Betti vector of S/I^k."""
    n, p = spec.n, spec.param
    if spec.kind == SQUAREFREE:
        if p == n - 1:
            return BettiVector(n, tuple(sqfree_top(n, k, i) for i in range(1, n + 1)))
        if p == 2:
            return sqfree_d2(n, k)
        if p == 3:
            return sqfree_d3(n, k)
    else:
        if p == n - 1:
            return trans_nm1(n, k)
        if p == n - 2 and n >= 4:
            if k == 1:
                return trans_nm2(n, k)
            # generator and socle counts of the actual power, then HK
            return _vector(n, betti_from_counts(spec.power(k), 2, k))
    raise ValueError(f"no closed form for {spec}")


def _closed_form_polys(spec: FamilySpec) -> list[UniPoly]:
    n, p = spec.n, spec.param
    if spec.kind == SQUAREFREE:
        if p == n - 1:
            return [binom_poly(1, n - i, n - 1) * comb(n - 1, i - 1) for i in range(1, n + 1)]
        if p == 2:
            return complete_betti(n, 1, 2, None, sqfree_beta1_poly(n, 2))
        if p == 3:
            return complete_betti(n, 2, 3, None, sqfree_beta1_poly(n, 3),
                                  sqfree_betan_poly(n, 3))
    else:
        if p == n - 1:
            b1 = binom_poly(n, n - 1, n - 1) - binom_poly(1, n - 2, n - 1) * n
            return complete_betti(n, 1, n, None, b1)
    raise ValueError(f"no closed form for {spec}")


def family_betti_poly(spec: FamilySpec, i: int) -> UniPoly:
    """beta_i(S/I^k) as a polynomial in k.

    Uses the closed form when there is one; otherwise fits oracle values at
    k = 1..n and validates the fit at k = n+1.
    """
    if not 1 <= i <= spec.n:
        raise ValueError("need 1 <= i <= n")
    if has_closed_form(spec):
        return UniPoly._lift(_closed_form_polys(spec)[i - 1])
    return betti_fit(spec.power, i, range(1, spec.n + 1))


def family_notes(spec: FamilySpec) -> list[str]:
    """Known misprints in the commonly quoted versions of these formulas."""
    n, p = spec.n, spec.param
    notes = []
    if spec.kind == SQUAREFREE and p == 2 and n == 4:
        notes.append(
            "beta_2 = 2k^3+4k^2+k as usually printed breaks the alternating-sum "
            "identity sum (-1)^i beta_i = -1 (k=1 gives 7, oracle 8); "
            "the consistent value is 2k^3+4k^2+2k")
    if spec.kind == TRANSVERSAL and p == n - 1 and n != 2:
        notes.append(
            f"middle Betti numbers use C(dk+i, i) with generator degree d = n = {n}; "
            "the form with C(2k+i, i) only holds for n = 2")
    if spec.kind == TRANSVERSAL and p == n - 2 and n >= 4:
        notes.append(
            "two-variable correction counted directly as k*C(n-1,2) - k(n-1) + 1 "
            f"= {comb(n - 1, 2) - (n - 1)}k + 1 per pair; the simplified "
            f"1 + k(n-1)(n/2-1) = {Fraction((n - 1) * (n - 2), 2)}k + 1 overcounts "
            "by k(n-1)")
        notes.append(
            "beta_n uses its own two-variable count k*C(n-1,2) - k(n-1) "
            "(degree D-1, exponents < k*C(n-1,2)), not the beta_1 correction")
        notes.append(
            "for k >= 2, I^k is strictly smaller than the set of degree-k*C(n,2) "
            "monomials with exponents <= k*C(n-1,2) and three positive "
            "(n=4: x1^6*x2^5*x3 is not in I^2), so those counts only hold at "
            "k = 1; larger k use the generator and socle counts of the computed "
            "power, and polynomials in k are fitted")
    return notes
