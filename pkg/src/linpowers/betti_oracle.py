"""Graded Betti numbers of S/I from first principles.

Two independent routes:

* :func:`koszul_betti` takes homology of the Koszul complex K(x; S/I),
  strand by strand.  The differential preserves multidegree, so each strand
  splits into blocks indexed by exponent vectors alpha with |alpha| = j; a
  block has basis {e_F : F subset of supp(alpha), x^(alpha-F) not in I}.
* :func:`kpoly_betti` reads the Betti numbers off the Hilbert numerator,
  which is only legitimate once the resolution is known to be linear.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable

import numpy as np

from . import exactmath
from .errors import HeldOutMismatch, NotLinearShape, ResourceCapExceeded
from .exactmath import UniPoly, interpolate
from .monomials import MonomialIdeal, bounded_compositions, hilbert_function, is_equigenerated

DEFAULT_STRAND_CAP = int(os.environ.get("LINPOWERS_STRAND_CAP", 200_000))
DEFAULT_BOX_CAP = int(os.environ.get("LINPOWERS_BOX_CAP", 3_000_000))


@dataclass(frozen=True)
class BettiVector:
    """Total Betti numbers beta_1..beta_n of S/I."""

    n: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.n:
            raise ValueError("BettiVector length must equal n")

    def __getitem__(self, i: int) -> int:
        """1-based access, matching beta_i."""
        if not 1 <= i <= self.n:
            raise IndexError(i)
        return self.values[i - 1]

    def __iter__(self):
        return iter(self.values)

    def alternating_sum(self) -> int:
        return sum((-1) ** i * b for i, b in enumerate(self.values, start=1))

    def as_tuple(self) -> tuple:
        return tuple(self.values)


@dataclass
class BettiTable:
    """beta_{i,j} of S/I; missing keys are zero."""

    n: int
    entries: dict = field(default_factory=dict)

    def __getitem__(self, ij) -> int:
        return self.entries.get(ij, 0)

    def totals(self) -> BettiVector:
        vals = [0] * self.n
        for (i, _), b in self.entries.items():
            if i >= 1:
                vals[i - 1] += b
        return BettiVector(self.n, tuple(vals))

    def is_linear(self, D: int) -> bool:
        return all(j == D + i - 1 for (i, j), b in self.entries.items() if i >= 1 and b)

    def nonlinear_entries(self, D: int) -> list:
        return sorted((i, j, b) for (i, j), b in self.entries.items()
                      if i >= 1 and b and j != D + i - 1)

    def rows(self) -> list[list[int]]:
        """Rows indexed by j - i (Macaulay2 layout), columns by i."""
        if not self.entries:
            return []
        top = max(j - i for i, j in self.entries)
        return [[self[(i, r + i)] for i in range(self.n + 1)] for r in range(top + 1)]


# ---------------------------------------------------------------------------
# Koszul homology
# ---------------------------------------------------------------------------


def _block_ranks(s: int, outside: list[bool], exact: bool) -> dict[int, int]:
    """Homology of one multidegree block.

    ``outside[F]`` tells whether x^(alpha-F) is outside I, where F runs over
    bitmasks of the s support positions.  Returns {i: dim H_i}.
    """
    basis: dict[int, list[int]] = {}
    for F in range(1 << s):
        if outside[F]:
            basis.setdefault(bin(F).count("1"), []).append(F)
    ranks: dict[int, int] = {}
    for i, cols in basis.items():
        if i == 0:
            continue
        lower = {F: r for r, F in enumerate(basis.get(i - 1, []))}
        rows = []
        for F in cols:
            row = {}
            pos = 0
            for t in range(s):
                if F >> t & 1:
                    G = F & ~(1 << t)
                    if G in lower:
                        row[lower[G]] = -1 if pos % 2 else 1
                    pos += 1
            if row:
                rows.append(row)
        ranks[i] = _rank(rows, len(lower), exact)
    return {i: len(cols) - ranks.get(i, 0) - ranks.get(i + 1, 0)
            for i, cols in basis.items()}


def _rank(rows: list[dict], ncols: int, exact: bool) -> int:
    if not rows:
        return 0
    r1 = exactmath.rank_rows_mod_p([dict(r) for r in rows], exactmath.PRIMES[0])
    r2 = exactmath.rank_rows_mod_p([dict(r) for r in rows], exactmath.PRIMES[1])
    if exact or r1 != r2:
        M = exactmath.RationalMatrix.sparse(
            len(rows), ncols, {(a, b): v for a, r in enumerate(rows) for b, v in r.items()})
        return exactmath.rank_exact(M)
    return r1


_MASKS: dict[tuple, np.ndarray] = {}


def _subset_masks(supp: tuple) -> np.ndarray:
    """Full-width bitmasks of all subsets of ``supp``, indexed by local mask."""
    out = _MASKS.get(supp)
    if out is None:
        out = np.zeros(1 << len(supp), dtype=np.int64)
        for F in range(1 << len(supp)):
            for p, t in enumerate(supp):
                if F >> p & 1:
                    out[F] |= 1 << t
        _MASKS[supp] = out
    return out


def _block_sizes(s: int, outside) -> dict[int, int]:
    sizes: dict[int, int] = {}
    for F in range(1 << s):
        if outside[F]:
            i = bin(F).count("1")
            sizes[i] = sizes.get(i, 0) + 1
    return sizes


def koszul_betti(I: MonomialIdeal, jmax: int, *, exact: bool = False,
                 prune: bool = True, restrict_to_lcm: bool = True,
                 cap: int | None = None) -> BettiTable:
    """beta_{i,j}(S/I) for all j <= jmax from Koszul homology.

    ``restrict_to_lcm`` only visits multidegrees below the lcm of all
    generators (the Taylor complex lives there); ``prune`` skips multidegrees
    that are not the lcm of the generators dividing them, whose blocks are
    cones and hence acyclic.  Both are shortcuts that can be switched off to
    cross-check.  ``exact`` recomputes every rank over Q.
    """
    if jmax < I.max_degree + I.nvars:
        raise ValueError(f"jmax must be at least {I.max_degree + I.nvars}")
    cap = DEFAULT_STRAND_CAP if cap is None else cap
    n = I.nvars
    G = np.array(I.exps, dtype=np.int64).reshape(-1, n)
    bounds = list(I.lcm()) if restrict_to_lcm else [jmax] * n
    npoints = 1
    for b in bounds:
        npoints *= b + 1
    if restrict_to_lcm and npoints > DEFAULT_BOX_CAP:
        raise ResourceCapExceeded(f"{npoints} multidegrees below the lcm exceed the cap")
    weights = 1 << np.arange(n, dtype=np.int64)

    table = BettiTable(n)
    strand_size: dict[tuple[int, int], int] = {}
    cache: dict[tuple, dict[int, int]] = {}
    for j in range(jmax + 1):
        for alpha in bounded_compositions(j, bounds):
            a = np.array(alpha, dtype=np.int64)
            supp = [t for t in range(n) if alpha[t] > 0]
            s = len(supp)
            div = G[(G <= a).all(axis=1)] if len(G) else G
            if prune and j > 0:
                if len(div) == 0:
                    continue
                if (div.max(axis=0) != a).any():
                    continue
            # T_g: support positions where g sits strictly below alpha
            if len(div):
                T = np.unique(((div < a) * weights).sum(axis=1))
                fulls = _subset_masks(tuple(supp))
                outside = tuple(((fulls[:, None] & ~T[None, :]) != 0).all(axis=1).tolist())
            else:
                outside = (True,) * (1 << s)
            key = (s, outside)
            if key not in cache:
                cache[key] = (_block_ranks(s, outside, exact), _block_sizes(s, outside))
            homology, sizes = cache[key]
            for i, c in sizes.items():
                strand_size[(i, j)] = strand_size.get((i, j), 0) + c
                if strand_size[(i, j)] > cap:
                    raise ResourceCapExceeded(
                        f"strand (i={i}, j={j}) exceeds {cap} basis elements")
            for i, h in homology.items():
                if h:
                    table.entries[(i, j)] = table.entries.get((i, j), 0) + h
    for ij, b in table.entries.items():
        if b < 0:
            raise AssertionError(f"negative homology dimension at {ij}")
    return table


def linearity_jmax(I: MonomialIdeal) -> int:
    """A degree bound past which S/I has no Betti numbers: deg lcm(G(I))."""
    return max(sum(I.lcm()), I.max_degree + I.nvars)


def is_linear(I: MonomialIdeal, jmax: int | None = None, *, exact: bool = False) -> bool:
    """Whether I is generated in one degree D and has a linear resolution.

    With the default ``jmax`` every multidegree that can carry a Betti number
    is inspected, so the answer is a certificate rather than a truncation.
    """
    D = is_equigenerated(I)
    if D is None:
        return False
    if jmax is None:
        jmax = linearity_jmax(I)
    return koszul_betti(I, jmax, exact=exact).is_linear(D)


def has_linear_powers_up_to(I: MonomialIdeal, K: int, *, exact: bool = False) -> bool:
    from .monomials import power

    return all(is_linear(power(I, k), exact=exact) for k in range(1, K + 1))


# ---------------------------------------------------------------------------
# Hilbert numerator
# ---------------------------------------------------------------------------


def hilbert_numerator(I: MonomialIdeal, top: int) -> list[int]:
    """Coefficients 0..top of (sum_j h_j t^j) * (1 - t)^n."""
    n = I.nvars
    h = hilbert_function(I, top)
    binoms = [(-1) ** r * comb(n, r) for r in range(n + 1)]
    return [sum(binoms[r] * h[j - r] for r in range(min(n, j) + 1)) for j in range(top + 1)]


def kpoly_betti(I: MonomialIdeal, extra: int = 0) -> BettiVector:
    """Betti numbers of S/I read off its Hilbert numerator.

    The numerator must equal 1 + sum_i (-1)^i beta_i t^(D+i-1) with
    beta_i >= 0 through degree D+n-1 (+ ``extra`` further degrees checked
    to vanish); anything else raises :class:`NotLinearShape`.  Passing the
    shape test does not prove linearity: certify that with koszul_betti.
    """
    D = is_equigenerated(I)
    if D is None:
        raise ValueError("kpoly_betti needs an equigenerated ideal")
    n = I.nvars
    N = hilbert_numerator(I, D + n - 1 + extra)
    if N[0] != 1:
        raise NotLinearShape(f"constant term {N[0]}")
    for j in range(1, D):
        if N[j]:
            raise NotLinearShape(f"nonzero coefficient {N[j]} at t^{j} below D={D}")
    betas = []
    for i in range(1, n + 1):
        c = N[D + i - 1] * (-1) ** i
        if c < 0:
            raise NotLinearShape(f"beta_{i} would be {c}")
        betas.append(c)
    for j in range(D + n, len(N)):
        if N[j]:
            raise NotLinearShape(f"nonzero coefficient {N[j]} at t^{j}")
    # the full numerator vanishes at t = 1 (I != 0); if the truncated one
    # does not, there are terms beyond t^(D+n-1)
    if sum(N[:D + n]):
        raise NotLinearShape("numerator continues past t^(D+n-1)")
    return BettiVector(n, tuple(betas))


def betti_fit(family: Callable[[int], MonomialIdeal], i: int, krange: Iterable[int],
              held_out: int | None = None) -> UniPoly:
    """Interpolate k -> beta_i(S/family(k)) and confirm on one more k."""
    ks = list(krange)
    pts = [(k, kpoly_betti(family(k))[i]) for k in ks]
    poly = interpolate(pts)
    k_extra = max(ks) + 1 if held_out is None else held_out
    actual = kpoly_betti(family(k_extra))[i]
    if poly(k_extra) != actual:
        raise HeldOutMismatch(
            f"beta_{i} fit predicts {poly(k_extra)} at k={k_extra}, oracle gives {actual}")
    return poly


def socle_dimension(I: MonomialIdeal, window: int | None = None) -> int:
    """Number of socle monomials of S/I in degrees 0..window."""
    from .monomials import socle_monomials

    if window is None:
        window = linearity_jmax(I)
    return len(socle_monomials(I, 0, window))


__all__ = [
    "BettiTable", "BettiVector", "koszul_betti", "is_linear",
    "has_linear_powers_up_to", "kpoly_betti", "hilbert_numerator", "betti_fit",
    "socle_dimension", "linearity_jmax", "Fraction",
]
