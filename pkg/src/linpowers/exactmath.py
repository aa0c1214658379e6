"""Exact integer/rational arithmetic: binomials, Pascal matrices, linear
algebra over Q and GF(p), and univariate polynomials in k.

Rationals are ``fractions.Fraction`` throughout; nothing here touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, lcm
from typing import Iterable, Sequence

from sympy import isprime

from .errors import SingularSystem

# Two fixed primes above 2**31 for the modular fast path.
PRIMES = (2147483659, 4294967291)


def binom(top: int, bottom: int) -> int:
    """C(top, bottom), zero when bottom < 0 or bottom > top."""
    if top < 0:
        raise ValueError(f"binom: negative upper index {top}")
    if bottom < 0 or bottom > top:
        return 0
    return comb(top, bottom)


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


class RationalMatrix:
    """A rows x cols matrix with Fraction entries.

    Built either dense (``RationalMatrix(rows)``) or sparse
    (``RationalMatrix.sparse(r, c, {(i, j): v})``).  Internally every row is
    kept as a dict {col: nonzero value}, so both layouts share one code path.
    """

    __slots__ = ("nrows", "ncols", "_rows")

    def __init__(self, rows: Sequence[Sequence] = (), ncols: int | None = None):
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix rows")
        self.nrows = len(rows)
        self.ncols = ncols
        self._rows = tuple(
            {j: Fraction(v) for j, v in enumerate(r) if v != 0} for r in rows
        )

    @classmethod
    def sparse(cls, nrows: int, ncols: int, entries: dict) -> "RationalMatrix":
        m = cls.__new__(cls)
        m.nrows, m.ncols = nrows, ncols
        rows = [dict() for _ in range(nrows)]
        for (i, j), v in entries.items():
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise IndexError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            if v != 0:
                rows[i][j] = Fraction(v)
        m._rows = tuple(rows)
        return m

    @classmethod
    def identity(cls, s: int) -> "RationalMatrix":
        return cls.sparse(s, s, {(i, i): 1 for i in range(s)})

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        if not (0 <= j < self.ncols):
            raise IndexError(j)
        return self._rows[i].get(j, Fraction(0))

    def row(self, i: int) -> list[Fraction]:
        r = self._rows[i]
        return [r.get(j, Fraction(0)) for j in range(self.ncols)]

    def tolist(self) -> list[list[Fraction]]:
        return [self.row(i) for i in range(self.nrows)]

    def sparse_rows(self) -> tuple[dict, ...]:
        return tuple(dict(r) for r in self._rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __matmul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            out = {}
            for i, r in enumerate(self._rows):
                acc: dict[int, Fraction] = {}
                for t, a in r.items():
                    for j, b in other._rows[t].items():
                        acc[j] = acc.get(j, 0) + a * b
                for j, v in acc.items():
                    if v:
                        out[(i, j)] = v
            return RationalMatrix.sparse(self.nrows, other.ncols, out)
        vec = list(other)
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        out = []
        for r in self._rows:
            acc = _zero_like(vec)
            for j, a in r.items():
                acc = acc + a * vec[j]
            out.append(acc)
        return out

    def __repr__(self) -> str:
        return f"RationalMatrix({[[str(x) for x in r] for r in self.tolist()]})"


def _zero_like(vec):
    # keeps UniPoly columns polynomial-valued
    for v in vec:
        if isinstance(v, UniPoly):
            return UniPoly.zero()
    return Fraction(0)


def pascal(s: int) -> RationalMatrix:
    """Upper-triangular [C(j, i)] for 0 <= i, j < s."""
    if s < 1:
        raise ValueError("pascal size must be >= 1")
    return RationalMatrix([[binom(j, i) for j in range(s)] for i in range(s)])


def pascal_signed(s: int) -> RationalMatrix:
    """[(-1)^(i+j) C(j, i)] for 0 <= i, j < s; the inverse of ``pascal(s)``."""
    if s < 1:
        raise ValueError("pascal size must be >= 1")
    return RationalMatrix(
        [[(-1) ** (i + j) * binom(j, i) for j in range(s)] for i in range(s)]
    )


def _integer_rows(M: RationalMatrix) -> list[list[int]]:
    rows = []
    for r in M.sparse_rows():
        if not r:
            continue
        den = lcm(*(v.denominator for v in r.values()))
        dense = [0] * M.ncols
        for j, v in r.items():
            dense[j] = int(v * den)
        rows.append(dense)
    return rows


def rank_exact(M: RationalMatrix) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    A = _integer_rows(M)
    m, n = len(A), M.ncols
    rank = 0
    prev = 1
    for col in range(n):
        if rank == m:
            break
        piv = next((r for r in range(rank, m) if A[r][col] != 0), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        p = A[rank][col]
        for r in range(rank + 1, m):
            a = A[r][col]
            row_r, row_p = A[r], A[rank]
            for c in range(col, n):
                row_r[c] = (p * row_r[c] - a * row_p[c]) // prev
        prev = p
        rank += 1
    return rank


def rank_mod_p(M: RationalMatrix, p: int) -> int:
    """Rank of M reduced mod the prime p.

    Entries whose denominator vanishes mod p make the reduction undefined and
    raise ``ValueError``.
    """
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    rows = []
    for r in M.sparse_rows():
        red = {}
        for j, v in r.items():
            if v.denominator % p == 0:
                raise ValueError("denominator divisible by p")
            x = v.numerator * pow(v.denominator, -1, p) % p
            if x:
                red[j] = x
        if red:
            rows.append(red)
    return rank_rows_mod_p(rows, p)


def rank_rows_mod_p(rows: list[dict], p: int) -> int:
    """Rank over GF(p) of sparse integer rows given as {col: value} dicts."""
    pivots: dict[int, dict] = {}
    for row in rows:
        row = {j: v % p for j, v in row.items() if v % p}
        while row:
            lead = min(row)
            prow = pivots.get(lead)
            if prow is None:
                inv = pow(row[lead], -1, p)
                pivots[lead] = {j: v * inv % p for j, v in row.items()}
                break
            f = row[lead]
            for j, v in prow.items():
                x = (row.get(j, 0) - f * v) % p
                if x:
                    row[j] = x
                else:
                    row.pop(j, None)
    return len(pivots)


def rank(M: RationalMatrix, exact: bool = False) -> int:
    """Rank via two primes, optionally cross-checked exactly.

    The two modular ranks must agree; a disagreement means one prime divides
    a minor and the exact rank is used instead.
    """
    r1, r2 = (rank_mod_p(M, p) for p in PRIMES)
    if exact or r1 != r2:
        return rank_exact(M)
    return r1


def solve_exact(M: RationalMatrix, v: Sequence) -> list[Fraction]:
    """The unique x with Mx = v, by Gauss-Jordan over Q.

    Rectangular systems are accepted as long as they are consistent and
    determine every unknown.
    """
    if len(v) != M.nrows:
        raise ValueError("right-hand side length mismatch")
    n = M.ncols
    A = [row + [Fraction(b)] for row, b in zip(M.tolist(), v)]
    piv_cols = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(A)) if A[i][col] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][col]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][col] != 0:
                f = A[i][col]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        piv_cols.append(col)
        r += 1
    if any(A[i][n] != 0 for i in range(r, len(A))):
        raise SingularSystem("inconsistent system")
    if r < n:
        raise SingularSystem(f"rank {r} < {n} unknowns")
    return [A[i][n] for i in range(n)]


def same_solution_set(A1: RationalMatrix, b1, A2: RationalMatrix, b2) -> bool:
    """Whether two consistent systems over the same unknowns are equivalent
    (identical augmented row spaces)."""
    if A1.ncols != A2.ncols:
        return False
    aug1 = RationalMatrix([r + [Fraction(b)] for r, b in zip(A1.tolist(), b1)],
                          ncols=A1.ncols + 1)
    aug2 = RationalMatrix([r + [Fraction(b)] for r, b in zip(A2.tolist(), b2)],
                          ncols=A2.ncols + 1)
    both = RationalMatrix(aug1.tolist() + aug2.tolist(), ncols=A1.ncols + 1)
    r = rank_exact(both)
    return rank_exact(aug1) == r == rank_exact(aug2)


# ---------------------------------------------------------------------------
# polynomials in k
# ---------------------------------------------------------------------------


class UniPoly:
    """Polynomial in one variable ``k`` with Fraction coefficients.

    ``coeffs[i]`` is the coefficient of k**i; trailing zeros are trimmed, so
    the zero polynomial has no coefficients and degree ``None``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls()

    @classmethod
    def const(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def k(cls) -> "UniPoly":
        return cls([0, 1])

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def __call__(self, k) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * k + c
        return acc

    @staticmethod
    def _lift(x) -> "UniPoly":
        return x if isinstance(x, UniPoly) else UniPoly([x])

    def __add__(self, other):
        other = self._lift(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs])
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise ValueError("negative powers are not polynomials")
        out = UniPoly.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __truediv__(self, c):
        return UniPoly([x / Fraction(c) for x in self.coeffs])

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "k" if i == 1 else f"k^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        s = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            s += f" {sign} {body}"
        return s


def binom_poly(c: int, shift: int, i: int) -> UniPoly:
    """C(c*k + shift, i) as a polynomial in k."""
    if i < 0:
        raise ValueError("binom_poly: negative lower index")
    p = UniPoly.const(1)
    for t in range(i):
        p = p * UniPoly([shift - t, c])
    return p / factorial(i)


def interpolate(points: Sequence[tuple[int, object]]) -> UniPoly:
    """Lagrange interpolation through (k, value) pairs, exactly."""
    if not points:
        raise ValueError("interpolate needs at least one point")
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae")
    result = UniPoly.zero()
    for i, (xi, (_, yi)) in enumerate(zip(xs, points)):
        basis = UniPoly.const(1)
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j != i:
                basis = basis * UniPoly([-xj, 1])
                denom *= xi - xj
        result = result + basis * (Fraction(yi) / denom)
    return result
