"""Monomials and monomial ideals over k[x1..xn].

Exponent vectors are plain tuples internally; ``Monomial`` wraps one with a
grlex total order.  Generator lists are kept sorted in *descending* grlex,
so x1x2 precedes x1x3 precedes x2x3, the way ideals are usually written.
"""

from __future__ import annotations

import json
import re
from functools import total_ordering
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

Exps = tuple


@total_ordering
class Monomial:
    __slots__ = ("exps", "degree")

    def __init__(self, exps: Iterable[int]):
        exps = tuple(int(e) for e in exps)
        if any(e < 0 for e in exps):
            raise ValueError(f"negative exponent in {exps}")
        self.exps = exps
        self.degree = sum(exps)

    @property
    def nvars(self) -> int:
        return len(self.exps)

    def _key(self):
        return (self.degree, self.exps)

    def __eq__(self, other):
        if not isinstance(other, Monomial):
            return NotImplemented
        return self.exps == other.exps

    def __lt__(self, other):
        return self._key() < other._key()

    def __hash__(self):
        return hash(self.exps)

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(a + b for a, b in zip(self.exps, other.exps))

    def divides(self, other: "Monomial") -> bool:
        return all(a <= b for a, b in zip(self.exps, other.exps))

    def __repr__(self):
        return f"Monomial({format_monomial(self.exps)})"

    def __str__(self):
        return format_monomial(self.exps)


def _as_exps(m) -> Exps:
    return m.exps if isinstance(m, Monomial) else tuple(m)


def grlex_key(e: Exps):
    return (sum(e), e)


def divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def compositions(total: int, n: int) -> Iterator[Exps]:
    """All exponent vectors of length n summing to ``total``, descending lex."""
    if n == 0:
        if total == 0:
            yield ()
        return
    if n == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in compositions(total - first, n - 1):
            yield (first,) + rest


def bounded_compositions(total: int, bounds: Sequence[int]) -> Iterator[Exps]:
    """Exponent vectors e with sum ``total`` and e[i] <= bounds[i]."""
    n = len(bounds)
    if n == 0:
        if total == 0:
            yield ()
        return
    tail_cap = sum(bounds[1:])
    for first in range(min(total, bounds[0]), max(0, total - tail_cap) - 1, -1):
        for rest in bounded_compositions(total - first, bounds[1:]):
            yield (first,) + rest


def minimalize(gens: Iterable[Exps]) -> list[Exps]:
    """Drop generators divisible by another one; dedup."""
    uniq = sorted(set(gens), key=grlex_key)
    kept: list[Exps] = []
    for g in uniq:
        if not any(divides(h, g) for h in kept):
            kept.append(g)
    return kept


class MonomialIdeal:
    """A monomial ideal given by its minimal generators.

    Use :func:`ideal_from_generators` to build one from arbitrary input.
    """

    __slots__ = ("nvars", "_gens", "_slices")

    def __init__(self, nvars: int, gens: Sequence[Exps]):
        self.nvars = nvars
        self._gens = tuple(sorted(gens, key=grlex_key, reverse=True))
        self._slices: list[frozenset] | None = None

    @property
    def gens(self) -> tuple[Monomial, ...]:
        return tuple(Monomial(g) for g in self._gens)

    @property
    def exps(self) -> tuple[Exps, ...]:
        return self._gens

    def __len__(self):
        return len(self._gens)

    def __eq__(self, other):
        if not isinstance(other, MonomialIdeal):
            return NotImplemented
        return self.nvars == other.nvars and self._gens == other._gens

    def __hash__(self):
        return hash((self.nvars, self._gens))

    def __repr__(self):
        body = ", ".join(format_monomial(g) for g in self._gens[:8])
        more = ", ..." if len(self._gens) > 8 else ""
        return f"MonomialIdeal(n={self.nvars}, [{body}{more}])"

    @property
    def max_degree(self) -> int:
        return max((sum(g) for g in self._gens), default=0)

    def lcm(self) -> Exps:
        if not self._gens:
            return (0,) * self.nvars
        return tuple(max(col) for col in zip(*self._gens))

    def degree_slice(self, j: int) -> frozenset:
        """All monomials of degree j lying in the ideal."""
        slices = self._slices if self._slices is not None else []
        if len(slices) <= j:
            by_deg: dict[int, list] = {}
            for g in self._gens:
                by_deg.setdefault(sum(g), []).append(g)
            n = self.nvars
            for d in range(len(slices), j + 1):
                cur = set(by_deg.get(d, ()))
                if d > 0:
                    for m in slices[d - 1]:
                        for t in range(n):
                            cur.add(m[:t] + (m[t] + 1,) + m[t + 1:])
                slices.append(frozenset(cur))
            self._slices = slices
        return slices[j]


def ideal_from_generators(n: int, raw: Iterable) -> MonomialIdeal:
    gens = [_as_exps(m) for m in raw]
    for g in gens:
        if len(g) != n:
            raise ValueError(f"generator {g} has {len(g)} exponents, expected {n}")
        if any(e < 0 for e in g):
            raise ValueError(f"negative exponent in {g}")
    return MonomialIdeal(n, minimalize(gens))


def is_equigenerated(I: MonomialIdeal) -> int | None:
    degs = {sum(g) for g in I.exps}
    return degs.pop() if len(degs) == 1 else None


def product(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    if I.nvars != J.nvars:
        raise ValueError("ideals live in different rings")
    prods = {tuple(a + b for a, b in zip(f, g)) for f in I.exps for g in J.exps}
    if is_equigenerated(I) is not None and is_equigenerated(J) is not None:
        # equal-degree monomials never properly divide each other
        assert len({sum(m) for m in prods}) <= 1
        return MonomialIdeal(I.nvars, list(prods))
    return MonomialIdeal(I.nvars, minimalize(prods))


def power(I: MonomialIdeal, k: int) -> MonomialIdeal:
    if k <= 0:
        raise ValueError("power exponent must be positive")
    out = I
    for _ in range(k - 1):
        out = product(out, I)
    return out


def contains(I: MonomialIdeal, m) -> bool:
    e = _as_exps(m)
    if len(e) != I.nvars:
        raise ValueError("monomial length does not match the ring")
    return any(divides(g, e) for g in I.exps)


def hilbert_function(I: MonomialIdeal, jmax: int) -> list[int]:
    """[dim_k (S/I)_j for j = 0..jmax]."""
    n = I.nvars
    return [comb(n + j - 1, n - 1) - len(I.degree_slice(j)) for j in range(jmax + 1)]


def hilbert_dim(I: MonomialIdeal, j: int) -> int:
    if j < 0:
        raise ValueError("negative degree")
    return hilbert_function(I, j)[j]


def socle_monomials(I: MonomialIdeal, jlo: int, jhi: int) -> list[Monomial]:
    """Monomials m with jlo <= deg m <= jhi, m not in I and x_i*m in I for all i."""
    if jlo > jhi:
        raise ValueError("empty degree window")
    n = I.nvars
    out = []
    for j in range(max(jlo, 0), jhi + 1):
        inside, above = I.degree_slice(j), I.degree_slice(j + 1)
        for m in compositions(j, n):
            if m in inside:
                continue
            if all(m[:t] + (m[t] + 1,) + m[t + 1:] in above for t in range(n)):
                out.append(Monomial(m))
    return out


# ---------------------------------------------------------------------------
# exchange properties
# ---------------------------------------------------------------------------


def polymatroidal_violation(I: MonomialIdeal):
    """First (u, v, i) breaking the exchange axiom, or None.

    For u, v in G(I) with u_i > v_i there must be j with u_j < v_j and
    u * x_j / x_i in G(I).  Non-equigenerated ideals report ``("degree",)``.
    """
    if is_equigenerated(I) is None:
        return ("degree",)
    G = set(I.exps)
    n = I.nvars
    for u in I.exps:
        for v in I.exps:
            for i in range(n):
                if u[i] <= v[i]:
                    continue
                if not any(u[j] < v[j] and _swap(u, i, j) in G for j in range(n)):
                    return (u, v, i)
    return None


def is_polymatroidal(I: MonomialIdeal) -> bool:
    return polymatroidal_violation(I) is None


def sep_violation(I: MonomialIdeal):
    """First (u, v, i, j) breaking the strong exchange property, or None."""
    bad = polymatroidal_violation(I)
    if bad is not None:
        return bad
    G = set(I.exps)
    n = I.nvars
    for u in I.exps:
        for v in I.exps:
            for i in range(n):
                if u[i] <= v[i]:
                    continue
                for j in range(n):
                    if u[j] < v[j] and _swap(u, i, j) not in G:
                        return (u, v, i, j)
    return None


def has_sep(I: MonomialIdeal) -> bool:
    return sep_violation(I) is None


def _swap(u: Exps, i: int, j: int) -> Exps:
    w = list(u)
    w[i] -= 1
    w[j] += 1
    return tuple(w)


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


def variable_ideal(n: int, subset: Iterable[int]) -> MonomialIdeal:
    gens = []
    for t in subset:
        e = [0] * n
        e[t] = 1
        gens.append(tuple(e))
    return ideal_from_generators(n, gens)


def squarefree_ideal(n: int, d: int) -> MonomialIdeal:
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got n={n}, d={d}")
    gens = []
    for S in combinations(range(n), d):
        e = [0] * n
        for t in S:
            e[t] = 1
        gens.append(tuple(e))
    return MonomialIdeal(n, gens)


def squarefree_power_direct(n: int, d: int, k: int) -> MonomialIdeal:
    """Degree dk monomials with every exponent at most k."""
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got n={n}, d={d}")
    if k < 1:
        raise ValueError("k must be positive")
    return MonomialIdeal(n, list(bounded_compositions(d * k, [k] * n)))


def transversal_ideal(n: int, s: int) -> MonomialIdeal:
    """Product of the ideals (x_i : i in A) over all s-subsets A."""
    if not 1 <= s <= n:
        raise ValueError(f"need 1 <= s <= n, got n={n}, s={s}")
    out = None
    for A in combinations(range(n), s):
        J = variable_ideal(n, A)
        out = J if out is None else product(out, J)
    return out


def transversal_nm1_power_direct(n: int, k: int) -> MonomialIdeal:
    """Degree nk monomials with every exponent at most k(n-1)."""
    if n < 2 or k < 1:
        raise ValueError("need n >= 2 and k >= 1")
    return MonomialIdeal(n, list(bounded_compositions(n * k, [k * (n - 1)] * n)))


def transversal_nm2_power_direct(n: int, k: int) -> MonomialIdeal:
    """Degree k*C(n,2) monomials, exponents at most k*C(n-1,2), at least
    three of them positive."""
    if n < 3 or k < 1:
        raise ValueError("need n >= 3 and k >= 1")
    top = k * comb(n - 1, 2)
    gens = [e for e in bounded_compositions(k * comb(n, 2), [top] * n)
            if sum(1 for a in e if a > 0) >= 3]
    return MonomialIdeal(n, gens)


def transversal_nm2_direct(n: int) -> MonomialIdeal:
    return transversal_nm2_power_direct(n, 1)


def maximal_ideal(n: int) -> MonomialIdeal:
    return squarefree_ideal(n, 1)


# ---------------------------------------------------------------------------
# text / JSON formats
# ---------------------------------------------------------------------------

_FACTOR = re.compile(r"^x(\d+)(?:\^(\d+))?$")
_NVARS = re.compile(r"^#\s*nvars:\s*(\d+)\s*$")


def format_monomial(e: Exps) -> str:
    parts = []
    for t, a in enumerate(e):
        if a == 1:
            parts.append(f"x{t + 1}")
        elif a > 1:
            parts.append(f"x{t + 1}^{a}")
    return "*".join(parts) if parts else "1"


def parse_monomial(s: str, n: int | None = None) -> Exps:
    s = s.strip().replace(" ", "")
    if s == "1":
        if n is None:
            raise ValueError("constant monomial needs a known variable count")
        return (0,) * n
    powers: dict[int, int] = {}
    for factor in s.split("*"):
        m = _FACTOR.match(factor)
        if not m:
            raise ValueError(f"cannot parse factor {factor!r}")
        t = int(m.group(1))
        if t < 1:
            raise ValueError("variables are numbered from 1")
        powers[t] = powers.get(t, 0) + int(m.group(2) or 1)
    top = max(powers)
    if n is None:
        n = top
    if top > n:
        raise ValueError(f"x{top} outside a ring with {n} variables")
    return tuple(powers.get(t + 1, 0) for t in range(n))


def parse_ideal_text(text: str, nvars: int | None = None) -> MonomialIdeal:
    """One generator per line (``x1^2*x3``); ``#`` starts a comment.

    A ``# nvars: N`` line fixes the ring; otherwise the largest variable
    index seen is used.
    """
    lines = []
    for raw in text.splitlines():
        m = _NVARS.match(raw.strip())
        if m:
            nvars = int(m.group(1)) if nvars is None else nvars
            continue
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if nvars is None:
        idx = [int(v) for line in lines for v in re.findall(r"x(\d+)", line)]
        if not idx:
            raise ValueError("cannot infer the number of variables")
        nvars = max(idx)
    return ideal_from_generators(nvars, [parse_monomial(s, nvars) for s in lines])


def format_ideal_text(I: MonomialIdeal) -> str:
    lines = [f"# nvars: {I.nvars}"] + [format_monomial(g) for g in I.exps]
    return "\n".join(lines) + "\n"


def ideal_to_json(I: MonomialIdeal) -> str:
    return json.dumps({"nvars": I.nvars, "generators": [list(g) for g in I.exps]},
                      sort_keys=True)


def ideal_from_json(text: str) -> MonomialIdeal:
    data = json.loads(text)
    return ideal_from_generators(int(data["nvars"]),
                                 [tuple(g) for g in data["generators"]])
