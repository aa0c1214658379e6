"""Bigraded generators of the Rees ideal of an equigenerated monomial ideal.

Let I = (f_1, ..., f_m) in S = k[x_1..x_n] and T = S[y_1..y_m] with
deg x_i = (1,0), deg y_j = (0,1).  The map phi: x_i -> x_i, y_j -> f_j t has
kernel J.  Each graded piece J_(a,b) is spanned by differences of
T-monomials with the same image, so everything here is bookkeeping on
fibers of phi: the part of J_(a,b) generated by lower degrees is spanned by
edges inside fibers, and the missing minimal generators in (a,b) number
sum over fibers of (#components - 1).

All answers hold up to the bound they were computed with, never beyond.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Callable, Iterable

import numpy as np

from .errors import ResourceCapExceeded
from .monomials import MonomialIdeal, compositions, format_monomial, is_equigenerated

DEFAULT_COMPONENT_CAP = int(os.environ.get("LINPOWERS_REES_CAP", 400_000))


@total_ordering
@dataclass(frozen=True)
class BiDegree:
    a: int
    b: int

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError(f"bidegree must be nonnegative, got ({self.a},{self.b})")

    def _key(self):
        return (self.a + self.b, self.a)

    def __lt__(self, other: "BiDegree") -> bool:
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def below(self, other: "BiDegree") -> bool:
        """Componentwise <=."""
        return self.a <= other.a and self.b <= other.b

    def __sub__(self, other: "BiDegree") -> "BiDegree":
        return BiDegree(self.a - other.a, self.b - other.b)

    def __str__(self):
        return f"({self.a},{self.b})"

    def as_list(self) -> list[int]:
        return [self.a, self.b]


@dataclass(frozen=True)
class TMonomial:
    alpha: tuple
    gamma: tuple

    @property
    def bidegree(self) -> BiDegree:
        return BiDegree(sum(self.alpha), sum(self.gamma))

    def vector(self) -> tuple:
        return self.alpha + self.gamma

    def __mul__(self, other: "TMonomial") -> "TMonomial":
        return TMonomial(tuple(p + q for p, q in zip(self.alpha, other.alpha)),
                         tuple(p + q for p, q in zip(self.gamma, other.gamma)))

    def divides(self, other: "TMonomial") -> bool:
        return all(p <= q for p, q in zip(self.vector(), other.vector()))


def _y_labels(I: MonomialIdeal) -> list[str]:
    # y12 style names for square-free generators in at most 9 variables
    if I.nvars <= 9 and all(max(g) <= 1 for g in I.exps):
        return ["y" + "".join(str(t + 1) for t, a in enumerate(g) if a) for g in I.exps]
    return [f"y{j + 1}" for j in range(len(I))]


def format_tmonomial(I: MonomialIdeal, t: TMonomial) -> str:
    parts = [] if not any(t.alpha) else [format_monomial(t.alpha)]
    for name, c in zip(_y_labels(I), t.gamma):
        if c == 1:
            parts.append(name)
        elif c > 1:
            parts.append(f"{name}^{c}")
    return "*".join(parts) if parts else "1"


def phi_image(I: MonomialIdeal, t: TMonomial) -> tuple[tuple, int]:
    """x^alpha * prod f_j^gamma_j, together with the power of t."""
    if len(t.gamma) != len(I) or len(t.alpha) != I.nvars:
        raise ValueError("TMonomial does not match the ideal's ring")
    img = list(t.alpha)
    for g, c in zip(I.exps, t.gamma):
        if c:
            for i, e in enumerate(g):
                img[i] += c * e
    return tuple(img), sum(t.gamma)


def _count(n: int, d: int) -> int:
    from math import comb
    return comb(n + d - 1, d) if n else int(d == 0)


def component_size(I: MonomialIdeal, deg: BiDegree) -> int:
    return _count(I.nvars, deg.a) * _count(len(I), deg.b)


def component_fibers(I: MonomialIdeal, deg: BiDegree, cap: int | None = None,
                     *, singletons: bool = True) -> list[list[TMonomial]]:
    """T-monomials of bidegree ``deg`` grouped by phi-image.

    Fibers come in descending grlex order of their image; members in
    descending lex order of (gamma, alpha).
    """
    cap = DEFAULT_COMPONENT_CAP if cap is None else cap
    size = component_size(I, deg)
    if size > cap:
        raise ResourceCapExceeded(f"component {deg} has {size} monomials, cap {cap}")
    n, m = I.nvars, len(I)
    alphas = list(compositions(deg.a, n))
    gammas = list(compositions(deg.b, m))
    F = np.array(I.exps, dtype=np.int64).reshape(m, n)
    gimg = np.array(gammas, dtype=np.int64).reshape(len(gammas), m) @ F
    A = np.array(alphas, dtype=np.int64).reshape(len(alphas), n)
    fibers: dict[tuple, list[TMonomial]] = {}
    for gi, gamma in enumerate(gammas):
        imgs = A + gimg[gi]
        for ai, alpha in enumerate(alphas):
            fibers.setdefault(tuple(imgs[ai].tolist()), []).append(TMonomial(alpha, gamma))
    out = []
    for img in sorted(fibers, key=lambda e: (sum(e), e), reverse=True):
        members = fibers[img]
        if len(members) > 1 or singletons:
            members.sort(key=lambda t: t.gamma + t.alpha, reverse=True)
            out.append(members)
    return out


def kernel_dimension(I: MonomialIdeal, deg: BiDegree, cap: int | None = None) -> int:
    """dim J_(a,b) = sum over fibers of (|fiber| - 1)."""
    return sum(len(f) - 1 for f in component_fibers(I, deg, cap, singletons=False))


class _DSU:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            # keep the smaller index as root so representatives are canonical
            if rj < ri:
                ri, rj = rj, ri
            self.parent[rj] = ri


@dataclass
class Generator:
    degree: BiDegree
    lhs: TMonomial
    rhs: TMonomial


@dataclass
class ReesGeneratorReport:
    ideal: str
    bound: BiDegree
    generators: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def generator_degrees(self) -> dict[BiDegree, int]:
        out: dict[BiDegree, int] = {}
        for g in self.generators:
            out[g.degree] = out.get(g.degree, 0) + 1
        return dict(sorted(out.items()))

    @property
    def witnesses(self) -> list[Generator]:
        """The first generator found in each degree."""
        seen, out = set(), []
        for g in self.generators:
            if g.degree not in seen:
                seen.add(g.degree)
                out.append(g)
        return out

    def degrees_outside(self, allowed: Iterable[BiDegree]) -> list[BiDegree]:
        allowed = set(allowed)
        return [d for d in self.generator_degrees if d not in allowed]

    def to_dict(self, I: MonomialIdeal) -> dict:
        return {
            "ideal": self.ideal,
            "bound": self.bound.as_list(),
            "generator_degrees": [[d.a, d.b, c] for d, c in self.generator_degrees.items()],
            "witnesses": [{"degree": w.degree.as_list(),
                           "lhs": format_tmonomial(I, w.lhs),
                           "rhs": format_tmonomial(I, w.rhs)} for w in self.witnesses],
            "checks": self.checks,
        }

    def to_json(self, I: MonomialIdeal) -> str:
        return json.dumps(self.to_dict(I), sort_keys=True)


def sweep_degrees(bound: BiDegree) -> list[BiDegree]:
    return sorted(BiDegree(a, b) for a in range(bound.a + 1) for b in range(bound.b + 1))


def default_bound(I: MonomialIdeal) -> BiDegree:
    D = is_equigenerated(I)
    if D is None:
        raise ValueError("need an equigenerated ideal")
    return BiDegree(2 * D, 4)


Observer = Callable[[BiDegree, list, list, int], None]


def minimal_generator_degrees(I: MonomialIdeal, bound: BiDegree | None = None,
                              cap: int | None = None, *, name: str | None = None,
                              observer: Observer | None = None) -> ReesGeneratorReport:
    """Minimal generators of J by bidegree, up to ``bound``.

    ``observer(deg, fiber, edges, ncomponents)`` is called for every
    non-singleton fiber with the edges induced by earlier generators; it is
    how the tests compare connectivity against exact ranks.
    """
    if is_equigenerated(I) is None:
        raise ValueError("need an equigenerated ideal")
    if bound is None:
        bound = default_bound(I)
    report = ReesGeneratorReport(name or ", ".join(format_monomial(g) for g in I.exps), bound)
    found: list[tuple[BiDegree, np.ndarray, np.ndarray]] = []
    for deg in sweep_degrees(bound):
        if deg.b < 2 and deg.a == 0:
            continue
        usable = [(u, v) for d, p, q in found if d.below(deg) for u, v in ((p, q), (q, p))]
        new = []
        for fiber in component_fibers(I, deg, cap, singletons=False):
            W = np.array([t.vector() for t in fiber], dtype=np.int64)
            index = {t.vector(): r for r, t in enumerate(fiber)}
            dsu = _DSU(len(fiber))
            edges = []
            for u, v in usable:
                rows = np.nonzero((W >= u).all(axis=1))[0]
                if not len(rows):
                    continue
                targets = W[rows] - u + v
                for r, tgt in zip(rows.tolist(), targets.tolist()):
                    s = index.get(tuple(tgt))
                    if s is None:
                        raise AssertionError(f"edge leaves its fiber in degree {deg}")
                    edges.append((r, s))
                    dsu.union(r, s)
            roots = sorted({dsu.find(r) for r in range(len(fiber))})
            if observer is not None:
                observer(deg, fiber, edges, len(roots))
            for r in roots[1:]:
                new.append(Generator(deg, fiber[roots[0]], fiber[r]))
        report.generators.extend(new)
        found.extend((g.degree, np.array(g.lhs.vector(), dtype=np.int64),
                      np.array(g.rhs.vector(), dtype=np.int64)) for g in new)
    return report


def degree_set_label(degrees: Iterable[BiDegree]) -> str:
    return ",".join(str(d) for d in sorted(set(degrees)))


@dataclass
class GenerationCheck:
    passed: bool
    failure_degree: BiDegree | None = None
    witness: Generator | None = None

    def __bool__(self):
        return self.passed

    def as_dict(self) -> dict:
        out = {"pass": self.passed}
        if self.failure_degree is not None:
            out["failure_degree"] = self.failure_degree.as_list()
        return out


def check_report(report: ReesGeneratorReport, degrees: Iterable[BiDegree]) -> GenerationCheck:
    degrees = set(degrees)
    for g in report.generators:
        if g.degree not in degrees:
            res = GenerationCheck(False, g.degree, g)
            break
    else:
        res = GenerationCheck(True)
    report.checks[degree_set_label(degrees)] = res.as_dict()
    return res


def is_generated_in(I: MonomialIdeal, degrees: Iterable[BiDegree],
                    bound: BiDegree | None = None, cap: int | None = None) -> GenerationCheck:
    return check_report(minimal_generator_degrees(I, bound, cap), degrees)


QUADRATIC = (BiDegree(0, 2), BiDegree(1, 1))


def fiber_type_check(I: MonomialIdeal, bound: BiDegree | None = None,
                     cap: int | None = None) -> GenerationCheck:
    """Every generator within the bound has a = 0 or b = 1."""
    report = minimal_generator_degrees(I, bound, cap)
    for g in report.generators:
        if g.degree.a != 0 and g.degree.b != 1:
            return GenerationCheck(False, g.degree, g)
    return GenerationCheck(True)


def linear_syzygy_check(I: MonomialIdeal, k: int, bound_s: int = 3,
                        cap: int | None = None) -> bool:
    """In the column b = k, generators only at a <= 1 (up to a = bound_s)."""
    report = minimal_generator_degrees(I, BiDegree(bound_s, k), cap)
    return all(g.degree.a <= 1 for g in report.generators if g.degree.b == k)


def substitution_matrix(I: MonomialIdeal, deg: BiDegree, cap: int | None = None):
    """0/1 matrix sending each T-monomial of ``deg`` to its phi-image.

    Its nullity is dim J_(a,b); used to cross-check the fiber count.
    """
    from .exactmath import RationalMatrix

    fibers = component_fibers(I, deg, cap)
    cols = [t for f in fibers for t in f]
    entries = {}
    c = 0
    for r, f in enumerate(fibers):
        for _ in f:
            entries[(r, c)] = 1
            c += 1
    return RationalMatrix.sparse(len(fibers), len(cols), entries), cols


__all__ = [
    "BiDegree", "TMonomial", "ReesGeneratorReport", "Generator", "GenerationCheck",
    "phi_image", "component_fibers", "kernel_dimension", "minimal_generator_degrees",
    "is_generated_in", "fiber_type_check", "linear_syzygy_check", "check_report",
    "default_bound", "format_tmonomial", "substitution_matrix", "QUADRATIC",
]
