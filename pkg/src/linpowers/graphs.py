"""Graphs feeding edge ideals: complements, chordality, Ferrers structure.

Vertices are 0-based internally and 1-based in every text format.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from .monomials import MonomialIdeal, ideal_from_generators


@dataclass(frozen=True)
class SimpleGraph:
    nverts: int
    edges: frozenset

    def __init__(self, nverts: int, edges):
        canon = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u + 1}")
            if not (0 <= u < nverts and 0 <= v < nverts):
                raise ValueError(f"edge ({u + 1},{v + 1}) outside 1..{nverts}")
            canon.add((min(u, v), max(u, v)))
        object.__setattr__(self, "nverts", nverts)
        object.__setattr__(self, "edges", frozenset(canon))

    def neighbors(self, v: int) -> set[int]:
        return {b if a == v else a for a, b in self.edges if v in (a, b)}

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.nverts)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def complete_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, combinations(range(n), 2))


def cycle_graph(n: int) -> SimpleGraph:
    return SimpleGraph(n, [(i, (i + 1) % n) for i in range(n)])


def graph_from_pairs(n: int, pairs) -> SimpleGraph:
    """Build from 1-based pairs."""
    return SimpleGraph(n, [(u - 1, v - 1) for u, v in pairs])


def complement(G: SimpleGraph) -> SimpleGraph:
    return SimpleGraph(G.nverts, [e for e in combinations(range(G.nverts), 2)
                                  if e not in G.edges])


# ---------------------------------------------------------------------------
# chordality
# ---------------------------------------------------------------------------


@dataclass
class ChordalityResult:
    chordal: bool
    peo: list | None = None          # perfect elimination ordering, when chordal
    cycle: list | None = None        # chordless cycle of length >= 4, otherwise

    def __bool__(self):
        return self.chordal


def mcs_order(G: SimpleGraph) -> list[int]:
    """Maximum cardinality search; returns the reverse of the visit order,
    which is a perfect elimination ordering exactly when G is chordal."""
    adj = G.adjacency()
    weight = [0] * G.nverts
    visited = [False] * G.nverts
    visit = []
    for _ in range(G.nverts):
        v = max((u for u in range(G.nverts) if not visited[u]), key=lambda u: (weight[u], -u))
        visited[v] = True
        visit.append(v)
        for w in adj[v]:
            if not visited[w]:
                weight[w] += 1
    return visit[::-1]


def peo_violation(G: SimpleGraph, order: list[int]):
    """First (v, a, b) with a, b later neighbors of v but not adjacent."""
    adj = G.adjacency()
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = sorted((w for w in adj[v] if pos[w] > pos[v]), key=pos.get)
        for a, b in combinations(later, 2):
            if b not in adj[a]:
                return v, a, b
    return None


def _chordless_path(adj, src: int, dst: int, blocked: set[int]) -> list[int] | None:
    """Shortest path src -> dst avoiding ``blocked``; shortest paths are induced."""
    prev = {src: None}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        if u == dst:
            path = []
            while u is not None:
                path.append(u)
                u = prev[u]
            return path[::-1]
        for w in sorted(adj[u]):
            if w not in prev and w not in blocked:
                prev[w] = u
                queue.append(w)
    return None


def _chordless_cycle(G: SimpleGraph) -> list[int] | None:
    adj = G.adjacency()
    for v in range(G.nverts):
        for a, b in combinations(sorted(adj[v]), 2):
            if b in adj[a]:
                continue
            # path a -> b avoiding v and every other neighbour of v
            blocked = (adj[v] | {v}) - {a, b}
            path = _chordless_path(adj, a, b, blocked)
            if path is not None:
                return [v] + path
    return None


def is_chordal(G: SimpleGraph) -> ChordalityResult:
    order = mcs_order(G)
    if peo_violation(G, order) is None:
        return ChordalityResult(True, peo=order)
    cycle = _chordless_cycle(G)
    if cycle is None:
        raise AssertionError("MCS order failed but no chordless cycle was found")
    return ChordalityResult(False, cycle=cycle)


def validate_certificate(G: SimpleGraph, res: ChordalityResult) -> bool:
    """Check a chordality certificate without trusting how it was made."""
    if res.chordal:
        order = res.peo
        if order is None or sorted(order) != list(range(G.nverts)):
            return False
        return peo_violation(G, order) is None
    cyc = res.cycle
    if cyc is None or len(cyc) < 4 or len(set(cyc)) != len(cyc):
        return False
    L = len(cyc)
    for i in range(L):
        for j in range(i + 1, L):
            consecutive = j == i + 1 or (i == 0 and j == L - 1)
            if G.has_edge(cyc[i], cyc[j]) != consecutive:
                return False
    return True


# ---------------------------------------------------------------------------
# edge ideals
# ---------------------------------------------------------------------------


def edge_ideal(G: SimpleGraph) -> MonomialIdeal:
    gens = []
    for a, b in G.edges:
        e = [0] * G.nverts
        e[a] = e[b] = 1
        gens.append(tuple(e))
    return ideal_from_generators(G.nverts, gens)


def froberg_linear(G: SimpleGraph) -> bool:
    """Linear resolution of I(G) read off the complement (Froberg)."""
    return is_chordal(complement(G)).chordal


# ---------------------------------------------------------------------------
# bipartite / Ferrers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BipartiteGraph:
    n: int
    m: int
    edges: frozenset

    def __init__(self, n: int, m: int, edges):
        canon = set()
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < m):
                raise ValueError(f"edge ({i + 1},{j + 1}) outside {n}x{m}")
            canon.add((i, j))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "edges", frozenset(canon))

    def left_neighbors(self, i: int) -> frozenset:
        return frozenset(j for a, j in self.edges if a == i)

    def right_neighbors(self, j: int) -> frozenset:
        return frozenset(i for i, b in self.edges if b == j)


def complete_bipartite(n: int, m: int) -> BipartiteGraph:
    return BipartiteGraph(n, m, [(i, j) for i in range(n) for j in range(m)])


def ferrers_graph(row_lengths) -> BipartiteGraph:
    rows = list(row_lengths)
    if not rows or any(r <= 0 for r in rows):
        raise ValueError("row lengths must be positive")
    if any(a < b for a, b in zip(rows, rows[1:])):
        raise ValueError("row lengths must be weakly decreasing")
    return BipartiteGraph(len(rows), rows[0], [(i, j) for i, r in enumerate(rows) for j in range(r)])


def ferrers_relabeling(B: BipartiteGraph):
    """Orders (left, right) that turn B into a staircase, or None.

    Left vertices by degree descending (ties by neighbourhood), right vertices
    likewise; the result is a staircase iff the neighbourhoods are nested.
    """
    left = sorted(range(B.n), key=lambda i: (-len(B.left_neighbors(i)), sorted(B.left_neighbors(i)), i))
    right = sorted(range(B.m), key=lambda j: (-len(B.right_neighbors(j)), sorted(B.right_neighbors(j)), j))
    for a, b in zip(left, left[1:]):
        if not B.left_neighbors(b) <= B.left_neighbors(a):
            return None
    rpos = {j: p for p, j in enumerate(right)}
    for i in left:
        cols = sorted(rpos[j] for j in B.left_neighbors(i))
        if cols != list(range(len(cols))):
            return None
    return left, right


def is_staircase(B: BipartiteGraph) -> bool:
    """e_ij in E implies e_rs in E for all r <= i, s <= j (given labels)."""
    return all((r, s) in B.edges for i, j in B.edges for r in range(i + 1) for s in range(j + 1))


def is_ferrers(B: BipartiteGraph) -> bool:
    return ferrers_relabeling(B) is not None


def bipartite_edge_ideal(B: BipartiteGraph) -> MonomialIdeal:
    """Variables x_1..x_n then y_1..y_m."""
    gens = []
    for i, j in B.edges:
        e = [0] * (B.n + B.m)
        e[i] = e[B.n + j] = 1
        gens.append(tuple(e))
    return ideal_from_generators(B.n + B.m, gens)


def ferrers_ideal(row_lengths) -> MonomialIdeal:
    return bipartite_edge_ideal(ferrers_graph(row_lengths))


# ---------------------------------------------------------------------------
# formats
# ---------------------------------------------------------------------------


def parse_edge_list(text: str, nverts: int | None = None) -> SimpleGraph:
    """``u v`` per line, 1-based; ``#`` comments; ``# nverts: N`` header."""
    pairs = []
    for raw in text.splitlines():
        s = raw.strip()
        if s.startswith("#") and "nverts" in s:
            nverts = int(s.split(":", 1)[1]) if nverts is None else nverts
            continue
        s = s.split("#", 1)[0].strip()
        if not s:
            continue
        fields = s.replace(",", " ").split()
        if len(fields) != 2:
            raise ValueError(f"expected 'u v', got {raw!r}")
        u, v = int(fields[0]), int(fields[1])
        if u < 1 or v < 1:
            raise ValueError("vertices are numbered from 1")
        pairs.append((u, v))
    if nverts is None:
        if not pairs:
            raise ValueError("empty edge list needs a '# nverts: N' header")
        nverts = max(max(p) for p in pairs)
    return graph_from_pairs(nverts, pairs)


def format_edge_list(G: SimpleGraph) -> str:
    lines = [f"# nverts: {G.nverts}"] + [f"{a + 1} {b + 1}" for a, b in G.sorted_edges()]
    return "\n".join(lines) + "\n"


def graph_to_json(G: SimpleGraph) -> str:
    return json.dumps({"nverts": G.nverts,
                       "edges": [[a + 1, b + 1] for a, b in G.sorted_edges()]}, sort_keys=True)


def graph_from_json(text: str) -> SimpleGraph:
    data = json.loads(text)
    return graph_from_pairs(int(data["nverts"]), [tuple(e) for e in data["edges"]])


def parse_bipartite(text: str) -> BipartiteGraph:
    """``i j`` per line meaning left i -- right j; needs ``# left: N`` and
    ``# right: M`` headers unless the maxima are meant."""
    n = m = None
    pairs = []
    for raw in text.splitlines():
        s = raw.strip()
        low = s.lower()
        if s.startswith("#") and "left" in low and ":" in s:
            n = int(s.split(":", 1)[1])
            continue
        if s.startswith("#") and "right" in low and ":" in s:
            m = int(s.split(":", 1)[1])
            continue
        s = s.split("#", 1)[0].strip()
        if s:
            i, j = (int(x) for x in s.replace(",", " ").split())
            pairs.append((i - 1, j - 1))
    n = n if n is not None else max(p[0] for p in pairs) + 1
    m = m if m is not None else max(p[1] for p in pairs) + 1
    return BipartiteGraph(n, m, pairs)


# chordal complement and linear powers, yet its Rees ideal needs a cubic generator
NONQUADRATIC_GRAPH = graph_from_pairs(6, [(1, 2), (1, 3), (2, 3), (2, 4), (2, 5),
                                          (3, 5), (3, 6), (4, 5), (5, 6)])
