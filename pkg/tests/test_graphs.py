from __future__ import annotations

import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linpowers.betti_oracle import is_linear
from linpowers.graphs import (
    NONQUADRATIC_GRAPH,
    BipartiteGraph,
    SimpleGraph,
    bipartite_edge_ideal,
    complement,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    edge_ideal,
    ferrers_graph,
    ferrers_ideal,
    ferrers_relabeling,
    format_edge_list,
    froberg_linear,
    graph_from_json,
    graph_from_pairs,
    graph_to_json,
    is_chordal,
    is_ferrers,
    is_staircase,
    parse_bipartite,
    parse_edge_list,
    validate_certificate,
)
from linpowers.monomials import format_monomial
from linpowers.rees import BiDegree, minimal_generator_degrees


def test_simple_graph_invariants():
    G = SimpleGraph(3, [(1, 0), (0, 1)])
    assert G.edges == frozenset({(0, 1)})
    with pytest.raises(ValueError):
        SimpleGraph(3, [(1, 1)])
    with pytest.raises(ValueError):
        SimpleGraph(3, [(0, 3)])


def test_complement_examples():
    assert complement(complete_graph(4)).edges == frozenset()
    assert complement(complement(NONQUADRATIC_GRAPH)) == NONQUADRATIC_GRAPH
    fig2 = graph_from_pairs(6, [(1, 4), (1, 5), (1, 6), (2, 6), (3, 4), (4, 6)])
    assert complement(NONQUADRATIC_GRAPH) == fig2


def test_chordal_examples():
    res = is_chordal(cycle_graph(4))
    assert not res and sorted(res.cycle) == [0, 1, 2, 3]
    tree = SimpleGraph(6, [(0, 1), (0, 2), (2, 3), (2, 4), (4, 5)])
    assert is_chordal(tree)
    assert is_chordal(complement(NONQUADRATIC_GRAPH))


def test_edge_ideal_examples():
    gens = {format_monomial(g) for g in edge_ideal(NONQUADRATIC_GRAPH).exps}
    assert gens == {"x1*x2", "x1*x3", "x2*x3", "x2*x4", "x2*x5", "x3*x5", "x3*x6", "x4*x5", "x5*x6"}
    C5 = cycle_graph(5)
    assert not froberg_linear(C5) and not is_linear(edge_ideal(C5))
    assert froberg_linear(complete_graph(4))


def _random_graphs(count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(2, 6)
        p = rng.random()
        G = SimpleGraph(n, [e for e in combinations(range(n), 2) if rng.random() < p])
        if G.edges:
            out.append(G)
    return out


def test_froberg_against_oracle():
    graphs = _random_graphs(220, seed=2024)
    for G in graphs:
        assert froberg_linear(G) == is_linear(edge_ideal(G)), sorted(G.edges)


def test_certificates_validate():
    for G in _random_graphs(300, seed=99):
        res = is_chordal(G)
        assert validate_certificate(G, res)


def test_validator_rejects_bad_certificates():
    from linpowers.graphs import ChordalityResult
    C4 = cycle_graph(4)
    assert not validate_certificate(C4, ChordalityResult(True, peo=[0, 1, 2, 3]))
    assert not validate_certificate(complete_graph(4), ChordalityResult(False, cycle=[0, 1, 2, 3]))
    assert not validate_certificate(C4, ChordalityResult(False, cycle=[0, 1, 2]))


def _brute_chordal(G):
    adj = G.adjacency()
    # chordless cycle of length >= 4 exists iff some induced subgraph is a cycle
    for size in range(4, G.nverts + 1):
        for S in combinations(range(G.nverts), size):
            sub = [adj[v] & set(S) for v in S]
            if all(len(s) == 2 for s in sub):
                # connected?
                seen, stack = {S[0]}, [S[0]]
                while stack:
                    v = stack.pop()
                    for w in adj[v] & set(S):
                        if w not in seen:
                            seen.add(w)
                            stack.append(w)
                if len(seen) == size:
                    return False
    return True


def test_chordal_against_brute_force():
    for G in _random_graphs(250, seed=5):
        assert is_chordal(G).chordal == _brute_chordal(G)


def test_ferrers_examples():
    assert is_ferrers(complete_bipartite(2, 3))
    assert is_ferrers(ferrers_graph([3, 1]))
    assert ferrers_graph([3, 1]).edges == frozenset({(0, 0), (0, 1), (0, 2), (1, 0)})
    assert not is_ferrers(BipartiteGraph(2, 2, [(0, 1), (1, 0)]))
    with pytest.raises(ValueError):
        ferrers_graph([1, 3])
    with pytest.raises(ValueError):
        ferrers_graph([2, 0])


def _relabel(B, left, right):
    lp = {v: p for p, v in enumerate(left)}
    rp = {v: p for p, v in enumerate(right)}
    return BipartiteGraph(B.n, B.m, [(lp[i], rp[j]) for i, j in B.edges])


def _brute_ferrers(B):
    return any(is_staircase(_relabel(B, L, R))
               for L in permutations(range(B.n)) for R in permutations(range(B.m)))


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 3), st.integers(1, 3), st.data())
def test_ferrers_recognition_vs_permutations(n, m, data):
    edges = data.draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, m - 1))))
    B = BipartiteGraph(n, m, edges)
    assert is_ferrers(B) == _brute_ferrers(B)
    relabel = ferrers_relabeling(B)
    if relabel is not None:
        assert is_staircase(_relabel(B, *relabel))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 4), min_size=1, max_size=4), st.randoms(use_true_random=False))
def test_shuffled_ferrers_still_recognized(rows, rnd):
    rows = sorted(rows, reverse=True)
    B = ferrers_graph(rows)
    L, R = list(range(B.n)), list(range(B.m))
    rnd.shuffle(L)
    rnd.shuffle(R)
    assert is_ferrers(_relabel(B, L, R))


FERRERS_CORPUS = [[2, 1], [2, 2], [3, 1], [3, 2, 1], [2, 2, 1], [3, 3, 1]]


@pytest.mark.parametrize("rows", FERRERS_CORPUS, ids=str)
def test_ferrers_rees_degrees(rows):
    I = ferrers_ideal(rows)
    pure = minimal_generator_degrees(I, BiDegree(0, 4))
    assert {d for d in pure.generator_degrees} <= {BiDegree(0, 2)}
    mixed = minimal_generator_degrees(I, BiDegree(2, 3))
    assert {d for d in mixed.generator_degrees if d.a >= 1} <= {BiDegree(1, 1)}


def test_ferrers_ideal_variables():
    I = ferrers_ideal([2, 1])
    assert I.nvars == 4  # x1, x2 then y1, y2
    assert {format_monomial(g) for g in I.exps} == {"x1*x3", "x1*x4", "x2*x3"}
    assert bipartite_edge_ideal(complete_bipartite(1, 1)).exps == ((1, 1),)


def test_formats_round_trip():
    text = format_edge_list(NONQUADRATIC_GRAPH)
    assert parse_edge_list(text) == NONQUADRATIC_GRAPH
    assert graph_from_json(graph_to_json(NONQUADRATIC_GRAPH)) == NONQUADRATIC_GRAPH
    assert parse_edge_list("# nverts: 4\n1 2\n").nverts == 4
    with pytest.raises(ValueError):
        parse_edge_list("1 2 3\n")
    with pytest.raises(ValueError):
        parse_edge_list("0 1\n")
    B = parse_bipartite("# left: 2\n# right: 3\n1 1\n1 2\n2 1\n")
    assert (B.n, B.m) == (2, 3) and is_ferrers(B)
