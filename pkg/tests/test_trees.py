"""Decorated-tree enumeration against labeled brute force."""

import heapq
import itertools
from fractions import Fraction
from math import factorial

import pytest
from gwloc.targets import WeightedProjSpace
from gwloc.trees import (DegreeNotRepresentable, LocGraph, canonical_key,
                         enumerate_graphs, graph_aut, graph_count)


def _prufer_trees(v):
    """All labeled trees on vertices 0..v-1 as edge lists."""
    if v == 2:
        yield [(0, 1)]
        return
    for seq in itertools.product(range(v), repeat=v - 2):
        degree = [1] * v
        for x in seq:
            degree[x] += 1
        leaves = [i for i in range(v) if degree[i] == 1]
        heapq.heapify(leaves)
        edges = []
        for x in seq:
            leaf = heapq.heappop(leaves)
            edges.append((min(leaf, x), max(leaf, x)))
            degree[x] -= 1
            if degree[x] == 1:
                heapq.heappush(leaves, x)
        u = heapq.heappop(leaves)
        w = heapq.heappop(leaves)
        edges.append((min(u, w), max(u, w)))
        yield edges


def _brute_force(space, beta, n_marks):
    """Isomorphism classes of decorated trees, with labeled counts."""
    classes = {}
    # an edge joins two distinct fixed points, so the least it can add
    # to beta is 1 over the largest weight product of a distinct pair
    pair_max = max(space.weight(i) * space.weight(j)
                   for i in range(1, space.n + 1)
                   for j in range(1, space.n + 1) if i != j)
    max_vertices = int(beta * pair_max) + 1
    for v in range(2, max_vertices + 1):
        for tree in _prufer_trees(v):
            for labels in itertools.product(range(1, space.n + 1), repeat=v):
                if any(labels[a] == labels[b] for a, b in tree):
                    continue
                denoms = [space.weight(labels[a]) * space.weight(labels[b])
                          for a, b in tree]
                caps = [int(beta * q) for q in denoms]
                if any(c < 1 for c in caps):
                    continue
                for choice in itertools.product(
                        *(range(1, c + 1) for c in caps)):
                    if sum(Fraction(d, q)
                           for d, q in zip(choice, denoms)) != beta:
                        continue
                    for assign in itertools.product(range(v), repeat=n_marks):
                        marks = [[] for _ in range(v)]
                        for mk, vert in enumerate(assign, start=1):
                            marks[vert].append(mk)
                        g = LocGraph(tuple(labels),
                                     tuple((a, b, d) for (a, b), d
                                           in zip(tree, choice)),
                                     tuple(tuple(sorted(m)) for m in marks))
                        rec = classes.setdefault(canonical_key(g), [g, 0, v])
                        rec[1] += 1
    return classes


CASES = [
    ((1, 1), Fraction(1)), ((1, 1), Fraction(2)),
    ((1, 2), Fraction(1, 2)), ((1, 2), Fraction(1)), ((1, 2), Fraction(2)),
    ((1, 1, 1), Fraction(1)), ((1, 1, 1), Fraction(2)),
    ((1, 2, 3), Fraction(1, 6)), ((1, 2, 3), Fraction(1, 3)),
    ((1, 2, 3), Fraction(1, 2)), ((1, 2, 3), Fraction(2, 3)),
    ((1, 1, 2, 2), Fraction(1, 4)), ((1, 1, 2, 2), Fraction(1, 2)),
]


@pytest.mark.parametrize("weights,beta", CASES)
@pytest.mark.parametrize("n_marks", [0, 1, 2])
def test_enumeration_matches_brute_force(weights, beta, n_marks):
    space = WeightedProjSpace(weights)
    try:
        fast = enumerate_graphs(space, beta, n_marks)
    except DegreeNotRepresentable:
        fast = []
    brute = _brute_force(space, beta, n_marks)
    assert len(fast) == len(brute)
    if brute:
        assert graph_count(space, beta, n_marks) == len(brute)

    for g in fast:
        key = canonical_key(g)
        assert key in brute
        _, count, v = brute[key]
        aut = graph_aut(g)
        # orbit-stabilizer: labeled representatives x |Aut_comb| = v!
        assert count * aut.comb_order == factorial(v)
        prod = 1
        for _, _, d in g.edges:
            prod *= d
        assert aut.edge_factor == prod
        assert g.beta(space) == beta


def test_no_graphs_raises():
    space = WeightedProjSpace((1, 2))
    with pytest.raises(DegreeNotRepresentable):
        enumerate_graphs(space, Fraction(-1), 0)
    with pytest.raises(DegreeNotRepresentable):
        enumerate_graphs(space, Fraction(1, 3), 0)


def test_beta_accounting():
    space = WeightedProjSpace((1, 2))
    for g in enumerate_graphs(space, Fraction(3, 2), 0):
        assert g.beta(space) == Fraction(3, 2)
        for a, b, d in g.edges:
            assert a < b and d >= 1
            assert g.labels[a] != g.labels[b]
