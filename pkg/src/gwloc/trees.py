"""Enumeration of fixed-locus graphs: decorated trees.

A genus-zero fixed locus of the torus action is encoded by a tree whose
vertices carry fixed-point indices (adjacent indices distinct), whose
edges carry positive degrees, and whose vertices carry disjoint sets of
marking labels.  The curve class of a graph is the sum of
d_e / (w_u * w_v) over its edges.

Enumeration produces each isomorphism class exactly once, in a stable
deterministic order.  Only combinatorial constraints are enforced here;
legality of a class as an actual fixed locus (existence of edge covers,
sector matching at the vertices) is the engine's job, which drops
illegal classes with a trace.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm, prod

from gwloc.targets import WeightedProjSpace


class DegreeNotRepresentable(ValueError):
    """No decorated tree realizes the requested curve class."""


@dataclass(frozen=True)
class LocGraph:
    """A decorated tree.  Vertices are 0-based internally; ``labels[v]``
    is the 1-based fixed-point index of vertex v, ``edges`` holds
    (a, b, degree) with a < b, and ``marks[v]`` the sorted tuple of
    marking labels sitting on v."""

    labels: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]
    marks: tuple[tuple[int, ...], ...]

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def n_marks(self) -> int:
        return sum(len(m) for m in self.marks)

    def beta(self, space: WeightedProjSpace) -> Fraction:
        total = Fraction(0)
        for a, b, d in self.edges:
            total += Fraction(d, space.weight(self.labels[a])
                              * space.weight(self.labels[b]))
        return total

    def adjacency(self):
        adj = [[] for _ in self.labels]
        for idx, (a, b, d) in enumerate(self.edges):
            adj[a].append((b, d, idx))
            adj[b].append((a, d, idx))
        return adj

    def flags(self, v: int):
        """(edge index, neighbour vertex, degree) triples at v."""
        out = []
        for idx, (a, b, d) in enumerate(self.edges):
            if a == v:
                out.append((idx, b, d))
            elif b == v:
                out.append((idx, a, d))
        return out

    def valence(self, v: int) -> int:
        """Number of special points on the vertex: flags plus marks."""
        return len(self.flags(v)) + len(self.marks[v])


@dataclass(frozen=True)
class GraphAut:
    """Automorphism data of a graph: the order of the combinatorial
    automorphism group and the product of edge degrees (deck part)."""

    comb_order: int
    edge_factor: int

    @property
    def total(self) -> int:
        return self.comb_order * self.edge_factor


# ---------------------------------------------------------------------------
# Canonical forms and automorphisms
# ---------------------------------------------------------------------------


def _subtree_sizes(adj, root):
    n = len(adj)
    size = [1] * n
    order, parent = [root], [-1] * n
    seen = {root}
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for u, _, _ in adj[v]:
            if u not in seen:
                seen.add(u)
                parent[u] = v
                order.append(u)
    for v in reversed(order[1:]):
        size[parent[v]] += size[v]
    return size, parent, order


def _centroids(adj):
    n = len(adj)
    size, parent, order = _subtree_sizes(adj, 0)
    best, cents = None, []
    for v in range(n):
        heaviest = n - size[v]
        for u, _, _ in adj[v]:
            if parent[u] == v:
                heaviest = max(heaviest, size[u])
        if best is None or heaviest < best:
            best, cents = heaviest, [v]
        elif heaviest == best:
            cents.append(v)
    return cents


def _rooted_key(g: LocGraph, adj, v: int, parent: int):
    kids = sorted((d, _rooted_key(g, adj, u, v))
                  for u, d, _ in adj[v] if u != parent)
    return (g.labels[v], g.marks[v], tuple(kids))


def _rooted_aut(g: LocGraph, adj, v: int, parent: int) -> int:
    kids = []
    aut = 1
    for u, d, _ in adj[v]:
        if u == parent:
            continue
        kids.append((d, _rooted_key(g, adj, u, v)))
        aut *= _rooted_aut(g, adj, u, v)
    kids.sort()
    run = 1
    for i in range(1, len(kids)):
        if kids[i] == kids[i - 1]:
            run += 1
        else:
            for r in range(2, run + 1):
                aut *= r
            run = 1
    for r in range(2, run + 1):
        aut *= r
    return aut


def canonical_key(g: LocGraph):
    """A total invariant of the isomorphism class, usable as a dict key
    and for deterministic ordering."""
    if g.n_vertices == 1:
        return (1, (g.labels[0], g.marks[0], ()))
    adj = g.adjacency()
    cents = _centroids(adj)
    if len(cents) == 1:
        return (1, _rooted_key(g, adj, cents[0], -1))
    c1, c2 = cents
    d = next(d for u, d, _ in adj[c1] if u == c2)
    k1 = _rooted_key(g, adj, c1, c2)
    k2 = _rooted_key(g, adj, c2, c1)
    return (2, d, min((k1, k2), (k2, k1)))


def graph_aut(g: LocGraph) -> GraphAut:
    edge_factor = prod(d for _, _, d in g.edges) if g.edges else 1
    if g.n_vertices == 1:
        return GraphAut(1, edge_factor)
    adj = g.adjacency()
    cents = _centroids(adj)
    if len(cents) == 1:
        comb = _rooted_aut(g, adj, cents[0], -1)
    else:
        c1, c2 = cents
        comb = _rooted_aut(g, adj, c1, c2) * _rooted_aut(g, adj, c2, c1)
        if _rooted_key(g, adj, c1, c2) == _rooted_key(g, adj, c2, c1):
            comb *= 2
    return GraphAut(comb, edge_factor)


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------


def enumerate_graphs(space: WeightedProjSpace, beta,
                     n_marks: int = 0) -> tuple[LocGraph, ...]:
    """All isomorphism classes of decorated trees in class beta with
    n_marks labeled markings, in canonical order.

    Raises DegreeNotRepresentable when no tree exists at all.
    """
    beta = Fraction(beta)
    if beta <= 0:
        raise DegreeNotRepresentable(f"curve class must be positive: {beta}")
    N = space.n
    pair_products = [space.weight(i) * space.weight(j)
                     for i in range(1, N + 1) for j in range(i + 1, N + 1)]
    L = lcm(*pair_products) if pair_products else 1
    budget = beta * L
    if budget.denominator != 1:
        raise DegreeNotRepresentable(
            f"class {beta} is not a sum of edge classes on {space}")
    budget = int(budget)

    weights = tuple(space.weight(j) for j in range(1, N + 1))

    # Rooted trees are nested tuples (label, size, children) with children
    # a tuple of (degree, subtree) sorted ascending, so each rooted shape
    # is generated exactly once.  Sizes ride along to make the centroid
    # filter below O(valence).
    @lru_cache(maxsize=None)
    def rooted(label: int, b: int):
        """All rooted trees with root fixed-point `label`, edge cost b."""
        out = []
        for cs in child_seqs(label, b, None):
            out.append((label, 1 + sum(c[1][1] for c in cs), cs))
        return tuple(out)

    def child_seqs(parent: int, b: int, min_key):
        if b == 0:
            yield ()
            return
        for cl in range(1, N + 1):
            if cl == parent:
                continue
            unit = L // (weights[parent - 1] * weights[cl - 1])
            d = 1
            while d * unit <= b:
                rest_after_edge = b - d * unit
                for sub_b in range(rest_after_edge + 1):
                    for ct in rooted(cl, sub_b):
                        child = (d, ct)
                        if min_key is not None and child < min_key:
                            continue
                        for rest in child_seqs(parent, rest_after_edge - sub_b,
                                               child):
                            yield (child,) + rest
                d += 1

    def keep(label, size, children):
        # Keep exactly one rooting per free tree: the centroid rooting,
        # with the tie between the two centroids of an even split broken
        # toward the smaller detached half.
        if not children:
            return size == 1
        heavy = max(children, key=lambda c: c[1][1])
        s = heavy[1][1]
        if 2 * s < size:
            return True
        if 2 * s > size:
            return False
        rest = tuple(c for c in children if c is not heavy)
        other_half = (label, size - s, rest)
        return heavy[1] <= other_half

    bare = []
    for root_label in range(1, N + 1):
        for cs in child_seqs(root_label, budget, None):
            size = 1 + sum(c[1][1] for c in cs)
            if keep(root_label, size, cs):
                bare.append(_flatten((root_label, size, cs)))
    rooted.cache_clear()

    if not bare:
        raise DegreeNotRepresentable(
            f"class {beta} is not a sum of edge classes on {space}")

    bare.sort(key=canonical_key)
    if n_marks == 0:
        return tuple(bare)

    marked = {}
    for g in bare:
        for placement in product(range(g.n_vertices), repeat=n_marks):
            marks = [[] for _ in range(g.n_vertices)]
            for lab, v in enumerate(placement, start=1):
                marks[v].append(lab)
            mg = LocGraph(g.labels, g.edges,
                          tuple(tuple(m) for m in marks))
            marked.setdefault(canonical_key(mg), mg)
    return tuple(marked[k] for k in sorted(marked))


def _flatten(t) -> LocGraph:
    """Turn a nested (label, size, children) tuple into a LocGraph."""
    labels, edges = [], []

    def walk(node, parent_id):
        label, _, children = node
        vid = len(labels)
        labels.append(label)
        for d, ct in children:
            cid = walk(ct, vid)
            edges.append((vid, cid, d))
        return vid

    walk(t, -1)
    edges = tuple(tuple(sorted(e[:2])) + (e[2],) for e in edges)
    return LocGraph(tuple(labels), tuple(edges),
                    tuple(() for _ in labels))


def graph_count(space: WeightedProjSpace, beta, n_marks: int = 0) -> int:
    return len(enumerate_graphs(space, beta, n_marks))
