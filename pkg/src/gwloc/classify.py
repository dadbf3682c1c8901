"""Arithmetic classification of weight systems.

Three services live here:

* ``find_invertible``: enumerate presentations of a weight system as a
  sum of chain and loop monomial blocks with as many monomials as
  variables (one exponent structure per block, all sharing one degree).

* ``regularizable_check``: decide, from a quasi-homogeneous monomial
  set, whether the associated directed graph decomposes into disjoint
  directed lines covering every coordinate whose weight fails to divide
  the degree.  That combinatorial shape is exactly what lets a possibly
  ill-behaved hypersurface sit inside a smooth one of the same degree.

* ``scan``: batch both checks over many (weights; degree) rows.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from gwloc.targets import WeightedProjSpace, gorenstein_check, find_chain_structures


class MalformedInput(ValueError):
    """A monomial violates quasi-homogeneity, or a row fails to parse."""


@dataclass(frozen=True)
class Block:
    """One chain or loop block of an invertible presentation.

    ``indices`` are 1-based variable indices in block order.  For a
    chain, monomial j is x_{i_j}^{a_j} x_{i_{j+1}} with a plain power at
    the end; for a loop the last monomial wraps around to the first
    variable, and the block has length at least 2.
    """

    kind: str  # "chain" | "loop"
    indices: tuple[int, ...]
    exponents: tuple[int, ...]


@dataclass(frozen=True)
class InvertibleDecomposition:
    blocks: tuple[Block, ...]
    degree: int

    def describe(self) -> str:
        parts = []
        for b in self.blocks:
            idx = ",".join(str(i) for i in b.indices)
            exp = ",".join(str(a) for a in b.exponents)
            parts.append(f"{b.kind}[{idx}]^({exp})")
        return " + ".join(parts)


def _chain_exponents(weights: Sequence[int], d: int) -> Optional[tuple[int, ...]]:
    """Exponents for an ordered chain block on the given weights, if any."""
    a = []
    for j in range(len(weights) - 1):
        num = d - weights[j + 1]
        if num <= 0 or num % weights[j] != 0:
            return None
        a.append(num // weights[j])
    if d % weights[-1] != 0:
        return None
    a.append(d // weights[-1])
    return tuple(a)


def _loop_exponents(weights: Sequence[int], d: int) -> Optional[tuple[int, ...]]:
    """Exponents for an ordered loop block (cyclic), if any."""
    n = len(weights)
    a = []
    for j in range(n):
        num = d - weights[(j + 1) % n]
        if num <= 0 or num % weights[j] != 0:
            return None
        a.append(num // weights[j])
    return tuple(a)


def _block_orderings(indices: tuple[int, ...], kind: str) -> Iterable[tuple[int, ...]]:
    """Orderings of a block's index set, up to the block's own symmetry.

    Chains are genuinely ordered.  Loops are considered up to cyclic
    rotation only (a reflected loop is a different polynomial), so we
    fix the smallest index first.  Single-variable loops are excluded:
    x^a * x is just a plain power, i.e. a length-one chain.
    """
    if kind == "chain":
        yield from itertools.permutations(indices)
        return
    if len(indices) < 2:
        return
    first = min(indices)
    rest = [i for i in indices if i != first]
    for perm in itertools.permutations(rest):
        yield (first,) + perm


def _set_partitions(items: list[int]) -> Iterable[list[list[int]]]:
    """All partitions of ``items`` into unordered nonempty blocks."""
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] + [head]] + part[i + 1:]
        yield part + [[head]]


def find_invertible(space: WeightedProjSpace, d: int) -> list[InvertibleDecomposition]:
    """All chain/loop block presentations of (space, d), deduplicated.

    Within one index set a block may admit both a chain and a loop
    structure, or several orderings; each distinct (kind, order,
    exponents) combination counts once.  Decompositions are returned in
    a deterministic order.
    """
    n = space.n
    results = []
    seen = set()
    for partition in _set_partitions(list(range(1, n + 1))):
        choices_per_block: list[list[Block]] = []
        for block_indices in partition:
            idx = tuple(sorted(block_indices))
            options = []
            for kind in ("chain", "loop"):
                for order in _block_orderings(idx, kind):
                    ws = [space.weight(i) for i in order]
                    a = (_chain_exponents(ws, d) if kind == "chain"
                         else _loop_exponents(ws, d))
                    if a is not None:
                        options.append(Block(kind, order, a))
            if not options:
                break
            choices_per_block.append(options)
        else:
            for combo in itertools.product(*choices_per_block):
                key = tuple(sorted((b.kind, b.indices, b.exponents) for b in combo))
                if key in seen:
                    continue
                seen.add(key)
                blocks = tuple(sorted(combo, key=lambda b: (b.indices, b.kind)))
                results.append(InvertibleDecomposition(blocks, d))
    results.sort(key=lambda dec: tuple((b.kind, b.indices, b.exponents)
                                       for b in dec.blocks))
    return results


# ---------------------------------------------------------------------------
# Regularizability from a monomial set
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MonomialSet:
    """Exponent vectors in N^n, each quasi-homogeneous of the same degree."""

    monomials: tuple[tuple[int, ...], ...]

    @staticmethod
    def make(monomials: Iterable[Sequence[int]]) -> "MonomialSet":
        return MonomialSet(tuple(tuple(int(e) for e in m) for m in monomials))

    def validate(self, space: WeightedProjSpace, d: int) -> None:
        for m in self.monomials:
            if len(m) != space.n:
                raise MalformedInput(f"monomial {m} has wrong arity")
            if any(e < 0 for e in m):
                raise MalformedInput(f"monomial {m} has a negative exponent")
            total = sum(e * w for e, w in zip(m, space.weights))
            if total != d:
                raise MalformedInput(
                    f"monomial {m} has weighted degree {total}, expected {d}")


@dataclass(frozen=True)
class RegularizabilityVerdict:
    verdict: str  # "regularizable-inside" | "not" | "unknown"
    witness: Optional[tuple[tuple[int, ...], ...]] = None
    reason: str = ""


def regularizable_check(monomials: MonomialSet, space: WeightedProjSpace,
                        d: int) -> RegularizabilityVerdict:
    """Directed-line criterion on the graph of pure-power-times-variable
    monomials.

    Edge (i, j), i != j, exists when some x_i^a x_j is in the set; the
    needed witness is a family of vertex-disjoint directed lines (no
    branching, no cycles) whose heads cover every j with w_j not
    dividing d.  A coordinate that needs covering but has no outgoing
    edge at all gives a definite "not"; failure of the search alone is
    only "unknown", since the criterion is proved under an extra torus
    action hypothesis we do not check.
    """
    monomials.validate(space, d)
    n = space.n
    _, offending = gorenstein_check(space, d)
    need = set(offending)
    if not need:
        return RegularizabilityVerdict(
            "regularizable-inside", witness=(),
            reason="every weight divides the degree; a plain power "
                   "regularizes each variable separately")

    edges: set[tuple[int, int]] = set()
    for m in monomials.monomials:
        support = [k + 1 for k, e in enumerate(m) if e > 0]
        if len(support) == 2:
            i, j = support
            ei, ej = m[i - 1], m[j - 1]
            if ej == 1:
                edges.add((i, j))
            if ei == 1:
                edges.add((j, i))

    for j in sorted(need):
        if not any(e[0] == j for e in edges):
            return RegularizabilityVerdict(
                "not", reason=f"coordinate {j} (weight {space.weight(j)}) has "
                              f"no monomial of the form x_{j}^a x_k")

    # Search for an injective, acyclic partial successor map i -> j using
    # only available edges, covering all of `need` as tails.  Lines may
    # pass through coordinates that do not need covering.
    order = sorted(need)

    def extend(assign: dict[int, int], used_heads: set[int], k: int) -> Optional[dict[int, int]]:
        if k == len(order):
            return dict(assign)
        i = order[k]
        for (a, b) in sorted(edges):
            if a != i or b in used_heads:
                continue
            assign[i] = b
            used_heads.add(b)
            if not _has_cycle(assign):
                got = extend(assign, used_heads, k + 1)
                if got is not None:
                    return got
            used_heads.discard(b)
            del assign[i]
        return None

    assign = extend({}, set(), 0)
    if assign is None:
        return RegularizabilityVerdict(
            "unknown", reason="no disjoint directed-line cover found; the "
                              "criterion is only decisive in the negative "
                              "direction when an edge is missing entirely")
    lines = _lines_from_successors(assign)
    return RegularizabilityVerdict("regularizable-inside",
                                   witness=tuple(tuple(l) for l in lines),
                                   reason="directed-line cover found")


def _has_cycle(successor: dict[int, int]) -> bool:
    for start in successor:
        seen = {start}
        cur = start
        while cur in successor:
            cur = successor[cur]
            if cur in seen:
                return True
            seen.add(cur)
    return False


def _lines_from_successors(successor: dict[int, int]) -> list[list[int]]:
    heads = set(successor.values())
    starts = [i for i in successor if i not in heads]
    lines = []
    for s in sorted(starts):
        line = [s]
        while line[-1] in successor:
            line.append(successor[line[-1]])
        lines.append(line)
    return lines


# ---------------------------------------------------------------------------
# Batch scanning
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScanRow:
    weights: tuple[int, ...]
    degree: int
    gorenstein: bool
    chain: bool
    has_loop_block: bool
    invertible: bool
    decompositions: int
    error: str = ""


def scan(rows: Iterable[tuple[Sequence[int], int]]) -> list[ScanRow]:
    """Classify each (weights, degree) row; collect per-row errors."""
    out = []
    for weights, d in rows:
        try:
            space = WeightedProjSpace(tuple(weights))
            gor, _ = gorenstein_check(space, d)
            chains = find_chain_structures(space, d)
            decs = find_invertible(space, d)
            has_loop = any(b.kind == "loop" for dec in decs for b in dec.blocks)
            out.append(ScanRow(tuple(weights), d, gor, bool(chains), has_loop,
                               bool(decs), len(decs)))
        except Exception as exc:  # noqa: BLE001 - per-row isolation is the point
            out.append(ScanRow(tuple(weights), d, False, False, False, False,
                               0, error=str(exc)))
    return out
