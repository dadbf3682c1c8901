"""Independent verification paths for the localization engine.

Two cross-checks that do not depend on the twisted-vertex conventions:

* ``wdvv_p2`` — Kontsevich's recursion for rational plane curves, pure
  integer/rational arithmetic with no localization input at all, and
* ``convex_invariant`` — the Euler-class computation on targets where
  the obstruction is an honest vector bundle.  Convexity is *verified*
  per graph (every H^1 multiset empty), never assumed, and the value is
  recomputed under several independent random specializations; in the
  convex case the non-equivariant limit exists for any nondegenerate
  substitution, so any disagreement means a bug.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from gwloc.engine import (SpecializationDegenerate, UnbalancedSector,
                          _analyze, _edge_forms, compute_invariant)
from gwloc.footballs import NoSuchCover
from gwloc.targets import (WeightedProjSpace, gorenstein_check,
                           random_specialization)
from gwloc.trees import DegreeNotRepresentable, enumerate_graphs


class NotConvex(ValueError):
    """Some fixed graph carries a nonzero H^1; the oracle refuses."""


@dataclass(frozen=True)
class WdvvTable:
    """Rational plane-curve counts N_d, d = 1 .. d_max."""

    counts: dict

    def __getitem__(self, d: int) -> Fraction:
        return self.counts[d]


def wdvv_p2(d_max: int) -> WdvvTable:
    """Degree-d counts of rational plane curves through 3d-1 points.

    N_1 = 1 seeds the recursion; each N_d is a finite sum of products of
    lower counts with binomial weights (associativity of the quantum
    product on the plane).
    """
    if d_max < 1:
        raise ValueError("d_max must be >= 1")
    n = {1: Fraction(1)}
    for d in range(2, d_max + 1):
        total = Fraction(0)
        for d1 in range(1, d):
            d2 = d - d1
            total += (n[d1] * n[d2] * d1 ** 2 * d2
                      * (d2 * comb(3 * d - 4, 3 * d1 - 2)
                         - d1 * comb(3 * d - 4, 3 * d1 - 1)))
        n[d] = total
    return WdvvTable(n)


# ---------------------------------------------------------------------------
# Convex / Gorenstein direct path
# ---------------------------------------------------------------------------


def _verify_convexity(space: WeightedProjSpace, graphs, degree: int) -> None:
    """Every graph must have empty bundle-H^1 everywhere: on each edge
    cover and in each contracted-component sector.  Graphs without a
    fixed locus (unbalanced sectors, unrepresentable covers) have
    nothing to check."""
    for g in graphs:
        try:
            an = _analyze(space, g, degree)
        except (UnbalancedSector, NoSuchCover):
            continue
        for idx, (a, b, d) in enumerate(g.edges):
            _, _, _, o_minus = _edge_forms(space, an.covers[idx],
                                           g.labels[a], g.labels[b], degree)
            if o_minus:
                raise NotConvex(
                    f"edge {idx} of {g.labels}/{g.edges} has bundle H^1 "
                    f"weights {list(o_minus)}")
        for comp in an.components:
            if comp.denom:
                raise NotConvex(
                    f"component at vertex {comp.vertex} of {g.labels} has a "
                    f"twisted obstruction sector")


def convex_invariant(space: WeightedProjSpace, degree: int, beta,
                     insertions=(), n_specs: int = 2,
                     seed=None) -> Fraction:
    """Invariant of a verified-convex target, cross-checked over
    ``n_specs`` independent random specializations.

    For degree > 0 the target must be Gorenstein (every weight divides
    the degree) and every graph's bundle H^1 must vanish; degree 0 is
    the plain ambient-space case where there is no obstruction at all.
    """
    if degree > 0:
        ok, bad = gorenstein_check(space, degree)
        if not ok:
            raise NotConvex(f"weights at positions {bad} do not divide "
                            f"{degree}; target is not Gorenstein")
    if n_specs < 2:
        raise ValueError("need at least two specializations to cross-check")

    try:
        graphs = enumerate_graphs(space, beta, len(insertions))
    except DegreeNotRepresentable:
        return Fraction(0)
    if degree > 0:
        _verify_convexity(space, graphs, degree)

    if seed is None:
        seed = (tuple(space.weights), degree, str(beta), tuple(insertions))
    rng = random.Random(repr(seed))

    values = []
    attempts = 0
    while len(values) < n_specs:
        attempts += 1
        if attempts > 50 * n_specs:
            raise SpecializationDegenerate(
                "could not find enough nondegenerate specializations")
        spec = random_specialization(space, rng)
        try:
            res = compute_invariant(space, beta, degree, insertions, spec)
        except SpecializationDegenerate:
            continue
        values.append((spec, res.invariant))

    first = values[0][1]
    for sp, v in values[1:]:
        if v != first:
            raise AssertionError(
                f"specialization dependence in a convex computation: "
                f"{first} at {values[0][0].p} vs {v} at {sp.p}")
    return first
