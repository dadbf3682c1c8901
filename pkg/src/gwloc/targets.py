"""Weighted projective target data.

Fixed points of the torus action are the N coordinate points; the j-th
one carries mu_{w_j} isotropy.  Every weight convention used downstream
is fixed here:

* tangent direction i at point j has torus weight  t_i - (w_i/w_j) t_j
  and residual isotropy character  w_i mod w_j;
* the fiber of O(d) at point j has torus weight  -(d/w_j) t_j;
* the equivariant hyperplane class is lifted as  -t_j/w_j  at point j.

The lift sign is pinned by the calibration integral: summing
lift^(N-1) / e(T) over fixed points, each weighted by the orbifold
point measure 1/w_j, must give exactly 1/(w_1...w_N) for every weight
vector and every nondegenerate specialization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from gwloc.exact import LinForm, specialize_linform


@dataclass(frozen=True)
class WeightedProjSpace:
    """The quotient of C^N minus the origin by a weighted scaling action."""

    weights: tuple[int, ...]

    def __post_init__(self):
        if len(self.weights) < 2:
            raise ValueError("need at least two homogeneous coordinates")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive integers")
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))

    @property
    def dim(self) -> int:
        return len(self.weights) - 1

    @property
    def n(self) -> int:
        return len(self.weights)

    def weight(self, j: int) -> int:
        """Weight at 1-based coordinate index j."""
        return self.weights[j - 1]

    def weight_product(self) -> int:
        prod = 1
        for w in self.weights:
            prod *= w
        return prod

    def __str__(self) -> str:
        return "P(" + ",".join(str(w) for w in self.weights) + ")"


@dataclass(frozen=True)
class FixedPoint:
    """Coordinate point number j (1-based), with mu_{w_j} isotropy."""

    index: int
    isotropy: int


def fixed_points(space: WeightedProjSpace) -> list[FixedPoint]:
    return [FixedPoint(j, space.weight(j)) for j in range(1, space.n + 1)]


@dataclass(frozen=True)
class TangentWeight:
    """One tangent direction at a fixed point.

    ``form`` is the torus weight; ``character`` is the residual isotropy
    character (an integer mod the isotropy order of the point), needed
    for invariant-part selection at orbifold nodes.
    """

    direction: int
    form: LinForm
    character: int


def tangent_weights(space: WeightedProjSpace, j: int) -> list[TangentWeight]:
    """T-weights of the tangent space at coordinate point j."""
    wj = space.weight(j)
    out = []
    for i in range(1, space.n + 1):
        if i == j:
            continue
        wi = space.weight(i)
        form = LinForm.make({i: 1, j: Fraction(-wi, wj)})
        out.append(TangentWeight(i, form, wi % wj))
    return out


def bundle_fiber_weight(space: WeightedProjSpace, d: int, j: int) -> LinForm:
    """T-weight of the fiber of O(d) at coordinate point j: -(d/w_j) t_j."""
    if d == 0:
        return LinForm()
    return LinForm.unit(j, Fraction(-d, space.weight(j)))


def hyperplane_lift(space: WeightedProjSpace, j: int) -> LinForm:
    """Equivariant lift of the hyperplane class at point j: -t_j / w_j."""
    return LinForm.unit(j, Fraction(-1, space.weight(j)))


# ---------------------------------------------------------------------------
# Chain / loop exponent structures and the induced specialization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainStructure:
    """Exponents a with a_j w_j + w_{j+1} = d for j < N and a_N w_N = d."""

    space: WeightedProjSpace
    exponents: tuple[int, ...]
    degree: int

    def __post_init__(self):
        w = self.space.weights
        a = tuple(int(x) for x in self.exponents)
        object.__setattr__(self, "exponents", a)
        if len(a) != len(w):
            raise ValueError("one exponent per coordinate required")
        if any(x < 1 for x in a):
            raise ValueError("exponents must be positive")
        for j in range(len(w) - 1):
            if a[j] * w[j] + w[j + 1] != self.degree:
                raise ValueError(f"chain relation fails at position {j + 1}")
        if a[-1] * w[-1] != self.degree:
            raise ValueError("chain relation fails at the last position")


@dataclass(frozen=True)
class LoopStructure:
    """Exponents a with a_j w_j + w_{j+1 mod N} = d for all j (cyclically)."""

    space: WeightedProjSpace
    exponents: tuple[int, ...]
    degree: int

    def __post_init__(self):
        w = self.space.weights
        a = tuple(int(x) for x in self.exponents)
        object.__setattr__(self, "exponents", a)
        if len(a) != len(w):
            raise ValueError("one exponent per coordinate required")
        if any(x < 1 for x in a):
            raise ValueError("exponents must be positive")
        for j in range(len(w)):
            if a[j] * w[j] + w[(j + 1) % len(w)] != self.degree:
                raise ValueError(f"loop relation fails at position {j + 1}")


@dataclass(frozen=True)
class Specialization:
    """Substitution t_j := p_j * t, with a provenance description."""

    p: tuple[Fraction, ...]
    description: str = "custom"
    hodge_twist: Optional[Fraction] = None

    @staticmethod
    def make(values: Sequence, description: str = "custom",
             hodge_twist: Optional[Fraction] = None) -> "Specialization":
        return Specialization(tuple(Fraction(v) for v in values), description,
                              hodge_twist)

    def is_nondegenerate(self, space: WeightedProjSpace) -> bool:
        """All point weights p_j/w_j distinct and nonzero.

        This makes every tangent weight at every fixed point specialize
        to a nonzero multiple of t, which is what the localization
        denominators require.
        """
        if len(self.p) != space.n:
            return False
        seen = set()
        for j in range(1, space.n + 1):
            v = self.p[j - 1] / space.weight(j)
            if v == 0 or v in seen:
                return False
            seen.add(v)
        return True


def random_specialization(space: WeightedProjSpace, rng) -> Specialization:
    """Rejection-sample small distinct integers until nondegenerate.

    Pass a seeded ``random.Random`` to make the draw reproducible; the
    convex oracle and ambient-space report runs both rely on that.
    """
    while True:
        vals = rng.sample(range(-60, 61), space.n)
        if 0 in vals:
            continue
        spec = Specialization.make(vals, "random")
        if spec.is_nondegenerate(space):
            return spec


def chain_specialization(chain: ChainStructure) -> Specialization:
    """The chain substitution: p_1 = 1, p_{j+1} = (-a_1)...(-a_j).

    The recorded twist scalar a_N * p_N is metadata only; genus-zero
    computations never use it.
    """
    p = [Fraction(1)]
    for a in chain.exponents[:-1]:
        p.append(p[-1] * (-a))
    twist = Fraction(chain.exponents[-1]) * p[-1]
    return Specialization(tuple(p), "chain", twist)


def find_chain_structures(space: WeightedProjSpace, d: int,
                          permute: bool = False) -> list[ChainStructure]:
    """All chain exponent vectors for degree d over the given weight order.

    With ``permute`` set, weight orderings are searched too (factorial
    cost) and results are reported on the permuted spaces.
    """
    def solve(weights: tuple[int, ...]) -> Optional[tuple[int, ...]]:
        a = []
        n = len(weights)
        for j in range(n - 1):
            num = d - weights[j + 1]
            if num <= 0 or num % weights[j] != 0:
                return None
            a.append(num // weights[j])
        if d % weights[-1] != 0:
            return None
        a.append(d // weights[-1])
        return tuple(a)

    out = []
    if not permute:
        a = solve(space.weights)
        if a is not None:
            out.append(ChainStructure(space, a, d))
        return out
    seen = set()
    for perm in itertools.permutations(space.weights):
        if perm in seen:
            continue
        seen.add(perm)
        a = solve(perm)
        if a is not None:
            out.append(ChainStructure(WeightedProjSpace(perm), a, d))
    return out


def gorenstein_check(space: WeightedProjSpace, d: int) -> tuple[bool, list[int]]:
    """Does every weight divide d?  Returns (verdict, offending indices)."""
    bad = [j for j in range(1, space.n + 1) if d % space.weight(j) != 0]
    return (not bad, bad)


# ---------------------------------------------------------------------------
# Calibration: the equivariant integral of a hyperplane power
# ---------------------------------------------------------------------------


def point_class_integral(space: WeightedProjSpace, spec: Specialization,
                         power: Optional[int] = None) -> Fraction:
    """Equivariant integral of lift^power over the target, by fixed points.

    Each fixed point contributes its orbifold measure 1/w_j times
    lift^power / product(tangent weights), evaluated under ``spec``.
    For power = N-1 the answer is 1/(w_1...w_N) whenever the
    specialization is nondegenerate.
    """
    if power is None:
        power = space.n - 1
    if not spec.is_nondegenerate(space):
        raise ValueError("degenerate specialization for the point integral")
    total = Fraction(0)
    for j in range(1, space.n + 1):
        lift = specialize_linform(hyperplane_lift(space, j), spec.p)
        denom = Fraction(1)
        for tw in tangent_weights(space, j):
            denom *= specialize_linform(tw.form, spec.p)
        total += Fraction(1, space.weight(j)) * lift**power / denom
    return total
