"""Edge covers and line-bundle cohomology on orbifold footballs.

A fixed edge of the torus action joins two fixed points with isotropy
orders ``wu`` and ``wv``.  The source component mapping onto it is a
football: a rational orbifold curve with (at most) two stacky points, of
orders ``rho1`` over the u-end and ``rho2`` over the v-end.  The cover
is determined by three integers (rho1, rho2, m) satisfying

    m * wu * wv == degree * rho1 * rho2,
    rho1 | wu,   rho2 | wv,   gcd(rho1, rho2) == 1,
    gcd(m, rho1) == gcd(m, rho2) == 1,

where ``degree`` is the edge degree (the coarse degree against the
orbifold hyperplane class times wu*wv).  The gcd conditions on m say the
map is representable at the two stacky points.

Sections of a pulled-back bundle are monomials s^I t^J in the football
coordinates, graded so that s has degree rho1 and t degree rho2.  With
the torus characters

    sigma = rho1/(wu*m) * t_u,     tau = rho2/(wv*m) * t_v,

the monomial s^I t^J of the pullback of the degree-n bundle, twisted by
a character chi, carries weight  chi - I*sigma - J*tau.  This makes the
two pure-power sections restrict to the correct fiber weights at the
ends with no further normalization.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from gwloc.exact import LinForm


class Inconsistent(ValueError):
    """Cover data violating its defining arithmetic relations."""


class NoSuchCover(ValueError):
    """No representable cover exists for the requested edge degree."""


@dataclass(frozen=True)
class EdgeCover:
    """A representable football cover of a fixed edge.

    wu, wv   isotropy orders of the two target fixed points
    degree   edge degree d_e (so the curve class is d_e/(wu*wv))
    rho1     source isotropy over the u-end
    rho2     source isotropy over the v-end
    m        covering multiplicity
    """

    wu: int
    wv: int
    degree: int
    rho1: int
    rho2: int
    m: int

    def __post_init__(self):
        ok = (self.wu >= 1 and self.wv >= 1 and self.degree >= 1
              and self.m >= 1
              and self.wu % self.rho1 == 0 and self.wv % self.rho2 == 0
              and gcd(self.rho1, self.rho2) == 1
              and gcd(self.m, self.rho1) == 1 and gcd(self.m, self.rho2) == 1
              and self.m * self.wu * self.wv == self.degree * self.rho1 * self.rho2)
        if not ok:
            raise Inconsistent(
                f"invalid cover (rho1={self.rho1}, rho2={self.rho2}, "
                f"m={self.m}) for edge wu={self.wu}, wv={self.wv}, "
                f"degree={self.degree}")

    @property
    def alpha(self) -> int:
        """Exponent of the cover in the u-chart coordinate."""
        return self.wu * self.m // self.rho1

    @property
    def beta(self) -> int:
        """Exponent of the cover in the v-chart coordinate."""
        return self.wv * self.m // self.rho2

    def sigma(self, u: int) -> LinForm:
        """Torus weight of the football coordinate s (u is a 1-based index)."""
        return LinForm.unit(u).scale(Fraction(self.rho1, self.wu * self.m))

    def tau(self, v: int) -> LinForm:
        return LinForm.unit(v).scale(Fraction(self.rho2, self.wv * self.m))


def candidate_covers(wu: int, wv: int, degree: int) -> list[EdgeCover]:
    """All representable covers for the edge, in isotropy order."""
    found = []
    for rho1 in _divisors(wu):
        for rho2 in _divisors(wv):
            if gcd(rho1, rho2) != 1:
                continue
            num = degree * rho1 * rho2
            if num % (wu * wv):
                continue
            m = num // (wu * wv)
            if m < 1 or gcd(m, rho1) != 1 or gcd(m, rho2) != 1:
                continue
            found.append(EdgeCover(wu, wv, degree, rho1, rho2, m))
    found.sort(key=lambda c: (c.rho1 * c.rho2, c.rho1, c.m))
    return found


def edge_cover_data(wu: int, wv: int, degree: int) -> EdgeCover:
    """The cover for an edge, choosing minimal isotropy when ambiguous."""
    cands = candidate_covers(wu, wv, degree)
    if not cands:
        raise NoSuchCover(
            f"no representable cover: wu={wu}, wv={wv}, degree={degree}")
    return cands[0]


def _divisors(n: int):
    return [d for d in range(1, n + 1) if n % d == 0]


# ---------------------------------------------------------------------------
# Cohomology of line bundles on a football
# ---------------------------------------------------------------------------


def football_cohomology(rho1: int, rho2: int, k: int):
    """Monomial bases of H0 and H1 of the degree-k bundle on F(rho1, rho2).

    Returns two lists of (I, J) exponent pairs: sections are the lattice
    points I, J >= 0 with I*rho1 + J*rho2 == k, and H1 classes are the
    points with I, J <= -1 on the same line.
    """
    if rho1 < 1 or rho2 < 1 or gcd(rho1, rho2) != 1:
        raise Inconsistent(f"not a football: ({rho1}, {rho2})")
    h0 = [(i, (k - i * rho1) // rho2)
          for i in range(0, k // rho1 + 1 if k >= 0 else 0)
          if (k - i * rho1) % rho2 == 0 and k - i * rho1 >= 0]
    h1 = []
    if k < 0:
        for i in range(-1, k // rho1 - 1, -1):
            rem = k - i * rho1
            if rem % rho2 == 0 and rem // rho2 <= -1:
                h1.append((i, rem // rho2))
    return h0, h1


def football_chi(rho1: int, rho2: int, k: int) -> Fraction:
    """Euler characteristic of the degree-k bundle by orbifold RR."""
    if gcd(rho1, rho2) != 1:
        raise Inconsistent(f"not a football: ({rho1}, {rho2})")
    chi = 1 + Fraction(k, rho1 * rho2)
    if rho1 > 1:
        chi -= Fraction((k * pow(rho2, -1, rho1)) % rho1, rho1)
    if rho2 > 1:
        chi -= Fraction((k * pow(rho1, -1, rho2)) % rho2, rho2)
    return chi


@dataclass(frozen=True)
class FootballBundle:
    """Pullback of the degree-n orbifold bundle along an edge cover,
    twisted by a torus character, ready to yield equivariant weights.

    u, v are the 1-based indices of the two fixed points, used to build
    the weights as linear forms in the global parameters.
    """

    cover: EdgeCover
    n: int
    u: int
    v: int
    twist: LinForm

    @property
    def pulled_degree(self) -> int:
        return self.n * self.m

    @property
    def m(self) -> int:
        return self.cover.m

    def _weight(self, I: int, J: int) -> LinForm:
        c = self.cover
        w = self.twist
        if I:
            w = w - c.sigma(self.u).scale(I)
        if J:
            w = w - c.tau(self.v).scale(J)
        return w

    def h0_weights(self) -> tuple[LinForm, ...]:
        h0, _ = football_cohomology(self.cover.rho1, self.cover.rho2,
                                    self.pulled_degree)
        return tuple(self._weight(i, j) for i, j in h0)

    def h1_weights(self) -> tuple[LinForm, ...]:
        _, h1 = football_cohomology(self.cover.rho1, self.cover.rho2,
                                    self.pulled_degree)
        return tuple(self._weight(i, j) for i, j in h1)


# ---------------------------------------------------------------------------
# Formal differences of weight multisets
# ---------------------------------------------------------------------------


class WeightClass:
    """A virtual sum of torus characters: multisets plus/minus of LinForms.

    This is the bookkeeping object for virtual tangent and obstruction
    classes before specialization: ``plus`` entries multiply into an
    equivariant Euler class, ``minus`` entries divide.
    """

    __slots__ = ("plus", "minus")

    def __init__(self, plus=(), minus=()):
        self.plus = tuple(plus)
        self.minus = tuple(minus)

    def add(self, other: "WeightClass") -> "WeightClass":
        return WeightClass(self.plus + other.plus, self.minus + other.minus)

    def sub(self, other: "WeightClass") -> "WeightClass":
        return WeightClass(self.plus + other.minus, self.minus + other.plus)

    def with_plus(self, *forms: LinForm) -> "WeightClass":
        return WeightClass(self.plus + tuple(forms), self.minus)

    def with_minus(self, *forms: LinForm) -> "WeightClass":
        return WeightClass(self.plus, self.minus + tuple(forms))

    def cancel_fixed(self):
        """Strip identically-zero characters, pairing plus against minus.

        Returns (reduced class, leftover zero count on plus side,
        leftover zero count on minus side).
        """
        zp = sum(1 for f in self.plus if f.is_zero())
        zm = sum(1 for f in self.minus if f.is_zero())
        common = min(zp, zm)
        return (WeightClass(tuple(f for f in self.plus if not f.is_zero()),
                            tuple(f for f in self.minus if not f.is_zero())),
                zp - common, zm - common)

    def __eq__(self, other):
        return (isinstance(other, WeightClass)
                and Counter(self.plus) == Counter(other.plus)
                and Counter(self.minus) == Counter(other.minus))

    def __repr__(self):
        return (f"WeightClass(plus=[{', '.join(map(str, self.plus))}], "
                f"minus=[{', '.join(map(str, self.minus))}])")
