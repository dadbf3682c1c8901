"""Contracted-component data at a stacky fixed point.

A vertex of valence >= 3 carries a contracted genus-zero component
mapping to the isotropy gerbe of its fixed point.  Its contribution is
an integral over the coarse moduli of pointed rational curves of

* one factor 1/(omega_F - psibar_F / r_F) per adjacent edge flag,
* the equivariant Euler class of each rank->=1 "twisted-sector" bundle
  coming from target tangent directions whose character is nontrivial
  on some flag (numerator side), and
* the inverse Euler class of the analogous obstruction-line bundle
  (denominator side),

times normalization factors for the gerbe and the flag gluings.  The
Chern characters of the twisted-sector bundles are polynomial in psi,
kappa and boundary pushforwards with Bernoulli-polynomial coefficients,
evaluated exactly by the mbar integrator.

The handful of convention choices that are not forced by the classical
(untwisted) limit are collected in ``Conventions``; their default values
are the unique assignment consistent with the pinning battery in
scripts/pin_conventions.py (deformation invariance on convex targets
plus the classical line count on the degree-two del Pezzo surface).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, gcd

from gwloc.mbar import Expr, Term


@dataclass(frozen=True)
class Conventions:
    """Normalization toggles for twisted fixed loci.

    node_measure_exp      exponent x: each gluing node at a point of
                          target isotropy w whose own isotropy is r
                          multiplies the graph by (w/r)**x.  This covers
                          both node types: flags of a contracted
                          component, and direct edge-edge nodes at a
                          2-valent vertex.  A marking sitting on an edge
                          end is not a node and gets no factor.
    component_measure_exp exponent y: each contracted component at a
                          point of isotropy w multiplies by w**y
    psi_divided           pair flag psi classes as psibar/r (else psibar)
    chiodo_boundary       boundary-term prefactor in the Chern
                          characters: "plain", "r", or "r_inv"
    """

    node_measure_exp: int = 1
    component_measure_exp: int = -1
    psi_divided: bool = True
    chiodo_boundary: str = "plain"

    def version_string(self) -> str:
        return (f"conv2:n{self.node_measure_exp}c{self.component_measure_exp}"
                f"p{1 if self.psi_divided else 0}b{self.chiodo_boundary}")


DEFAULT_CONVENTIONS = Conventions()


# ---------------------------------------------------------------------------
# Sector bookkeeping
# ---------------------------------------------------------------------------


def flag_monodromy(w: int, r: int, c: int) -> int:
    """Additive monodromy in Z/w of the component side of a flag.

    c is the multiplicative character of the deck action on the edge
    tangent at the flag (a unit mod r); the node balancing condition
    turns it into the additive class (w/r) * (-c)^{-1} mod w.
    """
    if r == 1:
        return 0
    inv = pow(-c, -1, r)
    return (w // r) * inv % w


def age(char: int, e: int, w: int) -> Fraction:
    """Age of the character ``char`` at a point of monodromy e in Z/w."""
    return Fraction((char * e) % w, w)


def sector_balanced(w: int, monodromies) -> bool:
    """Whether the monodromies at a vertex sum to zero in Z/w."""
    return sum(monodromies) % w == 0


# ---------------------------------------------------------------------------
# Bernoulli polynomials (exact)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _bernoulli(n: int) -> Fraction:
    if n == 0:
        return Fraction(1)
    s = Fraction(0)
    for k in range(n):
        s += comb(n + 1, k) * _bernoulli(k)
    return -s / (n + 1)


def bernoulli_poly(n: int, x: Fraction) -> Fraction:
    x = Fraction(x)
    return sum((comb(n, k) * _bernoulli(k)) * x ** (n - k)
               for k in range(n + 1))


# ---------------------------------------------------------------------------
# Truncated products of intersection expressions
# ---------------------------------------------------------------------------


def term_degree(t: Term) -> int:
    return (sum(e for _, e in t.psis) + sum(t.kappas)
            + sum(p + q + 1 for _, p, q in t.pushes))


def _collect(e: Expr) -> Expr:
    acc = {}
    for t in e.terms:
        key = (t.psis, t.kappas,
               tuple(sorted(t.pushes, key=lambda s: (sorted(s[0]), s[1], s[2]))))
        acc[key] = acc.get(key, Fraction(0)) + t.coef
    return Expr(e.labels, [Term(c, *k) for k, c in acc.items() if c != 0])


def mul_trunc(a: Expr, b: Expr, cap: int) -> Expr:
    out = []
    for ta in a.terms:
        da = term_degree(ta)
        for tb in b.terms:
            if da + term_degree(tb) > cap:
                continue
            psis = dict(ta.psis)
            for i, e in tb.psis:
                psis[i] = psis.get(i, 0) + e
            out.append(Term(ta.coef * tb.coef,
                            tuple(sorted(psis.items())),
                            tuple(sorted(ta.kappas + tb.kappas)),
                            ta.pushes + tb.pushes))
    return _collect(Expr(a.labels, out))


def degree_part(e: Expr, k: int) -> Expr:
    return Expr(e.labels, [t for t in e.terms if term_degree(t) == k])


# ---------------------------------------------------------------------------
# Chern characters of twisted-sector bundles (genus zero)
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _chiodo_ch_cached(m: int, w: int, chi: int, e_tuple, k: int,
                      boundary_mode: str):
    labels = frozenset(range(1, m + 1))
    ages = [Fraction((chi * e) % w, w) for e in e_tuple]
    expr = Expr.kappa(labels, k).scale(bernoulli_poly(k + 1, Fraction(0)))
    for i in range(1, m + 1):
        expr = expr - Expr.psi(labels, i, k).scale(
            bernoulli_poly(k + 1, ages[i - 1]))
    # Boundary corrections.  For k = 1 the node-cotangent sum is empty
    # only when k-1 < 0; here k >= 1 so p+q = k-1 >= 0 has solutions.
    base = min(labels)
    members = sorted(labels)
    rest = [x for x in members if x != base]
    for mask in range(1, 1 << len(rest)):
        S = frozenset(rest[i] for i in range(len(rest)) if (mask >> i) & 1)
        if len(S) < 2 or m - len(S) < 2:
            continue
        e_S = (-sum(e_tuple[i - 1] for i in S)) % w
        r_S = w // gcd(e_S, w) if e_S else 1
        a_S = Fraction((chi * e_S) % w, w)
        a_Sc = Fraction((chi * (-e_S)) % w, w)
        if boundary_mode == "plain":
            pref = Fraction(1)
        elif boundary_mode == "r":
            pref = Fraction(r_S)
        elif boundary_mode == "r_inv":
            pref = Fraction(1, r_S)
        else:
            raise ValueError(f"unknown boundary mode {boundary_mode!r}")
        Sc = labels - S
        for p in range(k):
            q = k - 1 - p
            sgn = Fraction(-1) ** p
            expr = expr + Expr.push(labels, S, p, q).scale(
                pref * sgn * bernoulli_poly(k + 1, a_S) / 2)
            expr = expr + Expr.push(labels, Sc, p, q).scale(
                pref * sgn * bernoulli_poly(k + 1, a_Sc) / 2)
    return _collect(expr.scale(Fraction(1, factorial(k + 1))))


def chiodo_ch(w: int, chi: int, monodromies, k: int,
              boundary_mode: str = "plain") -> Expr:
    """Degree-k Chern character of R-dot for the character ``chi`` line
    on the family of twisted curves with the given special-point
    monodromies (one per point, 0 for untwisted markings)."""
    if k < 1:
        raise ValueError("use the rank formula for k = 0")
    return _chiodo_ch_cached(len(tuple(monodromies)), w, chi,
                             tuple(monodromies), k, boundary_mode)


def sector_rank(w: int, chi: int, monodromies) -> int:
    """h1 - h0 ... actually returns sum(ages) - 1 = h1 when some age is
    positive; 0 means the line is invariant at every point (h0 = 1)."""
    total = sum(Fraction((chi * e) % w, w) for e in monodromies)
    if total == 0:
        return 0
    assert total.denominator == 1, "sector sum must be integral at a legal vertex"
    return int(total) - 1


@dataclass
class SeriesBundle:
    """A twisted-sector bundle tensored with a one-dimensional torus
    weight: rank, the specialized weight scalar (omega = c * t), and the
    Chern classes of the underlying bundle as intersection expressions."""

    omega: Fraction
    rank: int
    cherns: list  # cherns[k] = e_k as an Expr, k = 1..cap


def sector_bundle(w: int, chi: int, monodromies, omega: Fraction,
                  cap: int, boundary_mode: str = "plain") -> SeriesBundle:
    """Chern data of the rank-h1 bundle for character chi, truncated to
    class degree ``cap``.  Chern characters of R-dot are negated (R0
    vanishes in a nontrivial sector) and converted by Newton's identity."""
    h1 = sector_rank(w, chi, monodromies)
    m = len(tuple(monodromies))
    labels = frozenset(range(1, m + 1))
    top = min(cap, m - 3) if m >= 3 else 0
    ch = {k: _chiodo_ch_cached(m, w, chi, tuple(monodromies), k,
                               boundary_mode).scale(-1)
          for k in range(1, top + 1)}
    p = {k: ch[k].scale(factorial(k)) for k in ch}
    e = {0: Expr.const(labels, 1)}
    for k in range(1, top + 1):
        acc = Expr.zero(labels)
        for i in range(1, k + 1):
            part = mul_trunc(e[k - i], p[i], top)
            acc = acc + (part if i % 2 == 1 else part.scale(-1))
        e[k] = _collect(acc.scale(Fraction(1, k)))
    return SeriesBundle(omega, h1, [e[k] for k in range(1, top + 1)])


# ---------------------------------------------------------------------------
# The vertex factor
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FlagData:
    """Specialized data of one flag at a component: source isotropy r,
    the edge tangent weight omega = c * t (the scalar c), and the
    additive monodromy e in Z/w."""

    r: int
    omega: Fraction
    e: int


def vertex_factor(w: int, flags, n_marks: int, numer, denom,
                  conv: Conventions = DEFAULT_CONVENTIONS):
    """Value of the component integral at one vertex.

    flags : sequence of FlagData
    numer : SeriesBundle list whose Euler classes multiply (tangent h1)
    denom : SeriesBundle list whose Euler classes divide (obstruction h1)

    Returns a dict {t-degree: Fraction} (a single entry, kept as a dict
    for uniform composition in the engine).
    """
    f = len(flags)
    m = f + n_marks
    if m < 3:
        raise ValueError("vertex factor needs valence >= 3")
    dim = m - 3
    labels = frozenset(range(1, m + 1))

    measure = Fraction(w) ** conv.component_measure_exp
    for fl in flags:
        measure *= Fraction(w, fl.r) ** conv.node_measure_exp

    # Fast path: no twisted-sector bundles in play.
    if not numer and not denom:
        inv_sum = sum(Fraction(1, fl.r * fl.omega) if conv.psi_divided
                      else Fraction(1, fl.omega) for fl in flags)
        prod = Fraction(1)
        for fl in flags:
            prod *= fl.omega
        val = measure * inv_sum ** dim / prod
        return {-(dim + f): val} if val else {}

    base_degree = 0
    total = Expr.const(labels, 1)
    for idx, fl in enumerate(flags, start=1):
        r_eff = fl.r if conv.psi_divided else 1
        series = Expr.zero(labels)
        for k in range(dim + 1):
            series = series + Expr.psi(labels, idx, k).scale(
                Fraction(1, fl.omega ** (k + 1) * r_eff ** k))
        total = mul_trunc(total, series, dim)
        base_degree -= 1
    for sb in numer:
        series = Expr.const(labels, sb.omega ** sb.rank)
        for k in range(1, min(len(sb.cherns), dim) + 1):
            series = series + sb.cherns[k - 1].scale(sb.omega ** (sb.rank - k))
        total = mul_trunc(total, series, dim)
        base_degree += sb.rank
    for sb in denom:
        # invert 1 + sum_k e_k / omega^k, then divide by omega^rank
        tail = Expr.zero(labels)
        for k in range(1, min(len(sb.cherns), dim) + 1):
            tail = tail + sb.cherns[k - 1].scale(Fraction(1, sb.omega ** k))
        inv = Expr.const(labels, 1)
        power = Expr.const(labels, 1)
        for j in range(1, dim + 1):
            power = mul_trunc(power, tail, dim)
            if not power.terms:
                break
            inv = inv + (power if j % 2 == 0 else power.scale(-1))
        inv = inv.scale(Fraction(1, sb.omega ** sb.rank))
        total = mul_trunc(total, inv, dim)
        base_degree -= sb.rank

    val = measure * degree_part(total, dim).integrate()
    deg = base_degree - dim
    return {deg: val} if val else {}
