"""Exact intersection numbers on moduli of stable genus-zero pointed curves.

Supported classes: cotangent-line classes psi_i, kappa classes, boundary
divisors, and pushforwards of monomials in the two node cotangent lines
along boundary inclusions.  Products of these are integrated by the
classical recursions:

* a boundary factor splits the integral into a product over the two
  sides, with the node replacing the split-off marks;
* a kappa class is traded for a cotangent-line power of a fresh point
  (with the standard comparison corrections for the other factors);
* a pure cotangent monomial integrates to the multinomial value.

Everything is exact and memoized.  Marks are integers; internal node
marks use a disjoint range, so callers can use any small positive ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial


# A push (S, p, q) denotes the pushforward to the ambient moduli space of
# psi_node'^p * psi_node''^q along the boundary divisor whose one side
# carries exactly the marks in S (prime side = S side).  The plain
# boundary divisor is (S, 0, 0).  S is canonicalized to exclude the
# smallest mark, flipping (p, q) as needed, so that equal divisors always
# compare equal and incompatible ones are exactly the "crossing" pairs.


@dataclass(frozen=True)
class Term:
    coef: Fraction
    psis: tuple[tuple[int, int], ...]        # sorted (mark, exponent), exp > 0
    kappas: tuple[int, ...]                  # sorted kappa indices, each >= 1
    pushes: tuple[tuple[frozenset, int, int], ...]


def _canon_push(labels: frozenset, S: frozenset, p: int, q: int):
    m = min(labels)
    if m in S:
        S, p, q = labels - S, q, p
    return (S, p, q)


class Expr:
    """A formal sum of Terms on a moduli space with a fixed mark set."""

    def __init__(self, labels: frozenset, terms=None):
        self.labels = frozenset(labels)
        self.terms: list[Term] = list(terms) if terms else []

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(labels) -> "Expr":
        return Expr(labels)

    @staticmethod
    def const(labels, c) -> "Expr":
        c = Fraction(c)
        if c == 0:
            return Expr(labels)
        return Expr(labels, [Term(c, (), (), ())])

    @staticmethod
    def psi(labels, i, exp: int = 1) -> "Expr":
        if exp == 0:
            return Expr.const(labels, 1)
        return Expr(labels, [Term(Fraction(1), ((i, exp),), (), ())])

    @staticmethod
    def kappa(labels, k: int) -> "Expr":
        if k == 0:
            return Expr.const(labels, len(labels) - 2)
        return Expr(labels, [Term(Fraction(1), (), (k,), ())])

    @staticmethod
    def push(labels, S, p: int = 0, q: int = 0) -> "Expr":
        S = frozenset(S)
        labels = frozenset(labels)
        if len(S) < 2 or len(labels - S) < 2:
            raise ValueError("boundary divisor needs at least two marks per side")
        cp = _canon_push(labels, S, p, q)
        return Expr(labels, [Term(Fraction(1), (), (), (cp,))])

    @staticmethod
    def boundary(labels, S) -> "Expr":
        return Expr.push(labels, S, 0, 0)

    # -- ring operations ----------------------------------------------
    def __add__(self, other: "Expr") -> "Expr":
        assert self.labels == other.labels
        return Expr(self.labels, self.terms + other.terms)

    def __sub__(self, other: "Expr") -> "Expr":
        return self + other.scale(-1)

    def scale(self, c) -> "Expr":
        c = Fraction(c)
        if c == 0:
            return Expr(self.labels)
        return Expr(self.labels,
                    [Term(t.coef * c, t.psis, t.kappas, t.pushes) for t in self.terms])

    def __mul__(self, other: "Expr") -> "Expr":
        assert self.labels == other.labels
        out = []
        for a in self.terms:
            for b in other.terms:
                psis: dict[int, int] = dict(a.psis)
                for i, e in b.psis:
                    psis[i] = psis.get(i, 0) + e
                out.append(Term(a.coef * b.coef,
                                tuple(sorted(psis.items())),
                                tuple(sorted(a.kappas + b.kappas)),
                                a.pushes + b.pushes))
        return Expr(self.labels, out)

    def integrate(self) -> Fraction:
        total = Fraction(0)
        for t in self.terms:
            total += t.coef * _integrate_term(self.labels, t.psis, t.kappas, t.pushes)
        return total


def integral_psi(n: int, exponents) -> Fraction:
    """Integral of a cotangent-line monomial over the n-pointed space."""
    exps = [e for e in exponents if e]
    if sum(exps) != n - 3:
        return Fraction(0)
    denom = 1
    for e in exps:
        denom *= factorial(e)
    return Fraction(factorial(n - 3), denom)


# ---------------------------------------------------------------------------
# The recursive integrator
# ---------------------------------------------------------------------------


def _relabel_key(labels, psis, kappas, pushes):
    order = {lab: i for i, lab in enumerate(sorted(labels))}
    rp = tuple(sorted((order[i], e) for i, e in psis))
    rb = tuple(sorted((tuple(sorted(order[x] for x in S)), p, q)
                      for S, p, q in pushes))
    return (len(labels), rp, tuple(kappas), rb)


_memo: dict = {}


def _integrate_term(labels, psis, kappas, pushes) -> Fraction:
    if len(labels) < 3:
        return Fraction(0)
    key = _relabel_key(labels, psis, kappas, pushes)
    if key in _memo:
        return _memo[key]
    val = _integrate_uncached(labels, psis, kappas, pushes)
    _memo[key] = val
    return val


def _integrate_uncached(labels, psis, kappas, pushes) -> Fraction:
    # 1. Merge repeated boundary divisors via the self-intersection rule
    #    (excess class is minus the sum of the two node cotangent lines).
    by_S: dict[frozenset, list] = {}
    for S, p, q in pushes:
        by_S.setdefault(S, []).append((p, q))
    for S, lst in by_S.items():
        if len(lst) > 1:
            (p1, q1), (p2, q2) = lst[0], lst[1]
            rest_pushes = tuple((T, p, q) for T, pp in by_S.items() if T != S
                                for p, q in pp)
            remaining_same = [(S,) + pq for pq in lst[2:]]
            merged_a = (S, p1 + p2 + 1, q1 + q2)
            merged_b = (S, p1 + p2, q1 + q2 + 1)
            out = Fraction(0)
            for merged in (merged_a, merged_b):
                new_pushes = rest_pushes + (merged,) + tuple(
                    (S, pp, qq) for S, pp, qq in remaining_same)
                out -= _integrate_term(labels, psis, kappas, new_pushes)
            return out

    # 2. Restrict to a boundary stratum if a push is present.
    if pushes:
        S0, p0, q0 = min(pushes, key=lambda t: (sorted(t[0]), t[1], t[2]))
        others = [t for t in pushes if t != (S0, p0, q0)]
        node_a = min(labels | {0}) - 1  # fresh marks for the two node branches
        node_b = node_a - 1
        side_a = S0 | {node_a}             # carries the marks of S0
        side_b = (labels - S0) | {node_b}

        # Distribute cotangent factors; a mark's class restricts to the
        # factor containing it, node powers go to their own sides.
        psis_a = {node_a: p0} if p0 else {}
        psis_b = {node_b: q0} if q0 else {}
        for i, e in psis:
            (psis_a if i in S0 else psis_b)[i] = \
                (psis_a if i in S0 else psis_b).get(i, 0) + e

        # Remaining pushes restrict side by side; crossing pairs vanish.
        pushes_a, pushes_b = [], []
        for T, p, q in others:
            if T <= S0:
                pushes_a.append(_canon_push(frozenset(side_a), T, p, q))
            elif T >= S0:
                TT = (T - S0) | {node_b}
                if len(TT) < 2 or len(frozenset(side_b) - TT) < 2:
                    return Fraction(0)
                pushes_b.append(_canon_push(frozenset(side_b), TT, p, q))
            elif not (T & S0):
                if len(frozenset(side_b) - T) < 2:
                    return Fraction(0)
                pushes_b.append(_canon_push(frozenset(side_b), T, p, q))
            else:
                return Fraction(0)  # crossing divisors: empty intersection

        # kappa classes restrict to the sum of the factor kappas.
        total = Fraction(0)
        for split in range(1 << len(kappas)):
            ka, kb = [], []
            for idx, k in enumerate(kappas):
                (ka if (split >> idx) & 1 else kb).append(k)
            va = _integrate_term(frozenset(side_a),
                                 tuple(sorted(psis_a.items())),
                                 tuple(sorted(ka)), tuple(sorted(pushes_a)))
            if va == 0:
                continue
            vb = _integrate_term(frozenset(side_b),
                                 tuple(sorted(psis_b.items())),
                                 tuple(sorted(kb)), tuple(sorted(pushes_b)))
            total += va * vb
        return total

    # 3. Trade one kappa for a cotangent power at a fresh mark.
    if kappas:
        k, rest = kappas[0], kappas[1:]
        new = max(3, max(labels, default=0) + 1, 1000)
        big = frozenset(labels) | {new}
        # pullback corrections: psi_i -> psi_i - D_{i,new}; kappa_m -> kappa_m - psi_new^m
        expr = Expr.psi(big, new, k + 1)
        for i, e in psis:
            base = Expr.psi(big, i) - Expr.push(big, frozenset({i, new}))
            for _ in range(e):
                expr = expr * base
        for m in rest:
            expr = expr * (Expr.kappa(big, m) - Expr.psi(big, new, m))
        return expr.integrate()

    # 4. Pure cotangent monomial.
    return integral_psi(len(labels), [e for _, e in psis])
