"""Exact rational, linear-form, polynomial and rational-function arithmetic.

Every torus weight in the engine is a ``LinForm``: an exact rational
linear combination of the equivariant parameters, indexed 1..N.  After
specialization (each parameter becomes a fixed rational multiple of a
single parameter t) all values live in the univariate rational-function
field represented by ``RatFunc``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class DivisionByZero(ZeroDivisionError):
    """Division by the zero polynomial / rational function."""


class NotPolynomial(ValueError):
    """A rational function expected to reduce to a polynomial did not."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# Linear forms in the equivariant parameters t_1..t_N
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LinForm:
    """Sparse linear form sum_j c_j * t_j with exact rational c_j.

    Stored as a sorted tuple of (index, coefficient) pairs with all
    coefficients nonzero, so equality and hashing are structural.
    """

    terms: tuple[tuple[int, Fraction], ...] = ()

    @staticmethod
    def make(coeffs: Mapping[int, Fraction | int]) -> "LinForm":
        items = []
        for j, c in coeffs.items():
            c = _frac(c)
            if c != 0:
                items.append((int(j), c))
        return LinForm(tuple(sorted(items)))

    @staticmethod
    def unit(j: int, c: Fraction | int = 1) -> "LinForm":
        c = _frac(c)
        return LinForm(((j, c),)) if c != 0 else LinForm()

    def coeff(self, j: int) -> Fraction:
        for i, c in self.terms:
            if i == j:
                return c
        return Fraction(0)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "LinForm") -> "LinForm":
        acc = dict(self.terms)
        for j, c in other.terms:
            acc[j] = acc.get(j, Fraction(0)) + c
        return LinForm.make(acc)

    def __sub__(self, other: "LinForm") -> "LinForm":
        return self + (-other)

    def __neg__(self) -> "LinForm":
        return LinForm(tuple((j, -c) for j, c in self.terms))

    def scale(self, a: Fraction | int) -> "LinForm":
        a = _frac(a)
        if a == 0:
            return LinForm()
        return LinForm(tuple((j, a * c) for j, c in self.terms))

    def __mul__(self, a) -> "LinForm":
        return self.scale(a)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for j, c in self.terms:
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            coef = "" if mag == 1 else f"{mag}*"
            parts.append(f"{sign}{coef}t{j}")
        return "".join(parts)


def specialize_linform(f: LinForm, p: Sequence[Fraction | int]) -> Fraction:
    """Substitute t_j := p[j-1] * t; return the scalar c with f = c*t.

    A zero result is legal here; callers decide whether it is fatal.
    """
    total = Fraction(0)
    for j, c in f.terms:
        if not (1 <= j <= len(p)):
            raise IndexError(f"parameter index {j} outside 1..{len(p)}")
        total += c * _frac(p[j - 1])
    return total


# ---------------------------------------------------------------------------
# Univariate polynomials over Q
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Poly:
    """Sparse univariate polynomial: sorted tuple of (degree, coefficient)."""

    terms: tuple[tuple[int, Fraction], ...] = ()

    @staticmethod
    def make(coeffs: Mapping[int, Fraction | int] | Iterable) -> "Poly":
        if isinstance(coeffs, Mapping):
            items = coeffs.items()
        else:  # dense list, index = degree
            items = enumerate(coeffs)
        acc: dict[int, Fraction] = {}
        for d, c in items:
            c = _frac(c)
            if c != 0:
                acc[int(d)] = acc.get(int(d), Fraction(0)) + c
        return Poly(tuple(sorted((d, c) for d, c in acc.items() if c != 0)))

    @staticmethod
    def const(c: Fraction | int) -> "Poly":
        c = _frac(c)
        return Poly(((0, c),)) if c != 0 else Poly()

    @staticmethod
    def monomial(c: Fraction | int, d: int) -> "Poly":
        c = _frac(c)
        return Poly(((d, c),)) if c != 0 else Poly()

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return self.terms[-1][0] if self.terms else -1

    def leading(self) -> Fraction:
        if not self.terms:
            raise DivisionByZero("zero polynomial has no leading coefficient")
        return self.terms[-1][1]

    def coeff(self, d: int) -> Fraction:
        for e, c in self.terms:
            if e == d:
                return c
        return Fraction(0)

    def __add__(self, other: "Poly") -> "Poly":
        acc = dict(self.terms)
        for d, c in other.terms:
            acc[d] = acc.get(d, Fraction(0)) + c
        return Poly.make(acc)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(tuple((d, -c) for d, c in self.terms))

    def __mul__(self, other: "Poly") -> "Poly":
        acc: dict[int, Fraction] = {}
        for d1, c1 in self.terms:
            for d2, c2 in other.terms:
                acc[d1 + d2] = acc.get(d1 + d2, Fraction(0)) + c1 * c2
        return Poly.make(acc)

    def scale(self, a: Fraction | int) -> "Poly":
        a = _frac(a)
        return Poly.make({d: a * c for d, c in self.terms})

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        q: dict[int, Fraction] = {}
        r = self
        db, lb = other.degree(), other.leading()
        while not r.is_zero() and r.degree() >= db:
            d = r.degree() - db
            c = r.leading() / lb
            q[d] = q.get(d, Fraction(0)) + c
            r = r - Poly.monomial(c, d) * other
        return Poly.make(q), r

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for d, c in reversed(self.terms):
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                var = "t" if d == 1 else f"t^{d}"
                body = var if mag == 1 else f"{mag}*{var}"
            parts.append(f"{sign}{body}")
        return "".join(parts)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    if a.is_zero():
        return a
    return a.scale(1 / a.leading())  # monic normalization


# ---------------------------------------------------------------------------
# Rational functions in one parameter
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RatFunc:
    """Reduced rational function num/den, den monic, gcd(num, den) = 1."""

    num: Poly
    den: Poly

    @staticmethod
    def make(num: Poly, den: Poly) -> "RatFunc":
        if den.is_zero():
            raise DivisionByZero("rational function with zero denominator")
        if num.is_zero():
            return RatFunc(Poly(), Poly.const(1))
        g = poly_gcd(num, den)
        num, _ = num.divmod(g)
        den, _ = den.divmod(g)
        lc = den.leading()
        return RatFunc(num.scale(1 / lc), den.scale(1 / lc))

    @staticmethod
    def const(c: Fraction | int) -> "RatFunc":
        return RatFunc(Poly.const(c), Poly.const(1))

    @staticmethod
    def monomial(c: Fraction | int, d: int) -> "RatFunc":
        """c * t^d, d may be negative."""
        if d >= 0:
            return RatFunc.make(Poly.monomial(c, d), Poly.const(1))
        return RatFunc.make(Poly.const(c), Poly.monomial(1, -d))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return RatFunc.make(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc.make(self.num * other.den, self.den * other.num)

    def as_polynomial(self) -> Poly:
        if self.den != Poly.const(1):
            raise NotPolynomial(f"denominator {self.den} is not 1")
        return self.num

    def __str__(self) -> str:
        if self.den == Poly.const(1):
            return str(self.num)
        return f"({self.num})/({self.den})"


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Field arithmetic dispatch used by trace tooling: op in {+,-,*,/}."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op in ("*", "x"):
        return a * b
    if op == "/":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def constant_coefficient(r: RatFunc) -> Fraction:
    """Coefficient of t^0, requiring r to be a polynomial after reduction."""
    return r.as_polynomial().coeff(0)


def frac_str(x: Fraction) -> str:
    """Serialize a rational as "num/den", omitting "/1"."""
    x = _frac(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
