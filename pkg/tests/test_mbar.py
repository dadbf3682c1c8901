"""Intersection numbers on genus-zero pointed moduli spaces."""

from itertools import combinations

from hypothesis import given, strategies as st

from gwloc.mbar import Expr, integral_psi

L4 = frozenset({1, 2, 3, 4})
L5 = frozenset({1, 2, 3, 4, 5})


def test_point_counts():
    assert integral_psi(3, []) == 1
    assert integral_psi(4, [1]) == 1
    assert integral_psi(5, [2]) == 1
    assert integral_psi(5, [1, 1]) == 2
    assert integral_psi(6, [1, 1, 1]) == 6
    assert integral_psi(6, [3]) == 1
    assert integral_psi(5, [1]) == 0          # wrong total degree


@given(st.lists(st.integers(0, 3), min_size=3, max_size=7))
def test_string_equation(exps):
    # appending an exponent-0 mark: lower each positive exponent once
    n = len(exps)
    lhs = integral_psi(n + 1, exps + [0])
    rhs = sum(integral_psi(n, exps[:i] + [exps[i] - 1] + exps[i + 1:])
              for i in range(n) if exps[i] > 0)
    assert lhs == rhs


@given(st.lists(st.integers(0, 3), min_size=3, max_size=7))
def test_dilaton_equation(exps):
    n = len(exps)
    lhs = integral_psi(n + 1, exps + [1])
    assert lhs == (n - 2) * integral_psi(n, exps)


def test_boundary_point_on_four_marks():
    assert Expr.boundary(L4, {1, 2}).integrate() == 1
    assert Expr.psi(L4, 3).integrate() == 1
    assert Expr.kappa(L4, 1).integrate() == 1


def test_boundary_complement_is_same_divisor():
    a = Expr.boundary(L5, {1, 2})
    b = Expr.boundary(L5, {3, 4, 5})
    assert (a * Expr.psi(L5, 3)).integrate() == (b * Expr.psi(L5, 3)).integrate()


def test_boundary_self_intersection():
    # normal bundle of D_{12} in the 5-mark space: minus the two node lines
    assert (Expr.boundary(L5, {1, 2}) * Expr.boundary(L5, {1, 2})).integrate() == -1


def test_crossing_boundaries_vanish():
    d = (Expr.boundary(L5, {1, 2}) * Expr.boundary(L5, {2, 3})).integrate()
    assert d == 0


def test_boundary_splits_psi():
    # restricting psi_3 to D_{12} lands it on the 4-mark side
    val = (Expr.boundary(L5, {1, 2}) * Expr.psi(L5, 3)).integrate()
    assert val == 1


def test_node_cotangent_pushforward():
    # psi at the node on the 3-mark side vanishes; on the other side it
    # is a 4-mark cotangent integral
    assert Expr.push(L5, {1, 2}, 1, 0).integrate() == 0
    assert Expr.push(L5, {1, 2}, 0, 1).integrate() == 1


def _kappa1_as_psi_minus_boundary(labels):
    # kappa_1 = sum of cotangent classes minus sum of boundary divisors
    marks = sorted(labels)
    expr = Expr.zero(labels)
    for i in marks:
        expr = expr + Expr.psi(labels, i)
    seen = set()
    m0 = marks[0]
    for size in range(2, len(marks) - 1):
        for S in combinations(marks, size):
            S = frozenset(S)
            key = S if m0 not in S else labels - S
            if key in seen:
                continue
            seen.add(key)
            expr = expr - Expr.boundary(labels, S)
    return expr


def test_kappa_expansion_consistency():
    # the kappa trade-for-psi path and the boundary expansion must agree
    expand = _kappa1_as_psi_minus_boundary(L5)
    direct = Expr.kappa(L5, 1)
    for probe in (Expr.psi(L5, 1), Expr.kappa(L5, 1), Expr.boundary(L5, {4, 5})):
        assert (direct * probe).integrate() == (expand * probe).integrate()


def test_kappa_power_values():
    # classical Weil-Petersson volume numerators in genus 0: 1, 5, 61
    got5 = (Expr.kappa(L5, 1) * Expr.kappa(L5, 1)).integrate()
    expand = _kappa1_as_psi_minus_boundary(L5)
    assert got5 == (expand * expand).integrate() == 5
    L6 = frozenset(range(1, 7))
    k = Expr.kappa(L6, 1)
    assert (k * k * k).integrate() == 61
