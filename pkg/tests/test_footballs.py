"""Line bundles on orbifold spheres with two special points."""

import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from gwloc.exact import LinForm
from gwloc.footballs import (EdgeCover, FootballBundle, Inconsistent,
                             NoSuchCover, WeightClass, candidate_covers,
                             edge_cover_data, football_chi,
                             football_cohomology)

coprime_pairs = st.tuples(st.integers(1, 4), st.integers(1, 4)).filter(
    lambda p: gcd(p[0], p[1]) == 1)


def test_classical_line():
    # isotropy (1,1) is an honest projective line
    for d in range(0, 7):
        h0, h1 = football_cohomology(1, 1, d)
        assert len(h0) == d + 1 and not h1
    for d in range(-6, 0):
        h0, h1 = football_cohomology(1, 1, d)
        assert not h0 and len(h1) == -d - 1


def test_small_orbifold_cases():
    # degree must land on the lattice I*rho1 + J*rho2
    h0, h1 = football_cohomology(2, 3, 7)
    assert set(h0) == {(2, 1)} and not h1          # 2*2 + 1*3
    h0, h1 = football_cohomology(2, 3, -7)
    assert not h0 and set(h1) == {(-2, -1)}
    h0, h1 = football_cohomology(2, 3, 1)
    assert not h0 and not h1                       # chi can still be positive


def test_not_a_football():
    with pytest.raises(Inconsistent):
        football_cohomology(2, 4, 3)
    with pytest.raises(Inconsistent):
        football_chi(2, 2, 1)


@given(coprime_pairs, st.integers(-24, 24))
@settings(max_examples=300, deadline=None)
def test_riemann_roch(pair, k):
    r1, r2 = pair
    h0, h1 = football_cohomology(r1, r2, k)
    assert len(h0) - len(h1) == football_chi(r1, r2, k)


@given(coprime_pairs, st.integers(-24, 24))
@settings(max_examples=120, deadline=None)
def test_serre_style_pairing(pair, k):
    # h1 of degree k equals h0 of the dual degree -k - r1 - r2 + ...
    # stated on the coarse pattern: lattice points with strictly
    # negative coordinates biject with nonnegative ones after
    # (I, J) -> (-1-I, -1-J)
    r1, r2 = pair
    _, h1 = football_cohomology(r1, r2, k)
    dual = -k - r1 - r2
    h0d, _ = football_cohomology(r1, r2, dual)
    assert len(h1) == len(h0d)


def test_riemann_roch_batch_200():
    rng = random.Random("football-oracle")
    done = 0
    while done < 200:
        r1, r2 = rng.randint(1, 4), rng.randint(1, 4)
        if gcd(r1, r2) != 1:
            continue
        k = rng.randint(-6, 6)
        h0, h1 = football_cohomology(r1, r2, k)
        assert len(h0) - len(h1) == football_chi(r1, r2, k)
        done += 1


def test_edge_cover_data():
    cov = edge_cover_data(1, 1, 3)
    assert cov.m == 3 and cov.rho1 == 1 and cov.rho2 == 1
    # edge between isotropy-2 and isotropy-3 points, minimal degree
    cov = edge_cover_data(2, 3, 1)
    assert (cov.rho1, cov.rho2, cov.m) == (2, 3, 1)
    # no football covers an edge whose branch orders share a factor
    with pytest.raises(NoSuchCover):
        edge_cover_data(2, 4, 1)
    with pytest.raises(NoSuchCover):
        edge_cover_data(3, 3, 1)


def test_candidate_covers_are_consistent():
    for wu, wv in ((1, 1), (1, 2), (2, 3), (1, 4), (3, 4)):
        for d in range(1, 9):
            for cov in candidate_covers(wu, wv, d):
                assert gcd(cov.rho1, cov.rho2) == 1 and cov.m >= 1
                # orbifold covering degree matches the edge class
                assert Fraction(cov.m, cov.rho1 * cov.rho2) == Fraction(d, wu * wv)
                assert cov.rho1 == wu // gcd(wu, d)
                assert cov.rho2 == wv // gcd(wv, d)


def test_bundle_weights_count_matches_cohomology():
    cov = edge_cover_data(1, 1, 2)
    bundle = FootballBundle(cov, 5, 1, 2, LinForm.unit(1).scale(-5))
    h0 = bundle.h0_weights()
    assert len(h0) == bundle.pulled_degree + 1


def test_weight_class_arithmetic():
    f = LinForm.unit(1)
    zero = LinForm.make({})
    wc = WeightClass(plus=(f, zero), minus=(zero, zero))
    reduced, extra_plus, extra_minus = wc.cancel_fixed()
    assert reduced == WeightClass(plus=(f,))
    assert (extra_plus, extra_minus) == (0, 1)
    flipped = WeightClass().sub(WeightClass(plus=(f,)))
    assert flipped.minus == (f,) and not flipped.plus
