"""Weighted projective targets, chain structures, specializations."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gwloc.targets import (ChainStructure, Specialization, WeightedProjSpace,
                           bundle_fiber_weight, chain_specialization,
                           find_chain_structures, fixed_points,
                           gorenstein_check, hyperplane_lift,
                           point_class_integral, random_specialization,
                           tangent_weights)

weight_vectors = st.lists(st.integers(1, 6), min_size=2, max_size=5)


def test_quintic_chain():
    space = WeightedProjSpace((1, 1, 1, 1, 1))
    (chain,) = find_chain_structures(space, 5)
    assert chain.exponents == (4, 4, 4, 4, 5)
    spec = chain_specialization(chain)
    assert spec.p == (1, -4, 16, -64, 256)
    assert spec.is_nondegenerate(space)


def test_p123_chain():
    space = WeightedProjSpace((1, 2, 3))
    (chain,) = find_chain_structures(space, 9)
    assert chain.exponents == (7, 3, 3)
    # a_j w_j + w_{j+1} = d at every step, a_N w_N = d
    assert 7 * 1 + 2 == 9 and 3 * 2 + 3 == 9 and 3 * 3 == 9


def test_chain_structure_validates():
    space = WeightedProjSpace((1, 1, 1, 1, 1))
    with pytest.raises(ValueError):
        ChainStructure(space, (4, 4, 4, 4, 4), 5)


def test_gorenstein():
    assert gorenstein_check(WeightedProjSpace((1, 1, 1, 1, 1)), 5) == (True, [])
    ok, bad = gorenstein_check(WeightedProjSpace((1, 2, 3)), 9)
    assert not ok and bad == [2]          # w_2 = 2 does not divide 9
    assert gorenstein_check(WeightedProjSpace((1, 1, 1, 2)), 4)[0]


def test_tangent_weights_shape():
    space = WeightedProjSpace((1, 2, 3))
    tw = tangent_weights(space, 2)
    assert len(tw) == space.dim
    # direction i at point j carries t_i - (w_i/w_j) t_j
    forms = {str(t.form) for t in tw}
    assert "t1-1/2*t2" in forms and "-3/2*t2+t3" in forms


def test_bundle_fiber_weight():
    space = WeightedProjSpace((1, 1, 1, 1, 1))
    assert str(bundle_fiber_weight(space, 5, 2)) == "-5*t2"
    assert str(hyperplane_lift(space, 3)) == "-t3"


@given(weight_vectors, st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_random_specialization_nondegenerate(weights, seed):
    space = WeightedProjSpace(tuple(weights))
    spec = random_specialization(space, random.Random(seed))
    assert spec.is_nondegenerate(space)
    # deterministic under the same seed
    again = random_specialization(space, random.Random(seed))
    assert again.p == spec.p


def test_degenerate_detection():
    space = WeightedProjSpace((1, 2))
    # p_1/w_1 == p_2/w_2 collides
    assert not Specialization.make((1, 2)).is_nondegenerate(space)
    assert not Specialization.make((0, 1)).is_nondegenerate(space)
    assert Specialization.make((1, 3)).is_nondegenerate(space)


@given(weight_vectors, st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_point_class_calibration(weights, seed):
    # sum over fixed points of H^{N-1}/e(T) equals 1/(w_1...w_N)
    space = WeightedProjSpace(tuple(weights))
    spec = random_specialization(space, random.Random(seed))
    total = point_class_integral(space, spec)
    assert total == Fraction(1, space.weight_product())


def test_fixed_points_isotropy():
    pts = fixed_points(WeightedProjSpace((1, 2, 3)))
    assert [p.isotropy for p in pts] == [1, 2, 3]
