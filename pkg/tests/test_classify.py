"""Arithmetic classification: chains, loops, invertible decompositions."""

import pytest
from hypothesis import given, settings, strategies as st

from gwloc.classify import (MalformedInput, MonomialSet, find_invertible,
                            regularizable_check, scan)
from gwloc.targets import WeightedProjSpace, find_chain_structures


def test_mixed_loop_chain_row():
    # weights (6,9,2,17,17), degree 51: splits as a loop on the (6,9)
    # coordinates with exponents (7,5) plus a chain on (2,17,17) with
    # exponents (17,2,3); not Gorenstein.
    space = WeightedProjSpace((6, 9, 2, 17, 17))
    decs = find_invertible(space, 51)
    assert decs
    shapes = {
        tuple(sorted((b.kind, tuple(sorted(space.weight(i) for i in b.indices)),
                      b.exponents) for b in dec.blocks))
        for dec in decs
    }
    assert (("chain", (2, 17, 17), (17, 2, 3)),
            ("loop", (6, 9), (7, 5))) in shapes
    (row,) = scan([((6, 9, 2, 17, 17), 51)])
    assert row.invertible and row.has_loop_block and not row.gorenstein
    assert not row.chain     # no full-length chain on this ordering


def test_non_invertible_row():
    (row,) = scan([((3, 9, 8, 20, 5), 45)])
    assert not row.invertible and row.decompositions == 0


def test_scan_isolates_bad_rows():
    rows = scan([((1, 1), 2), ((0, 1), 2)])
    assert rows[0].error == "" and rows[1].error != ""


def test_block_exponent_identities():
    # every reported block satisfies its defining arithmetic
    space = WeightedProjSpace((6, 9, 2, 17, 17))
    for dec in find_invertible(space, 51):
        for b in dec.blocks:
            w = [space.weight(i) for i in b.indices]
            a = b.exponents
            k = len(w)
            if b.kind == "chain":
                assert all(a[j] * w[j] + w[j + 1] == 51 for j in range(k - 1))
                assert a[-1] * w[-1] == 51
            else:
                assert all(a[j] * w[j] + w[(j + 1) % k] == 51
                           for j in range(k))


def test_blocks_partition_indices():
    space = WeightedProjSpace((6, 9, 2, 17, 17))
    for dec in find_invertible(space, 51):
        seen = [i for b in dec.blocks for i in b.indices]
        assert sorted(seen) == [1, 2, 3, 4, 5]


def test_regularizable_not_inside():
    # On P(1,1,2) with degree 5, the set {x^4 y, y^3 z} leaves the
    # weight-2 coordinate without any z^a * other monomial, so no
    # directed-line cover can regularize it.
    space = WeightedProjSpace((1, 1, 2))
    mons = MonomialSet.make([(4, 1, 0), (0, 3, 1)])
    verdict = regularizable_check(mons, space, 5)
    assert verdict.verdict == "not"
    assert "weight 2" in verdict.reason


def test_regularizable_gorenstein_shortcut():
    space = WeightedProjSpace((1, 1, 1))
    mons = MonomialSet.make([(3, 0, 0), (0, 3, 0), (0, 0, 3)])
    assert regularizable_check(mons, space, 3).verdict == "regularizable-inside"


def test_regularizable_with_cover():
    # P(1,1,2), degree 5: y z^2 supplies the edge 3 -> 2 (z-power times a
    # linear variable), which is exactly the line cover the weight-2
    # coordinate needs.
    space = WeightedProjSpace((1, 1, 2))
    mons = MonomialSet.make([(0, 1, 2)])
    verdict = regularizable_check(mons, space, 5)
    assert verdict.verdict == "regularizable-inside"
    assert verdict.witness == ((3, 2),)
    # degree mismatch is rejected before any graph logic runs
    with pytest.raises(MalformedInput):
        regularizable_check(MonomialSet.make([(1, 0, 2)]), space, 4)


def test_monomial_validation():
    space = WeightedProjSpace((1, 2))
    with pytest.raises(MalformedInput):
        MonomialSet.make([(1, 1, 1)]).validate(space, 3)
    with pytest.raises(MalformedInput):
        MonomialSet.make([(1, -1)]).validate(space, 3)


@given(st.lists(st.integers(1, 4), min_size=2, max_size=4),
       st.integers(1, 30))
@settings(max_examples=80, deadline=None)
def test_chain_search_solutions_check_out(weights, d):
    space = WeightedProjSpace(tuple(weights))
    for chain in find_chain_structures(space, d):
        a, w = chain.exponents, weights
        assert all(a[j] * w[j] + w[j + 1] == d for j in range(len(w) - 1))
        assert a[-1] * w[-1] == d
