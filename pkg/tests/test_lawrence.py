import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from src.atlas import Polarity, atlas_from_mapping
from src.errors import InputError
from src.fourientation import Fourientation
from src.lawrence import (Side, atlas_simplices, build_lawrence, chi_atlas, chi_simplex, chi_vertex, classify_family,
                          common_face, enumerate_maximal_simplices, format_volume, geometric_oracle,
                          heights_from_weights, interiors_disjoint, is_maximal_simplex, lower_facet_simplices,
                          polytope_volume, regular_triangulation_from_heights, simplex_of, simplex_volume,
                          uncovered_point, weights_from_heights)

REGULAR_THETA = {1: 1, 2: 0, -1: 0, -2: 0}


@pytest.fixture(scope="module")
def theta_lm(theta):
    return build_lawrence(theta)


def test_theta_lawrence_matrix(theta_lm):
    assert theta_lm.matrix == ((-1, -1, 0, 0), (1, 0, 1, 0), (0, 1, 0, 1))
    assert theta_lm.rank == 3 and theta_lm.dimension == 2
    assert theta_lm.point(-2) == [0, 0, 1]


def test_theta_simplices(theta_lm):
    simplices = enumerate_maximal_simplices(theta_lm)
    assert len(simplices) == 4
    assert not is_maximal_simplex(theta_lm, {1, 2})
    assert not is_maximal_simplex(theta_lm, {1, 2, 3})


@pytest.mark.parametrize("name", ["theta", "triangle", "path2", "k4"])
def test_simplex_count_matches_oriented_bases(request, name):
    m = request.getfixturevalue(name)
    lm = build_lawrence(m)
    assert len(enumerate_maximal_simplices(lm)) == len(m.bases) * 2 ** (m.n - m.r)


def test_chi_round_trip(triangle):
    for side in (Side.PRIMAL, Side.DUAL):
        lm = build_lawrence(triangle, side)
        for s in enumerate_maximal_simplices(lm):
            ob = chi_simplex(lm, s)
            assert ob.polarity == lm.polarity
            assert simplex_of(ob) == s


def test_chi_simplex_on_theta(theta_lm):
    ob = chi_simplex(theta_lm, {1, -1, 2})
    assert ob.basis == frozenset({0})
    assert str(ob.fourientation) == "b+"
    with pytest.raises(InputError):
        chi_simplex(theta_lm, {1, 2})
    with pytest.raises(InputError):
        chi_vertex(0)


def test_dual_side_uses_internal_atlases(theta):
    lm = build_lawrence(theta, Side.DUAL)
    assert lm.polarity == Polarity.INTERNAL
    assert lm.matrix[0] == (-1, 1, 0, 0)
    ob = chi_simplex(lm, {1, 2, -2})
    assert ob.basis == frozenset({0})
    assert str(ob.fourientation) == "+b"


def test_volumes(theta_lm):
    assert simplex_volume(theta_lm) == (2, 2)
    assert format_volume(1, *simplex_volume(theta_lm)) == "√2/2"
    assert polytope_volume(theta_lm) == (2, 2, 2)
    assert format_volume(*polytope_volume(theta_lm)) == "√2"


def test_format_volume():
    assert format_volume(3, 1, 2) == "3/2"
    assert format_volume(4, 1, 2) == "2"
    assert format_volume(3, 3, 6) == "√3/2"
    assert format_volume(16, 6, 120) == "2√6/15"


def test_regular_triangulation_on_theta(theta_lm):
    atlas = regular_triangulation_from_heights(theta_lm, REGULAR_THETA)
    assert atlas.as_dict() == {"1": "b+", "2": "-b"}
    expected = {frozenset({1, -1, 2}), frozenset({-1, 2, -2})}
    assert set(atlas_simplices(atlas)) == expected
    assert set(lower_facet_simplices(theta_lm, REGULAR_THETA)) == expected


def test_heights_and_weights(theta_lm):
    assert weights_from_heights(theta_lm, REGULAR_THETA) == [1, 0]
    h = heights_from_weights([3, -2])
    assert h == {1: 3, -1: 0, 2: 0, -2: 2}
    assert weights_from_heights(theta_lm, h) == [3, -2]
    with pytest.raises(InputError):
        weights_from_heights(theta_lm, {1: 1})


def test_non_generic_heights(theta_lm):
    with pytest.raises(InputError):
        regular_triangulation_from_heights(theta_lm, {1: 1, 2: 1, -1: 0, -2: 0})


def test_classify_family(theta_lm, theta):
    regular = atlas_simplices(regular_triangulation_from_heights(theta_lm, REGULAR_THETA))
    verdict = classify_family(theta_lm, regular)
    assert verdict.dissection and verdict.triangulation
    assert not classify_family(theta_lm, enumerate_maximal_simplices(theta_lm)).dissection
    bad = atlas_from_mapping(theta, {frozenset({0}): Fourientation.parse("b+"),
                                     frozenset({1}): Fourientation.parse("+b")})
    verdict = classify_family(theta_lm, atlas_simplices(bad))
    assert not verdict.dissection and not verdict.triangulation
    assert chi_atlas(theta_lm, atlas_simplices(bad)).as_dict() == bad.as_dict()


def test_oracle_agrees_with_atlas_criteria(theta, triangle):
    for m, side in ((theta, Side.PRIMAL), (theta, Side.DUAL), (triangle, Side.DUAL)):
        lm = build_lawrence(m, side)
        for s1, s2 in itertools.combinations(enumerate_maximal_simplices(lm), 2):
            geo = geometric_oracle(lm, s1, s2)
            assert interiors_disjoint(lm, s1, s2) != geo.interiors_intersect
            assert common_face(lm, s1, s2) == geo.common_face


def test_removing_a_simplex_leaves_a_gap(theta_lm):
    regular = atlas_simplices(regular_triangulation_from_heights(theta_lm, REGULAR_THETA))
    assert uncovered_point(theta_lm, regular) is None
    gap = uncovered_point(theta_lm, regular[1:])
    assert gap is not None
    assert all(isinstance(x, Fraction) for x in gap)


def test_loops_and_coloops_are_rejected(fig5, path2):
    with pytest.raises(InputError) as info:
        build_lawrence(fig5)
    assert info.value.witness == {"edge": 3, "side": "primal"}
    with pytest.raises(InputError):
        build_lawrence(path2, Side.DUAL)
    build_lawrence(path2)


@settings(max_examples=30, deadline=None)
@given(h=st.lists(st.integers(min_value=0, max_value=9), min_size=6, max_size=6),
       side=st.sampled_from([Side.PRIMAL, Side.DUAL]))
def test_lower_facets_match_regular_atlas(triangle, h, side):
    lm = build_lawrence(triangle, side)
    heights = dict(zip(lm.vertex_ids(), h))
    w = weights_from_heights(lm, heights)
    assume(all(v.dot(w) != 0 for v in triangle.vectors(lm.vector_kind)))
    atlas = regular_triangulation_from_heights(lm, heights)
    assert set(lower_facet_simplices(lm, heights)) == set(atlas_simplices(atlas))
    assert classify_family(lm, atlas_simplices(atlas)).triangulation
