import itertools
from collections import Counter

import pytest

from bruhat_poincare.errors import HypothesisViolated, NonGenericHeight, SizeGuardError
from bruhat_poincare.permutations import Permutation, all_permutations
from bruhat_poincare.poincare import a_polynomial, poincare_polynomial
from bruhat_poincare.polynomial import IntPolynomial
from bruhat_poincare.polytope import bip_polytope, convex_hull, moment_vertex
from bruhat_poincare.retraction import (
    RetractionSequence, default_height, h_retraction, orient_by_h, poincare_from_retraction,
    search_retraction, sequence_to_json, smooth_step_certificate, validate_sequence,
)

from conftest import perm

TABLE_HVEC = (12, 2, -1, -2)
HEXAGON = list(itertools.permutations((1, 2, 3)))


def test_default_height_strictly_decreasing():
    a = default_height(5)
    assert all(x > y for x, y in zip(a, a[1:]))


def test_orientation_pyramid(pyramid_points):
    P = convex_hull(pyramid_points)
    o = orient_by_h(P, (-2, -1, 3))
    assert sorted(o.asc) == [0, 1, 2, 2, 3]
    assert sum(o.asc) == len(P.edges)


def test_non_generic_height_rejected():
    P = convex_hull([(0, 0), (1, 0), (0, 1)])
    with pytest.raises(NonGenericHeight):
        orient_by_h(P, (0, 1))


def test_single_point():
    P = convex_hull([(1, 2, 3)])
    assert orient_by_h(P, (3, 2, 1)).asc == (0,)
    for rs in (h_retraction(P, (3, 2, 1)), search_retraction(P)):
        assert rs.dims == (0,)
        assert poincare_from_retraction(rs) == IntPolynomial((1,))
        assert smooth_step_certificate(P, rs)


def test_pyramid_h_retraction(pyramid_points):
    P = convex_hull(pyramid_points)
    rs = h_retraction(P, (-2, -1, 3))
    assert rs.dims == (3, 2, 2, 1, 0)
    assert poincare_from_retraction(rs) == IntPolynomial((1, 0, 1, 0, 2, 0, 1))
    # the first vertex (0,0,-1) sees directions of determinant -2
    assert P.vertices[rs.vertex_order[0]] == (0, 0, -1)
    assert smooth_step_certificate(P, rs) is False


def test_pyramid_figure_coordinates():
    # base (+-1,0,0), (0,+-1,0), apex (0,0,1): heights -2,-1,1,2,3
    P = convex_hull([(1, 0, 0), (0, 1, 0), (-1, 0, 0), (0, -1, 0), (0, 0, 1)])
    rs = h_retraction(P, (-2, -1, 3))
    heights = [sum(x * y for x, y in zip((-2, -1, 3), P.vertices[v])) for v in rs.vertex_order]
    assert heights == [-2, -1, 1, 2, 3]
    assert rs.dims == (3, 2, 2, 1, 0)


def test_pyramid_search(pyramid_points):
    P = convex_hull(pyramid_points)
    rs = search_retraction(P)
    assert rs is not None
    assert poincare_from_retraction(rs) == IntPolynomial((1, 0, 1, 0, 2, 0, 1))


def test_hexagon_search_and_certificate():
    P = convex_hull(HEXAGON)
    rs = search_retraction(P)
    assert rs is not None and rs.source == "search"
    assert poincare_from_retraction(rs) == IntPolynomial((1, 0, 4, 0, 1))
    assert smooth_step_certificate(P, rs)


def test_worked_tables_dims():
    e = Permutation.identity(4)
    for word, expected in [("4231", {3: 1, 2: 11, 1: 7, 0: 1}), ("3412", {3: 1, 2: 7, 1: 5, 0: 1})]:
        w = perm(word)
        P = bip_polytope(e, w)
        rs = h_retraction(P, TABLE_HVEC)
        assert Counter(rs.dims) == expected
        assert poincare_from_retraction(rs) == poincare_polynomial(w)
        assert smooth_step_certificate(P, rs)


def test_h_retraction_order_follows_height():
    P = bip_polytope(Permutation.identity(4), perm("3412"))
    rs = h_retraction(P, TABLE_HVEC)
    heights = [sum(x * y for x, y in zip(TABLE_HVEC, P.vertices[v])) for v in rs.vertex_order]
    assert heights == sorted(heights)
    assert P.vertices[rs.vertex_order[-1]] == moment_vertex(perm("3412"))


def test_counterexample_has_no_retraction():
    P = bip_polytope(perm("1324"), perm("4231"))
    assert search_retraction(P) is None
    with pytest.raises(HypothesisViolated):
        h_retraction(P, default_height(4))


def test_search_state_cap():
    P = bip_polytope(perm("1324"), perm("4231"))
    with pytest.raises(SizeGuardError):
        search_retraction(P, max_states=2)


def test_validate_rejects_tampered_sequence(pyramid_points):
    P = convex_hull(pyramid_points)
    rs = h_retraction(P, (-2, -1, 3))
    validate_sequence(P, rs)
    swapped = RetractionSequence((rs.steps[1], rs.steps[0]) + rs.steps[2:], rs.source)
    with pytest.raises(ValueError):
        validate_sequence(P, swapped)
    with pytest.raises(ValueError):
        validate_sequence(P, RetractionSequence(rs.steps[:-1], rs.source))


def test_all_s4_height_route():
    e = Permutation.identity(4)
    for w in all_permutations(4):
        P = bip_polytope(e, w)
        rs = h_retraction(P)
        assert poincare_from_retraction(rs) == a_polynomial(w).stretch(2), w
        assert smooth_step_certificate(P, rs), w
        found = search_retraction(P)
        assert poincare_from_retraction(found) == poincare_from_retraction(rs), w


def test_sequence_json(pyramid_points):
    P = convex_hull(pyramid_points)
    rs = h_retraction(P, (-2, -1, 3))
    data = sequence_to_json(P, rs, (-2, -1, 3))
    assert [s["step_dim"] for s in data["steps"]] == [3, 2, 2, 1, 0]
    assert [s["h"] for s in data["steps"]] == [-3, -2, -1, 2, 3]
    assert data["poincare"] == [1, 0, 1, 0, 2, 0, 1]
