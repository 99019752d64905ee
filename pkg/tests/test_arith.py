from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gramlab.arith import (
    AffineMap,
    GridKind,
    Poly,
    as_rational,
    grid_points,
    inner_product,
    point_to_weight,
    poly_affine_compose,
    stretch_map,
    weight_to_point,
)

rationals = st.fractions(max_numerator=30, max_denominator=12)
polys = st.lists(rationals, max_size=6).map(lambda cs: Poly(tuple(cs)))


class TestPoly:
    def test_zero_degree_convention(self):
        assert Poly.zero().degree == -1
        assert Poly(()).coeffs == ()
        assert Poly((0, 0)).degree == -1
        assert Poly.constant(3).degree == 0

    def test_trailing_zeros_trimmed(self):
        assert Poly((1, 2, 0, 0)).coeffs == (F(1), F(2))

    def test_eval_exact(self):
        p = Poly((F(1, 4), F(1), F(1)))
        assert p(F(1, 2)) == F(1)
        assert Poly.zero()(F(7, 3)) == 0

    def test_monomial_and_lead(self):
        assert Poly.monomial(3).leading_coefficient == 1
        assert Poly.monomial(3, F(2, 5)).coefficient(3) == F(2, 5)
        assert Poly.monomial(3).coefficient(7) == 0

    def test_float_rejected(self):
        with pytest.raises(TypeError):
            as_rational(0.5)

    def test_str(self):
        assert str(Poly((F(-5, 16), 0, 1))) == "x^2 - 5/16"
        assert str(Poly.zero()) == "0"

    @given(polys, polys, polys)
    @settings(max_examples=60, deadline=None)
    def test_ring_axioms(self, p, q, r):
        assert p + q == q + p
        assert p * q == q * p
        assert (p + q) * r == p * r + q * r
        assert p - p == Poly.zero()

    @given(polys, rationals, rationals, rationals)
    @settings(max_examples=60, deadline=None)
    def test_affine_compose_matches_eval(self, p, a, b, t):
        assert poly_affine_compose(p, a, b)(t) == p(a * t + b)

    @given(polys, rationals, rationals)
    @settings(max_examples=60, deadline=None)
    def test_affine_compose_round_trip(self, p, a, b):
        if a == 0:
            return
        q = poly_affine_compose(p, a, b)
        assert poly_affine_compose(q, 1 / a, -b / a) == p

    def test_affine_compose_examples(self):
        assert poly_affine_compose(Poly.monomial(2), 1, 0) == Poly.monomial(2)
        assert poly_affine_compose(Poly.monomial(2), 1, F(1, 2)) == Poly((F(1, 4), 1, 1))
        assert poly_affine_compose(Poly.monomial(2), F(3, 2), 0) == Poly((0, 0, F(9, 4)))


class TestGrids:
    def test_examples(self):
        assert grid_points(GridKind.IN, 2).points == (F(-1, 2), F(1, 2))
        assert grid_points(GridKind.OUT, 2).points == (F(-1), F(0), F(1))
        assert grid_points(GridKind.IN, 3).points == (F(-2, 3), F(0), F(2, 3))

    def test_rejects_zero(self):
        with pytest.raises(ValueError):
            grid_points(GridKind.IN, 0)

    @pytest.mark.parametrize("n", [1, 2, 3, 10, 97])
    def test_cardinalities(self, n):
        assert len(grid_points(GridKind.IN, n)) == n
        assert len(grid_points(GridKind.OUT, n)) == n + 1

    def test_points_increasing(self):
        for kind in GridKind:
            pts = grid_points(kind, 9).points
            assert all(a < b for a, b in zip(pts, pts[1:]))

    def test_stretch_identity_up_to_200(self):
        for n in range(1, 201):
            mapped = tuple(stretch_map(n)(x) for x in grid_points(GridKind.IN, n + 1).points)
            assert mapped == grid_points(GridKind.OUT, n).points

    def test_shift_containment_up_to_200(self):
        for n in range(1, 201):
            shifted = {x - F(1, n) for x in grid_points(GridKind.OUT, n).points}
            assert set(grid_points(GridKind.IN, n).points) < shifted


class TestWeightMap:
    def test_examples(self):
        assert weight_to_point(2, 0) == 1
        assert weight_to_point(2, 1) == 0
        assert weight_to_point(4, 3) == F(-1, 2)

    @pytest.mark.parametrize("n", [1, 2, 5, 12])
    def test_round_trip(self, n):
        for m in range(n + 1):
            t = weight_to_point(n, m)
            assert t in grid_points(GridKind.OUT, n).points
            assert point_to_weight(n, t) == m

    def test_rejections(self):
        with pytest.raises(ValueError):
            weight_to_point(4, 5)
        with pytest.raises(ValueError):
            point_to_weight(4, F(1, 3))


class TestInnerProduct:
    def test_examples(self):
        assert inner_product(Poly.one(), Poly.one(), 7) == 1
        assert inner_product(Poly.x(), Poly.one(), 6) == 0
        assert inner_product(Poly.x(), Poly.x(), 4) == F(5, 16)

    @given(polys, polys, polys, rationals, st.integers(min_value=1, max_value=8))
    @settings(max_examples=40, deadline=None)
    def test_bilinear_symmetric(self, f, g, h, c, n):
        assert inner_product(f, g, n) == inner_product(g, f, n)
        lhs = inner_product(f + c * g, h, n)
        assert lhs == inner_product(f, h, n) + c * inner_product(g, h, n)

    @given(polys, st.integers(min_value=1, max_value=8))
    @settings(max_examples=40, deadline=None)
    def test_positive_iff_not_vanishing(self, f, n):
        pts = grid_points(GridKind.IN, n).points
        val = inner_product(f, f, n)
        assert val >= 0
        assert (val == 0) == all(f(x) == 0 for x in pts)


def test_affine_map_inverse():
    m = AffineMap(F(3, 2), F(-1, 4))
    inv = m.inverse()
    assert inv(m(F(7, 5))) == F(7, 5)
    with pytest.raises(ValueError):
        AffineMap(F(0), F(1)).inverse()
