from fractions import Fraction as F

import pytest

from gramlab.arith import GridKind, Poly, grid_points
from gramlab.exceptions import ConsistencyError
from gramlab.gram import (
    alpha_sq,
    basis_inner_products,
    build_basis_gs,
    build_basis_recurrence,
    gram_expand,
    l2_best_approx,
    leading_coeff_envelope,
    monomial_leading_coeff_sq,
)
from oracles import pointwise_inner_product


class TestAlphaSq:
    def test_examples(self):
        assert alpha_sq(2, 1) == 1
        assert alpha_sq(4, 1) == F(4, 5)
        assert alpha_sq(4, 2) == F(5, 4)

    def test_rejects_singular(self):
        with pytest.raises(ValueError):
            alpha_sq(4, 0)
        with pytest.raises(ValueError):
            alpha_sq(4, 4)


class TestBasisConstruction:
    def test_gs_hand_anchors(self):
        b2 = build_basis_gs(2, 1)
        assert b2.psi == (Poly.one(), Poly.x())
        assert b2.norm_sq == (F(1), F(1, 4))
        b4 = build_basis_gs(4, 2)
        assert b4.psi[2] == Poly((F(-5, 16), 0, 1))
        assert b4.norm_sq[2] == F(1, 16)
        assert build_basis_gs(3, 1).norm_sq[1] == F(8, 27)

    def test_recurrence_base_cases(self):
        b = build_basis_recurrence(2, 1)
        assert b.psi == (Poly.one(), Poly.x())

    def test_recurrence_ratio_is_norm_ratio(self):
        # the recurrence coefficient b_d equals N_{d-1}/N_{d-2}
        b = build_basis_gs(4, 2)
        assert b.norm_sq[1] / b.norm_sq[0] == F(1, 4) / alpha_sq(4, 1) == F(5, 16)

    @pytest.mark.parametrize("n", [2, 3, 4, 6, 9, 14])
    def test_recurrence_matches_gs(self, n):
        gs = build_basis_gs(n, n - 1)
        rec = build_basis_recurrence(n, n - 1)
        assert gs.psi == rec.psi
        assert gs.norm_sq == rec.norm_sq

    @pytest.mark.parametrize("n", [2, 4, 7])
    def test_monic_of_exact_degree(self, n):
        basis = build_basis_gs(n, n - 1)
        for d, psi in enumerate(basis.psi):
            assert psi.degree == d
            assert psi.leading_coefficient == 1

    def test_rejects_excess_degree(self):
        with pytest.raises(ValueError):
            build_basis_gs(4, 4)
        with pytest.raises(ValueError):
            build_basis_recurrence(4, 4)

    @pytest.mark.parametrize("n", [2, 3, 5, 8])
    def test_orthogonal_against_pointwise_oracle(self, n):
        basis = build_basis_gs(n, n - 1)
        pts = grid_points(GridKind.IN, n).points
        for i in range(n):
            for j in range(n):
                ip = pointwise_inner_product(basis.psi[i], basis.psi[j], pts)
                assert ip == (basis.norm_sq[i] if i == j else 0)

    def test_moment_matrix_helper_agrees(self):
        basis = build_basis_gs(6, 5)
        pts = grid_points(GridKind.IN, 6).points
        mat = basis_inner_products(basis)
        for i in range(6):
            for j in range(6):
                assert mat[i][j] == pointwise_inner_product(basis.psi[i], basis.psi[j], pts)


class TestGramExpand:
    def test_examples(self):
        b4 = build_basis_gs(4, 2)
        e = gram_expand(Poly.monomial(2), b4)
        assert e.psi_coeffs == (F(5, 16), 0, 1)
        assert e.normalized_coeff_sq == (F(25, 256), 0, F(1, 16))
        assert gram_expand(b4.psi[2], b4).psi_coeffs == (0, 0, 1)
        b2 = build_basis_gs(2, 1)
        e2 = gram_expand(Poly.x(), b2)
        assert e2.psi_coeffs == (0, 1)
        assert e2.normalized_coeff_sq[1] == F(1, 4)

    def test_reconstruction(self):
        basis = build_basis_gs(7, 5)
        p = Poly((F(1, 3), F(-2), 0, F(7, 11), 0, F(5, 2)))
        e = gram_expand(p, basis)
        assert e.reconstruct() == p

    def test_degree_overflow_rejected(self):
        with pytest.raises(ValueError):
            gram_expand(Poly.monomial(3), build_basis_gs(4, 2))


class TestLeadingCoeff:
    def test_examples(self):
        assert monomial_leading_coeff_sq(2, 1) == F(1, 4)
        assert monomial_leading_coeff_sq(4, 2) == F(1, 16)
        assert monomial_leading_coeff_sq(4, 1) == F(5, 16)

    @pytest.mark.parametrize("n", [3, 5, 9])
    def test_equals_basis_norm(self, n):
        basis = build_basis_gs(n, n - 1)
        for k in range(1, n):
            assert monomial_leading_coeff_sq(n, k) == basis.norm_sq[k]

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            monomial_leading_coeff_sq(4, 4)

    def test_envelope_hand_value(self):
        # rho(2,1) = (1/4) * 16 * 1!/3! = 2/3
        assert leading_coeff_envelope(2, 1) == F(2, 3)


class TestL2BestApprox:
    def test_examples(self):
        b4 = build_basis_gs(4, 2)
        q, err = l2_best_approx(Poly.monomial(2), b4, 1)
        assert q == Poly.constant(F(5, 16))
        assert err == F(1, 16)
        b2 = build_basis_gs(2, 1)
        q0, err0 = l2_best_approx(Poly.x(), b2, 0)
        assert q0 == Poly.zero() and err0 == F(1, 4)
        q2, err2 = l2_best_approx(b4.psi[2], b4, 2)
        assert q2 == b4.psi[2] and err2 == 0

    def test_mean_square_error_is_exact(self):
        n = 6
        basis = build_basis_gs(n, n - 1)
        pts = grid_points(GridKind.IN, n).points
        p = Poly((F(1, 2), F(-1, 3), F(2), F(1), F(0), F(3, 7)))
        q, err = l2_best_approx(p, basis, 2)
        diff = p - q
        assert pointwise_inner_product(diff, diff, pts) == err

    def test_linf_dominates_l2_bound(self):
        # any lower-degree competitor misses by at least the top coefficient
        n, k = 5, 3
        basis = build_basis_gs(n, n - 1)
        pts = grid_points(GridKind.IN, n).points
        target = Poly((F(1, 7), F(-1), F(1, 2), F(4, 3)))
        top_sq = gram_expand(target, basis).normalized_coeff_sq[k]
        for q in [Poly.zero(), Poly((F(1, 2), F(2), F(-3, 4))), Poly((0, 0, F(9, 8)))]:
            worst = max(abs(target(x) - q(x)) for x in pts)
            assert worst * worst >= top_sq
