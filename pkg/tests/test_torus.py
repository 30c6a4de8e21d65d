import random

import numpy as np
import pytest

from src.errors import InputError, NotSalemError, PairingError, ParityError
from src.algebra.matrices import charpoly, determinant, identity, int_matrix, matrices_equal
from src.algebra.polycore import IntPoly
from src.algebra.salem import enumerate_salem
from src.config import TORUS_COFACTORS
from src.surfaces.lattice import is_even, is_unimodular, signature
from src.surfaces.torus import (
    CASE_DEG2, CASE_DEG4A, CASE_DEG6, SexticView, companion, decide_torus, degree4_cases,
    derive_P_from_Q, exe_h2_charpoly, exe_realizable_deg2, period_matrix, projective_flags,
    quartic_from_squares, sextic_from_quartic, square_property, verify_witness, wedge_gram,
    wedge_square,
)

from .samples import (
    GOLDEN, GOLDEN_LAMBDA, LEHMER, SEXTIC_NO_SQUARE, SEXTIC_SQUARE, SMALLEST_QUARTIC,
    SMALLEST_QUARTIC_LAMBDA, poly,
)

GOLDEN_Q = poly(1, -3, -1, 6, -1, -3, 1)


def random_matrix(rng, n=4, lo=-3, hi=3):
    return int_matrix([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])


def random_quartic(rng):
    """Monic quartic with constant term 1."""
    return IntPoly((1, rng.randint(-4, 4), rng.randint(-4, 4), rng.randint(-4, 4), 1))


class TestSquareProperty:
    def test_quadratic_product(self):
        sq = square_property(GOLDEN_Q)
        assert sq.holds
        assert (sq.q_at_one, sq.q_at_minus_one, sq.m, sq.n) == (0, 0, 0, 0)

    def test_failing_sextic(self):
        sq = square_property(SEXTIC_NO_SQUARE)
        assert not sq.holds
        assert sq.q_at_one == -3
        assert sq.m is None and sq.n is None

    @pytest.mark.parametrize("Q, P, j, k", [
        (GOLDEN_Q, poly(1, 0, 3, 0, 1), 0, 0),
        (SEXTIC_SQUARE, poly(1, 1, 1, 0, 1), 1, 0),
        (SMALLEST_QUARTIC * poly(1, 2, 1), poly(1, 1, -1, -1, 1), 1, -1),
    ])
    def test_derive_P(self, Q, P, j, k):
        assert derive_P_from_Q(Q) == (P, j, k)

    def test_derive_P_needs_square_property(self):
        with pytest.raises(InputError):
            derive_P_from_Q(SEXTIC_NO_SQUARE)

    def test_parity_mismatch(self):
        with pytest.raises(ParityError):
            quartic_from_squares(SexticView.from_poly(SEXTIC_SQUARE), 1, 2)

    def test_sextic_view(self):
        view = SexticView.from_poly(GOLDEN_Q)
        assert (view.a, view.b, view.c) == (-3, -1, 6)
        assert view.to_poly() == GOLDEN_Q

    def test_sextic_view_rejects_other_degrees(self):
        with pytest.raises(InputError):
            SexticView.from_poly(GOLDEN)


class TestMatrices:
    def test_companion(self):
        C = companion(poly(1, 0, 3, 0, 1))
        assert [int(C[i, 3]) for i in range(4)] == [-1, 0, -3, 0]
        assert [int(C[i + 1, i]) for i in range(3)] == [1, 1, 1]
        assert charpoly(C) == poly(1, 0, 3, 0, 1)
        assert determinant(C) == 1

    @pytest.mark.parametrize("P", [poly(1, 0, 0, 1), poly(1, 0, 0, 0, 2), poly(2, 0, 0, 0, 1)])
    def test_companion_rejects(self, P):
        with pytest.raises(InputError):
            companion(P)

    def test_wedge_of_identity(self):
        assert matrices_equal(wedge_square(identity(4)), identity(6))

    def test_wedge_is_multiplicative(self):
        rng = random.Random(31)
        for _ in range(500):
            A, B = random_matrix(rng), random_matrix(rng)
            assert matrices_equal(wedge_square(A.dot(B)), wedge_square(A).dot(wedge_square(B)))

    def test_wedge_twists_form_by_determinant(self):
        rng = random.Random(32)
        J = wedge_gram()
        for _ in range(500):
            M = random_matrix(rng)
            W = wedge_square(M)
            assert matrices_equal(W.T.dot(J).dot(W), J * determinant(M))

    def test_wedge_gram(self):
        J = wedge_gram()
        assert (J[0, 5], J[1, 4], J[2, 3], J[0, 1]) == (1, -1, 1, 0)
        assert signature(J).pair == (3, 3)
        assert is_even(J) and is_unimodular(J)

    def test_sextic_from_quartic_matches_root_products(self):
        rng = random.Random(33)
        for _ in range(200):
            P = random_quartic(rng)
            roots = np.roots(P.descending())
            products = [roots[i] * roots[j] for i in range(4) for j in range(i + 1, 4)]
            expected = [int(round(c.real)) for c in np.poly(products)]
            assert sextic_from_quartic(P).descending() == expected

    def test_sextic_from_quartic_coefficients(self):
        rng = random.Random(34)
        for _ in range(200):
            P = random_quartic(rng)
            p1, p2, p3 = P.coeffs[1:4]
            expected = SexticView(a=-p2, b=p3 * p1 - 1, c=2 * p2 - p3 * p3 - p1 * p1).to_poly()
            assert sextic_from_quartic(P) == expected


class TestDecideTorus:
    def test_quadratic(self):
        res = decide_torus(GOLDEN)
        assert res.realizable and res.case == CASE_DEG2
        w = res.witness
        assert w.Q == GOLDEN_Q
        assert w.P == poly(1, 0, 3, 0, 1)
        assert res.verification.passed
        assert abs(res.verification.spectral_radius - GOLDEN_LAMBDA) < 1e-9

    def test_smallest_quartic(self):
        res = decide_torus(SMALLEST_QUARTIC)
        assert res.realizable and res.case == CASE_DEG4A
        assert (res.cases.a, res.cases.b, res.cases.c) == (True, False, False)
        assert (res.cases.s_at_one, res.cases.s_at_minus_one) == (-1, 3)
        assert res.successful_cofactors == (poly(1, -1, 1), poly(1, 2, 1))
        w = res.witness
        assert w.C == poly(1, 2, 1)
        assert w.Q == poly(1, 1, -2, -4, -2, 1, 1)
        assert (w.m, w.n, w.j, w.k) == (2, 0, 1, -1)
        assert w.P == poly(1, 1, -1, -1, 1)
        assert res.verification.passed

    def test_sextic_with_square_property(self):
        res = decide_torus(SEXTIC_SQUARE)
        assert res.realizable and res.case == CASE_DEG6
        assert res.witness.P == poly(1, 1, 1, 0, 1)
        assert res.verification.passed

    def test_sextic_without_square_property(self):
        res = decide_torus(SEXTIC_NO_SQUARE)
        assert not res.realizable
        assert res.witness is None
        assert res.square.q_at_one == -3

    def test_high_degree(self):
        res = decide_torus(LEHMER)
        assert not res.realizable
        assert "exceeds" in res.reason

    def test_needs_salem(self):
        with pytest.raises(NotSalemError):
            decide_torus(poly(1, 3, 1))

    def test_degree4_cases_match_cofactor_search(self):
        for verdict in enumerate_salem(4, 3, workers=2):
            S = verdict.input
            brute = any(square_property(S * IntPoly(c)).holds for c in TORUS_COFACTORS)
            res = decide_torus(S)
            assert res.realizable == brute == degree4_cases(S).any
            if res.realizable:
                assert res.verification.passed

    def test_degree6_square_property_is_complete(self):
        for verdict in enumerate_salem(6, 2, workers=2):
            S = verdict.input
            res = decide_torus(S)
            assert res.realizable == square_property(S).holds
            if res.realizable:
                assert res.verification.passed
                assert (res.witness.m - res.witness.n) % 2 == 0

    @pytest.mark.slow
    def test_degree6_sweep_bound_three(self):
        for verdict in enumerate_salem(6, 3):
            res = decide_torus(verdict.input)
            assert res.realizable == square_property(verdict.input).holds
            if res.realizable:
                assert res.verification.passed


class TestVerifyWitness:
    def test_reports_every_check(self, sextic_witness):
        report = verify_witness(sextic_witness)
        assert report.passed
        assert len(report.checks) == 9

    def test_tampered_F2(self, sextic_witness):
        F2 = sextic_witness.F2.copy()
        F2[0, 0] += 1
        tampered = type(sextic_witness)(**{**sextic_witness.__dict__, "F2": F2})
        report = verify_witness(tampered)
        assert not report.passed
        assert "F2 preserves J" in report.failures
        assert "F2 = wedge(F1)" in report.failures

    def test_tampered_P(self, golden_witness):
        tampered = type(golden_witness)(**{**golden_witness.__dict__, "P": poly(1, 0, 4, 0, 1)})
        report = verify_witness(tampered)
        assert "P from (j, k)" in report.failures
        assert "char(F1) = P" in report.failures

    def test_wrong_lambda(self, golden_witness):
        wrong = decide_torus(SEXTIC_SQUARE).witness.lam
        tampered = type(golden_witness)(**{**golden_witness.__dict__, "lam": wrong})
        assert verify_witness(tampered).failures == ["spectral radius in lambda bracket"]


class TestPeriodMatrix:
    @pytest.mark.parametrize("S", [GOLDEN, SMALLEST_QUARTIC, SEXTIC_SQUARE])
    def test_modulus_matches_lambda(self, S):
        res = decide_torus(S)
        model = period_matrix(res.witness.P)
        assert abs(model.modulus_squared - float(res.witness.lam)) < 1e-8
        assert abs(abs(model.gamma1) * abs(model.gamma2) - 1) < 1e-8
        assert model.residual < 1e-9
        assert model.Pi.shape == (2, 4)

    def test_quadratic_case(self):
        model = period_matrix(poly(1, 0, 3, 0, 1))
        assert abs(model.modulus_squared - GOLDEN_LAMBDA) < 1e-9
        assert abs(model.gamma1.real) < 1e-9

    def test_smallest_quartic_modulus(self, quartic_witness):
        model = period_matrix(quartic_witness.P)
        assert abs(model.modulus_squared - SMALLEST_QUARTIC_LAMBDA) < 1e-8

    def test_real_roots(self):
        with pytest.raises(PairingError):
            period_matrix(poly(1, -7, 14, -7, 1))


class TestExE:
    @pytest.mark.parametrize("A, expected", [
        ([[0, -1], [1, 3]], poly(1, -7, 1) * poly(1, -1) ** 4),
        ([[0, 1], [1, 1]], poly(1, -3, 1) * poly(1, 1) ** 4),
        ([[1, 0], [0, 1]], poly(1, -1) ** 6),
    ])
    def test_h2_charpoly(self, A, expected):
        assert exe_h2_charpoly(A) == expected

    def test_h2_charpoly_needs_unimodular(self):
        with pytest.raises(InputError):
            exe_h2_charpoly([[2, 0], [0, 1]])

    @pytest.mark.parametrize("a, verdict, A", [
        (3, "yes", [[0, 1], [1, 1]]),
        (7, "yes", [[0, -1], [1, 3]]),
        (6, "yes", [[0, 1], [1, 2]]),
        (5, "unknown", None),
    ])
    def test_deg2(self, a, verdict, A):
        res = exe_realizable_deg2(poly(1, -a, 1))
        assert res.a == a
        assert res.verdict == verdict
        if A is None:
            assert res.A is None
        else:
            assert matrices_equal(res.A, int_matrix(A))
            _, rem = res.h2_charpoly.divmod_monic(poly(1, -a, 1))
            assert rem.is_zero

    def test_deg2_rejects_other_degrees(self):
        with pytest.raises(InputError):
            exe_realizable_deg2(SMALLEST_QUARTIC)


class TestProjectiveFlags:
    def test_sextic(self):
        assert projective_flags(SEXTIC_SQUARE).projective_torus_possible is False

    def test_eisenstein_quartic(self):
        flags = projective_flags(SMALLEST_QUARTIC)
        assert flags.projective_torus_possible is None
        assert "zeta_3" in flags.projective_example

    def test_quadratic(self):
        flags = projective_flags(GOLDEN)
        assert flags.projective_torus_possible is None
        assert flags.exe.verdict == "yes"
        assert flags.projective_example == "E x E"

    def test_high_degree(self):
        assert projective_flags(LEHMER).projective_torus_possible is False
