import random
from fractions import Fraction

import pytest
import sympy

from src.errors import InputError, NotReciprocalError, RootIsolationError
from src.algebra.polycore import (
    IntPoly, RatInterval, cauchy_bound, count_roots, cyclotomic, eval_poly, exact_square_root,
    expand_trace, is_monic_reciprocal, isolate_real_roots, poly_gcd, refine_root,
    root_locations, sqrt_bracket, squarefree_decomposition, squarefree_part,
    strip_cyclotomic_factors, sturm_count, trace_poly,
)

from .samples import GOLDEN, LEHMER, poly

T = sympy.Symbol('t')


def sympy_poly(p):
    return sympy.Poly(p.descending(), T)


def random_poly(rng, max_degree=6):
    degree = rng.randint(1, max_degree)
    coeffs = [rng.randint(-5, 5) for _ in range(degree)] + [rng.choice([-2, -1, 1, 2])]
    return IntPoly(tuple(coeffs))


def random_reciprocal(rng, half):
    head = [1] + [rng.randint(-5, 5) for _ in range(half)]
    return IntPoly(tuple(head + head[-2::-1]))


class TestIntPoly:
    def test_descending_round_trip(self):
        p = poly(1, -3, 1)
        assert p.coeffs == (1, -3, 1)
        assert p.descending() == [1, -3, 1]

    def test_leading_zeros_are_trimmed(self):
        assert IntPoly((1, 2, 0, 0)).degree == 1
        assert IntPoly((0, 0)).is_zero
        assert IntPoly().degree == -1

    @pytest.mark.parametrize("p, text", [
        (poly(1, -3, 1), "t^2 - 3t + 1"),
        (poly(-1, 0, 2, -1), "-t^3 + 2t - 1"),
        (poly(1, 0), "t"),
        (poly(7), "7"),
        (IntPoly(), "0"),
    ])
    def test_str(self, p, text):
        assert str(p) == text

    def test_arithmetic(self):
        a, b = poly(1, -1), poly(1, 1)
        assert a * b == poly(1, 0, -1)
        assert a + b == poly(2, 0)
        assert a - b == poly(-2)
        assert a ** 3 == poly(1, -3, 3, -1)
        assert 3 * a == poly(3, -3)

    def test_divmod_monic(self):
        q, r = poly(1, 0, 0, 2).divmod_monic(poly(1, -1))
        assert q == poly(1, 1, 1)
        assert r == poly(3)

    def test_divmod_needs_unit_leading_coefficient(self):
        with pytest.raises(InputError):
            poly(1, 0, 1).divmod_monic(poly(2, 1))

    def test_exact_div(self):
        assert poly(2, 0, -2).exact_div(poly(1, 1)) == poly(2, -2)
        with pytest.raises(InputError):
            poly(1, 0, 1).exact_div(poly(1, 1))

    def test_multiplicity_at(self):
        p = poly(1, -1) ** 3 * poly(1, 1)
        assert p.multiplicity_at(1) == 3
        assert p.multiplicity_at(-1) == 1
        assert p.multiplicity_at(2) == 0

    def test_non_integer_coefficient_rejected(self):
        with pytest.raises(InputError):
            IntPoly((Fraction(1, 2), 1))
        with pytest.raises(InputError):
            IntPoly((0.5, 1))

    def test_evaluation_is_exact(self):
        assert eval_poly(GOLDEN, Fraction(1, 2)) == Fraction(-1, 4)
        assert GOLDEN(1) == -1


class TestReciprocal:
    def test_is_monic_reciprocal(self):
        assert is_monic_reciprocal(GOLDEN)
        assert is_monic_reciprocal(LEHMER)
        assert not is_monic_reciprocal(poly(1, -3, 2))
        assert not is_monic_reciprocal(poly(2, -3, 2))

    def test_zero_polynomial_rejected(self):
        with pytest.raises(InputError):
            is_monic_reciprocal(IntPoly())

    def test_trace_of_quadratic(self):
        assert trace_poly(GOLDEN) == poly(1, -3)

    def test_trace_of_lehmer(self):
        assert trace_poly(LEHMER) == poly(1, 1, -5, -5, 4, 3)

    @pytest.mark.parametrize("p", [poly(1, -3, 2), poly(1, 1, 1, 1), IntPoly()])
    def test_trace_rejects_non_reciprocal(self, p):
        with pytest.raises(NotReciprocalError):
            trace_poly(p)

    def test_trace_round_trip(self):
        rng = random.Random(1729)
        for _ in range(1000):
            half = rng.randint(1, 11)
            S = random_reciprocal(rng, half)
            R = trace_poly(S)
            assert R.degree == half
            assert expand_trace(R, half) == S


class TestCyclotomic:
    @pytest.mark.parametrize("n", range(1, 61))
    def test_matches_sympy(self, n):
        expected = [int(c) for c in sympy.Poly(sympy.cyclotomic_poly(n, T), T).all_coeffs()]
        assert cyclotomic(n).descending() == expected

    def test_invalid_index(self):
        with pytest.raises(InputError):
            cyclotomic(0)

    def test_strip_factors(self):
        core, factors = strip_cyclotomic_factors(cyclotomic(4) * GOLDEN)
        assert core == GOLDEN
        assert factors == [(4, 1)]

    def test_strip_repeated_factors(self):
        p = cyclotomic(1) ** 2 * cyclotomic(2) ** 2 * cyclotomic(6) * LEHMER
        core, factors = strip_cyclotomic_factors(p)
        assert core == LEHMER
        assert factors == [(1, 2), (2, 2), (6, 1)]

    def test_strip_pure_cyclotomic(self):
        core, factors = strip_cyclotomic_factors(cyclotomic(3) * cyclotomic(12))
        assert core == poly(1)
        assert factors == [(3, 1), (12, 1)]

    def test_strip_needs_monic(self):
        with pytest.raises(InputError):
            strip_cyclotomic_factors(poly(2, 1))


class TestGcdAndSquarefree:
    def test_gcd(self):
        assert poly_gcd(poly(1, -1) * poly(1, 2), poly(1, -1) * poly(1, 3)) == poly(1, -1)
        assert poly_gcd(poly(2, -2), poly(3, 3)) == poly(1)

    def test_squarefree_part(self):
        assert squarefree_part(poly(1, -1) ** 3 * poly(1, 2)) == poly(1, 1, -2)

    def test_squarefree_decomposition(self):
        parts = dict((k, f) for f, k in squarefree_decomposition(poly(1, -1) ** 2 * poly(1, 2)))
        assert parts == {1: poly(1, 2), 2: poly(1, -1)}

    def test_decomposition_of_constant(self):
        assert squarefree_decomposition(poly(5)) == []


class TestSturm:
    def test_open_interval(self):
        p = poly(1, 0, -1)
        assert sturm_count(p) == 2
        assert sturm_count(p, -1, 1) == 0
        assert sturm_count(p, -1, 2) == 1
        assert sturm_count(p, 0, None) == 1

    def test_empty_interval(self):
        assert sturm_count(poly(1, 0, -2), 3, 1) == 0

    def test_zero_polynomial(self):
        with pytest.raises(InputError):
            sturm_count(IntPoly())

    def test_count_with_multiplicity(self):
        p = poly(1, -1) ** 2 * poly(1, 2) * poly(1, 0, 1)
        assert count_roots(p) == 3
        assert sturm_count(p) == 2
        assert count_roots(p, 0, None) == 2

    def test_matches_sympy_real_roots(self):
        rng = random.Random(2024)
        for trial in range(150):
            p = random_poly(rng)
            if trial % 3 == 0:
                p = p * random_poly(rng, 2) ** 2
            f = sympy_poly(p)
            roots = sympy.real_roots(f)
            assert count_roots(p) == len(roots)
            assert sturm_count(p) == len(sympy.real_roots(f.sqf_part()))
            assert count_roots(p, 0, None) == sum(1 for r in roots if float(r) > 0)

    def test_cauchy_bound(self):
        rng = random.Random(7)
        for _ in range(100):
            p = random_poly(rng)
            bound = cauchy_bound(p)
            assert sturm_count(p, None, -bound) == 0
            assert sturm_count(p, bound, None) == 0


class TestBrackets:
    def test_sqrt_bracket(self):
        tol = Fraction(1, 1000)
        iv = sqrt_bracket(2, tol)
        assert iv.lo * iv.lo <= 2 <= iv.hi * iv.hi
        assert iv.width <= tol

    def test_sqrt_of_square_is_exact(self):
        assert sqrt_bracket(Fraction(9, 4), Fraction(1, 10)) == RatInterval(Fraction(3, 2), Fraction(3, 2))

    def test_sqrt_of_negative(self):
        with pytest.raises(InputError):
            sqrt_bracket(-1, Fraction(1, 10))

    @pytest.mark.parametrize("value, root", [(0, 0), (9, 3), (8, None), (-4, None), (Fraction(1, 4), None)])
    def test_exact_square_root(self, value, root):
        assert exact_square_root(value) == root

    def test_isolate_real_roots(self):
        tol = Fraction(1, 10 ** 9)
        brackets = isolate_real_roots(poly(1, 0, -2), tol=tol)
        assert len(brackets) == 2
        neg, pos = brackets
        assert pos.lo * pos.lo <= 2 <= pos.hi * pos.hi
        assert neg.hi < 0 < pos.lo
        assert all(b.width <= tol for b in brackets)

    def test_isolate_brackets_every_root(self):
        brackets = isolate_real_roots(poly(2, -1) * poly(1, 0, -3), tol=Fraction(1, 100))
        assert len(brackets) == 3
        assert brackets[1].contains(Fraction(1, 2))

    def test_isolate_close_roots(self):
        p = poly(1000, -1) * poly(1001, -1)
        brackets = isolate_real_roots(p, 0, 1, Fraction(1, 10 ** 8))
        assert len(brackets) == 2
        assert brackets[0].hi < brackets[1].lo

    def test_refine_needs_sign_change(self):
        with pytest.raises(RootIsolationError):
            refine_root(poly(1, 0, 1), RatInterval(0, 1), Fraction(1, 10))

    def test_refine_root(self):
        iv = refine_root(GOLDEN, RatInterval(2, 3), Fraction(1, 10 ** 12))
        assert iv.width <= Fraction(1, 10 ** 12)
        assert abs(float(iv) - 2.618033988749895) < 1e-11


class TestRootLocations:
    def test_lehmer(self):
        loc = root_locations(LEHMER)
        assert (loc.n_real_gt1, loc.n_real_in_0_1, loc.n_on_circle) == (1, 1, 8)
        assert loc.n_complex_off_circle == 0
        assert loc.n_off_circle == 2

    def test_roots_at_plus_minus_one(self):
        loc = root_locations(GOLDEN * poly(1, -1) ** 2 * poly(1, 1) ** 2)
        assert loc.at_one == 2
        assert loc.at_minus_one == 2
        assert loc.n_real_gt1 == 1
        assert loc.total == 6

    def test_negative_pair(self):
        loc = root_locations(poly(1, 3, 1))
        assert loc.n_real_lt_minus1 == 1
        assert loc.n_real_in_minus1_0 == 1

    def test_complex_off_circle(self):
        loc = root_locations(poly(1, 0, 3, 0, 1))
        assert loc.n_complex_off_circle == 4
