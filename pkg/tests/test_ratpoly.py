import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from folform.ratpoly import (
    ANY_DEGREE,
    Poly,
    content_gcd,
    divides,
    exact_div,
    gcd,
)

from conftest import random_nonzero_poly, random_poly


def x(nvars, i):
    return Poly.variable(nvars, i)


@st.composite
def polys(draw, nvars=3, max_degree=3, max_terms=4):
    n_terms = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n_terms):
        exp = tuple(draw(st.integers(0, max_degree)) for _ in range(nvars))
        coeff = Fraction(draw(st.integers(-6, 6)), draw(st.integers(1, 4)))
        terms[exp] = coeff
    return Poly(nvars, terms)


class TestArith:
    def test_difference_of_squares(self):
        a = x(2, 0) + x(2, 1)
        b = x(2, 0) - x(2, 1)
        assert a * b == x(2, 0) ** 2 - x(2, 1) ** 2

    def test_additive_identity(self):
        p = x(3, 0) * x(3, 1) + Poly.const(3, Fraction(5, 2))
        assert p + Poly.zero(3) == p

    def test_product_expansion(self):
        # (x1 x2 + x3)(x1 x2 - x3) expanded by hand
        u = x(3, 0) * x(3, 1) + x(3, 2)
        v = x(3, 0) * x(3, 1) - x(3, 2)
        expected = Poly(3, {(2, 2, 0): 1, (0, 0, 2): -1})
        assert u * v == expected

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            Poly.one(2) + Poly.one(3)

    @given(polys(), polys(), polys())
    def test_ring_axioms(self, p, q, r):
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p * q == q * p


class TestCalculus:
    def test_partial_examples(self):
        p = x(2, 0) ** 2 * x(2, 1)
        assert p.partial(0) == 2 * x(2, 0) * x(2, 1)
        assert (x(2, 0) ** 3).partial(1) == Poly.zero(2)
        q = x(3, 0) * x(3, 1) + x(3, 2) ** 2 * Fraction(1, 2)
        assert q.partial(2) == x(3, 2)

    def test_partial_out_of_range(self):
        with pytest.raises(IndexError):
            Poly.one(2).partial(2)

    @given(polys())
    def test_partials_commute(self, p):
        for i in range(3):
            for j in range(3):
                assert p.partial(i).partial(j) == p.partial(j).partial(i)


class TestSubstitute:
    def test_kill_variable(self):
        p = x(2, 0) * x(2, 1)
        assert p.substitute([Poly.zero(2), x(2, 1)]).is_zero()

    def test_shear(self):
        p = x(2, 0) ** 2
        image = p.substitute([x(2, 0) + x(2, 1), x(2, 1)])
        assert image == x(2, 0) ** 2 + 2 * x(2, 0) * x(2, 1) + x(2, 1) ** 2

    def test_curve_parametrization(self):
        # z2^2 - 2 z1 z3 along (1, t, t^2) is -t^2
        h = x(3, 1) ** 2 - 2 * x(3, 0) * x(3, 2)
        t = Poly.variable(1, 0)
        assert h.substitute([Poly.one(1), t, t**2]) == -(t**2)

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            Poly.one(2).substitute([Poly.one(2)])

    @given(polys(nvars=2, max_degree=2), polys(nvars=2, max_degree=2))
    def test_ring_homomorphism(self, p, q):
        images = [Poly.variable(2, 0) + Poly.one(2), Poly.variable(2, 1) ** 2]
        lhs = (p * q).substitute(images)
        assert lhs == p.substitute(images) * q.substitute(images)


class TestGcd:
    def test_monomials(self):
        assert gcd(x(3, 0) * x(3, 1), x(3, 0) * x(3, 2)) == x(3, 0)

    def test_difference_of_squares(self):
        assert gcd(x(2, 0) ** 2 - x(2, 1) ** 2, x(2, 0) - x(2, 1)) == x(2, 0) - x(2, 1)

    def test_single_coefficient(self):
        p = x(3, 0) * x(3, 1) * x(3, 2)
        assert content_gcd([p]) == p

    def test_all_zero_rejected(self):
        with pytest.raises(ValueError):
            content_gcd([Poly.zero(2), Poly.zero(2)])

    def test_monic_normalization(self):
        g = gcd(2 * x(2, 0), Fraction(4, 3) * x(2, 0) * x(2, 1))
        assert g == x(2, 0)

    def test_content_divides_inputs(self, rng):
        for _ in range(40):
            common = random_nonzero_poly(rng, 3, 2, max_terms=2)
            ps = [common * random_nonzero_poly(rng, 3, 2) for _ in range(3)]
            g = content_gcd(ps)
            for p in ps:
                q = exact_div(p, g)
                assert q is not None and q * g == p
            assert divides(common.monic(), g)


class TestDivision:
    def test_exact(self):
        p = (x(2, 0) + x(2, 1)) * (x(2, 0) - x(2, 1))
        assert exact_div(p, x(2, 0) + x(2, 1)) == x(2, 0) - x(2, 1)

    def test_inexact(self):
        assert exact_div(x(2, 0) ** 2 + x(2, 1), x(2, 0)) is None

    def test_zero_divisor(self):
        with pytest.raises(ZeroDivisionError):
            exact_div(x(2, 0), Poly.zero(2))


class TestHomogeneity:
    def test_examples(self):
        assert (x(3, 0) * x(3, 1) + x(3, 2) ** 2).homogeneous_degree() == 2
        assert (x(2, 0) + x(2, 1) ** 2).homogeneous_degree() is None
        assert Poly.zero(2).homogeneous_degree() is ANY_DEGREE

    def test_graded_part(self):
        p = x(2, 0) + x(2, 0) * x(2, 1)
        assert p.graded_part(1) == x(2, 0)
        assert p.graded_part(2) == x(2, 0) * x(2, 1)


class TestEval:
    def test_point(self):
        p = x(2, 0) ** 2 - x(2, 1)
        assert p.eval_at([Fraction(1, 2), 3]) == Fraction(1, 4) - 3

    def test_immutable(self):
        p = x(2, 0)
        with pytest.raises(AttributeError):
            p.terms = {}
