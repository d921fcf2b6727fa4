import random
from fractions import Fraction

import pytest

from folform.forms import PForm, PolyMap, VField, radial, volume_form
from folform.ratpoly import Poly

from conftest import random_form, random_nonzero_poly, random_poly, random_vfield


def dx(n, i):
    return PForm.dx(n, i)


def var(n, i):
    return Poly.variable(n, i)


class TestWedge:
    def test_basis(self):
        assert dx(4, 0).wedge(dx(4, 1)) == PForm.basis(4, (0, 1))

    def test_square_zero(self):
        assert dx(4, 0).wedge(dx(4, 0)).is_zero()

    def test_anticommute_with_coefficients(self):
        a = dx(4, 1) * var(4, 0)  # x1 dx2
        b = dx(4, 0) * var(4, 1)  # x2 dx1
        assert a.wedge(b) == PForm.basis(4, (0, 1), -(var(4, 0) * var(4, 1)))

    def test_graded_anticommutativity(self, rng):
        for _ in range(30):
            n = rng.choice([4, 5])
            p = rng.randint(0, 2)
            q = rng.randint(0, 2)
            a = random_form(rng, n, p, 2)
            b = random_form(rng, n, q, 2)
            lhs = a.wedge(b)
            rhs = b.wedge(a)
            if (p * q) % 2:
                rhs = -rhs
            assert lhs == rhs

    def test_overflow_degree_is_zero(self):
        a = PForm.basis(4, (0, 1, 2))
        b = PForm.basis(4, (1, 2, 3))
        assert a.wedge(b).is_zero()


class TestExteriorDerivative:
    def test_basic(self):
        assert (dx(4, 1) * var(4, 0)).d() == PForm.basis(4, (0, 1))

    def test_d_of_constant_2form(self):
        assert PForm.basis(4, (0, 1)).d().is_zero()

    def test_cleared_log_shape(self):
        # d(x3 dx1^dx2) = dx3^dx1^dx2 = dx1^dx2^dx3
        form = PForm.basis(3, (0, 1), var(3, 2))
        assert form.d() == PForm.basis(3, (0, 1, 2))

    def test_dd_zero(self, rng):
        for _ in range(40):
            n = rng.choice([4, 5])
            deg = rng.randint(0, 3)
            a = random_form(rng, n, deg, 3)
            assert a.d().d().is_zero()

    def test_leibniz(self, rng):
        for _ in range(25):
            n = 4
            p = rng.randint(0, 2)
            a = random_form(rng, n, p, 2)
            b = random_form(rng, n, rng.randint(0, 2), 2)
            sign = -1 if p % 2 else 1
            assert a.wedge(b).d() == a.d().wedge(b) + (a.wedge(b.d()) * sign)


class TestInterior:
    def test_radial_on_basis(self):
        r = radial(4)
        assert PForm.basis(4, (0, 1)).interior(r) == dx(4, 1) * var(4, 0) - dx(4, 0) * var(4, 1)

    def test_coordinate_field(self):
        assert PForm.basis(4, (0, 1)).interior(VField.basis(4, 0)) == dx(4, 1)

    def test_double_contraction_zero(self, rng):
        r = radial(4)
        for _ in range(20):
            a = random_form(rng, 4, rng.randint(1, 3), 2)
            assert a.interior(r).interior(r).is_zero()

    def test_arity_mismatch(self):
        with pytest.raises(ValueError):
            PForm.basis(4, (0, 1)).interior(radial(3))


class TestLie:
    def test_euler_constant_coefficients(self):
        assert PForm.basis(4, (0, 1)).lie(radial(4)) == PForm.basis(4, (0, 1)) * 2

    def test_translation_invariance(self):
        form = PForm.basis(4, (1, 2), var(4, 0))
        assert form.lie(VField.basis(4, 3)).is_zero()

    def test_hyperbolic_invariance(self):
        # L_X(d(z1 z2) ^ dz3) = 0 for X = z1 d1 - z2 d2 since X(z1 z2) = 0
        x = VField([var(4, 0), -var(4, 1), Poly.zero(4), Poly.zero(4)])
        form = PForm.from_poly(var(4, 0) * var(4, 1)).d().wedge(dx(4, 2))
        assert form.lie(x).is_zero()

    def test_product_rule(self, rng):
        for _ in range(20):
            v = random_vfield(rng, 4, 1)
            a = random_form(rng, 4, rng.randint(0, 2), 2)
            b = random_form(rng, 4, rng.randint(0, 2), 2)
            assert a.wedge(b).lie(v) == a.lie(v).wedge(b) + a.wedge(b.lie(v))

    def test_euler_identity(self, rng):
        r = radial(4)
        for _ in range(40):
            p = rng.randint(0, 3)
            m = rng.randint(0, 3)
            form = random_form(rng, 4, p, m, homogeneous=m)
            assert form.lie(r) == form * (m + p)


class TestPullback:
    def test_chain_rule(self):
        phi = PolyMap(4, 3, [var(4, 0) * var(4, 1), var(4, 2), var(4, 3)])
        pulled = phi.pullback(dx(3, 0))
        assert pulled == dx(4, 0) * var(4, 1) + dx(4, 1) * var(4, 0)

    def test_identity(self, rng):
        ident = PolyMap.identity(4)
        for _ in range(10):
            a = random_form(rng, 4, rng.randint(0, 3), 2)
            assert ident.pullback(a) == a

    def test_case_map(self):
        phi = PolyMap(4, 3, [var(4, 0) * var(4, 1), var(4, 2), var(4, 3)])
        pulled = phi.pullback(dx(3, 0).wedge(dx(3, 1)))
        expected = PForm.from_poly(var(4, 0) * var(4, 1)).d().wedge(dx(4, 2))
        assert pulled == expected

    def test_commutes_with_d(self, rng):
        for _ in range(15):
            comps = [random_poly(rng, 4, 2) for _ in range(3)]
            phi = PolyMap(4, 3, comps)
            a = random_form(rng, 3, rng.randint(0, 2), 2)
            assert phi.pullback(a.d()) == phi.pullback(a).d()

    def test_commutes_with_wedge(self, rng):
        for _ in range(15):
            comps = [random_poly(rng, 4, 2) for _ in range(3)]
            phi = PolyMap(4, 3, comps)
            a = random_form(rng, 3, 1, 2)
            b = random_form(rng, 3, 1, 2)
            assert phi.pullback(a.wedge(b)) == phi.pullback(a).wedge(phi.pullback(b))


class TestRestrict:
    def test_drop_everything(self):
        form = PForm.basis(4, (0, 1), var(4, 3)) + PForm.basis(4, (2, 3), var(4, 0))
        assert form.restrict([0, 1, 2]).is_zero()

    def test_keep_all(self, rng):
        a = random_form(rng, 4, 2, 2)
        assert a.restrict(range(4)) == a

    def test_log_restriction_vanishes(self):
        from folform.foliate import logarithmic_form

        eta = logarithmic_form([1, 2, 3, 4], [1, 1, 1, 1])
        assert eta.restrict([1, 2, 3]).is_zero()

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            PForm.basis(4, (0, 1)).restrict([])


class TestRadial:
    def test_components(self):
        assert radial(2) == VField([var(2, 0), var(2, 1)])

    def test_contraction_degree(self):
        contracted = volume_form(4).interior(radial(4))
        assert contracted.degree == 3 and not contracted.is_zero()

    def test_arity_bounds(self):
        with pytest.raises(ValueError):
            radial(9)


class TestVField:
    def test_bracket_linear(self):
        x = VField.linear([[0, 0], [1, 0]])
        y = VField.linear([[1, 0], [0, -1]])
        assert y.bracket(x) == VField.linear([[0, 0], [2, 0]])

    def test_apply(self):
        r = radial(3)
        p = var(3, 0) ** 2 * var(3, 1)
        assert r.apply(p) == p * 3

    def test_linear_matrix_roundtrip(self):
        mat = [[Fraction(1), Fraction(2)], [Fraction(0), Fraction(-1)]]
        assert VField.linear(mat).linear_matrix() == mat
