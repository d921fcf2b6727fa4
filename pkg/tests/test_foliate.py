import random
from fractions import Fraction
from itertools import combinations

import pytest

from folform.foliate import (
    MeroForm,
    cleared_frobenius,
    complete_intersection,
    frobenius_integrable1,
    frobenius_integrable_q,
    invariant_hyperplane,
    is_decomposable2,
    is_dicritical,
    is_integrable2,
    is_integrable2_c4,
    kupka_point,
    lifted_vector_form,
    logarithmic_form,
    mero_decompose,
    NotDecomposableError,
    pairwise_generic,
    rotational4,
    verify_first_integrals,
)
from folform.fixtures import kn_theta
from folform.forms import PForm, VField, radial, volume_form
from folform.ratpoly import Poly

from conftest import random_form, random_nonzero_poly, random_poly


def dx(n, i):
    return PForm.dx(n, i)


def var(n, i):
    return Poly.variable(n, i)


def d(p):
    return PForm.from_poly(p).d()


class TestDecomposable:
    def test_symplectic_not(self):
        eta = PForm.basis(4, (0, 1)) + PForm.basis(4, (2, 3))
        assert not is_decomposable2(eta)

    def test_split(self):
        eta = dx(4, 0).wedge(dx(4, 1) + dx(4, 2))
        assert is_decomposable2(eta)

    def test_theta(self):
        assert is_decomposable2(kn_theta())


class TestMeroDecompose:
    def test_two_term(self):
        eta = PForm.basis(4, (0, 1)) + PForm.basis(4, (0, 2))
        witness = mero_decompose(eta)
        assert witness.z1 == VField.basis(4, 0) and witness.z2 == VField.basis(4, 1)
        assert witness.pivot == Poly.one(4)
        assert witness.verify()

    def test_basis_form(self):
        witness = mero_decompose(PForm.basis(4, (0, 1)))
        product = witness.omega1.numerator.wedge(witness.omega2)
        assert product == PForm.basis(4, (0, 1)) * witness.pivot

    def test_theta_witness(self):
        witness = mero_decompose(kn_theta())
        assert witness.verify()
        assert cleared_frobenius(witness) is False  # theta is not integrable

    def test_not_decomposable(self):
        with pytest.raises(NotDecomposableError):
            mero_decompose(PForm.basis(4, (0, 1)) + PForm.basis(4, (2, 3)))

    def test_witness_identity_random(self, rng):
        for _ in range(30):
            a = random_form(rng, 4, 1, 2)
            b = random_form(rng, 4, 1, 2)
            eta = a.wedge(b)
            if eta.is_zero():
                continue
            assert mero_decompose(eta).verify()


class TestRotational:
    def test_closed(self):
        assert rotational4(d(var(4, 0)).wedge(d(var(4, 1)))).is_zero()

    def test_shift(self):
        eta = PForm.basis(4, (0, 1), var(4, 3))
        rot = rotational4(eta)
        assert rot == VField.basis(4, 2)
        assert volume_form(4).interior(rot) == eta.d()

    def test_degree2_traceless(self, rng):
        for _ in range(15):
            eta = random_form(rng, 4, 2, 2, homogeneous=2)
            rot = rotational4(eta)
            if rot.is_zero():
                continue
            mat = rot.linear_matrix()
            assert sum(mat[i][i] for i in range(4)) == 0


class TestIntegrable:
    def test_exact_pairs(self, rng):
        for _ in range(20):
            f = random_poly(rng, 4, 2)
            g = random_poly(rng, 4, 2)
            assert is_integrable2_c4(d(f).wedge(d(g)))

    def test_log_example(self):
        assert is_integrable2_c4(logarithmic_form([1, 2, 3, 4], [1, 1, 1, 1]))

    def test_theta_not(self):
        theta = kn_theta()
        rot = rotational4(theta)
        assert rot and not theta.interior(rot).is_zero()
        assert not is_integrable2_c4(theta)

    def test_zero_form(self):
        assert is_integrable2_c4(PForm.zero(4, 2))

    def test_general_n(self):
        eta = logarithmic_form([1, 2, 3, 4, 5], [1, 1, 1, 1, 1])
        assert is_integrable2(eta)


class TestFrobenius1:
    def test_exact(self):
        assert frobenius_integrable1(d(random_poly(random.Random(1), 3, 3)))

    def test_monomial_coefficient(self):
        assert frobenius_integrable1(dx(3, 1) * var(3, 0))

    def test_contact_like(self):
        omega = dx(3, 0) * var(3, 1) + dx(3, 2)
        assert not frobenius_integrable1(omega)


class TestFrobeniusQ:
    def test_exact_pair(self):
        f, g = var(4, 0), var(4, 1) * var(4, 2)
        eta = d(f).wedge(d(g))
        assert frobenius_integrable_q(eta, [d(f), d(g)])

    def test_shear_factors(self):
        a = dx(4, 0)
        b = dx(4, 1) + dx(4, 2) * var(4, 0)
        assert frobenius_integrable_q(a.wedge(b), [a, b])

    def test_wrong_factors(self):
        with pytest.raises(ValueError):
            frobenius_integrable_q(PForm.basis(4, (0, 1)), [dx(4, 0), dx(4, 2)])

    def test_scalar_multiple_allowed(self):
        eta = PForm.basis(4, (0, 1)) * 3
        assert frobenius_integrable_q(eta, [dx(4, 0), dx(4, 1)])


class TestDicritical:
    def test_double_contraction(self, rng):
        nu = volume_form(4)
        for _ in range(10):
            xfield = VField([random_poly(rng, 4, 1) for _ in range(4)])
            form = nu.interior(xfield).interior(radial(4))
            assert is_dicritical(form)

    def test_dx_not(self):
        assert not is_dicritical(dx(4, 0))

    def test_log_not(self):
        assert not is_dicritical(logarithmic_form([1, 2, 3, 4], [1, 1, 1, 1]))


class TestCompleteIntersection:
    def test_coordinates(self):
        result = complete_intersection([dx(4, 0), dx(4, 1)])
        assert result.eta == PForm.basis(4, (0, 1))
        assert result.content == Poly.one(4) and result.complete

    def test_log_pair_not_complete(self):
        lam, mu = [1, 2, 3, 4], [1, 1, 1, 1]
        etas = []
        for weights in (lam, mu):
            total = PForm.zero(4, 1)
            for j in range(4):
                rest = Poly.monomial(4, tuple(1 if k != j else 0 for k in range(4)))
                total = total + dx(4, j) * (rest * weights[j])
            etas.append(total)
        result = complete_intersection(etas)
        assert result.content == Poly.monomial(4, (1, 1, 1, 1))
        assert result.eta == logarithmic_form(lam, mu)
        assert not result.complete

    def test_transverse_exact_pair(self):
        f, g = var(4, 0) + var(4, 3), var(4, 1)
        result = complete_intersection([d(f), d(g)])
        assert result.complete

    def test_dependent_rejected(self):
        with pytest.raises(ValueError):
            complete_intersection([dx(4, 0), dx(4, 0) * 2])


class TestLogExample:
    def test_coefficients(self):
        eta = logarithmic_form([1, 2, 3, 4], [1, 1, 1, 1])
        for i, j in combinations(range(4), 2):
            rest = tuple(1 if k not in (i, j) else 0 for k in range(4))
            assert eta.coefficient((i, j)) == Poly.monomial(4, rest, (i + 1) - (j + 1))

    def test_colinear_rejected(self):
        with pytest.raises(ValueError):
            logarithmic_form([1, 2, 3, 4], [2, 4, 6, 8])

    def test_zero_weight_rejected(self):
        with pytest.raises(ValueError):
            logarithmic_form([0, 1, 1, 1], [1, 1, 1, 1])

    def test_pairwise_generic(self):
        assert pairwise_generic([1, 2, 3, 4], [1, 1, 1, 1])
        assert not pairwise_generic([1, -1, 2, -2], [2, -1, 1, -1])

    def test_always_integrable_with_invariant_hyperplanes(self, rng):
        for _ in range(10):
            lam = [Fraction(rng.randint(1, 5)) for _ in range(4)]
            mu = [Fraction(rng.randint(1, 5)) + Fraction(1, 2) for _ in range(4)]
            minors = [lam[i] * mu[j] - lam[j] * mu[i] for i, j in combinations(range(4), 2)]
            if not all(minors):
                continue
            eta = logarithmic_form(lam, mu)
            assert is_integrable2_c4(eta)
            for j in range(4):
                assert invariant_hyperplane(eta, var(4, j))


class TestInvariantHyperplane:
    def test_log_hyperplane(self):
        eta = logarithmic_form([1, 2, 3, 4], [1, 1, 1, 1])
        assert invariant_hyperplane(eta, var(4, 0))

    def test_transverse_plane(self):
        assert not invariant_hyperplane(PForm.basis(4, (0, 1)), var(4, 2))

    def test_multiplied_plane(self):
        assert invariant_hyperplane(PForm.basis(4, (0, 1), var(4, 2)), var(4, 2))

    def test_nonlinear_rejected(self):
        with pytest.raises(ValueError):
            invariant_hyperplane(PForm.basis(4, (0, 1)), var(4, 0) ** 2)


class TestKupka:
    def test_rotation_form(self):
        omega = dx(2, 1) * var(2, 0) - dx(2, 0) * var(2, 1)
        assert kupka_point(omega, [0, 0])

    def test_exact_never(self, rng):
        f = var(3, 0) * var(3, 1)
        omega = d(f)
        assert not kupka_point(omega, [0, 0, 1])

    def test_pencil_point(self):
        f, g = var(4, 0), var(4, 1)
        omega = d(g) * f - d(f) * g
        assert kupka_point(omega, [0, 0, 1, 0])
        assert omega.d() == d(f).wedge(d(g)) * 2


class TestFirstIntegrals:
    def test_coordinates(self):
        assert verify_first_integrals(PForm.basis(4, (0, 1)), var(4, 0), var(4, 1), Poly.one(4))

    def test_lq(self):
        l, q = var(4, 0), var(4, 1) * var(4, 2)
        assert verify_first_integrals(d(l).wedge(d(q)), l, q, Poly.one(4))

    def test_wrong_unit(self):
        assert not verify_first_integrals(
            PForm.basis(4, (0, 1)), var(4, 0), var(4, 1), Poly.const(4, 2)
        )


class TestLiftedVectorForm:
    def test_radial_lift(self):
        eta = lifted_vector_form(radial(3), 4)
        expected = (
            PForm.basis(4, (1, 2), var(4, 0))
            - PForm.basis(4, (0, 2), var(4, 1))
            + PForm.basis(4, (0, 1), var(4, 2))
        )
        assert eta == expected

    def test_transverse_contraction_vanishes(self, rng):
        z = VField([random_poly(rng, 3, 2) for _ in range(3)])
        eta = lifted_vector_form(z, 5)
        for j in (3, 4):
            assert eta.interior(VField.basis(5, j)).is_zero()

    def test_coefficient_degree(self, rng):
        z = VField([random_poly(rng, 3, 2, homogeneous=2) for _ in range(3)])
        eta = lifted_vector_form(z, 4)
        if eta:
            assert eta.homogeneous_degree() == 2


class TestProp2Oracle:
    """The rotational criterion agrees with cleared Frobenius on witnesses."""

    def test_agreement_small(self, rng):
        checked = 0
        while checked < 30:
            kind = rng.random()
            if kind < 0.5:
                f = random_nonzero_poly(rng, 4, 1)
                g = random_poly(rng, 4, 2)
                h = random_poly(rng, 4, 2)
                eta = d(g).wedge(d(h)) * f
            else:
                eta = random_form(rng, 4, 1, 1).wedge(random_form(rng, 4, 1, 1))
            if eta.is_zero() or rotational4(eta).is_zero():
                continue
            direct = is_integrable2_c4(eta)
            oracle = is_decomposable2(eta) and cleared_frobenius(mero_decompose(eta))
            assert direct == oracle
            checked += 1


class TestClosedDerivativeRemark:
    """If eta is integrable and d(eta) != 0 then d(eta) is closed, square-zero,
    and the meromorphic relation u * d(eta) = eta ^ theta holds on fixtures."""

    def test_fixture(self):
        eta = PForm.basis(4, (1, 2), var(4, 0))
        deta = eta.d()
        assert not deta.is_zero()
        assert deta.d().is_zero()
        assert deta.wedge(deta).is_zero()
        assert eta.interior(rotational4(eta)).is_zero()
        # cleared Eq-3 witness: x1 * d(eta) = eta ^ dx1
        assert deta * var(4, 0) == eta.wedge(dx(4, 0))
