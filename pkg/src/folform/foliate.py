"""Foliation-theoretic predicates and constructors.

Decomposability and integrability tests for 2-forms, Frobenius checks for
1-forms and factored q-forms, meromorphic decomposition witnesses, the
rotational on four variables, dicriticality, topological intersections,
logarithmic intersection forms with invariant hyperplanes, Kupka points,
and first-integral verification.

"Integrable" for a 2-form means: square zero, and the meromorphic factors
produced by the decomposition witness satisfy the Frobenius condition after
clearing denominators.  On four variables with nonzero rotational this is
equivalent to the contraction test i_rot(eta) eta = 0, and both routes are
exposed so they can be cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .forms import PForm, VField, PolyMap, radial, volume_form, wedge_all
from .ratpoly import Poly, Scalar, content_gcd, exact_div


@dataclass(frozen=True)
class MeroForm:
    """A form with a polynomial denominator; equality is cross-multiplied."""

    numerator: PForm
    denominator: Poly

    def __post_init__(self):
        if self.denominator.is_zero():
            raise ValueError("meromorphic form needs a nonzero denominator")
        if self.denominator.nvars != self.numerator.nvars:
            raise ValueError("numerator/denominator arity mismatch")

    def __eq__(self, other) -> bool:
        if not isinstance(other, MeroForm):
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator


@dataclass(frozen=True)
class DecompositionWitness:
    """Meromorphic splitting eta = omega1 ^ omega2 found by constant contractions.

    The exact certificate is  pivot * eta = (i_Z1 eta) ^ (i_Z2 eta)  with
    pivot obtained by contracting eta by Z1 and then by Z2; omega1 carries
    the 1/pivot denominator.
    """

    omega1: MeroForm
    omega2: PForm
    z1: VField
    z2: VField
    pivot: Poly
    eta: PForm

    def verify(self) -> bool:
        if self.pivot.is_zero():
            return False
        lhs = self.eta * self.pivot
        rhs = self.eta.interior(self.z1).wedge(self.eta.interior(self.z2))
        return lhs == rhs


class NotDecomposableError(ValueError):
    pass


def is_decomposable2(eta: PForm) -> bool:
    """A 2-form splits meromorphically iff its wedge square vanishes."""
    return eta.wedge(eta).is_zero()


def _constant_pair_candidates(nvars: int):
    for i, j in combinations(range(nvars), 2):
        yield VField.basis(nvars, i), VField.basis(nvars, j)
    # Small-integer combinations; unreachable for nonzero forms with the
    # basis scan above, kept as a deterministic safety net.
    for i, j in combinations(range(nvars), 2):
        for k in range(nvars):
            if k != i and k != j:
                yield VField.basis(nvars, i) + VField.basis(nvars, j), VField.basis(nvars, k)


def mero_decompose(eta: PForm) -> DecompositionWitness:
    """Split a square-zero 2-form as omega1 ^ omega2 with constant contractions.

    Scans standard basis pairs in lexicographic order (then small-integer
    combinations) for a nonzero pivot.  The returned witness identity has
    been verified exactly.
    """
    if eta.degree != 2:
        raise ValueError("decomposition is defined for 2-forms")
    if eta.is_zero():
        raise NotDecomposableError("zero form has no decomposition witness")
    if not is_decomposable2(eta):
        raise NotDecomposableError("not decomposable: eta ^ eta != 0")
    for z1, z2 in _constant_pair_candidates(eta.nvars):
        pivot = eta.interior(z1).interior(z2).as_poly()
        if pivot:
            witness = DecompositionWitness(
                omega1=MeroForm(eta.interior(z1), pivot),
                omega2=eta.interior(z2),
                z1=z1,
                z2=z2,
                pivot=pivot,
                eta=eta,
            )
            if not witness.verify():
                raise AssertionError("decomposition witness identity failed")
            return witness
    raise AssertionError("no pivot found for a nonzero 2-form")


def rotational4(eta: PForm) -> VField:
    """The vector field X with d(eta) = i_X (dx1^dx2^dx3^dx4)."""
    if eta.nvars != 4:
        raise ValueError("the rotational is defined on four variables")
    deta = eta.d()
    comps = [
        deta.coefficient((1, 2, 3)),
        -deta.coefficient((0, 2, 3)),
        deta.coefficient((0, 1, 3)),
        -deta.coefficient((0, 1, 2)),
    ]
    x = VField(comps)
    assert volume_form(4).interior(x) == deta
    return x


def cleared_frobenius(witness: DecompositionWitness) -> bool:
    """Frobenius condition on both meromorphic factors, denominators cleared.

    For omega1 = num1/pivot the condition d(omega1) ^ eta = 0 clears to
    (pivot * d(num1) - d(pivot) ^ num1) ^ eta = 0.
    """
    eta = witness.eta
    num1 = witness.omega1.numerator
    pivot = witness.pivot
    lhs1 = (num1.d() * pivot - PForm.from_poly(pivot).d().wedge(num1)).wedge(eta)
    if not lhs1.is_zero():
        return False
    return witness.omega2.d().wedge(eta).is_zero()


def is_integrable2(eta: PForm) -> bool:
    """Integrability of a 2-form on any number of variables."""
    if eta.degree != 2:
        raise ValueError("expected a 2-form")
    if eta.is_zero():
        return True
    if eta.nvars == 4:
        return is_integrable2_c4(eta)
    if not is_decomposable2(eta):
        return False
    return cleared_frobenius(mero_decompose(eta))


def is_integrable2_c4(eta: PForm) -> bool:
    """Integrability on C^4 via the rotational criterion.

    Nonzero rotational: integrable iff square-zero and i_rot(eta) eta = 0;
    zero rotational (closed form): integrable iff square-zero.
    """
    if eta.nvars != 4:
        raise ValueError("this criterion is specific to four variables")
    if eta.degree != 2:
        raise ValueError("expected a 2-form")
    if eta.is_zero():
        return True
    rot = rotational4(eta)
    if rot:
        return is_decomposable2(eta) and eta.interior(rot).is_zero()
    return is_decomposable2(eta)


def frobenius_integrable1(omega: PForm) -> bool:
    """Frobenius condition for a 1-form: omega ^ d(omega) = 0."""
    if omega.degree != 1 and omega:
        raise ValueError("expected a 1-form")
    return omega.wedge(omega.d()).is_zero()


def frobenius_integrable_q(eta: PForm, factors: Sequence[PForm]) -> bool:
    """Frobenius condition d(omega_j) ^ eta = 0 for a factored q-form.

    The factors must multiply to eta up to a nonzero rational scalar
    (checked exactly).
    """
    if len(factors) != eta.degree:
        raise ValueError("need one 1-form factor per degree")
    product = wedge_all(list(factors))
    scalar = None
    if eta.is_zero() or product.is_zero():
        raise ValueError("factors do not multiply to eta")
    for idx, poly in eta.terms.items():
        other = product.terms.get(idx)
        if other is None:
            raise ValueError("factors do not multiply to eta")
        exp, c = poly.leading_term()
        oc = other.terms.get(exp)
        if oc is None:
            raise ValueError("factors do not multiply to eta")
        scalar = oc / c
        break
    if not scalar or product != eta * scalar:
        raise ValueError("factors do not multiply to eta")
    return all(f.d().wedge(eta).is_zero() for f in factors)


def is_dicritical(omega: PForm) -> bool:
    """A form is dicritical when its radial contraction vanishes."""
    return omega.interior(radial(omega.nvars)).is_zero()


@dataclass(frozen=True)
class IntersectionResult:
    """Topological intersection eta with its divided-out content factor."""

    eta: PForm
    content: Poly
    complete: bool


def complete_intersection(omegas: Sequence[PForm]) -> IntersectionResult:
    """Intersect integrable 1-forms: omega1^...^omegaq = content * eta.

    The returned eta has coefficients with trivial common factor; the
    intersection is complete exactly when the content is constant.
    """
    if not omegas:
        raise ValueError("need at least one 1-form")
    for omega in omegas:
        if not frobenius_integrable1(omega):
            raise ValueError("every factor must satisfy the Frobenius condition")
    product = wedge_all(list(omegas))
    if product.is_zero():
        raise ValueError("generically dependent: the wedge product vanishes")
    content = content_gcd(product.coefficients())
    reduced = {}
    for idx, poly in product.terms.items():
        q = exact_div(poly, content)
        assert q is not None
        reduced[idx] = q
    eta = PForm(product.nvars, product.degree, reduced)
    return IntersectionResult(eta=eta, content=content, complete=content.is_constant())


def pairwise_generic(lam: Sequence[Scalar], mu: Sequence[Scalar]) -> bool:
    """All 2x2 minors lam_i mu_j - lam_j mu_i nonzero (i < j)."""
    lam = [Fraction(v) for v in lam]
    mu = [Fraction(v) for v in mu]
    return all(lam[i] * mu[j] - lam[j] * mu[i] for i, j in combinations(range(len(lam)), 2))


def logarithmic_form(lam: Sequence[Scalar], mu: Sequence[Scalar]) -> PForm:
    """The 2-form sum_(i<j) (lam_i mu_j - lam_j mu_i) x1..^xi..^xj..xn dxi^dxj.

    This is the polynomial form of the intersection of the two logarithmic
    foliations with residue vectors lam and mu; every coordinate hyperplane
    is invariant.  Requires nonzero, non-colinear weight vectors.
    """
    n = len(lam)
    if n != len(mu) or not 2 <= n <= 8:
        raise ValueError("weight vectors must share a length in 2..8")
    lam = [Fraction(v) for v in lam]
    mu = [Fraction(v) for v in mu]
    if any(v == 0 for v in lam) or any(v == 0 for v in mu):
        raise ValueError("weights must be nonzero")
    minors = {(i, j): lam[i] * mu[j] - lam[j] * mu[i] for i, j in combinations(range(n), 2)}
    if not any(minors.values()):
        raise ValueError("colinear weights")
    terms = {}
    for (i, j), minor in minors.items():
        if not minor:
            continue
        exp = tuple(0 if k in (i, j) else 1 for k in range(n))
        terms[(i, j)] = Poly.monomial(n, exp, minor)
    return PForm(n, 2, terms)


def invariant_hyperplane(eta: PForm, h: Poly) -> bool:
    """Whether the hyperplane (h = 0) is invariant: h divides dh ^ eta."""
    if h.is_zero() or not h.is_homogeneous(1):
        raise ValueError("h must be a nonzero linear form")
    dh = PForm.from_poly(h).d()
    return all(exact_div(c, h) is not None for c in dh.wedge(eta).coefficients())


def kupka_point(omega: PForm, point: Sequence[Scalar]) -> bool:
    """Singular point of omega where d(omega) does not vanish."""
    if omega.eval_at(point):
        return False
    return bool(omega.d().eval_at(point))


def verify_first_integrals(eta: PForm, f: Poly, g: Poly, u: Poly) -> bool:
    """Check the exact normal form eta = u * df ^ dg."""
    if u.is_zero():
        raise ValueError("unit factor u must be nonzero")
    df = PForm.from_poly(f).d()
    dg = PForm.from_poly(g).d()
    return eta == df.wedge(dg) * u


def lifted_vector_form(z: VField, nvars: int) -> PForm:
    """Pull back i_Z(dx1^dx2^dx3) along the projection C^nvars -> C^3.

    The result is annihilated by every coordinate field beyond the third.
    """
    if z.nvars != 3:
        raise ValueError("the vector field must live on three variables")
    if not 3 <= nvars <= 8:
        raise ValueError("target arity must be in 3..8")
    eta3 = volume_form(3).interior(z)
    projection = PolyMap(nvars, 3, [Poly.variable(nvars, i) for i in range(3)])
    return projection.pullback(eta3)
