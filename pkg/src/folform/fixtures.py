"""Built-in named fixtures, addressable from the CLI and reused by tests.

``kn-theta``    the classical homogeneous 2-form on C^4 with an isolated
                singularity (decomposable, non-integrable null-correlation
                example);
``log-example`` the logarithmic intersection form with weights
                (1,2,3,4) / (1,1,1,1);
``case-a``      the commuting diagonal rotational pair with its
                x1 x2 x3 x4 integrating factor;
``case-b``      the nilpotent-chain rotational pair with its cleared
                logarithmic presentation;
``pencil``      pencil 1-forms q F dG - p G dF: a linear pencil carrying a
                Kupka point and a quadratic dicritical pencil whose
                derivative vanishes along a line in the base locus.
"""

from __future__ import annotations

from fractions import Fraction

from .foliate import logarithmic_form
from .forms import PForm, VField, volume_form
from .homog import (
    DiagonalActionData,
    NilpotentActionData,
    diagonal_action_data,
    exceptional_cubics,
    nilpotent_action_data,
)
from .ratpoly import Poly, Scalar, exact_div


def kn_theta() -> PForm:
    """x3^2 dx2^dx3 - x1^2 dx3^dx1 + (x1x2+x3x4) dx1^dx2
    + [x4^2 dx1 + x2^2 dx2 + (x1x2-x3x4) dx3] ^ dx4."""
    x1, x2, x3, x4 = (Poly.variable(4, i) for i in range(4))
    dx = [PForm.dx(4, i) for i in range(4)]
    return (
        dx[1].wedge(dx[2]) * x3**2
        - dx[2].wedge(dx[0]) * x1**2
        + dx[0].wedge(dx[1]) * (x1 * x2 + x3 * x4)
        + (dx[0] * x4**2 + dx[1] * x2**2 + dx[2] * (x1 * x2 - x3 * x4)).wedge(dx[3])
    )


LOG_EXAMPLE_LAMBDA = (1, 2, 3, 4)
LOG_EXAMPLE_MU = (1, 1, 1, 1)


def log_example(lam=LOG_EXAMPLE_LAMBDA, mu=LOG_EXAMPLE_MU) -> PForm:
    return logarithmic_form(lam, mu)


CASE_A_LAMBDA = (1, -1, 2, -2)
CASE_A_MU = (1, 2, 3, -5)


def case_a(lam=CASE_A_LAMBDA, mu=CASE_A_MU) -> DiagonalActionData:
    return diagonal_action_data(lam, mu)


def case_b(rho: Scalar = Fraction(3, 2), lam: Scalar = 1) -> NilpotentActionData:
    return nilpotent_action_data(rho, lam)


def pencil_form(f: Poly, g: Poly, p: int, q: int) -> PForm:
    """q F dG - p G dF."""
    df = PForm.from_poly(f).d()
    dg = PForm.from_poly(g).d()
    return dg * (f * q) - df * (g * p)


def pencil_linear() -> tuple[Poly, Poly, PForm]:
    """F = x1, G = x2, p = q = 1: carries Kupka points on (F = G = 0)."""
    f = Poly.variable(4, 0)
    g = Poly.variable(4, 1)
    return f, g, pencil_form(f, g, 1, 1)


def pencil_quadratic() -> tuple[Poly, Poly, PForm]:
    """F = x1^2, G = x2 x3, p = q = 1: dicritical, with d(omega) vanishing
    along lines inside the base locus (F = G = 0)."""
    f = Poly.variable(4, 0) ** 2
    g = Poly.variable(4, 1) * Poly.variable(4, 2)
    return f, g, pencil_form(f, g, 1, 1)


def exceptional_form(nvars: int = 4) -> PForm:
    """The closed degree-2 form of the exceptional component in its
    normal coordinates: d of (2 Q dC - 3 C dQ) / x4."""
    c, q = exceptional_cubics(nvars)
    x4 = Poly.variable(nvars, 3)
    numerator = PForm.from_poly(c).d() * (2 * q) - PForm.from_poly(q).d() * (3 * c)
    terms = {}
    for idx, poly in numerator.terms.items():
        quotient = exact_div(poly, x4)
        assert quotient is not None
        terms[idx] = quotient
    omega = PForm(nvars, 1, terms)
    return omega.d()


def projection_component_form() -> PForm:
    """An S(2,n) instance: eta = dP^dx1 + dQ^dx2 with P = x2 h, Q = -x1 h."""
    x1, x2, x3 = (Poly.variable(4, i) for i in range(3))
    h = x1**2 + x2 * x3
    p, q = x2 * h, -(x1 * h)
    dx1, dx2 = PForm.dx(4, 0), PForm.dx(4, 1)
    return PForm.from_poly(p).d().wedge(dx1) + PForm.from_poly(q).d().wedge(dx2)


def rank1_rotational_form() -> PForm:
    """A rank-one-rotational instance: the lift of Z = (z1^2, z3^2, z2^2)."""
    from .foliate import lifted_vector_form

    z = [Poly.variable(3, i) for i in range(3)]
    return lifted_vector_form(VField([z[0] ** 2, z[2] ** 2, z[1] ** 2]), 4)


def dicritical_pair_form() -> PForm:
    """A dicritical degree-2 instance i_R i_X nu for diagonal traceless X."""
    from .forms import radial

    x = VField(
        [
            Poly.variable(4, 0),
            -Poly.variable(4, 1),
            Poly.variable(4, 2) * 2,
            Poly.variable(4, 3) * -2,
        ]
    )
    return volume_form(4).interior(x).interior(radial(4))


def rank2_templates() -> dict[str, PForm]:
    """Non-closed rank-two instances built from the displayed templates."""
    x = [Poly.variable(4, i) for i in range(4)]
    dx = [PForm.dx(4, i) for i in range(4)]
    out = {}
    # Semisimple rank-2: eta = d(z1 z2) ^ (A dz3 + B dz4) + C dz3^dz4.
    a_form, b_form = x[2], x[3]
    c_form = x[0] * x[1] + x[2] * x[3]
    out["rank2-semisimple"] = (
        PForm.from_poly(x[0] * x[1]).d().wedge(dx[2] * a_form + dx[3] * b_form)
        + dx[2].wedge(dx[3]) * c_form
    )
    # Nilpotent index 3: eta = (z2 dz2 - z1 dz3) ^ (A dz1 + B dz4) + C dz1^dz4.
    a_form, b_form = x[0], x[3]
    scalar = Fraction(2)
    c_form = -x[2] * b_form + (x[1] ** 2 - 2 * x[0] * x[2]) * scalar + x[0] * x[3]
    out["rank2-nilpotent-index3"] = (dx[1] * x[1] - dx[2] * x[0]).wedge(
        dx[0] * a_form + dx[3] * b_form
    ) + dx[0].wedge(dx[3]) * c_form
    # Nilpotent index 2: eta = (z2 dz3 - z1 dz4) ^ (A dz1 + B dz2) + C dz1^dz2.
    a_form, b_form = x[0] + x[1], x[1]
    scalar = Fraction(1)
    c_form = (
        -x[2] * a_form
        - x[3] * b_form
        + (x[1] * x[2] - x[0] * x[3]) * scalar
        + x[0] ** 2
        + x[1] ** 2
    )
    out["rank2-nilpotent-index2"] = (dx[2] * x[1] - dx[3] * x[0]).wedge(
        dx[0] * a_form + dx[1] * b_form
    ) + dx[0].wedge(dx[1]) * c_form
    return out


def branch_corpus() -> dict[str, PForm]:
    """Homogeneous integrable 2-forms on C^4, degree <= 2, spanning the
    classification branches (used by the singular-line experiment)."""
    x = [Poly.variable(4, i) for i in range(4)]
    dx = [PForm.dx(4, i) for i in range(4)]

    def d(p):
        return PForm.from_poly(p).d()

    corpus: dict[str, PForm] = {}
    corpus["degree0-darboux"] = dx[0].wedge(dx[1]) + dx[0].wedge(dx[2])
    corpus["degree1-nonclosed"] = dx[1].wedge(dx[2]) * x[0]
    corpus["degree1-LQ"] = d(x[0]).wedge(d(x[1] * x[2]))
    corpus["degree1-log"] = (
        PForm.basis(4, (0, 1), x[2])
        + PForm.basis(4, (0, 2), -2 * x[1])
        + PForm.basis(4, (1, 2), -3 * x[0])
    )
    corpus["degree2-R22"] = d(x[0] * x[1]).wedge(d(x[2] * x[3]))
    corpus["degree2-R13"] = d(x[0]).wedge(d(x[1] * x[2] * x[3]))
    corpus["degree2-L1111"] = log_example()
    corpus["degree2-E"] = exceptional_form()
    corpus["degree2-S2n"] = projection_component_form()
    corpus["degree2-diagonal-pair"] = case_a().eta
    corpus["degree2-nilpotent-pair"] = case_b().eta
    corpus["degree2-rank1-projection"] = rank1_rotational_form()
    corpus["degree2-dicritical"] = dicritical_pair_form()
    corpus.update(
        {f"degree2-{k.removeprefix('rank2-')}": v for k, v in rank2_templates().items()}
    )
    return corpus
