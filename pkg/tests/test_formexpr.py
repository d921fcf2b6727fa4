import pytest
from fractions import Fraction

from folform.formexpr import (
    ParseError,
    form_to_str,
    parse_form,
    parse_poly,
    parse_vfield,
    poly_to_str,
)
from folform.forms import PForm
from folform.ratpoly import Poly

from conftest import random_form


def test_theta_prefix():
    form = parse_form("x3**2*dx2^dx3 - x1**2*dx3^dx1", 4)
    x1 = Poly.variable(4, 0)
    x3 = Poly.variable(4, 2)
    expected = PForm.basis(4, (1, 2), x3**2) + PForm.basis(4, (0, 2), x1**2)
    assert form == expected


def test_wedge_square_is_zero():
    assert parse_form("dx1^dx1", 4).is_zero()


def test_degree_mixing_rejected():
    with pytest.raises(ParseError):
        parse_form("dx1 + dx1^dx2", 4)


def test_error_position():
    with pytest.raises(ParseError) as info:
        parse_form("dx1 + $", 4)
    assert "position 6" in str(info.value)


def test_rational_literals():
    p = parse_poly("3/2*x1 - 1/3", 2)
    assert p == Poly.variable(2, 0) * Fraction(3, 2) - Poly.const(2, Fraction(1, 3))


def test_z_aliases():
    assert parse_form("z1*dz2", 4) == parse_form("x1*dx2", 4)


def test_variable_out_of_range():
    with pytest.raises(ParseError):
        parse_form("x5", 4)


def test_star_requires_scalar():
    with pytest.raises(ParseError):
        parse_form("dx1*dx2", 4)


def test_power_only_on_variables():
    with pytest.raises(ParseError):
        parse_form("(x1+x2)**2", 4)


def test_comments_and_whitespace():
    text = "x1*dx2  # trailing comment\n + x2*dx1"
    form = parse_form(text, 2)
    assert form == parse_form("x1*dx2 + x2*dx1", 2)


def test_precedence_star_tighter_than_wedge():
    # a*b^c must parse as (a*b)^c
    form = parse_form("x1*dx2^dx3", 3)
    assert form == PForm.basis(3, (1, 2), Poly.variable(3, 0))


def test_unary_minus():
    assert parse_form("-dx1^dx2", 4) == -PForm.basis(4, (0, 1))


def test_vfield_parse_roundtrip():
    field = parse_vfield("x1, -x2, 0, 2*x3", 4)
    assert field.components[1] == -Poly.variable(4, 1)
    assert field.components[2].is_zero()


def test_scalar_poly_rejects_forms():
    with pytest.raises(ParseError):
        parse_poly("dx1", 2)


def test_print_parse_roundtrip_corpus(rng):
    # >= 100 generated forms across arities and degrees
    count = 0
    for _ in range(120):
        n = rng.choice([2, 3, 4, 5])
        degree = rng.randint(0, min(3, n))
        form = random_form(rng, n, degree, 3)
        text = form_to_str(form)
        assert parse_form(text, n) == form
        count += 1
    assert count >= 100


def test_print_is_canonical(rng):
    for _ in range(30):
        form = random_form(rng, 4, 2, 2)
        rebuilt = PForm(form.nvars, form.degree, dict(reversed(list(form.terms.items()))))
        assert form_to_str(form) == form_to_str(rebuilt)


def test_poly_print_roundtrip(rng):
    from conftest import random_poly

    for _ in range(60):
        p = random_poly(rng, rng.choice([2, 3, 4]), 3, max_terms=5)
        assert parse_poly(poly_to_str(p), p.nvars) == p
