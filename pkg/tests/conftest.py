"""Shared deterministic generators and hypothesis configuration."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from folform.forms import PForm, VField, all_index_tuples
from folform.ratpoly import Poly

settings.register_profile(
    "suite",
    max_examples=30,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


def random_poly(rng: random.Random, nvars: int, max_degree: int, max_terms: int = 3,
                homogeneous: int | None = None) -> Poly:
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exp = [0] * nvars
        degree = homogeneous if homogeneous is not None else rng.randint(0, max_degree)
        for _ in range(degree):
            exp[rng.randrange(nvars)] += 1
        terms[tuple(exp)] = Fraction(rng.randint(-3, 3), rng.choice([1, 1, 1, 2]))
    return Poly(nvars, terms)


def random_nonzero_poly(rng, nvars, max_degree, **kw) -> Poly:
    while True:
        p = random_poly(rng, nvars, max_degree, **kw)
        if p:
            return p


def random_form(rng: random.Random, nvars: int, degree: int, max_degree: int,
                density: float = 0.6, homogeneous: int | None = None) -> PForm:
    terms = {}
    for idx in all_index_tuples(nvars, degree):
        if rng.random() < density:
            terms[idx] = random_poly(rng, nvars, max_degree, homogeneous=homogeneous)
    return PForm(nvars, degree, terms)


def random_nonzero_form(rng, nvars, degree, max_degree, **kw) -> PForm:
    while True:
        f = random_form(rng, nvars, degree, max_degree, **kw)
        if f:
            return f


def random_vfield(rng: random.Random, nvars: int, max_degree: int) -> VField:
    return VField([random_poly(rng, nvars, max_degree) for _ in range(nvars)])


def gauge_oneform(rng: random.Random, nvars: int, components, max_degree: int = 2) -> PForm:
    """Random 1-form supported on the given components."""
    return PForm(
        nvars,
        1,
        {(i,): random_poly(rng, nvars, max_degree) for i in components if rng.random() < 0.8},
    )


def gauge_product_family(rng: random.Random, nvars: int, order: int):
    """Truncated-product family with gauge-normalized factors.

    The leading pair is (dx1, dx2); higher-order alpha terms avoid dx1 and
    dx2 and higher-order beta terms avoid dx1, so the bounded-degree
    division recovers the factors exactly at every order (the division
    hypothesis cod Sing(eta_0) >= 3 holds outright: eta_0 never vanishes).
    """
    alphas = [PForm.dx(nvars, 0)] + [
        gauge_oneform(rng, nvars, range(2, nvars)) for _ in range(order)
    ]
    betas = [PForm.dx(nvars, 1)] + [
        gauge_oneform(rng, nvars, range(1, nvars)) for _ in range(order)
    ]
    etas = []
    for r in range(order + 1):
        acc = PForm.zero(nvars, 2)
        for i in range(r + 1):
            acc = acc + alphas[i].wedge(betas[r - i])
        etas.append(acc)
    return alphas, betas, etas


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260810)
