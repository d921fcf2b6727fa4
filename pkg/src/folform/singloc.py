"""Singular-locus analysis with sound certificates.

The singular set of a form is the common zero set of its coefficients.
Nothing here computes dimensions: a line certificate (all coefficients
vanish identically along t*v) proves dim >= 1, a codimension-one factor
certificate proves a hypersurface is contained in the singular set, and a
bounded projective point scan lists all small rational singular points.
"None found" outcomes always carry their search bounds and never assert
nonexistence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import gcd as int_gcd
from typing import Optional, Sequence

from .forms import PForm
from .ratpoly import Poly, content_gcd, exact_div, gcd as poly_gcd


@dataclass(frozen=True)
class SingCertificate:
    """Re-verifiable witness about the singular set of a form."""

    kind: str  # "line" | "point" | "codim1-factor" | "none-found"
    witness: object = None
    bounds: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()


def singular_ideal(eta: PForm) -> list[Poly]:
    """Nonzero coefficients of eta in canonical slot order (ideal generators)."""
    return eta.coefficients()


def codim1_content(eta: PForm) -> tuple[Poly, PForm]:
    """Split eta = h * eta' with h the monic content of the coefficients.

    eta' has coefficients with trivial common factor; (1, eta) is returned
    when the content is already trivial.
    """
    if eta.is_zero():
        raise ValueError("zero form has no content splitting")
    h = content_gcd(eta.coefficients())
    reduced = {}
    for idx, poly in eta.terms.items():
        q = exact_div(poly, h)
        assert q is not None
        reduced[idx] = q
    return h, PForm(eta.nvars, eta.degree, reduced)


def line_in_sing_check(eta: PForm, direction: Sequence) -> bool:
    """Whether every coefficient vanishes identically along t * direction."""
    direction = [Fraction(v) for v in direction]
    if not any(direction):
        raise ValueError("direction must be nonzero")
    if len(direction) != eta.nvars:
        raise ValueError("direction arity mismatch")
    t = Poly.variable(1, 0)
    images = [t * v for v in direction]
    return all(c.substitute(images).is_zero() for c in eta.coefficients())


def _primitive(vec: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Scale an integer vector to primitive form with first nonzero entry > 0."""
    g = 0
    for v in vec:
        g = int_gcd(g, abs(v))
    if g == 0:
        return None
    vec = tuple(v // g for v in vec)
    lead = next(v for v in vec if v)
    return vec if lead > 0 else tuple(-v for v in vec)


def _int_cleared_terms(polys: Sequence[Poly]) -> list[list[tuple[tuple[int, ...], int]]]:
    """Coefficients cleared to integers for fast exact evaluation."""
    cleared = []
    for p in polys:
        denom = 1
        for c in p.terms.values():
            denom = denom * c.denominator // int_gcd(denom, c.denominator)
        cleared.append([(exp, int(c * denom)) for exp, c in p.terms.items()])
    return cleared


def _eval_int_terms(terms: list[tuple[tuple[int, ...], int]], point: Sequence[int]) -> int:
    total = 0
    for exp, c in terms:
        v = c
        for x, e in zip(point, exp):
            if e:
                if x == 0:
                    v = 0
                    break
                v *= x**e
        total += v
    return total


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    """All rational roots of sum coeffs[k] t^k (trailing coefficient nonzero)."""
    denom = 1
    for c in coeffs:
        denom = denom * c.denominator // int_gcd(denom, c.denominator)
    ints = [int(c * denom) for c in coeffs]
    lead, trail = ints[-1], ints[0]

    def divisors(n: int) -> list[int]:
        n = abs(n)
        out = [d for d in range(1, n + 1) if n % d == 0]
        return out

    roots = []
    for p in divisors(trail):
        for q in divisors(lead):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand in roots:
                    continue
                if sum(c * cand**k for k, c in enumerate(ints)) == 0:
                    roots.append(cand)
    return roots


def _plane_line_directions(eta: PForm, i: int, j: int) -> tuple[list[tuple[int, ...]], list[str]]:
    """Line directions inside the coordinate plane (i, j), with notes.

    Restricting to the plane turns each coefficient into a binary form in
    (a, b); common vanishing directions are the roots of their gcd.  Only
    rational roots yield witnesses; a leftover nonconstant factor is
    reported as an irrational direction note.
    """
    n = eta.nvars
    a = Poly.variable(2, 0)
    b = Poly.variable(2, 1)
    images = [a if k == i else b if k == j else Poly.zero(2) for k in range(n)]
    restricted = [c.substitute(images) for c in eta.coefficients()]
    nonzero = [p for p in restricted if p]
    notes: list[str] = []
    found: list[tuple[int, ...]] = []

    def direction(av: int, bv: int) -> tuple[int, ...]:
        vec = [0] * n
        vec[i], vec[j] = av, bv
        prim = _primitive(vec)
        assert prim is not None
        return prim

    if not nonzero:
        # The whole plane lies in the singular set.
        found.append(direction(1, 0))
        found.append(direction(0, 1))
        found.append(direction(1, 1))
        return found, notes
    g = nonzero[0]
    for p in nonzero[1:]:
        if g.is_constant():
            break
        g = poly_gcd(g, p)
    if g.is_constant():
        return found, notes
    # Pull out powers of a and b (directions on the axes of the plane).
    while (q := exact_div(g, a)) is not None:
        if direction(0, 1) not in found:
            found.append(direction(0, 1))
        g = q
    while (q := exact_div(g, b)) is not None:
        if direction(1, 0) not in found:
            found.append(direction(1, 0))
        g = q
    if g.is_constant():
        return found, notes
    # Dehomogenize at a = 1: g(1, t) has the remaining directions as roots.
    degree = g.total_degree()
    coeffs = [Fraction(0)] * (degree + 1)
    for exp, c in g.terms.items():
        coeffs[exp[1]] = c
    remaining = g
    for root in _rational_roots(coeffs):
        factor = b * root.denominator - a * root.numerator
        while (q := exact_div(remaining, factor)) is not None:
            remaining = q
        d = direction(root.denominator, root.numerator)
        if d not in found:
            found.append(d)
    if not remaining.is_constant():
        notes.append(f"irrational direction exists in plane ({i + 1},{j + 1})")
    return found, notes


def sing_line_search(eta: PForm, height: int = 10, find_all: bool = False) -> SingCertificate:
    """Search for a line through 0 inside Sing(eta) (eta homogeneous).

    Stages: coordinate axes, then lines inside coordinate 2-planes (exact
    binary-form gcd plus rational root extraction), then a deterministic
    grid of primitive rational directions up to the given height.  The
    first verified witness is returned, or every witness found when
    ``find_all`` is set; a none-found outcome records the bounds.
    """
    if not eta.is_homogeneous():
        raise ValueError("line search expects homogeneous coefficients")
    n = eta.nvars
    bounds = {"height": height, "stages": "axes,planes,grid"}
    lines: list[tuple[int, ...]] = []
    notes: list[str] = []

    def record(vec) -> Optional[SingCertificate]:
        prim = _primitive(vec)
        if prim is None or prim in lines:
            return None
        if not line_in_sing_check(eta, prim):
            return None
        lines.append(prim)
        if not find_all:
            return SingCertificate(kind="line", witness=prim, bounds=bounds, notes=tuple(notes))
        return None

    for i in range(n):
        cert = record(tuple(1 if k == i else 0 for k in range(n)))
        if cert:
            return cert
    for i, j in combinations(range(n), 2):
        directions, plane_notes = _plane_line_directions(eta, i, j)
        notes.extend(plane_notes)
        for d in directions:
            cert = record(d)
            if cert:
                return cert
    cleared = _int_cleared_terms(eta.coefficients())
    for vec in product(range(-height, height + 1), repeat=n):
        prim = _primitive(vec)
        if prim is None or prim != vec:
            continue
        if all(_eval_int_terms(t, prim) == 0 for t in cleared):
            cert = record(prim)
            if cert:
                return cert
    if lines:
        return SingCertificate(
            kind="line", witness=tuple(sorted(lines)), bounds=bounds, notes=tuple(notes)
        )
    return SingCertificate(kind="none-found", witness=None, bounds=bounds, notes=tuple(notes))


def enumerate_line_certificates(eta: PForm, height: int = 10) -> list[tuple[int, ...]]:
    """All verified line certificates found by the staged search."""
    cert = sing_line_search(eta, height=height, find_all=True)
    if cert.kind == "none-found":
        return []
    return list(cert.witness)


def codim1_certificate(eta: PForm) -> Optional[SingCertificate]:
    """Certificate that a hypersurface lies in Sing(eta), when the content is nontrivial."""
    h, _ = codim1_content(eta)
    if h.is_constant():
        return None
    return SingCertificate(kind="codim1-factor", witness=h, bounds={})


def projective_point_scan(polys: Sequence[Poly], height: int) -> list[tuple[int, ...]]:
    """Common zeros among primitive integer points of bounded height.

    Points are projective representatives: first nonzero coordinate
    positive, coordinates coprime, max absolute entry <= height.  All
    inputs must be homogeneous.
    """
    polys = list(polys)
    if not polys:
        raise ValueError("need at least one polynomial")
    if any(not p.is_homogeneous() for p in polys):
        raise ValueError("projective scan expects homogeneous polynomials")
    n = polys[0].nvars
    cleared = _int_cleared_terms(polys)
    hits = []
    for vec in product(range(-height, height + 1), repeat=n):
        prim = _primitive(vec)
        if prim is None or prim != vec:
            continue
        if all(_eval_int_terms(t, vec) == 0 for t in cleared):
            hits.append(vec)
    return sorted(hits)


@dataclass(frozen=True)
class QuadricCoefficients:
    """The six 2-form coefficients in the classical basis and their pairing.

    eta = A dx2^dx3 + B dx3^dx1 + C dx1^dx2 + (E dx1 + F dx2 + G dx3)^dx4;
    the residual A E + B F + C G vanishes exactly when eta ^ eta = 0, so a
    2-form on C^4 defines a distribution iff its coefficient map lands on
    the quadric z0 z3 + z1 z4 + z2 z5 = 0.
    """

    a: Poly
    b: Poly
    c: Poly
    e: Poly
    f: Poly
    g: Poly
    residual: Poly


def quadric_map(eta: PForm) -> QuadricCoefficients:
    if eta.nvars != 4:
        raise ValueError("the quadric coefficient basis lives on four variables")
    if eta.degree != 2 and eta:
        raise ValueError("expected a 2-form")
    a = eta.coefficient((1, 2))
    b = -eta.coefficient((0, 2))
    c = eta.coefficient((0, 1))
    e = eta.coefficient((0, 3))
    f = eta.coefficient((1, 3))
    g = eta.coefficient((2, 3))
    return QuadricCoefficients(a=a, b=b, c=c, e=e, f=f, g=g, residual=a * e + b * f + c * g)
