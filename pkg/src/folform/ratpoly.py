"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial lives in Q[x1..xn] for a fixed arity n (1 <= n <= 8) and is
stored as a dict mapping exponent tuples to nonzero ``Fraction`` values.
The zero polynomial has an empty term dict.  All arithmetic is exact;
equality is term-map equality.  Values are immutable after construction,
so they are safe to share freely.

Rational scalars are ``fractions.Fraction`` throughout: the stdlib type
already guarantees the reduced form (gcd(|num|, den) = 1, den > 0, zero
is 0/1) that exact certificates rely on.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

Rational = Fraction
Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]

MAX_VARS = 8


class _AnyDegree:
    """Degree report for the zero polynomial (homogeneous of every degree)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ANY_DEGREE"


ANY_DEGREE = _AnyDegree()


def _check_nvars(nvars: int) -> None:
    if not 1 <= nvars <= MAX_VARS:
        raise ValueError(f"variable count must be in 1..{MAX_VARS}, got {nvars}")


def grlex_key(exp: Exponent) -> tuple:
    """Sort key for graded-lexicographic order (higher key = larger monomial)."""
    return (sum(exp), exp)


class Poly:
    """Immutable sparse polynomial over Q in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[Exponent, Scalar]] = None):
        _check_nvars(nvars)
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for exp, coeff in terms.items():
                exp = tuple(exp)
                if len(exp) != nvars or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent vector {exp} for {nvars} variables")
                c = Fraction(coeff)
                if c:
                    c += clean.pop(exp, 0)
                    if c:
                        clean[exp] = c
                    else:
                        clean.pop(exp, None)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, value: Scalar) -> "Poly":
        value = Fraction(value)
        if not value:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: value})

    @classmethod
    def one(cls, nvars: int) -> "Poly":
        return cls.const(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Poly":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[index] = 1
        return cls(nvars, {tuple(exp): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exp: Exponent, coeff: Scalar = 1) -> "Poly":
        return cls(nvars, {tuple(exp): Fraction(coeff)})

    # -- predicates and views ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial (errors if non-constant)."""
        if not self.terms:
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()))

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, var: int) -> int:
        if not self.terms:
            return -1
        return max(e[var] for e in self.terms)

    def homogeneous_degree(self):
        """Common total degree of all terms, ANY_DEGREE for 0, None if mixed."""
        if not self.terms:
            return ANY_DEGREE
        degrees = {sum(e) for e in self.terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        d = self.homogeneous_degree()
        if d is None:
            return False
        if degree is None:
            return True
        return d is ANY_DEGREE or d == degree

    def graded_part(self, degree: int) -> "Poly":
        return Poly(self.nvars, {e: c for e, c in self.terms.items() if sum(e) == degree})

    def leading_term(self) -> tuple[Exponent, Fraction]:
        """Leading (exponent, coefficient) under graded-lex order."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self.terms, key=grlex_key)
        return exp, self.terms[exp]

    def monic(self) -> "Poly":
        """Scale so the graded-lex leading coefficient is 1."""
        if not self.terms:
            return self
        _, lc = self.leading_term()
        return self * (1 / lc)

    # -- ring operations -----------------------------------------------------

    def _require_same_arity(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        self._require_same_arity(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["Poly", Scalar]) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return Poly(self.nvars)
            return Poly(self.nvars, {e: k * c for e, k in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        self._require_same_arity(other)
        out: dict[Exponent, Fraction] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(exp, 0) + ca * cb
                if s:
                    out[exp] = s
                else:
                    out.pop(exp, None)
        return Poly(self.nvars, out)

    def __rmul__(self, other: Scalar) -> "Poly":
        return self.__mul__(other)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one(self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- calculus and evaluation ---------------------------------------------

    def partial(self, var: int) -> "Poly":
        """Formal partial derivative with respect to variable ``var``."""
        if not 0 <= var < self.nvars:
            raise IndexError(f"variable index {var} out of range")
        out: dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            k = exp[var]
            if k:
                e = list(exp)
                e[var] = k - 1
                out[tuple(e)] = c * k
        return Poly(self.nvars, out)

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Ring-homomorphism evaluation x_i -> images[i] (exact)."""
        if len(images) != self.nvars:
            raise ValueError(f"need {self.nvars} images, got {len(images)}")
        target = images[0].nvars
        if any(img.nvars != target for img in images):
            raise ValueError("images must share a common variable count")
        result = Poly.zero(target)
        powers: list[dict[int, Poly]] = [dict() for _ in range(self.nvars)]
        for exp, c in self.terms.items():
            term = Poly.const(target, c)
            for i, k in enumerate(exp):
                if k:
                    cache = powers[i]
                    if k not in cache:
                        cache[k] = images[i] ** k
                    term = term * cache[k]
            result = result + term
        return result

    def eval_at(self, point: Sequence[Scalar]) -> Fraction:
        """Exact value at a rational point."""
        if len(point) != self.nvars:
            raise ValueError(f"need {self.nvars} coordinates, got {len(point)}")
        vals = [Fraction(v) for v in point]
        total = Fraction(0)
        for exp, c in self.terms.items():
            term = c
            for v, k in zip(vals, exp):
                if k:
                    term *= v**k
            total += term
        return total

    # -- display -------------------------------------------------------------

    def __repr__(self) -> str:
        from .formexpr import poly_to_str

        return f"Poly({self.nvars}, {poly_to_str(self)!r})"


# -- division and gcd ---------------------------------------------------------


def exact_div(p: Poly, d: Poly) -> Optional[Poly]:
    """Exact quotient p/d, or None when d does not divide p.

    Greedy leading-term division under graded-lex order: over an integral
    domain lt(d*q) = lt(d)*lt(q), so the greedy loop reaches zero exactly
    when the division is exact.
    """
    if d.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    p._require_same_arity(d)
    if p.is_zero():
        return Poly.zero(p.nvars)
    d_exp, d_coeff = d.leading_term()
    quotient: dict[Exponent, Fraction] = {}
    rem = p
    while rem:
        r_exp, r_coeff = rem.leading_term()
        q_exp = tuple(a - b for a, b in zip(r_exp, d_exp))
        if any(e < 0 for e in q_exp):
            return None
        q_coeff = r_coeff / d_coeff
        quotient[q_exp] = q_coeff
        rem = rem - d * Poly.monomial(p.nvars, q_exp, q_coeff)
    return Poly(p.nvars, quotient)


def divides(d: Poly, p: Poly) -> bool:
    return exact_div(p, d) is not None


def _coeffs_in_var(p: Poly, var: int) -> dict[int, Poly]:
    """View p as univariate in ``var`` with Poly coefficients (var removed)."""
    out: dict[int, dict[Exponent, Fraction]] = {}
    for exp, c in p.terms.items():
        k = exp[var]
        e = list(exp)
        e[var] = 0
        out.setdefault(k, {})[tuple(e)] = c
    return {k: Poly(p.nvars, t) for k, t in out.items()}


def _from_coeffs_in_var(nvars: int, var: int, coeffs: Mapping[int, Poly]) -> Poly:
    terms: dict[Exponent, Fraction] = {}
    for k, poly in coeffs.items():
        for exp, c in poly.terms.items():
            e = list(exp)
            e[var] += k
            terms[tuple(e)] = c
    return Poly(nvars, terms)


def _mul_var_power(p: Poly, var: int, k: int) -> Poly:
    if k == 0 or p.is_zero():
        return p
    return Poly(
        p.nvars,
        {tuple(e + (k if i == var else 0) for i, e in enumerate(exp)): c for exp, c in p.terms.items()},
    )


def _pseudo_rem(a: Poly, b: Poly, var: int) -> Poly:
    """Pseudo-remainder of a by b viewed as univariate polynomials in var."""
    bc = _coeffs_in_var(b, var)
    db = max(bc)
    lb = bc[db]
    rem = a
    da = rem.degree_in(var)
    while rem and da >= db:
        rc = _coeffs_in_var(rem, var)
        lead = rc.get(da)
        if lead is None:
            da -= 1
            continue
        rem = rem * lb - _mul_var_power(lead * b, var, da - db)
        da = rem.degree_in(var)
    return rem


def gcd(a: Poly, b: Poly) -> Poly:
    """A gcd of a and b, monic under graded-lex order.

    Primitive polynomial remainder sequence, recursing on the variable of
    lowest maximum degree among those present in either input.  Adequate at
    desk scale (degrees <= 6, <= 8 variables).
    """
    a._require_same_arity(b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials")
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    if a.is_constant() or b.is_constant():
        return Poly.one(a.nvars)

    candidates = [
        v
        for v in range(a.nvars)
        if a.degree_in(v) > 0 or b.degree_in(v) > 0
    ]
    var = min(candidates, key=lambda v: max(a.degree_in(v), b.degree_in(v)))
    if a.degree_in(var) == 0 or b.degree_in(var) == 0:
        # One input does not involve the chosen variable: gcd divides its
        # coefficients in that variable, reduce through contents.
        free, other = (a, b) if a.degree_in(var) == 0 else (b, a)
        cont = content_gcd(list(_coeffs_in_var(other, var).values()))
        return gcd(free, cont)

    ca = content_gcd(list(_coeffs_in_var(a, var).values()))
    cb = content_gcd(list(_coeffs_in_var(b, var).values()))
    pa = exact_div(a, ca)
    pb = exact_div(b, cb)
    assert pa is not None and pb is not None
    if pa.degree_in(var) < pb.degree_in(var):
        pa, pb = pb, pa
    while pb:
        rem = _pseudo_rem(pa, pb, var)
        pa, pb = pb, rem
        if pb:
            cont = content_gcd(list(_coeffs_in_var(pb, var).values()))
            pb = exact_div(pb, cont)
            assert pb is not None
    cont = content_gcd(list(_coeffs_in_var(pa, var).values()))
    pa = exact_div(pa, cont)
    assert pa is not None
    return (gcd(ca, cb) * pa).monic()


def content_gcd(polys: Iterable[Poly]) -> Poly:
    """Monic gcd of a nonempty family of polynomials (at least one nonzero)."""
    polys = [p for p in polys]
    if not polys:
        raise ValueError("content_gcd of empty family")
    nonzero = [p for p in polys if p]
    if not nonzero:
        raise ValueError("content_gcd: all inputs are zero")
    g = nonzero[0].monic()
    for p in nonzero[1:]:
        if g.is_constant():
            break
        g = gcd(g, p)
    return g
