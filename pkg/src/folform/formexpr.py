"""Text grammar for differential forms: parser and canonical printer.

Grammar (looser binding last):

    expr    := wedge (('+' | '-') wedge)*
    wedge   := product ('^' product)*
    product := unary ('*' unary)*
    unary   := '-' unary | atom
    atom    := RATIONAL | VAR ('**' INT)? | DIFFERENTIAL | '(' expr ')'

``^`` is the wedge product (scalars multiply), ``*`` is multiplication with
at least one scalar factor, ``**`` is an integer exponent on a variable.
Variables are x1..x8 with aliases z1..z8; differentials dx1..dx8 / dz1..dz8.
Rational literals are written a or a/b without spaces.  ``#`` starts a
comment that runs to the end of the line.

print -> parse is the identity up to term ordering; the printer output is
canonical (terms ordered by index tuple, coefficients in descending
graded-lex order), so equal forms print identically.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .forms import PForm
from .ratpoly import Poly, grlex_key


class ParseError(ValueError):
    """Syntax or shape error, carrying the offending position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<number>\d+(?:/\d+)?)
  | (?P<diff>d[xz][1-8])
  | (?P<var>[xz][1-8])
  | (?P<pow>\*\*)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, nvars: int):
        if not 1 <= nvars <= 8:
            raise ValueError("variable count must be in 1..8")
        self.nvars = nvars
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, value, pos = self.next()
        if kind != "op" or value != op:
            raise ParseError(f"expected {op!r}, found {value!r}", pos)

    def _var_index(self, name: str, pos: int) -> int:
        index = int(name[-1]) - 1
        if index >= self.nvars:
            raise ParseError(f"variable {name!r} out of range for n={self.nvars}", pos)
        return index

    def parse(self) -> PForm:
        form = self.expr()
        kind, value, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected trailing input {value!r}", pos)
        return form

    def expr(self) -> PForm:
        form = self.wedge()
        while True:
            kind, value, pos = self.peek()
            if kind == "op" and value in "+-":
                self.next()
                rhs = self.wedge()
                try:
                    form = form + rhs if value == "+" else form - rhs
                except ValueError:
                    raise ParseError(
                        f"cannot add forms of degrees {form.degree} and {rhs.degree}", pos
                    ) from None
            else:
                return form

    def wedge(self) -> PForm:
        form = self.product()
        while True:
            kind, value, pos = self.peek()
            if kind == "op" and value == "^":
                self.next()
                form = form.wedge(self.product())
            else:
                return form

    def product(self) -> PForm:
        form = self.unary()
        while True:
            kind, value, pos = self.peek()
            if kind == "op" and value == "*":
                self.next()
                rhs = self.unary()
                if form.degree and rhs.degree and form and rhs:
                    raise ParseError("'*' needs a scalar factor; use '^' to wedge forms", pos)
                form = form.wedge(rhs)
            else:
                return form

    def unary(self) -> PForm:
        kind, value, pos = self.peek()
        if kind == "op" and value == "-":
            self.next()
            return -self.unary()
        return self.atom()

    def atom(self) -> PForm:
        kind, value, pos = self.next()
        if kind == "number":
            if "/" in value:
                num, den = value.split("/")
                if int(den) == 0:
                    raise ParseError("zero denominator", pos)
                coeff = Fraction(int(num), int(den))
            else:
                coeff = Fraction(int(value))
            return PForm.from_poly(Poly.const(self.nvars, coeff))
        if kind == "var":
            index = self._var_index(value, pos)
            poly = Poly.variable(self.nvars, index)
            nk, nv, npos = self.peek()
            if nk == "pow":
                self.next()
                ek, ev, epos = self.next()
                if ek != "number" or "/" in ev:
                    raise ParseError("'**' needs a non-negative integer exponent", epos)
                poly = poly ** int(ev)
            return PForm.from_poly(poly)
        if kind == "diff":
            return PForm.dx(self.nvars, self._var_index(value, pos))
        if kind == "op" and value == "(":
            form = self.expr()
            self.expect_op(")")
            return form
        raise ParseError(f"unexpected token {value!r}", pos)


def parse_form(text: str, nvars: int) -> PForm:
    """Parse a differential-form expression on ``nvars`` variables."""
    return _Parser(text, nvars).parse()


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse a scalar (degree-0) expression into a polynomial."""
    form = parse_form(text, nvars)
    if form.degree != 0 and form:
        raise ParseError("expected a scalar expression, found a form of positive degree", 0)
    return form.as_poly() if form.degree == 0 else Poly.zero(nvars)


# -- printing -------------------------------------------------------------------


def _monomial_str(exp, coeff: Fraction) -> str:
    parts = []
    for i, e in enumerate(exp):
        if e == 1:
            parts.append(f"x{i + 1}")
        elif e > 1:
            parts.append(f"x{i + 1}**{e}")
    mono = "*".join(parts)
    c = abs(coeff)
    if not mono:
        return str(c)
    if c == 1:
        return mono
    return f"{c}*{mono}"


def poly_to_str(poly: Poly) -> str:
    """Canonical scalar printing: graded-lex descending, explicit signs."""
    if poly.is_zero():
        return "0"
    items = sorted(poly.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)
    out = []
    for exp, coeff in items:
        body = _monomial_str(exp, coeff)
        if not out:
            out.append(body if coeff > 0 else f"-{body}")
        else:
            out.append(f"+ {body}" if coeff > 0 else f"- {body}")
    return " ".join(out)


def _poly_is_single_term(poly: Poly) -> bool:
    return len(poly.terms) == 1


def form_to_str(form: PForm) -> str:
    """Canonical form printing in the grammar (re-parseable)."""
    if form.degree == 0:
        return poly_to_str(form.as_poly())
    if form.is_zero():
        return "0"
    chunks = []
    for idx in sorted(form.terms):
        poly = form.terms[idx]
        dxs = "^".join(f"dx{i + 1}" for i in idx)
        if _poly_is_single_term(poly):
            (exp, coeff), = poly.terms.items()
            body = _monomial_str(exp, coeff)
            scalar = "" if body == "1" else f"{body}*"
            piece = f"{scalar}{dxs}"
            negative = coeff < 0
        else:
            piece = f"({poly_to_str(poly)})*{dxs}"
            negative = False
        if not chunks:
            chunks.append(f"-{piece}" if negative else piece)
        else:
            chunks.append(f"- {piece}" if negative else f"+ {piece}")
    return " ".join(chunks)


def vfield_to_str(field) -> str:
    """Vector field as comma-separated scalar components."""
    return ", ".join(poly_to_str(c) for c in field.components)


def parse_vfield(text: str, nvars: int):
    """Parse comma-separated scalar components into a vector field."""
    from .forms import VField

    parts = text.split(",")
    if len(parts) != nvars:
        raise ParseError(f"expected {nvars} comma-separated components, got {len(parts)}", 0)
    return VField([parse_poly(p, nvars) for p in parts])
