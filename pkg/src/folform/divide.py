"""Degree-bounded division solvers as exact linear systems.

Each solver expands its unknown forms over the monomial basis up to a
degree bound, assembles a sparse linear system over Q, and solves it with
exact fraction-free elimination (column-order pivoting).  Solutions are
canonical: non-pivot coordinates are zero, so reruns reproduce the same
witness.  Every returned object is re-verified against its defining wedge
or contraction identity before being emitted; "no solution" always means
"within the degree bound" and never claims germ-level nonexistence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Optional, Sequence

from .foliate import frobenius_integrable1
from .forms import IndexTuple, PForm, VField, volume_form
from .linalg import Eliminator
from .ratpoly import Exponent, Poly, grlex_key


def monomials_of_degree(nvars: int, degree: int) -> list[Exponent]:
    """Exponent vectors of total degree ``degree`` in graded-lex order."""
    out: list[Exponent] = []

    def rec(prefix: list[int], remaining: int, pos: int):
        if pos == nvars - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e, pos + 1)

    rec([], degree, 0)
    return sorted(out, key=grlex_key)


def monomials_up_to(nvars: int, dmax: int) -> list[Exponent]:
    out: list[Exponent] = []
    for d in range(dmax + 1):
        out.extend(monomials_of_degree(nvars, d))
    return out


Column = tuple[str, int, Exponent]


@dataclass
class GradedLinearSystem:
    """Sparse exact system on monomial coefficients of unknown form slots."""

    columns: list[Column]
    rows: list[dict[int, Fraction]] = field(default_factory=list)
    rhs: list[Fraction] = field(default_factory=list)

    def solve(self) -> Optional[list[Fraction]]:
        elim = Eliminator(len(self.columns))
        for row, b in zip(self.rows, self.rhs):
            elim.add_row(row, b)
        return elim.solve()

    def nullspace(self) -> list[list[Fraction]]:
        elim = Eliminator(len(self.columns))
        for row in self.rows:
            elim.add_row(row)
        return elim.nullspace()


def build_system(
    nvars: int,
    slots: Sequence[tuple[str, int, Sequence[Exponent]]],
    contribution: Callable[[str, int, Poly], PForm],
    target: PForm,
) -> GradedLinearSystem:
    """Assemble the system  sum over unknowns of coeff * contribution = target.

    ``slots`` lists (slot name, component count, monomial basis); the
    contribution callback receives a single monomial (as a Poly) and must be
    linear in it.  Rows are indexed by (index tuple, exponent) pairs of the
    contributed forms and of the target.
    """
    columns: list[Column] = []
    for name, ncomp, monos in slots:
        for comp in range(ncomp):
            for exp in monos:
                columns.append((name, comp, exp))
    row_index: dict[tuple[IndexTuple, Exponent], int] = {}
    rows: list[dict[int, Fraction]] = []

    def row_of(key) -> dict[int, Fraction]:
        idx = row_index.get(key)
        if idx is None:
            idx = len(rows)
            row_index[key] = idx
            rows.append({})
        return rows[idx]

    for col, (name, comp, exp) in enumerate(columns):
        form = contribution(name, comp, Poly.monomial(nvars, exp))
        for idx, poly in form.terms.items():
            for mono, coeff in poly.terms.items():
                row_of((idx, mono))[col] = coeff
    rhs_map: dict[int, Fraction] = {}
    for idx, poly in target.terms.items():
        for mono, coeff in poly.terms.items():
            key = (idx, mono)
            if key not in row_index:
                row_index[key] = len(rows)
                rows.append({})
            rhs_map[row_index[key]] = coeff
    rhs = [rhs_map.get(i, Fraction(0)) for i in range(len(rows))]
    return GradedLinearSystem(columns=columns, rows=rows, rhs=rhs)


def _form_from_solution(
    nvars: int, degree: int, columns: Sequence[Column], solution: Sequence[Fraction], slot: str
) -> PForm:
    coeffs: dict[int, dict[Exponent, Fraction]] = {}
    for (name, comp, exp), value in zip(columns, solution):
        if name == slot and value:
            coeffs.setdefault(comp, {})[exp] = value
    terms = {(comp,): Poly(nvars, t) for comp, t in coeffs.items()}
    if degree != 1:
        raise ValueError("only 1-form slots are reconstructed here")
    return PForm(nvars, 1, terms)


def _vfield_from_solution(
    nvars: int, columns: Sequence[Column], solution: Sequence[Fraction], slot: str
) -> VField:
    comps = [dict() for _ in range(nvars)]
    for (name, comp, exp), value in zip(columns, solution):
        if name == slot and value:
            comps[comp][exp] = value
    return VField([Poly(nvars, c) for c in comps])


class SaitoConditionError(ValueError):
    """The necessary condition alpha0 ^ beta0 ^ mu = 0 fails."""


def saito_solve(
    alpha0: PForm, beta0: PForm, mu: PForm, dmax: int
) -> Optional[tuple[PForm, PForm]]:
    """Solve  mu = alpha0 ^ betaP + alphaP ^ beta0  at bounded degree.

    Requires alpha0 ^ beta0 != 0 and the necessary condition
    alpha0 ^ beta0 ^ mu = 0.  Returns the canonical bounded-degree solution
    (unknown coefficients of degree <= dmax, non-pivot coordinates zero), or
    None when the system is infeasible within the bound.  The identity is
    re-verified exactly before returning.
    """
    if alpha0.degree != 1 or beta0.degree != 1:
        raise ValueError("alpha0 and beta0 must be 1-forms")
    if alpha0.wedge(beta0).is_zero():
        raise ValueError("alpha0 ^ beta0 must be nonzero")
    if mu.degree != 2 and mu:
        raise ValueError("mu must be a 2-form")
    if not alpha0.wedge(beta0).wedge(mu).is_zero():
        raise SaitoConditionError("necessary condition fails: alpha0 ^ beta0 ^ mu != 0")
    nvars = alpha0.nvars

    def contribution(name: str, comp: int, mono: Poly) -> PForm:
        one_form = PForm(nvars, 1, {(comp,): mono})
        if name == "alphaP":
            return one_form.wedge(beta0)
        return alpha0.wedge(one_form)

    # Escalate the bound so the lowest-degree feasible solution is returned:
    # minimal solutions keep residuals small in iterated divisions.  The
    # betaP slot comes first so that, for constant independent leading
    # pairs, the canonical solution is the gauge-normalized one (alphaP
    # free of the leading directions), which iterated division preserves.
    for bound in range(dmax + 1):
        monos = monomials_up_to(nvars, bound)
        slots = [("betaP", nvars, monos), ("alphaP", nvars, monos)]
        system = build_system(nvars, slots, contribution, mu)
        solution = system.solve()
        if solution is None:
            continue
        alphap = _form_from_solution(nvars, 1, system.columns, solution, "alphaP")
        betap = _form_from_solution(nvars, 1, system.columns, solution, "betaP")
        if alpha0.wedge(betap) + alphap.wedge(beta0) != mu:
            raise AssertionError("solver returned a non-solution")
        return alphap, betap
    return None


def derham_vector_solve(eta: PForm, x: VField, dmax: int) -> Optional[VField]:
    """Solve  eta = i_Y i_X nu  on four variables at bounded degree.

    Requires i_X(eta) = 0 and X != 0.  Y is determined modulo the kernel of
    the contraction (in particular modulo X itself); the canonical solution
    is returned and verified exactly.
    """
    if eta.nvars != 4 or x.nvars != 4:
        raise ValueError("this solver works on four variables")
    if eta.degree != 2 and eta:
        raise ValueError("eta must be a 2-form")
    if x.is_zero():
        raise ValueError("X must be nonzero")
    if not eta.interior(x).is_zero():
        raise ValueError("i_X eta nonzero")
    contracted = volume_form(4).interior(x)
    monos = monomials_up_to(4, dmax)

    def contribution(name: str, comp: int, mono: Poly) -> PForm:
        return contracted.interior(VField.basis(4, comp)) * mono

    system = build_system(4, [("y", 4, monos)], contribution, eta)
    solution = system.solve()
    if solution is None:
        return None
    y = _vfield_from_solution(4, system.columns, solution, "y")
    if contracted.interior(y) != eta:
        raise AssertionError("solver returned a non-solution")
    return y


@dataclass(frozen=True)
class CofoliationSearch:
    """Basis of bounded-degree 1-forms annihilating eta, with integrable witnesses."""

    basis: tuple[PForm, ...]
    integrable: tuple[PForm, ...]
    dmax: int


def containing_foliation_search(eta: PForm, dmax: int) -> CofoliationSearch:
    """All 1-forms omega with coefficient degree <= dmax and omega ^ eta = 0.

    Returns a basis of the solution space plus the sublist of integrable
    witnesses found among basis vectors and their pairwise sums
    (integrability is not linear, so this filter is a certificate search,
    not a decision).  An empty result is a valid outcome and claims nothing
    beyond the bound.
    """
    if eta.is_zero():
        raise ValueError("eta must be nonzero")
    nvars = eta.nvars
    monos = monomials_up_to(nvars, dmax)

    def contribution(name: str, comp: int, mono: Poly) -> PForm:
        return PForm(nvars, 1, {(comp,): mono}).wedge(eta)

    target = PForm.zero(nvars, eta.degree + 1)
    system = build_system(nvars, [("omega", nvars, monos)], contribution, target)
    basis_vectors = system.nullspace()
    basis = tuple(
        _form_from_solution(nvars, 1, system.columns, vec, "omega") for vec in basis_vectors
    )
    for omega in basis:
        if not omega.wedge(eta).is_zero():
            raise AssertionError("nullspace member fails the annihilation identity")
    witnesses: list[PForm] = []
    for omega in basis:
        if frobenius_integrable1(omega):
            witnesses.append(omega)
    for a, b in combinations(basis, 2):
        candidate = a + b
        if candidate and frobenius_integrable1(candidate) and candidate not in witnesses:
            witnesses.append(candidate)
    return CofoliationSearch(basis=basis, integrable=tuple(witnesses), dmax=dmax)


def integrating_factor_search(omega: PForm, degree: int) -> Optional[Poly]:
    """Homogeneous P of the given degree with P * d(omega) = dP ^ omega.

    Equivalent to d(omega / P) = 0 after clearing.  Requires omega to
    satisfy the Frobenius condition.  The factor is normalized to leading
    coefficient 1 under graded-lex order; None when no nonzero factor of
    this degree exists.
    """
    if not frobenius_integrable1(omega):
        raise ValueError("omega must satisfy the Frobenius condition")
    nvars = omega.nvars
    domega = omega.d()
    monos = monomials_of_degree(nvars, degree)

    def contribution(name: str, comp: int, mono: Poly) -> PForm:
        return domega * mono - PForm.from_poly(mono).d().wedge(omega)

    target = PForm.zero(nvars, 2)
    system = build_system(nvars, [("p", 1, monos)], contribution, target)
    for vec in system.nullspace():
        terms = {exp: v for (name, comp, exp), v in zip(system.columns, vec) if v}
        p = Poly(nvars, terms)
        if p:
            p = p.monic()
            if domega * p != PForm.from_poly(p).d().wedge(omega):
                raise AssertionError("integrating factor fails its identity")
            return p
    return None


def in_span(vectors: Sequence[PForm], target: PForm) -> bool:
    """Whether target is an exact linear combination of the given forms."""
    if target.is_zero():
        return True
    elim = Eliminator(len(vectors))
    keys: dict[tuple[IndexTuple, Exponent], dict[int, Fraction]] = {}
    for col, form in enumerate(vectors):
        for idx, poly in form.terms.items():
            for mono, coeff in poly.terms.items():
                keys.setdefault((idx, mono), {})[col] = coeff
    rhs: dict[tuple[IndexTuple, Exponent], Fraction] = {}
    for idx, poly in target.terms.items():
        for mono, coeff in poly.terms.items():
            rhs[(idx, mono)] = coeff
            keys.setdefault((idx, mono), {})
    for key, row in keys.items():
        elim.add_row(row, rhs.get(key, Fraction(0)))
    solution = elim.solve()
    if solution is None:
        return False
    combo = PForm.zero(target.nvars, target.degree)
    for c, form in zip(solution, vectors):
        combo = combo + form * c
    return combo == target
