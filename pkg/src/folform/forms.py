"""Exterior algebra of polynomial differential forms and vector fields.

A ``PForm`` of degree p on n variables stores a dict from strictly
increasing index tuples (length p, entries 0..n-1) to nonzero ``Poly``
coefficients.  Degree-0 forms have the single key ().  Zero forms may
carry any degree so that maps such as the exterior derivative stay
degree-correct at the top of the algebra.

Sign conventions, fixed once and tested against every identity used
downstream:

* wedge multiplies basis forms with the sign of the permutation that
  sorts the concatenated index tuples;
* the interior product contracts in the first slot,
  i_v(dx_I) = sum_k (-1)^(k+1) v_(i_k) dx_(I minus i_k);
* the Lie derivative is Cartan's formula  i_v d + d i_v;
* the volume form on n variables is dx1^...^dxn.

With these choices i_R(dx1^dx2) = x1 dx2 - x2 dx1 for the radial field R,
and L_R(Omega) = (m+p) Omega for homogeneous degree-m coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence, Union

from .ratpoly import ANY_DEGREE, Poly, Scalar, _check_nvars

IndexTuple = tuple[int, ...]


def merge_sign(left: IndexTuple, right: IndexTuple) -> tuple[Optional[IndexTuple], int]:
    """Sorted union of two increasing index tuples and the sorting sign.

    Returns (None, 0) when the tuples share an index.
    """
    merged = []
    sign = 1
    i = j = 0
    while i < len(left) and j < len(right):
        a, b = left[i], right[j]
        if a == b:
            return None, 0
        if a < b:
            merged.append(a)
            i += 1
        else:
            # right[j] jumps over the remaining len(left)-i entries of left
            merged.append(b)
            sign *= -1 if (len(left) - i) % 2 else 1
            j += 1
    merged.extend(left[i:])
    merged.extend(right[j:])
    return tuple(merged), sign


def insert_sign(k: int, idx: IndexTuple) -> tuple[Optional[IndexTuple], int]:
    """Index tuple for dx_k ^ dx_idx with its sign (None when k in idx)."""
    return merge_sign((k,), idx)


class PForm:
    """Immutable alternating form with polynomial coefficients."""

    __slots__ = ("nvars", "degree", "terms")

    def __init__(self, nvars: int, degree: int, terms: Optional[Mapping[IndexTuple, Poly]] = None):
        _check_nvars(nvars)
        if degree < 0:
            raise ValueError("form degree must be non-negative")
        clean: dict[IndexTuple, Poly] = {}
        if terms:
            if degree > nvars:
                raise ValueError(f"nonzero degree-{degree} form impossible on {nvars} variables")
            for idx, poly in terms.items():
                idx = tuple(idx)
                if len(idx) != degree:
                    raise ValueError(f"index tuple {idx} has wrong length for degree {degree}")
                if any(not 0 <= v < nvars for v in idx) or any(a >= b for a, b in zip(idx, idx[1:])):
                    raise ValueError(f"index tuple {idx} not strictly increasing in range")
                if poly.nvars != nvars:
                    raise ValueError("coefficient arity mismatch")
                if poly:
                    clean[idx] = poly
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("PForm is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, degree: int = 0) -> "PForm":
        return cls(nvars, degree)

    @classmethod
    def from_poly(cls, poly: Poly) -> "PForm":
        return cls(poly.nvars, 0, {(): poly})

    @classmethod
    def dx(cls, nvars: int, index: int) -> "PForm":
        return cls(nvars, 1, {(index,): Poly.one(nvars)})

    @classmethod
    def basis(cls, nvars: int, idx: IndexTuple, coeff: Optional[Poly] = None) -> "PForm":
        coeff = Poly.one(nvars) if coeff is None else coeff
        return cls(nvars, len(idx), {tuple(idx): coeff})

    # -- views ----------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, idx: IndexTuple) -> Poly:
        return self.terms.get(tuple(idx), Poly.zero(self.nvars))

    def coefficients(self) -> list[Poly]:
        """Nonzero coefficients in canonical (sorted index tuple) order."""
        return [self.terms[idx] for idx in sorted(self.terms)]

    def as_poly(self) -> Poly:
        if self.degree != 0:
            raise ValueError("only degree-0 forms are bare polynomials")
        return self.terms.get((), Poly.zero(self.nvars))

    def homogeneous_degree(self):
        """Common coefficient degree: int, ANY_DEGREE for 0, None if mixed."""
        if not self.terms:
            return ANY_DEGREE
        degs = {p.homogeneous_degree() for p in self.terms.values()}
        if None in degs or len(degs) > 1:
            return None
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree() is not None

    def graded_part(self, degree: int) -> "PForm":
        return PForm(
            self.nvars, self.degree, {i: p.graded_part(degree) for i, p in self.terms.items()}
        )

    def max_coeff_degree(self) -> int:
        if not self.terms:
            return -1
        return max(p.total_degree() for p in self.terms.values())

    # -- linear structure -------------------------------------------------------

    def _require_compatible(self, other: "PForm") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        if self.degree != other.degree and self.terms and other.terms:
            raise ValueError(f"form degree mismatch: {self.degree} vs {other.degree}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, PForm):
            return NotImplemented
        if self.nvars != other.nvars:
            return False
        if not self.terms and (not other.terms):
            return True
        return self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self.terms.items())))

    def __add__(self, other: "PForm") -> "PForm":
        if not isinstance(other, PForm):
            return NotImplemented
        self._require_compatible(other)
        degree = self.degree if self.terms else other.degree
        out = dict(self.terms)
        for idx, p in other.terms.items():
            s = out.get(idx)
            s = p if s is None else s + p
            if s:
                out[idx] = s
            else:
                out.pop(idx, None)
        return PForm(self.nvars, degree, out)

    def __neg__(self) -> "PForm":
        return PForm(self.nvars, self.degree, {i: -p for i, p in self.terms.items()})

    def __sub__(self, other: "PForm") -> "PForm":
        if not isinstance(other, PForm):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union[Poly, Scalar]) -> "PForm":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return PForm(self.nvars, self.degree, {i: p * other for i, p in self.terms.items()})

    def __rmul__(self, other: Union[Poly, Scalar]) -> "PForm":
        return self.__mul__(other)

    # -- exterior calculus -------------------------------------------------------

    def wedge(self, other: "PForm") -> "PForm":
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        degree = self.degree + other.degree
        if degree > self.nvars:
            return PForm.zero(self.nvars, degree)
        out: dict[IndexTuple, Poly] = {}
        for ia, pa in self.terms.items():
            for ib, pb in other.terms.items():
                idx, sign = merge_sign(ia, ib)
                if idx is None:
                    continue
                term = pa * pb
                if sign < 0:
                    term = -term
                s = out.get(idx)
                s = term if s is None else s + term
                if s:
                    out[idx] = s
                else:
                    out.pop(idx, None)
        return PForm(self.nvars, degree, out)

    def d(self) -> "PForm":
        """Exterior derivative (satisfies d d = 0 and the Leibniz rule)."""
        target = self.degree + 1
        if target > self.nvars:
            return PForm.zero(self.nvars, target)
        out: dict[IndexTuple, Poly] = {}
        for idx, poly in self.terms.items():
            for k in range(self.nvars):
                dk = poly.partial(k)
                if not dk:
                    continue
                new_idx, sign = insert_sign(k, idx)
                if new_idx is None:
                    continue
                if sign < 0:
                    dk = -dk
                s = out.get(new_idx)
                s = dk if s is None else s + dk
                if s:
                    out[new_idx] = s
                else:
                    out.pop(new_idx, None)
        return PForm(self.nvars, target, out)

    def interior(self, v: "VField") -> "PForm":
        """Contraction i_v in the first slot; i_v i_v = 0."""
        if self.nvars != v.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {v.nvars}")
        if self.degree == 0:
            return PForm.zero(self.nvars, 0)
        out: dict[IndexTuple, Poly] = {}
        for idx, poly in self.terms.items():
            for pos, k in enumerate(idx):
                comp = v.components[k]
                if not comp:
                    continue
                term = poly * comp
                if pos % 2:
                    term = -term
                rest = idx[:pos] + idx[pos + 1 :]
                s = out.get(rest)
                s = term if s is None else s + term
                if s:
                    out[rest] = s
                else:
                    out.pop(rest, None)
        return PForm(self.nvars, self.degree - 1, out)

    def lie(self, v: "VField") -> "PForm":
        """Lie derivative along v by Cartan's formula."""
        return self.d().interior(v) + self.interior(v).d()

    def restrict(self, kept: Iterable[int]) -> "PForm":
        """Pullback under the inclusion of a coordinate subspace.

        Dropped variables are set to 0 in every coefficient and any term
        carrying a dropped differential is deleted.  The result is expressed
        in the ambient variables.
        """
        kept_set = set(kept)
        if not kept_set:
            raise ValueError("kept variable subset must be nonempty")
        if any(not 0 <= k < self.nvars for k in kept_set):
            raise IndexError("kept variable out of range")
        images = [
            Poly.variable(self.nvars, i) if i in kept_set else Poly.zero(self.nvars)
            for i in range(self.nvars)
        ]
        out: dict[IndexTuple, Poly] = {}
        for idx, poly in self.terms.items():
            if any(i not in kept_set for i in idx):
                continue
            p = poly.substitute(images)
            if p:
                out[idx] = p
        return PForm(self.nvars, self.degree, out)

    def eval_at(self, point: Sequence[Scalar]) -> dict[IndexTuple, Fraction]:
        """Exact coefficient values at a rational point (nonzero entries only)."""
        out = {}
        for idx, poly in self.terms.items():
            v = poly.eval_at(point)
            if v:
                out[idx] = v
        return out

    def __repr__(self) -> str:
        from .formexpr import form_to_str

        return f"PForm({self.nvars}, {form_to_str(self)!r})"


class VField:
    """Polynomial vector field: one component per variable."""

    __slots__ = ("nvars", "components")

    def __init__(self, components: Sequence[Poly]):
        components = tuple(components)
        if not components:
            raise ValueError("vector field needs at least one component")
        nvars = components[0].nvars
        if len(components) != nvars or any(c.nvars != nvars for c in components):
            raise ValueError("component arity inconsistent with variable count")
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):
        raise AttributeError("VField is immutable")

    @classmethod
    def zero(cls, nvars: int) -> "VField":
        return cls([Poly.zero(nvars)] * nvars)

    @classmethod
    def basis(cls, nvars: int, index: int) -> "VField":
        comps = [Poly.zero(nvars)] * nvars
        comps[index] = Poly.one(nvars)
        return cls(comps)

    @classmethod
    def from_constant(cls, nvars: int, vec: Sequence[Scalar]) -> "VField":
        return cls([Poly.const(nvars, v) for v in vec])

    @classmethod
    def linear(cls, matrix: Sequence[Sequence[Scalar]]) -> "VField":
        """Linear field with components X_i = sum_j matrix[i][j] x_j."""
        n = len(matrix)
        comps = []
        for row in matrix:
            p = Poly.zero(n)
            for j, a in enumerate(row):
                if a:
                    p = p + Poly.variable(n, j) * Fraction(a)
            comps.append(p)
        return cls(comps)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, VField):
            return NotImplemented
        return self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __add__(self, other: "VField") -> "VField":
        return VField([a + b for a, b in zip(self.components, other.components)])

    def __sub__(self, other: "VField") -> "VField":
        return VField([a - b for a, b in zip(self.components, other.components)])

    def __mul__(self, other: Union[Poly, Scalar]) -> "VField":
        return VField([c * other for c in self.components])

    __rmul__ = __mul__

    def __neg__(self) -> "VField":
        return self * -1

    def apply(self, poly: Poly) -> Poly:
        """Derivation: v(f) = sum_i v_i df/dx_i."""
        out = Poly.zero(self.nvars)
        for i, comp in enumerate(self.components):
            if comp:
                out = out + comp * poly.partial(i)
        return out

    def is_linear(self) -> bool:
        return all(c.is_zero() or c.is_homogeneous(1) for c in self.components)

    def linear_matrix(self) -> list[list[Fraction]]:
        """Matrix A with X_i = sum_j A[i][j] x_j (components must be linear)."""
        if not self.is_linear():
            raise ValueError("vector field is not linear")
        n = self.nvars
        mat = [[Fraction(0)] * n for _ in range(n)]
        for i, comp in enumerate(self.components):
            for exp, c in comp.terms.items():
                j = exp.index(1)
                mat[i][j] = c
        return mat

    def bracket(self, other: "VField") -> "VField":
        """Lie bracket [self, other]."""
        comps = []
        for i in range(self.nvars):
            comps.append(self.apply(other.components[i]) - other.apply(self.components[i]))
        return VField(comps)

    def __repr__(self) -> str:
        from .formexpr import poly_to_str

        return "VField(" + ", ".join(poly_to_str(c) for c in self.components) + ")"


class PolyMap:
    """Polynomial map C^source -> C^target given by target_count components."""

    __slots__ = ("source_nvars", "target_nvars", "components")

    def __init__(self, source_nvars: int, target_nvars: int, components: Sequence[Poly]):
        components = tuple(components)
        _check_nvars(source_nvars)
        _check_nvars(target_nvars)
        if len(components) != target_nvars:
            raise ValueError("need one component per target variable")
        if any(c.nvars != source_nvars for c in components):
            raise ValueError("component arity inconsistent with source variable count")
        object.__setattr__(self, "source_nvars", source_nvars)
        object.__setattr__(self, "target_nvars", target_nvars)
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):
        raise AttributeError("PolyMap is immutable")

    @classmethod
    def identity(cls, nvars: int) -> "PolyMap":
        return cls(nvars, nvars, [Poly.variable(nvars, i) for i in range(nvars)])

    @classmethod
    def from_matrix(cls, matrix: Sequence[Sequence[Scalar]]) -> "PolyMap":
        """Linear map with components (matrix @ z)_i in source variables z."""
        rows = len(matrix)
        cols = len(matrix[0])
        comps = []
        for row in matrix:
            p = Poly.zero(cols)
            for j, a in enumerate(row):
                if a:
                    p = p + Poly.variable(cols, j) * Fraction(a)
            comps.append(p)
        return cls(cols, rows, comps)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMap):
            return NotImplemented
        return (
            self.source_nvars == other.source_nvars
            and self.target_nvars == other.target_nvars
            and self.components == other.components
        )

    def compose(self, inner: "PolyMap") -> "PolyMap":
        """self after inner."""
        if inner.target_nvars != self.source_nvars:
            raise ValueError("arity mismatch in composition")
        comps = [c.substitute(list(inner.components)) for c in self.components]
        return PolyMap(inner.source_nvars, self.target_nvars, comps)

    def pullback(self, form: PForm) -> PForm:
        """Pullback of a form on the target space; commutes with wedge and d."""
        if form.nvars != self.target_nvars:
            raise ValueError("form arity must equal the map's target variable count")
        n = self.source_nvars
        differentials = [
            PForm(
                n,
                1,
                {(j,): comp.partial(j) for j in range(n) if comp.partial(j)},
            )
            for comp in self.components
        ]
        result = PForm.zero(n, form.degree)
        images = list(self.components)
        for idx, poly in form.terms.items():
            term = PForm.from_poly(poly.substitute(images))
            for i in idx:
                term = term.wedge(differentials[i])
            result = result + term
        return result

    def __repr__(self) -> str:
        from .formexpr import poly_to_str

        return (
            f"PolyMap({self.source_nvars}->{self.target_nvars}: "
            + ", ".join(poly_to_str(c) for c in self.components)
            + ")"
        )


# -- standard fields and forms ---------------------------------------------------


def radial(nvars: int) -> VField:
    """The radial vector field (x1, ..., xn)."""
    _check_nvars(nvars)
    return VField([Poly.variable(nvars, i) for i in range(nvars)])


def volume_form(nvars: int) -> PForm:
    """dx1 ^ ... ^ dxn in the ambient coordinates."""
    _check_nvars(nvars)
    return PForm.basis(nvars, tuple(range(nvars)))


def wedge(a: PForm, b: PForm) -> PForm:
    return a.wedge(b)


def wedge_all(forms: Sequence[PForm]) -> PForm:
    if not forms:
        raise ValueError("empty wedge product")
    out = forms[0]
    for f in forms[1:]:
        out = out.wedge(f)
    return out


def ext_d(a: PForm) -> PForm:
    return a.d()


def interior(v: VField, a: PForm) -> PForm:
    return a.interior(v)


def lie(v: VField, a: PForm) -> PForm:
    return a.lie(v)


def pullback(m: PolyMap, a: PForm) -> PForm:
    return m.pullback(a)


def all_index_tuples(nvars: int, degree: int) -> list[IndexTuple]:
    return list(combinations(range(nvars), degree))
