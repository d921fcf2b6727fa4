"""Order-by-order decomposition of square-zero families of 2-forms.

A family is a finite coefficient list eta_0 .. eta_K standing for
eta_s = sum_j s^j eta_j; the parameter is only ever an index.  When eta_0
splits as alpha0 ^ beta0 and the truncated square-zero condition holds, the
family splits order by order: at each order the residual is divided through
the bounded-degree Saito solver, and the necessary division condition
alpha0 ^ beta0 ^ residual = 0 is a consequence of the square-zero
hypothesis (asserted at every step).  All guarantees are "through order K".

The combinatorial heart of that consequence is a fixed-point-free
involution on a set of index quadruples whose paired wedge terms cancel;
it is exposed here so the cancellation can be unit-tested exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .divide import SaitoConditionError, saito_solve
from .forms import PForm

Quadruple = tuple[int, int, int, int]


@dataclass(frozen=True)
class FormFamily:
    """Finite jet of a 1-parameter family of 2-forms (same arity throughout)."""

    coefficients: tuple[PForm, ...]

    def __post_init__(self):
        if not self.coefficients:
            raise ValueError("family needs at least the order-0 coefficient")
        nvars = self.coefficients[0].nvars
        for c in self.coefficients:
            if c.nvars != nvars:
                raise ValueError("family coefficients must share the variable count")
            if c.degree != 2 and c:
                raise ValueError("family coefficients must be 2-forms")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @property
    def nvars(self) -> int:
        return self.coefficients[0].nvars

    def coefficient(self, j: int) -> PForm:
        if j <= self.order:
            return self.coefficients[j]
        return PForm.zero(self.nvars, 2)


def family_square_zero_check(fam: FormFamily) -> bool:
    """Truncated square-zero condition: sum_(m+n=r) eta_m ^ eta_n = 0, r <= K."""
    for r in range(fam.order + 1):
        acc = PForm.zero(fam.nvars, 4)
        for m in range(r + 1):
            acc = acc + fam.coefficient(m).wedge(fam.coefficient(r - m))
        if not acc.is_zero():
            return False
    return True


@dataclass(frozen=True)
class FamilyDecomposition:
    alphas: tuple[PForm, ...]
    betas: tuple[PForm, ...]

    def residual(self, fam: FormFamily) -> list[PForm]:
        """Order-r residuals eta_r - sum_(i+j=r) alpha_i ^ beta_j, r <= K."""
        out = []
        for r in range(fam.order + 1):
            acc = fam.coefficient(r)
            for i in range(r + 1):
                if i < len(self.alphas) and r - i < len(self.betas):
                    acc = acc - self.alphas[i].wedge(self.betas[r - i])
            out.append(acc)
        return out


def family_decompose(
    fam: FormFamily, alpha0: PForm, beta0: PForm, dmax: int
) -> Optional[FamilyDecomposition]:
    """Split eta_s = alpha_s ^ beta_s through order K by induction on the order.

    Preconditions (checked): eta_0 = alpha0 ^ beta0 exactly and the family
    passes the truncated square-zero check.  At each order l >= 1 the
    residual mu = eta_l - sum_(i=1..l-1) alpha_i ^ beta_(l-i) must satisfy
    alpha0 ^ beta0 ^ mu = 0; a violation means the hypotheses were not
    truncation-consistent and is reported as such.  Returns None when a
    Saito step is infeasible within dmax.
    """
    if fam.coefficient(0) != alpha0.wedge(beta0):
        raise ValueError("eta_0 must equal alpha0 ^ beta0 exactly")
    if not family_square_zero_check(fam):
        raise ValueError("family fails the truncated square-zero check")
    alphas = [alpha0]
    betas = [beta0]
    for order in range(1, fam.order + 1):
        mu = fam.coefficient(order)
        for i in range(1, order):
            mu = mu - alphas[i].wedge(betas[order - i])
        try:
            step = saito_solve(alpha0, beta0, mu, dmax)
        except SaitoConditionError as exc:
            raise AssertionError(f"claim violated at order {order}: {exc}") from exc
        if step is None:
            return None
        alpha_l, beta_l = step
        alphas.append(alpha_l)
        betas.append(beta_l)
    result = FamilyDecomposition(alphas=tuple(alphas), betas=tuple(betas))
    if any(r for r in result.residual(fam)):
        raise AssertionError("reconstruction residual is nonzero through order K")
    return result


# -- cancellation involution ------------------------------------------------------


def quadruple_set(order: int) -> list[Quadruple]:
    """Quadruples (i,j,r,s) with i+j+r+s = order, i+j >= 1, r+s >= 1,
    i != r, j != s, and at most one zero entry."""
    out = []
    for i in range(order + 1):
        for j in range(order + 1 - i):
            for r in range(order + 1 - i - j):
                s = order - i - j - r
                q = (i, j, r, s)
                if i + j >= 1 and r + s >= 1 and i != r and j != s and q.count(0) <= 1:
                    out.append(q)
    return out


def pairing_involution(order: int, i: int, j: int, r: int, s: int) -> Quadruple:
    """The sign-reversing involution pairing wedge terms alpha_i^beta_j^alpha_r^beta_s.

    Swapping the two alpha indices (or, when an alpha index is zero, the two
    beta indices) flips the wedge sign, so paired terms cancel in the
    square-zero expansion.  The map has no fixed points on the quadruple set
    and is its own inverse.
    """
    q = (i, j, r, s)
    if i + j + r + s != order or q not in set(quadruple_set(order)):
        raise ValueError(f"{q} is not an admissible quadruple for order {order}")
    if i == 0 or r == 0:
        return (i, s, r, j)
    return (r, j, i, s)


def signed_quadruple_sum(order: int, alphas: Sequence[PForm], betas: Sequence[PForm]) -> PForm:
    """sum over the quadruple set of alpha_i ^ beta_j ^ alpha_r ^ beta_s."""
    nvars = alphas[0].nvars
    acc = PForm.zero(nvars, 4)
    for (i, j, r, s) in quadruple_set(order):
        acc = acc + alphas[i].wedge(betas[j]).wedge(alphas[r]).wedge(betas[s])
    return acc
