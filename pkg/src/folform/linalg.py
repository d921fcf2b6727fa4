"""Exact sparse linear algebra over Q.

Rows are sparse dicts (column -> value).  Elimination clears each row to
integers and combines rows fraction-free (cross-multiplication followed by
content removal), pivoting by column order.  Solutions and nullspace bases
are the canonical ones determined by the reduced row echelon form: pivot
columns are chosen greedily in column order, and free variables are set to
zero (particular solution) or to unit vectors (nullspace basis), so every
output is independent of row-processing order.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Optional

SparseRow = dict[int, int]


def _clear_row(row: dict[int, Fraction]) -> SparseRow:
    """Scale a rational row to coprime integers (sign of leading entry kept)."""
    entries = {c: Fraction(v) for c, v in row.items() if v}
    if not entries:
        return {}
    denom = 1
    for v in entries.values():
        denom = denom * v.denominator // int_gcd(denom, v.denominator)
    ints = {c: int(v * denom) for c, v in entries.items()}
    g = 0
    for v in ints.values():
        g = int_gcd(g, abs(v))
    if g > 1:
        ints = {c: v // g for c, v in ints.items()}
    return ints


def _normalize(row: SparseRow) -> SparseRow:
    g = 0
    for v in row.values():
        g = int_gcd(g, abs(v))
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


class Eliminator:
    """Forward elimination state with column-order pivoting.

    Columns 0..ncols-1 are unknowns; column ``ncols`` holds the right-hand
    side (zero for pure nullspace computations).
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivot_rows: dict[int, SparseRow] = {}  # pivot column -> row
        self.inconsistent = False

    def add_row(self, row: dict[int, Fraction], rhs: Fraction = Fraction(0)) -> None:
        work = dict(row)
        if rhs:
            work[self.ncols] = rhs
        current = _clear_row(work)
        self._reduce_in(current)

    def _reduce_in(self, row: SparseRow) -> None:
        while row:
            lead = min((c for c in row if c < self.ncols), default=None)
            if lead is None:
                # Nonzero rhs with zero coefficients: inconsistent system.
                self.inconsistent = True
                return
            piv = self.pivot_rows.get(lead)
            if piv is None:
                self.pivot_rows[lead] = _normalize(row)
                return
            a = piv[lead]
            b = row[lead]
            g = int_gcd(a, b)
            ma, mb = b // g, a // g
            new: SparseRow = {}
            for c, v in row.items():
                new[c] = v * mb
            for c, v in piv.items():
                w = new.get(c, 0) - v * ma
                if w:
                    new[c] = w
                else:
                    new.pop(c, None)
            row = _normalize(new)

    def _back_substitute(self, free_values: dict[int, Fraction]) -> Optional[list[Fraction]]:
        if self.inconsistent:
            return None
        sol: list[Fraction] = [Fraction(0)] * self.ncols
        for col, val in free_values.items():
            sol[col] = val
        for lead in sorted(self.pivot_rows, reverse=True):
            row = self.pivot_rows[lead]
            acc = Fraction(0)
            for c, v in row.items():
                if c == self.ncols:
                    acc += v
                elif c != lead:
                    acc -= v * sol[c]
            sol[lead] = acc / row[lead]
        return sol

    def solve(self) -> Optional[list[Fraction]]:
        """Canonical particular solution (free variables zero), or None."""
        return self._back_substitute({})

    def free_columns(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self.pivot_rows]

    def nullspace(self) -> list[list[Fraction]]:
        """Canonical nullspace basis, one vector per free column.

        Ignores the rhs column; callers computing a nullspace should add
        rows with rhs 0 only.
        """
        basis = []
        for free in self.free_columns():
            vec: list[Fraction] = [Fraction(0)] * self.ncols
            vec[free] = Fraction(1)
            for lead in sorted(self.pivot_rows, reverse=True):
                row = self.pivot_rows[lead]
                acc = Fraction(0)
                for c, v in row.items():
                    if c != lead and c != self.ncols:
                        acc -= v * vec[c]
                vec[lead] = acc / row[lead]
            basis.append(vec)
        return basis


def solve_sparse(rows: list[dict[int, Fraction]], rhs: list[Fraction], ncols: int) -> Optional[list[Fraction]]:
    elim = Eliminator(ncols)
    for row, b in zip(rows, rhs):
        elim.add_row(row, b)
    return elim.solve()


def nullspace_sparse(rows: list[dict[int, Fraction]], ncols: int) -> list[list[Fraction]]:
    elim = Eliminator(ncols)
    for row in rows:
        elim.add_row(row)
    return elim.nullspace()


# -- small dense helpers (rational matrices) -----------------------------------


def mat_mul(a: list[list[Fraction]], b: list[list[Fraction]]) -> list[list[Fraction]]:
    n, k, m = len(a), len(b), len(b[0])
    return [[sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(m)] for i in range(n)]


def mat_vec(a: list[list[Fraction]], v: list[Fraction]) -> list[Fraction]:
    return [sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in a]


def identity_matrix(n: int) -> list[list[Fraction]]:
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def mat_inverse(a: list[list[Fraction]]) -> Optional[list[list[Fraction]]]:
    """Exact inverse by Gauss-Jordan; None when singular."""
    n = len(a)
    aug = [[Fraction(v) for v in row] + ident for row, ident in zip(a, identity_matrix(n))]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def mat_rank(a: list[list[Fraction]]) -> int:
    rows = [dict((j, v) for j, v in enumerate(row) if v) for row in a]
    ncols = len(a[0]) if a else 0
    elim = Eliminator(ncols)
    for row in rows:
        elim.add_row(row)
    return len(elim.pivot_rows)
