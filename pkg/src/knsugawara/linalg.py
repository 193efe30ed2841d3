"""Exact Gaussian elimination over the rationals.

Rows are sparse dicts ``column -> Fraction``; columns may be any hashable
keys.  Sizes in this package stay in the hundreds, so a plain elimination
is enough.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .errors import DegenerateForm, Inconsistent

Row = dict


def _axpy(target: dict, coef: Fraction, src: Mapping) -> None:
    for k, v in src.items():
        x = target.get(k, 0) - coef * v
        if x:
            target[k] = x
        else:
            target.pop(k, None)


def eliminate(rows: Iterable[Mapping], order: Sequence[Hashable]) -> list[tuple[Hashable, dict]]:
    """Reduced row echelon form.

    Returns ``(pivot_column, row)`` pairs with each row normalized to 1 at
    its pivot and zero in every other pivot column.  ``order`` fixes the
    column priority; rows whose support leaves ``order`` are not allowed.
    """
    rank = {c: i for i, c in enumerate(order)}
    pivots: dict[Hashable, dict] = {}
    for raw in rows:
        row = {k: Fraction(v) for k, v in raw.items() if v}
        for c, prow in pivots.items():
            coef = row.get(c)
            if coef:
                _axpy(row, coef, prow)
        if not row:
            continue
        c = min(row, key=rank.__getitem__)
        inv = 1 / row[c]
        row = {k: v * inv for k, v in row.items()}
        for prow in pivots.values():
            coef = prow.get(c)
            if coef:
                _axpy(prow, coef, row)
        pivots[c] = row
    return sorted(pivots.items(), key=lambda item: rank[item[0]])


def rank(rows: Iterable[Mapping], order: Sequence[Hashable]) -> int:
    return len(eliminate(rows, order))


def nullspace(rows: Iterable[Mapping], order: Sequence[Hashable]) -> list[dict]:
    """Basis of ``{x : row . x = 0 for all rows}`` over the columns ``order``."""
    echelon = eliminate(rows, order)
    pivot_cols = {c for c, _ in echelon}
    basis = []
    for free in order:
        if free in pivot_cols:
            continue
        vec = {free: Fraction(1)}
        for c, row in echelon:
            v = row.get(free)
            if v:
                vec[c] = -v
        basis.append(vec)
    return basis


RHS = object()


def solve(rows: Iterable[Mapping], rhs: Iterable, order: Sequence[Hashable]) -> tuple[dict, list[dict]]:
    """Solve ``row . x = b`` exactly.

    Returns a particular solution (free variables set to zero) and a basis
    of the homogeneous solutions.  Raises :class:`Inconsistent` when there
    is no solution.
    """
    aug = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[RHS] = Fraction(b)
        aug.append(r)
    echelon = eliminate(aug, list(order) + [RHS])
    if echelon and echelon[-1][0] is RHS:
        raise Inconsistent("linear system has no solution")
    particular = {}
    for c, row in echelon:
        v = row.get(RHS)
        if v:
            particular[c] = v
    hom = nullspace([{k: v for k, v in r.items() if k is not RHS} for _, r in echelon], order)
    return particular, hom


def inverse(matrix: Sequence[Sequence]) -> list[list[Fraction]]:
    n = len(matrix)
    rows = []
    for i, r in enumerate(matrix):
        row = {("a", j): Fraction(v) for j, v in enumerate(r) if v}
        row[("b", i)] = Fraction(1)
        rows.append(row)
    order = [("a", j) for j in range(n)] + [("b", j) for j in range(n)]
    echelon = eliminate(rows, order)
    if len(echelon) < n or any(c[0] != "a" for c, _ in echelon):
        raise DegenerateForm("matrix is singular")
    out = [[Fraction(0)] * n for _ in range(n)]
    for (_, i), row in echelon:
        for (tag, j), v in row.items():
            if tag == "b":
                out[i][j] = v
    return out


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    m = [[Fraction(v) for v in r] for r in matrix]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list[Fraction]]:
    return [
        [sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))]
        for i in range(len(a))
    ]
