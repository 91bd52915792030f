"""Exact dense linear algebra over Q and Q(sqrt d).

Forward elimination is fraction-free (Bareiss) with first-nonzero pivoting in
column order.  Rational matrices are scaled row-wise to integers first, so the
elimination runs on Python ints; quadratic matrices run over Z[sqrt d] where
every Bareiss division is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .scalars import QuadraticNumber

__all__ = [
    "rank",
    "rref",
    "kernel_basis",
    "row_space_basis",
    "determinant",
    "solve",
    "mat_vec",
    "is_zero_vector",
]


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def _denominator(x) -> int:
    if isinstance(x, QuadraticNumber):
        return x._c
    if isinstance(x, int):
        return 1
    return x.denominator


def _integral_rows(rows):
    """Scale each row so every entry is an int or has denominator one."""
    out = []
    quadratic = False
    for row in rows:
        den = 1
        for x in row:
            if x:
                den = _lcm(den, _denominator(x))
                if isinstance(x, QuadraticNumber):
                    quadratic = True
        new = []
        for x in row:
            if isinstance(x, QuadraticNumber):
                new.append(x * den)
            elif isinstance(x, int):
                new.append(x * den)
            else:
                new.append(x.numerator * (den // x.denominator))
        out.append(new)
    return out, quadratic


def _bareiss(rows, ncols, quadratic):
    """Fraction-free row echelon form; returns (nonzero rows, pivot columns)."""
    if quadratic:
        m = [[Fraction(x) if isinstance(x, int) else x for x in r] for r in rows]
        prev = Fraction(1)
    else:
        m = [list(r) for r in rows]
        prev = 1
    nrows = len(m)
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        p = prow[col]
        for i in range(r + 1, nrows):
            mi = m[i]
            f = mi[col]
            if quadratic:
                for j in range(col + 1, ncols):
                    mi[j] = (p * mi[j] - f * prow[j]) / prev
            elif f:
                for j in range(col + 1, ncols):
                    mi[j] = (p * mi[j] - f * prow[j]) // prev
            else:
                for j in range(col + 1, ncols):
                    if mi[j]:
                        mi[j] = p * mi[j] // prev
            mi[col] = 0
        prev = p
        pivots.append(col)
        r += 1
    return m[:r], pivots


def _ncols(rows, ncols):
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty matrix")
        ncols = len(rows[0])
    for row in rows:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    return ncols


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    ncols = _ncols(rows, ncols)
    ints, quadratic = _integral_rows(rows)
    ech, _ = _bareiss(ints, ncols, quadratic)
    return len(ech)


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form: (nonzero rows as exact scalars, pivot columns)."""
    ncols = _ncols(rows, ncols)
    ints, quadratic = _integral_rows(rows)
    ech, pivots = _bareiss(ints, ncols, quadratic)
    k = len(ech)
    if quadratic:
        for i in reversed(range(k)):
            p = ech[i][pivots[i]]
            row = [x / p for x in ech[i]]
            ech[i] = row
            for t in range(i):
                f = ech[t][pivots[i]]
                if f:
                    ech[t] = [a - f * b for a, b in zip(ech[t], row)]
        return [[Fraction(x) if isinstance(x, int) else x for x in row] for row in ech], pivots
    # integer back-substitution with gcd reduction, then normalize pivots
    for i in reversed(range(k)):
        row = ech[i]
        p = row[pivots[i]]
        for t in range(i):
            f = ech[t][pivots[i]]
            if f:
                g = gcd(p, f)
                a, b = p // g, f // g
                new = [a * x - b * y for x, y in zip(ech[t], row)]
                h = 0
                for x in new:
                    if x:
                        h = gcd(h, x)
                if h > 1:
                    new = [x // h for x in new]
                ech[t] = new
    out = []
    for i in range(k):
        p = ech[i][pivots[i]]
        out.append([Fraction(x, p) for x in ech[i]])
    return out, pivots


def kernel_basis(rows: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Canonical basis of the right null space (rows of its reduced echelon form)."""
    ncols = _ncols(rows, ncols)
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, pivots = rref(rows, ncols)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for j in free:
        v = [Fraction(0)] * ncols
        v[j] = Fraction(1)
        for i, pc in enumerate(pivots):
            if R[i][j]:
                v[pc] = -R[i][j]
        basis.append(v)
    if not basis:
        return basis
    canon, _ = rref(basis, ncols)
    return canon


def row_space_basis(rows: Sequence[Sequence], ncols: int | None = None) -> list[list]:
    """Canonical (reduced echelon) basis of the row span."""
    ncols = _ncols(rows, ncols)
    if not rows:
        return []
    return rref(rows, ncols)[0]


def determinant(square: Sequence[Sequence]):
    n = len(square)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in square):
        raise ValueError("determinant needs a square matrix")
    # scale to integral rows, eliminate, undo the scaling
    ints, quadratic = _integral_rows(square)
    if quadratic:
        m = [[Fraction(x) if isinstance(x, int) else x for x in r] for r in ints]
        prev = Fraction(1)
    else:
        m = [list(r) for r in ints]
        prev = 1
    sgn = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sgn = -sgn
        p = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                v = p * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = v / prev if quadratic else v // prev
            m[i][k] = 0
        prev = p
    det = sgn * m[n - 1][n - 1]
    # each row was multiplied by an integer factor; divide them back out
    for row, orig in zip(ints, square):
        for x, y in zip(row, orig):
            if y:
                det = det * Fraction(1) * y / x if isinstance(x, int) else det * y / x
                break
        else:
            return Fraction(0)
    return Fraction(det) if isinstance(det, int) else det


def solve(A: Sequence[Sequence], b: Sequence):
    """Unique solution of A x = b, or None when A is singular or inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, pivots = rref(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    if len(pivots) != n:
        return None
    return [R[i][n] for i in range(n)]


def mat_vec(rows: Sequence[Sequence], v: Sequence) -> list:
    out = []
    for row in rows:
        s = Fraction(0)
        for a, x in zip(row, v):
            if a and x:
                s = s + a * x
        out.append(s)
    return out


def is_zero_vector(v) -> bool:
    return not any(v)
