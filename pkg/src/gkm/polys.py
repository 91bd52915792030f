"""Homogeneous polynomials and exterior forms with exact coefficients.

Polynomials are sparse dicts ``{exponent tuple: coefficient}``; exterior forms
are dicts ``{ascending index tuple: coefficient}``.  Coefficient vectors follow
the global bases :func:`sym_basis` (graded-lex) and :func:`ext_basis` (lex).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Sequence

from .errors import DivisibilityError
from .linalg import kernel_basis

__all__ = [
    "sym_basis",
    "ext_basis",
    "d_r",
    "dims",
    "to_vector",
    "from_vector",
    "ext_to_vector",
    "ext_from_vector",
    "poly_add",
    "poly_sub",
    "poly_scale",
    "sym_multiply",
    "poly_pow",
    "linear_form",
    "substitute_linear",
    "hyperplane_parametrization",
    "restrict_to_hyperplane",
    "restriction_matrix",
    "divide_by_linear",
    "wedge",
    "one_form",
    "wedge_matrix",
]


@lru_cache(maxsize=None)
def sym_basis(n: int, r: int) -> tuple[tuple[int, ...], ...]:
    """Exponent tuples of degree ``r`` in ``n`` variables, x1^r first."""
    if r < 0:
        return ()
    if n == 0:
        return ((),) if r == 0 else ()
    out = []
    for a in range(r, -1, -1):
        for rest in sym_basis(n - 1, r - a):
            out.append((a,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def _sym_index(n: int, r: int) -> dict:
    return {m: i for i, m in enumerate(sym_basis(n, r))}


@lru_cache(maxsize=None)
def ext_basis(n: int, r: int) -> tuple[tuple[int, ...], ...]:
    """Ascending index r-subsets of range(n) in lex order."""
    if r < 0 or r > n:
        return ()
    return tuple(combinations(range(n), r))


@lru_cache(maxsize=None)
def _ext_index(n: int, r: int) -> dict:
    return {s: i for i, s in enumerate(ext_basis(n, r))}


def d_r(r: int, n: int) -> int:
    """Dimension of degree-r homogeneous polynomials in n variables (0 if r < 0)."""
    if r < 0:
        return 0
    if n == 0:
        return 1 if r == 0 else 0
    return comb(n + r - 1, n - 1)


def dims(n: int, r: int) -> tuple[int, int]:
    """(d_r(n), binom(n, r)), checking d_r(n) = sum_{i<=r} d_i(n-1)."""
    if n < 1 or r < 0:
        raise ValueError("need n >= 1 and r >= 0")
    d = d_r(r, n)
    if d != sum(d_r(i, n - 1) for i in range(r + 1)):
        raise AssertionError("Pascal identity failed")  # pragma: no cover
    return d, comb(n, r)


# conversions


def to_vector(p: dict, n: int, r: int) -> tuple:
    idx = _sym_index(n, r)
    v = [Fraction(0)] * len(idx)
    for m, c in p.items():
        if c:
            if m not in idx:
                raise ValueError(f"monomial {m} is not of degree {r} in {n} variables")
            v[idx[m]] = c
    return tuple(v)


def from_vector(v: Sequence, n: int, r: int) -> dict:
    basis = sym_basis(n, r)
    if len(v) != len(basis):
        raise ValueError("coefficient vector has the wrong length")
    return {m: c for m, c in zip(basis, v) if c}


def ext_to_vector(w: dict, n: int, r: int) -> tuple:
    idx = _ext_index(n, r)
    v = [Fraction(0)] * len(idx)
    for s, c in w.items():
        if c:
            v[idx[s]] = c
    return tuple(v)


def ext_from_vector(v: Sequence, n: int, r: int) -> dict:
    basis = ext_basis(n, r)
    if len(v) != len(basis):
        raise ValueError("coefficient vector has the wrong length")
    return {s: c for s, c in zip(basis, v) if c}


# polynomial arithmetic


def poly_add(p: dict, q: dict) -> dict:
    out = dict(p)
    for m, c in q.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        else:
            out.pop(m, None)
    return out


def poly_scale(p: dict, c) -> dict:
    if not c:
        return {}
    return {m: c * v for m, v in p.items()}


def poly_sub(p: dict, q: dict) -> dict:
    return poly_add(p, poly_scale(q, -1))


def sym_multiply(p: dict, q: dict) -> dict:
    """Product of two polynomials in the same variables."""
    out: dict = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(a + b for a, b in zip(m1, m2))
            s = out.get(m, 0) + c1 * c2
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


def poly_pow(p: dict, k: int, n: int) -> dict:
    out = {(0,) * n: Fraction(1)}
    for _ in range(k):
        out = sym_multiply(out, p)
    return out


def linear_form(vec: Sequence) -> dict:
    n = len(vec)
    return {tuple(int(i == j) for j in range(n)): c for i, c in enumerate(vec) if c}


def substitute_linear(p: dict, forms: Sequence[dict], m: int) -> dict:
    """Replace variable x_i of ``p`` by the polynomial ``forms[i]`` in m variables."""
    cache: dict = {}
    out: dict = {}
    for mono, c in p.items():
        term = {(0,) * m: c}
        for i, e in enumerate(mono):
            if e:
                key = (i, e)
                if key not in cache:
                    cache[key] = poly_pow(forms[i], e, m)
                term = sym_multiply(term, cache[key])
        out = poly_add(out, term)
    return out


@lru_cache(maxsize=None)
def _param_cached(ell: tuple):
    return tuple(tuple(v) for v in kernel_basis([list(ell)], len(ell)))


def hyperplane_parametrization(ell: Sequence) -> list[list]:
    """Reduced echelon basis v_1..v_{n-1} of the kernel of ``ell``."""
    if not any(ell):
        raise ValueError("linear form must be nonzero")
    return [list(v) for v in _param_cached(tuple(ell))]


def restrict_to_hyperplane(p: dict, ell: Sequence) -> dict:
    """Substitute x = sum t_i v_i with v the kernel basis of ``ell``."""
    n = len(ell)
    basis = hyperplane_parametrization(ell)
    m = n - 1
    forms = []
    for j in range(n):
        forms.append({tuple(int(i == k) for k in range(m)): basis[i][j]
                      for i in range(m) if basis[i][j]})
    return substitute_linear(p, forms, m)


@lru_cache(maxsize=None)
def _restriction_cached(ell: tuple, r: int):
    n = len(ell)
    cols = [to_vector(restrict_to_hyperplane({mono: Fraction(1)}, ell), n - 1, r)
            for mono in sym_basis(n, r)]
    nrows = d_r(r, n - 1)
    return tuple(tuple(cols[j][i] for j in range(len(cols))) for i in range(nrows))


def restriction_matrix(ell: Sequence, r: int) -> list[list]:
    """Matrix of p -> p|_{ell=0} from S^r(n) to S^r(n-1) in basis coordinates."""
    return [list(row) for row in _restriction_cached(tuple(ell), r)]


def divide_by_linear(p: dict, ell: Sequence) -> dict:
    """Exact quotient p / ell; raises DivisibilityError on a nonzero remainder."""
    k = next((i for i, c in enumerate(ell) if c), None)
    if k is None:
        raise ValueError("linear form must be nonzero")
    lead = ell[k]
    lf = linear_form(ell)
    rem = dict(p)
    quo: dict = {}
    while rem:
        mono = max(rem, key=lambda m: (m[k], m))
        if mono[k] == 0:
            raise DivisibilityError("polynomial is not divisible by the linear form")
        t = rem[mono] / lead
        qm = tuple(e - (i == k) for i, e in enumerate(mono))
        quo[qm] = quo.get(qm, 0) + t
        rem = poly_sub(rem, sym_multiply({qm: t}, lf))
    return {m: c for m, c in quo.items() if c}


# exterior algebra


def one_form(vec: Sequence) -> dict:
    return {(i,): c for i, c in enumerate(vec) if c}


def wedge(w1: dict, w2: dict) -> dict:
    """Exterior product with ascending-index sign normalization."""
    out: dict = {}
    for s1, c1 in w1.items():
        for s2, c2 in w2.items():
            if set(s1) & set(s2):
                continue
            merged = s1 + s2
            # sign of the sorting permutation = parity of inversions
            inv = sum(1 for a in s1 for b in s2 if a > b)
            key = tuple(sorted(merged))
            v = c1 * c2 if inv % 2 == 0 else -(c1 * c2)
            s = out.get(key, 0) + v
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return out


def wedge_matrix(vec: Sequence, r: int) -> list[list]:
    """Matrix of omega -> alpha ^ omega from Lambda^r to Lambda^{r+1}."""
    n = len(vec)
    a = one_form(vec)
    cols = [ext_to_vector(wedge(a, {s: Fraction(1)}), n, r + 1) for s in ext_basis(n, r)]
    nrows = comb(n, r + 1) if r + 1 <= n else 0
    return [[cols[j][i] for j in range(len(cols))] for i in range(nrows)]
