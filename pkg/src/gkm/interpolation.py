"""Interpolation schemes: bosonic spaces H^r, fermionic spaces, generators, Morse inequalities.

A bosonic scheme assigns a degree-r polynomial g_p to every vertex with
g_p - g_q divisible by alpha(p, q) along each edge.  A fermionic scheme
assigns r-forms with alpha(p, q) ^ (f_p - f_q) = 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .axial import AxialFunction, Embedding, is_exact, is_k_independent
from .errors import DivisibilityError, HypothesisError
from .graph import Connection, Graph, Subgraph, holonomy_group, is_totally_geodesic, transport
from .linalg import determinant, kernel_basis, mat_vec, rank
from .morse import BettiVector, betti, morse_function
from .polys import (d_r, divide_by_linear, ext_basis, ext_from_vector, ext_to_vector, from_vector,
                    linear_form, one_form, poly_add, poly_pow, poly_sub,
                    restriction_matrix, substitute_linear, sym_multiply, to_vector,
                    wedge, wedge_matrix)

__all__ = [
    "Scheme",
    "FermionicScheme",
    "is_scheme",
    "is_fermionic_scheme",
    "scheme_product",
    "hdim_bosonic",
    "hdim_fermionic",
    "formula_71",
    "fermionic_formula",
    "kn_decompose",
    "kn_compose",
    "holonomy_scheme",
    "geodesic_subgraph_scheme",
    "fermionic_face_scheme",
    "morse_inequality_check",
    "MorseInequality",
]


@dataclass(frozen=True)
class Scheme:
    degree: int
    n: int
    values: tuple  # per vertex: coefficient vector in sym_basis(n, degree)

    def poly(self, v: int) -> dict:
        return from_vector(self.values[v], self.n, self.degree)

    @classmethod
    def from_polys(cls, polys: Sequence[dict], n: int, r: int) -> "Scheme":
        return cls(r, n, tuple(to_vector(p, n, r) for p in polys))

    def vector(self) -> tuple:
        return tuple(x for v in self.values for x in v)


@dataclass(frozen=True)
class FermionicScheme:
    degree: int
    n: int
    values: tuple  # per vertex: coefficient vector in ext_basis(n, degree)

    def form(self, v: int) -> dict:
        return ext_from_vector(self.values[v], self.n, self.degree)

    def vector(self) -> tuple:
        return tuple(x for v in self.values for x in v)


def _split(vec: Sequence, m: int, k: int) -> tuple:
    return tuple(tuple(vec[i * k:(i + 1) * k]) for i in range(m))


# validators


def is_scheme(g: Graph, a: AxialFunction, s: Scheme):
    """(True, None) or (False, first unoriented edge whose difference is not divisible)."""
    if s.n != a.dim or len(s.values) != g.vertex_count:
        raise ValueError("scheme does not match the graph and axial dimension")
    for e in range(0, g.edge_count, 2):
        p, q = g.tail(e), g.head(e)
        diff = [x - y for x, y in zip(s.values[p], s.values[q])]
        if any(diff) and any(mat_vec(restriction_matrix(a[e], s.degree), diff)):
            return False, e
    return True, None


def is_fermionic_scheme(g: Graph, a: AxialFunction, s: FermionicScheme):
    if s.n != a.dim or len(s.values) != g.vertex_count:
        raise ValueError("scheme does not match the graph and axial dimension")
    for e in range(0, g.edge_count, 2):
        p, q = g.tail(e), g.head(e)
        diff = [x - y for x, y in zip(s.values[p], s.values[q])]
        if any(diff) and any(mat_vec(wedge_matrix(a[e], s.degree), diff)):
            return False, e
    return True, None


def scheme_product(s: Scheme, t: Scheme) -> Scheme:
    """Vertexwise product; schemes form a graded ring."""
    if s.n != t.n or len(s.values) != len(t.values):
        raise ValueError("schemes live on different graphs")
    polys = [sym_multiply(s.poly(v), t.poly(v)) for v in range(len(s.values))]
    return Scheme.from_polys(polys, s.n, s.degree + t.degree)


# solvers


def _block_system(g: Graph, a: AxialFunction, block, width: int):
    """Rows B(alpha_e) (x_p - x_q) = 0 over unoriented edges, unknowns stacked per vertex."""
    m = g.vertex_count
    rows = []
    for e in range(0, g.edge_count, 2):
        p, q = g.tail(e), g.head(e)
        B = block(a[e])
        for brow in B:
            if not any(brow):
                continue
            row = [Fraction(0)] * (m * width)
            for j, x in enumerate(brow):
                if x:
                    row[p * width + j] = x
                    row[q * width + j] = -x
            rows.append(row)
    return rows


def hdim_bosonic(g: Graph, a: AxialFunction, r: int, basis: bool = True):
    """(dim H^r, canonical basis) by exact kernel computation."""
    if r < 0:
        return 0, []
    n, m = a.dim, g.vertex_count
    width = d_r(r, n)
    rows = _block_system(g, a, lambda ell: restriction_matrix(ell, r), width)
    ncols = m * width
    if not basis:
        return ncols - (rank(rows, ncols) if rows else 0), None
    K = kernel_basis(rows, ncols)
    return len(K), [Scheme(r, n, _split(v, m, width)) for v in K]


def hdim_fermionic(g: Graph, a: AxialFunction, r: int, basis: bool = True):
    """(dim of the fermionic space in degree r, canonical basis)."""
    n, m = a.dim, g.vertex_count
    if r < 0 or r > n:
        return 0, []
    width = comb(n, r)
    rows = _block_system(g, a, lambda ell: wedge_matrix(ell, r), width)
    ncols = m * width
    if not basis:
        return ncols - (rank(rows, ncols) if rows else 0), None
    K = kernel_basis(rows, ncols)
    return len(K), [FermionicScheme(r, n, _split(v, m, width)) for v in K]


def _certified(b) -> tuple:
    if isinstance(b, BettiVector):
        if not b.invariant:
            raise HypothesisError("Betti numbers depend on the direction", "Betti invariance",
                                  b.betti)
        return b.betti
    return tuple(b)


def formula_71(n: int, r: int, b) -> int:
    """sum_l binom(r - l + n - 1, n - 1) beta_l; refuses non-invariant Betti vectors."""
    beta = _certified(b)
    return sum(d_r(r - l, n) * x for l, x in enumerate(beta))


def fermionic_formula(n: int, r: int, b) -> int:
    """sum_k binom(n - k, n - r) beta_k."""
    beta = _certified(b)
    return sum(comb(n - k, n - r) * x for k, x in enumerate(beta) if k <= r <= n)


# complete graphs


def _linear(point: Sequence) -> dict:
    return linear_form(point)


def kn_compose(emb: Embedding, ps: Sequence[dict], n: int, r: int) -> Scheme:
    """Scheme g_p = sum_i ps[i] * f_p^i with f_p = F(p) . x."""
    polys = []
    for v in range(len(emb)):
        f = _linear(emb[v])
        acc: dict = {}
        for i, p in enumerate(ps):
            if p:
                acc = poly_add(acc, sym_multiply(p, poly_pow(f, i, n)))
        polys.append(acc)
    return Scheme.from_polys(polys, n, r)


def kn_decompose(g: Graph, emb: Embedding, s: Scheme) -> list[dict]:
    """Unique p_0..p_{m-1} with g_p = sum_i p_i f_p^i on the complete graph K_m.

    Newton form: g = sum_k c_k prod_{i<k} (f - f_{p_i}), with each c_k found by
    exact division of the residual at p_k.
    """
    m, n = g.vertex_count, s.n
    if g.edge_count != m * (m - 1):
        raise ValueError("kn_decompose needs a complete graph")
    f = [_linear(emb[v]) for v in range(m)]
    zero = (0,) * n
    coeffs: list[dict] = []
    for k in range(m):
        # residual at p_k after the first k Newton terms
        res = s.poly(k)
        basis_prod = {zero: Fraction(1)}
        for j in range(k):
            res = poly_sub(res, sym_multiply(coeffs[j], basis_prod))
            basis_prod = sym_multiply(basis_prod, poly_sub(f[k], f[j]))
        c = res
        for j in range(k):
            ell = [y - x for x, y in zip(emb[j], emb[k])]
            try:
                c = divide_by_linear(c, ell) if c else {}
            except DivisibilityError as exc:
                raise DivisibilityError(
                    f"residual at vertex {k} is not divisible by f_{k} - f_{j}") from exc
        coeffs.append(c)
    # expand prod_{i<k} (t - f_i) in powers of t
    out: list[dict] = [{} for _ in range(m)]
    newton = [{zero: Fraction(1)}]  # coefficient of t^i
    for k in range(m):
        for i, nk in enumerate(newton):
            if coeffs[k] and nk:
                out[i] = poly_add(out[i], sym_multiply(coeffs[k], nk))
        nxt = [{} for _ in range(len(newton) + 1)]
        for i, nk in enumerate(newton):
            nxt[i + 1] = poly_add(nxt[i + 1], nk)
            nxt[i] = poly_sub(nxt[i], sym_multiply(nk, f[k]))
        newton = nxt
    return out


# generators


def _require_exact(g, c, a):
    rep = is_exact(g, c, a)
    if not rep.exact:
        raise HypothesisError("axial function is not exact", "exactness", rep.failure)


def holonomy_scheme(g: Graph, c: Connection, a: AxialFunction, q: dict) -> Scheme:
    """g_p = q(alpha(e_1) . x, ..., alpha(e_d) . x) with the star frame transported from a base."""
    _require_exact(g, c, a)
    n = a.dim
    r = sum(next(iter(q))) if q else 0
    polys: list[dict | None] = [None] * g.vertex_count
    for comp in g.components():
        base = min(comp)
        st = g.star(base)
        for perm in holonomy_group(g, c, base).generators:
            moved = {tuple(m[perm.index(i)] for i in range(len(perm))): v for m, v in q.items()}
            if moved != {k: v for k, v in q.items() if v}:
                raise HypothesisError("polynomial is not invariant under the holonomy group",
                                      "holonomy invariance", perm)
        parent = g.bfs_tree(base)
        for v in comp:
            path = g.tree_path(parent, base, v)
            frame = [transport(g, c, path, e) for e in st] if path else list(st)
            forms = [linear_form(a[e]) for e in frame]
            polys[v] = substitute_linear(q, forms, n)
    s = Scheme.from_polys(polys, n, r)
    ok, bad = is_scheme(g, a, s)
    if not ok:  # pragma: no cover - exactness and invariance guarantee this
        raise HypothesisError("transported polynomial is not a scheme", "exactness", bad)
    return s


def geodesic_subgraph_scheme(g: Graph, c: Connection, a: AxialFunction, sub: Subgraph) -> Scheme:
    """Product of the normal edge forms on the subgraph's vertices, zero elsewhere."""
    if not is_totally_geodesic(g, c, sub):
        raise HypothesisError("subgraph is not totally geodesic", "totally geodesic", sorted(sub.vertices))
    _require_exact(g, c, a)
    n = a.dim
    zero = (0,) * n
    degrees = {sum(1 for e in g.star(v) if e not in sub.edges) for v in sub.vertices}
    if len(degrees) != 1:
        raise HypothesisError("subgraph is not regular", "regular subgraph", sorted(degrees))
    r = degrees.pop()
    polys = []
    for v in range(g.vertex_count):
        if v in sub.vertices:
            p = {zero: Fraction(1)}
            for e in g.star(v):
                if e not in sub.edges:
                    p = sym_multiply(p, linear_form(a[e]))
            polys.append(p)
        else:
            polys.append({})
    s = Scheme.from_polys(polys, n, r)
    ok, bad = is_scheme(g, a, s)
    if not ok:
        raise HypothesisError("normal products do not form a scheme", "exactness", bad)
    return s


def fermionic_face_scheme(g: Graph, c: Connection, a: AxialFunction, face: Sequence[int],
                          normals: Sequence[Sequence] | None = None) -> FermionicScheme:
    """f_p = c_p alpha(e_1) ^ ... ^ alpha(e_r) on the face, with c_p det(alpha(e_i) . v_j) = 1."""
    n = a.dim
    fv = set(face)
    sub = Subgraph.induced(g, fv)
    normal_edges = {v: [e for e in g.star(v) if e not in sub.edges] for v in fv}
    rs = {len(x) for x in normal_edges.values()}
    if len(rs) != 1:
        raise HypothesisError("face is not regular in the graph", "face", sorted(fv))
    r = rs.pop()
    if normals is None:
        tangent = [list(a[e]) for e in sub.edges]
        normals = kernel_basis(tangent, n) if tangent else [
            [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    if len(normals) != r:
        raise HypothesisError(f"need {r} normals, got {len(normals)}", "face normals")
    vals = []
    for v in range(g.vertex_count):
        if v not in fv:
            vals.append(tuple(Fraction(0) for _ in ext_basis(n, r)))
            continue
        es = normal_edges[v]
        w = {(): Fraction(1)}
        for e in es:
            w = wedge(w, one_form(a[e]))
        det = determinant([[sum(x * y for x, y in zip(a[e], nv)) for nv in normals] for e in es])
        if not det:
            raise HypothesisError("normalization determinant vanishes", "face normals", v)
        vals.append(ext_to_vector({k: x / det for k, x in w.items()}, n, r))
    s = FermionicScheme(r, n, tuple(vals))
    ok, bad = is_fermionic_scheme(g, a, s)
    if not ok:
        raise HypothesisError("face forms do not define a scheme", "face", bad)
    return s


# Morse inequalities


@dataclass(frozen=True)
class MorseInequality:
    lhs: int
    rhs: int
    holds: bool
    equality: bool


def morse_inequality_check(g: Graph, c: Connection, a: AxialFunction, r: int,
                           fermionic: bool = False) -> MorseInequality:
    """Compare the solver dimension with the Betti bound."""
    if not is_k_independent(a, 2):
        raise HypothesisError("axial function is not 2-independent", "2-independence")
    if fermionic and r >= 2 and not is_k_independent(a, min(r, min(g.valence(v) for v in range(g.vertex_count)))):
        raise HypothesisError(f"axial function is not {r}-independent", f"{r}-independence")
    morse_function(g, a)  # raises on an up-cycle
    b = betti(g, c, a)
    n = a.dim
    if fermionic:
        lhs = hdim_fermionic(g, a, r, basis=False)[0]
        rhs = sum(comb(n - k, n - r) * x for k, x in enumerate(b.betti) if k <= r)
    else:
        lhs = hdim_bosonic(g, a, r, basis=False)[0]
        rhs = sum(d_r(r - l, n) * x for l, x in enumerate(b.betti))
    return MorseInequality(lhs, rhs, lhs <= rhs, lhs == rhs)
