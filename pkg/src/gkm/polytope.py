"""Simple polytope skeletons, face counts from Betti numbers, parallel redrawings."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

from .axial import AxialFunction, Embedding, _proportion, dot, span_reduce
from .errors import HypothesisError, MismatchError
from .graph import Connection, Graph
from .interpolation import _certified
from .linalg import kernel_basis, mat_vec, rank, row_space_basis
from .morse import betti, poincare_check

__all__ = [
    "Face",
    "PolytopeSkeleton",
    "RedrawSpace",
    "FaceCountReport",
    "skeleton",
    "faces",
    "fvector_from_betti",
    "fvector_from_faces",
    "betti_to_faces_check",
    "redraw_basis",
    "edge_factors",
    "is_redrawing",
    "deform",
    "facet_redrawings",
]


@dataclass(frozen=True)
class Face:
    dim: int
    vertices: frozenset
    plane: tuple  # echelon basis of the face's direction space (reduced coordinates)


def _component(g: Graph, a: AxialFunction, v: int, basis: list, k: int) -> frozenset:
    seen = {v}
    dq = deque([v])
    while dq:
        u = dq.popleft()
        for e in g.star(u):
            w = g.head(e)
            if w not in seen and rank(basis + [list(a[e])], a.dim) == k:
                seen.add(w)
                dq.append(w)
    return frozenset(seen)


def faces(g: Graph, a: AxialFunction, dims: Sequence[int] | None = None) -> dict:
    """k-faces as components of the subgraph of edges parallel to the span of k star edges."""
    d = max((g.valence(v) for v in range(g.vertex_count)), default=0)
    dims = range(d + 1) if dims is None else dims
    out = {}
    for k in dims:
        found = {}
        for v in range(g.vertex_count):
            for S in combinations(g.star(v), k):
                basis = row_space_basis([list(a[e]) for e in S], a.dim) if S else []
                if len(basis) != k:
                    raise HypothesisError(f"star edges at {v} are dependent", "simple skeleton", S)
                if k == 0:
                    verts = frozenset((v,))
                else:
                    verts = _component(g, a, v, basis, k)
                found.setdefault(verts, Face(k, verts, tuple(tuple(r) for r in basis)))
        out[k] = sorted(found.values(), key=lambda F: sorted(F.vertices))
    return out


@dataclass
class PolytopeSkeleton:
    graph: Graph
    connection: Connection | None
    axial: AxialFunction  # span reduced
    embedding: Embedding | None = None
    basis: tuple = ()  # rows spanning the original axial values
    face_table: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.axial.dim

    @property
    def facets(self) -> list:
        return self.face_table.get(self.n - 1, [])


def skeleton(g: Graph, c: Connection | None, a: AxialFunction, emb: Embedding | None = None) -> PolytopeSkeleton:
    red, basis = span_reduce(a)
    for v in range(g.vertex_count):
        if g.valence(v) != red.dim:
            raise HypothesisError(f"vertex {v} has valence {g.valence(v)} in dimension {red.dim}",
                                  "simple skeleton", v)
    sk = PolytopeSkeleton(g, c, red, emb, tuple(tuple(r) for r in basis))
    sk.face_table = faces(g, red)
    return sk


def fvector_from_betti(n: int, b) -> tuple:
    """(f_n, f_{n-1}, ..., f_0) with f_{n-k} = sum_l binom(n-l, k-l) beta_l."""
    beta = _certified(b)
    if not poincare_check(beta):
        raise HypothesisError("Betti vector is not palindromic", "Poincare duality", beta)
    beta = list(beta) + [0] * max(0, n + 1 - len(beta))
    return tuple(sum(comb(n - l, k - l) * beta[l] for l in range(k + 1)) for k in range(n + 1))


def fvector_from_faces(sk: PolytopeSkeleton) -> tuple:
    return tuple(len(sk.face_table[sk.n - k]) for k in range(sk.n + 1))


@dataclass(frozen=True)
class FaceCountReport:
    betti: tuple
    from_betti: tuple
    from_faces: tuple

    @property
    def ok(self) -> bool:
        return self.from_betti == self.from_faces


def betti_to_faces_check(sk: PolytopeSkeleton, strict: bool = True) -> FaceCountReport:
    b = betti(sk.graph, sk.connection, sk.axial)
    rep = FaceCountReport(b.betti, fvector_from_betti(sk.n, b), fvector_from_faces(sk))
    if strict and not rep.ok:
        raise MismatchError("face counts disagree", rep.from_betti, rep.from_faces)
    return rep


# parallel redrawings


@dataclass(frozen=True)
class RedrawSpace:
    dim: int
    ambient_dim: int
    basis: tuple  # per element: tuple of per-vertex vectors in reduced coordinates
    tags: tuple  # "translation", "dilation" or "other"
    span: tuple  # rows expressing reduced coordinates in the ambient space

    def ambient(self, i: int) -> tuple:
        """Basis element i as per-vertex ambient vectors."""
        n = len(self.span[0]) if self.span else 0
        return tuple(tuple(sum((x * row[j] for x, row in zip(p, self.span)), 0) for j in range(n))
                     for p in self.basis[i])


def _minor_rows(g: Graph, a: AxialFunction) -> list:
    s = a.dim
    m = g.vertex_count
    rows = []
    for e in range(0, g.edge_count, 2):
        p, q = g.tail(e), g.head(e)
        al = a[e]
        for i, j in combinations(range(s), 2):
            row = [0] * (m * s)
            # (pi_i(q) - pi_i(p)) al_j - (pi_j(q) - pi_j(p)) al_i = 0
            row[q * s + i] += al[j]
            row[p * s + i] -= al[j]
            row[q * s + j] -= al[i]
            row[p * s + j] += al[i]
            if any(row):
                rows.append(row)
    return rows


def _split(vec: Sequence, m: int, s: int) -> tuple:
    return tuple(tuple(vec[v * s:(v + 1) * s]) for v in range(m))


def redraw_basis(g: Graph, a: AxialFunction, emb: Embedding | None = None) -> RedrawSpace:
    """Kernel of the parallelism minors, with translations and the dilation listed first."""
    red, span = span_reduce(a)
    s, m = red.dim, g.vertex_count
    rows = _minor_rows(g, red)
    kern = kernel_basis(rows, m * s)
    comps = g.components()
    seeds = []
    for comp in comps:
        for i in range(s):
            vec = [0] * (m * s)
            for v in comp:
                vec[v * s + i] = 1
            seeds.append(("translation", vec))
    if emb is not None and s:
        piv = [next(i for i, x in enumerate(r) if x) for r in span]
        seeds.append(("dilation", [emb[v][p] for v in range(m) for p in piv]))
    seeds = [(t, v) for t, v in seeds if not any(mat_vec(rows, v))] if rows else seeds
    chosen, tags = [], []
    for tag, vec in seeds + [("other", v) for v in kern]:
        if rank(chosen + [vec], m * s) > len(chosen):
            chosen.append(vec)
            tags.append(tag)
        if len(chosen) == len(kern):
            break
    if len(chosen) != len(kern):  # pragma: no cover - the seeds lie in the kernel
        raise MismatchError("redrawing seeds leave the kernel", len(chosen), len(kern))
    basis = tuple(_split(v, m, s) for v in chosen)
    ambient = len(kern) + (a.dim - s) * len(comps)
    return RedrawSpace(len(kern), ambient, basis, tuple(tags), tuple(tuple(r) for r in span))


def edge_factors(g: Graph, a: AxialFunction, pi: Sequence) -> tuple:
    """Per unoriented edge the lambda with pi(q) - pi(p) = lambda alpha(p, q), or None."""
    out = []
    for e in range(0, g.edge_count, 2):
        p, q = g.tail(e), g.head(e)
        diff = tuple(y - x for x, y in zip(pi[p], pi[q]))
        out.append(0 if not any(diff) else _proportion(diff, a[e]))
    return tuple(out)


def is_redrawing(g: Graph, a: AxialFunction, pi: Sequence) -> bool:
    return all(x is not None for x in edge_factors(g, a, pi))


def deform(emb: Embedding, pi: Sequence, eps, g: Graph | None = None) -> Embedding:
    """p -> p + eps pi(p); checks every edge stays parallel when a graph is given."""
    pts = [tuple(x + eps * y for x, y in zip(p, d)) for p, d in zip(emb.points, pi)]
    out = Embedding(pts)
    if g is not None:
        for e in range(0, g.edge_count, 2):
            u = [y - x for x, y in zip(emb[g.tail(e)], emb[g.head(e)])]
            w = [y - x for x, y in zip(out[g.tail(e)], out[g.head(e)])]
            if rank([u, w], len(u)) > 1:
                raise MismatchError(f"edge {e} is not parallel after deformation", u, w)
    return out


def facet_redrawings(sk: PolytopeSkeleton) -> list:
    """One redrawing per facet: its vertices slide along the edge leaving the facet."""
    g, a = sk.graph, sk.axial
    out = []
    for F in sk.facets:
        normal = kernel_basis([list(r) for r in F.plane], sk.n)
        if len(normal) != 1:  # pragma: no cover
            raise HypothesisError("facet direction space is not a hyperplane", "simple skeleton", F)
        nu = normal[0]
        pi = []
        for v in range(g.vertex_count):
            if v not in F.vertices:
                pi.append(tuple(0 for _ in range(sk.n)))
                continue
            leaving = [e for e in g.star(v) if g.head(e) not in F.vertices]
            if len(leaving) != 1 or not dot(nu, a[leaving[0]]):
                raise HypothesisError(f"singular vertex frame at {v}", "simple skeleton", v)
            e = leaving[0]
            t = Fraction(1) / dot(nu, a[e])
            pi.append(tuple(t * x for x in a[e]))
        out.append(tuple(pi))
    return out
