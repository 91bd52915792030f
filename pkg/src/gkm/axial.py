"""Axial functions: validation, independence, exactness, immersions, products, curvature."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .errors import HypothesisError, ValidationError
from .graph import Connection, Graph, edge_chains, validate_connection
from .linalg import rank, row_space_basis, solve
from .scalars import sign, to_scalar

__all__ = [
    "AxialFunction",
    "Embedding",
    "PlaneOrientation",
    "ExactnessReport",
    "validate_axial",
    "is_k_independent",
    "is_exact",
    "immerse",
    "connection_from_axial",
    "product",
    "curvature",
    "is_inflection_free",
    "span_reduce",
    "transform_axial",
    "axial_from_embedding",
    "equivalent",
    "dot",
]


def dot(u: Sequence, v: Sequence):
    s = Fraction(0)
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def _vec(v) -> tuple:
    return tuple(to_scalar(x) for x in v)


class AxialFunction:
    """Map oriented edge id -> nonzero exact vector of length ``dim``."""

    __slots__ = ("graph", "dim", "values")

    def __init__(self, graph: Graph, values: Sequence[Sequence], dim: int | None = None):
        if len(values) != graph.edge_count:
            raise ValidationError("axial function must have one value per oriented edge", "coverage")
        vals = tuple(_vec(v) for v in values)
        if dim is None:
            dim = len(vals[0]) if vals else 0
        for e, v in enumerate(vals):
            if len(v) != dim:
                raise ValidationError(f"value on edge {e} has the wrong length", "dimension", e)
        self.graph = graph
        self.dim = dim
        self.values = vals

    def __getitem__(self, e: int) -> tuple:
        return self.values[e]

    def __eq__(self, other):
        return isinstance(other, AxialFunction) and self.graph == other.graph and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"AxialFunction(dim={self.dim}, {self.graph!r})"

    @property
    def is_rational(self) -> bool:
        return all(isinstance(x, Fraction) for v in self.values for x in v)


class Embedding:
    """Vertex positions F with F(head e) - F(tail e) = alpha(e) when immersed."""

    __slots__ = ("points",)

    def __init__(self, points: Sequence[Sequence]):
        self.points = tuple(_vec(p) for p in points)

    def __getitem__(self, v: int) -> tuple:
        return self.points[v]

    def __len__(self):
        return len(self.points)

    def __eq__(self, other):
        return isinstance(other, Embedding) and self.points == other.points

    def __hash__(self):
        return hash(self.points)

    def __repr__(self):
        return f"Embedding({len(self.points)} points)"


def axial_from_embedding(g: Graph, emb: Embedding) -> AxialFunction:
    vals = []
    for e in range(g.edge_count):
        p, q = emb[g.tail(e)], emb[g.head(e)]
        vals.append(tuple(b - a for a, b in zip(p, q)))
    dim = len(emb[0]) if len(emb) else 0
    return AxialFunction(g, vals, dim)


def validate_axial(g: Graph, c: Connection, a: AxialFunction):
    """None if alpha is a valid axial function for (g, c), else (rule, witness)."""
    for e, v in enumerate(a.values):
        if not any(v):
            return ("nonzero", e)
    for e in range(0, g.edge_count, 2):
        if any(x + y for x, y in zip(a[e], a[e ^ 1])):
            return ("antisymmetry", e)
    for d, e, f in edge_chains(g, c):
        if rank([a[d], a[e], a[f]], a.dim) > 2:
            return ("coplanarity", (d, e, f))
    return None


def is_k_independent(a: AxialFunction, k: int) -> bool:
    if k < 1:
        raise ValueError("k must be positive")
    g = a.graph
    for v in range(g.vertex_count):
        st = g.star(v)
        if k > len(st):
            raise ValueError(f"k={k} exceeds the valence {len(st)} at vertex {v}")
        for sub in combinations(st, k):
            if rank([a[e] for e in sub], a.dim) < k:
                return False
    return True


@dataclass(frozen=True)
class ExactnessReport:
    exact: bool
    constants: dict
    failure: tuple | None = None

    def __bool__(self):
        return self.exact


def _proportion(u: Sequence, v: Sequence):
    """c with u = c v, or None."""
    i = next((k for k, x in enumerate(v) if x), None)
    if i is None:
        return None
    c = u[i] / v[i]
    if all(x == c * y for x, y in zip(u, v)):
        return c
    return None


def is_exact(g: Graph, c: Connection, a: AxialFunction) -> ExactnessReport:
    """Solve alpha(f) + alpha(d) = c alpha(e) on every chain."""
    table = {}
    for d, e, f in edge_chains(g, c):
        s = tuple(x + y for x, y in zip(a[d], a[f]))
        k = _proportion(s, a[e])
        if k is None:
            return ExactnessReport(False, table, (d, e, f))
        table[(d, e, f)] = k
    return ExactnessReport(True, table)


def immerse(g: Graph, a: AxialFunction) -> Embedding:
    """Integrate alpha along BFS trees (F = 0 at each component root)."""
    pos: list = [None] * g.vertex_count
    parents = {}
    for comp in g.components():
        root = comp[0]
        pos[root] = tuple(Fraction(0) for _ in range(a.dim))
        parent = g.bfs_tree(root)
        parents.update(parent)
        dq = deque([root])
        while dq:
            v = dq.popleft()
            for e in g.star(v):
                w = g.head(e)
                if parent.get(w) == e:
                    pos[w] = tuple(x + y for x, y in zip(pos[v], a[e]))
                    dq.append(w)
    for e in range(0, g.edge_count, 2):
        p, q = g.tail(e), g.head(e)
        if tuple(y - x for x, y in zip(pos[p], pos[q])) != a[e]:
            root = next(comp[0] for comp in g.components() if p in comp)
            cycle = g.tree_path(parents, root, p) + [e] + [
                x ^ 1 for x in reversed(g.tree_path(parents, root, q))]
            raise ValidationError("axial function does not integrate around a cycle",
                                  "immersion", cycle)
    return Embedding(pos)


def connection_from_axial(g: Graph, a: AxialFunction) -> Connection:
    """Pick the unique f at head(e) with alpha(f) in span(alpha(d), alpha(e))."""
    maps: list[dict[int, int]] = [{e: e ^ 1} for e in range(g.edge_count)]
    for e in range(g.edge_count):
        z = g.head(e)
        for x in g.star(g.tail(e)):
            if x == e:
                continue
            d = x ^ 1
            base = rank([a[d], a[e]], a.dim)
            cands = [f for f in g.star(z) if f != (e ^ 1)
                     and rank([a[d], a[e], a[f]], a.dim) == base]
            if not cands:
                raise ValidationError(f"no candidate for chain ({d},{e},?)", "no candidate", (d, e))
            if len(cands) > 1:
                raise ValidationError(f"multiple candidates {cands} for chain ({d},{e},?)",
                                      "multiple candidates", (d, e, tuple(cands)))
            maps[e][x] = cands[0]
    conn = Connection(g, maps)
    v = validate_connection(g, conn)
    if v is not None:
        raise ValidationError(f"assembled maps violate {v.axiom} at edge {v.edge}", v.axiom, v.edge)
    return conn


def product(g1: Graph, c1: Connection, a1: AxialFunction,
            g2: Graph, c2: Connection, a2: AxialFunction):
    """Product graph on V1 x V2 (vertex (x, y) has id x*|V2| + y)."""
    m2 = g2.vertex_count
    n1, n2 = a1.dim, a2.dim
    z1 = tuple(Fraction(0) for _ in range(n1))
    z2 = tuple(Fraction(0) for _ in range(n2))
    edges = []
    kind = []  # (factor, source edge id, fixed vertex of the other factor)
    for x in range(g1.vertex_count):
        for y in range(m2):
            v = x * m2 + y
            for e in g1.star(x):
                if e % 2 == 0:
                    edges.append((v, g1.head(e) * m2 + y))
                    kind.append((1, e, y))
            for e in g2.star(y):
                if e % 2 == 0:
                    edges.append((v, x * m2 + g2.head(e)))
                    kind.append((2, e, x))
    g = Graph(g1.vertex_count * m2, edges)
    vals = []
    lift = []
    for (f, e, o) in kind:
        for rev in (0, 1):
            src = e ^ rev
            lift.append((f, src, o))
            vals.append(a1[src] + z2 if f == 1 else z1 + a2[src])
    a = AxialFunction(g, vals, n1 + n2)

    maps = []
    for pe in range(g.edge_count):
        f, src, _ = lift[pe]
        m = {}
        for x in g.star(g.tail(pe)):
            fx, sx, ox = lift[x]
            if fx == f:
                conn = c1 if f == 1 else c2
                tgt = conn.maps[src][sx]
                # lift tgt at the new vertex
                if f == 1:
                    m[x] = g.edge_id(g1.tail(tgt) * m2 + ox, g1.head(tgt) * m2 + ox)
                else:
                    m[x] = g.edge_id(ox * m2 + g2.tail(tgt), ox * m2 + g2.head(tgt))
            else:
                # same edge of the other factor, based at the new vertex
                h = g.head(pe)
                if fx == 1:
                    m[x] = g.edge_id(h, g1.head(sx) * m2 + (h % m2))
                else:
                    m[x] = g.edge_id(h, (h // m2) * m2 + g2.head(sx))
        maps.append(m)
    return g, Connection(g, maps), a


def _plane_key(u: Sequence, v: Sequence, n: int):
    basis = row_space_basis([list(u), list(v)], n)
    if len(basis) != 2:
        raise HypothesisError("vectors are parallel", "2-independence", (tuple(u), tuple(v)))
    return tuple(tuple(r) for r in basis)


class PlaneOrientation:
    """Orientation per 2-plane; default is the reduced echelon basis order."""

    def __init__(self, flips: dict | None = None):
        self._flips = dict(flips or {})

    def flip(self, key) -> None:
        self._flips[key] = not self._flips.get(key, False)

    def basis(self, key):
        b1, b2 = key
        return (b2, b1) if self._flips.get(key, False) else (b1, b2)

    def sign(self, key) -> int:
        return -1 if self._flips.get(key, False) else 1


def _coords_in_key(key, v):
    # the echelon basis has an identity block at its pivot columns
    piv = [next(i for i, x in enumerate(row) if x) for row in key]
    return v[piv[0]], v[piv[1]]


def curvature(a: AxialFunction, orient: PlaneOrientation, d: int, e: int) -> int:
    """Sign of alpha(d)^perp . alpha(e) in the oriented plane they span."""
    u, v = a[d], a[e]
    key = _plane_key(u, v, a.dim)
    u1, u2 = _coords_in_key(key, u)
    v1, v2 = _coords_in_key(key, v)
    return sign(u1 * v2 - u2 * v1) * orient.sign(key)


def is_inflection_free(g: Graph, c: Connection, a: AxialFunction,
                       orient: PlaneOrientation | None = None):
    """(True, None) or (False, first inflection chain)."""
    orient = orient or PlaneOrientation()
    for d, e, f in edge_chains(g, c):
        if curvature(a, orient, d, e) * curvature(a, orient, e, f) < 0:
            return False, (d, e, f)
    return True, None


def transform_axial(a: AxialFunction, matrix: Sequence[Sequence]) -> AxialFunction:
    """Apply the linear map ``matrix`` (rows = output coordinates) to every value."""
    vals = [tuple(dot(row, v) for row in matrix) for v in a.values]
    return AxialFunction(a.graph, vals, len(matrix))


def span_reduce(a: AxialFunction):
    """Express alpha in coordinates of its span: (reduced axial, echelon basis rows)."""
    basis = row_space_basis([list(v) for v in a.values], a.dim) if a.values else []
    piv = [next(i for i, x in enumerate(row) if x) for row in basis]
    vals = [tuple(v[p] for p in piv) for v in a.values]
    return AxialFunction(a.graph, vals, len(basis)), basis


def equivalent(a: AxialFunction, b: AxialFunction) -> bool:
    """Same directions edgewise: b(e) is a positive multiple of a(e)."""
    if a.graph != b.graph or a.dim != b.dim:
        return False
    for u, v in zip(a.values, b.values):
        k = _proportion(v, u)
        if k is None or sign(k) <= 0:
            return False
    return True


def solve_coordinates(basis: Sequence[Sequence], v: Sequence):
    """Coordinates of v in the given (independent) basis, or None."""
    cols = [list(col) for col in zip(*basis)]
    return solve(cols, list(v))
