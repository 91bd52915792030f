"""Cross sections of a graph at a regular level, and the Morse-lemma surgery check."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .axial import AxialFunction, _plane_key, dot, product
from .errors import HypothesisError, MismatchError, ValidationError
from .graph import Connection, Graph, Subgraph, is_totally_geodesic, transport, validate_connection
from .interpolation import hdim_bosonic
from .linalg import rank
from .morse import MorseFunction
from .polys import d_r
from .scalars import sign, to_scalar

__all__ = [
    "TwoFace",
    "CrossSection",
    "SurgeryReport",
    "two_faces",
    "face_containing",
    "build_cross_section",
    "surgery_check",
    "section_dim_step",
    "suspension",
    "suspension_dimension",
]


@dataclass(frozen=True)
class TwoFace:
    vertices: frozenset
    edges: frozenset  # oriented ids, closed under reversal
    plane: tuple  # reduced echelon basis of W

    def cycle(self, g: Graph, start: int, first: int) -> list[int]:
        """Edges of the face in order, starting with ``first`` at ``start``."""
        out = [first]
        v = g.head(first)
        prev = first
        while v != start:
            nxt = next(e for e in g.star(v) if e in self.edges and e != prev ^ 1)
            out.append(nxt)
            prev = nxt
            v = g.head(nxt)
        return out


class _Faces:
    """Two-face lookup by (vertex, pair of star edges), cached."""

    def __init__(self, g: Graph, a: AxialFunction):
        self.g, self.a = g, a
        self._by_pair: dict = {}
        self._faces: dict = {}

    def _in_plane(self, key, e) -> bool:
        return rank([list(key[0]), list(key[1]), list(self.a[e])], self.a.dim) == 2

    def at(self, v: int, x: int, y: int) -> TwoFace:
        k = (v, min(x, y), max(x, y))
        if k in self._by_pair:
            return self._by_pair[k]
        g = self.g
        key = _plane_key(self.a[x], self.a[y], self.a.dim)
        verts = {v}
        edges = set()
        dq = deque([v])
        while dq:
            u = dq.popleft()
            inside = [e for e in g.star(u) if self._in_plane(key, e)]
            if len(inside) != 2:
                raise HypothesisError(
                    f"component of the plane subgraph at vertex {u} has valence {len(inside)}",
                    "3-independence", (v, x, y))
            for e in inside:
                edges.add(e)
                edges.add(e ^ 1)
                w = g.head(e)
                if w not in verts:
                    verts.add(w)
                    dq.append(w)
        face = TwoFace(frozenset(verts), frozenset(edges), key)
        face = self._faces.setdefault((face.vertices, face.edges), face)
        for u in face.vertices:
            st = [e for e in g.star(u) if e in face.edges]
            self._by_pair[(u, min(st), max(st))] = face
        self._by_pair[k] = face
        return face

    def all(self) -> list[TwoFace]:
        g = self.g
        for v in range(g.vertex_count):
            for x, y in combinations(g.star(v), 2):
                self.at(v, x, y)
        return sorted(self._faces.values(), key=lambda F: (sorted(F.edges), sorted(F.vertices)))


def two_faces(g: Graph, c: Connection | None, a: AxialFunction) -> list[TwoFace]:
    """Valence-two components of the plane subgraphs through star pairs."""
    return _Faces(g, a).all()


def face_containing(g: Graph, a: AxialFunction, v: int, x: int, y: int) -> TwoFace:
    return _Faces(g, a).at(v, x, y)


def _face_minima(g: Graph, F: TwoFace, values) -> int:
    n = 0
    for v in F.vertices:
        if all(values[g.head(e)] > values[v] for e in g.star(v) if e in F.edges):
            n += 1
    return n


@dataclass(frozen=True)
class CrossSection:
    level: object
    edges: tuple  # section vertex i is the oriented edge edges[i] of the graph
    graph: Graph
    faces: tuple  # two-face of each unoriented section edge, by section edge id // 2
    up: Connection
    down: Connection
    delta: AxialFunction

    def vertex_of(self, e: int) -> int:
        return self.edges.index(e)


def _delta_F(F: TwoFace, xi: Sequence, k: int) -> tuple:
    a, b = F.plane
    v = [dot(xi, b) * x - dot(xi, a) * y for x, y in zip(a, b)]
    v = v[:k] + v[k + 1:]
    lead = next(x for x in v if x)
    return tuple(x / lead for x in v)


def build_cross_section(g: Graph, c: Connection, a: AxialFunction, f: MorseFunction,
                        level, faces: _Faces | None = None) -> CrossSection:
    """The section graph at a regular level with its up/down connections and delta."""
    level = to_scalar(level) if not isinstance(level, (Fraction, int)) else Fraction(level)
    vals = f.values
    if any(v == level for v in vals):
        raise HypothesisError("level is a critical value", "regular value", level)
    faces = faces or _Faces(g, a)
    for F in faces.all():
        if _face_minima(g, F, vals) != 1:
            raise HypothesisError(
                f"a two-face has {_face_minima(g, F, vals)} local minima",
                "two-face beta_0 = 1", sorted(F.vertices))
    crossing = tuple(e for e in range(g.edge_count)
                     if vals[g.tail(e)] < level < vals[g.head(e)])
    sid = {e: i for i, e in enumerate(crossing)}

    pairs = {}
    for e in crossing:
        q = g.head(e)
        for x in g.star(q):
            if x == e ^ 1:
                continue
            F = faces.at(q, e ^ 1, x)
            others = [h for h in F.edges if h in sid and h != e]
            if len(others) != 1:  # pragma: no cover - excluded by the minima check
                raise HypothesisError("two-face crosses the level more than twice",
                                      "two-face beta_0 = 1", sorted(F.vertices))
            i, j = sorted((sid[e], sid[others[0]]))
            pairs[(i, j)] = F
    keys = sorted(pairs)
    sg = Graph(len(crossing), keys)
    face_of = tuple(pairs[k] for k in keys)

    def sface(s):
        return face_of[s // 2]

    def edge_at(i, F):
        return next(s for s in sg.star(i) if sface(s) == F)

    def conn(upward: bool) -> Connection:
        maps = []
        for s in range(sg.edge_count):
            i, j = sg.tail(s), sg.head(s)
            e1, e2 = crossing[i], crossing[j]
            F = sface(s)
            if upward:
                v1, v2, out1, out2 = g.head(e1), g.head(e2), e1 ^ 1, e2 ^ 1
            else:
                v1, v2, out1, out2 = g.tail(e1), g.tail(e2), e1, e2
            # the arc of F from v1 to v2 avoiding the crossing edge
            if v1 == v2:
                path = []
            else:
                first = next(h for h in g.star(v1) if h in F.edges and h != out1)
                path = []
                h, v = first, v1
                while True:
                    path.append(h)
                    v = g.head(h)
                    if v == v2:
                        break
                    h = next(x for x in g.star(v) if x in F.edges and x != h ^ 1)
            m = {}
            for t in sg.star(i):
                E = sface(t)
                if E == F:
                    m[t] = s ^ 1
                    continue
                x = next(h for h in g.star(v1) if h in E.edges and h != out1)
                x2 = transport(g, c, path, x) if path else x
                m[t] = edge_at(j, faces.at(v2, out2, x2))
            maps.append(m)
        C = Connection(sg, maps)
        viol = validate_connection(sg, C)
        if viol is not None:
            raise ValidationError(f"{'up' if upward else 'down'} connection violates {viol.axiom}",
                                  viol.axiom, viol.edge)
        return C

    up, down = conn(True), conn(False)
    xi = f.xi
    k = next(i for i, x in enumerate(xi) if x)
    vals_d = []
    for s in range(sg.edge_count):
        dF = _delta_F(sface(s), xi, k)
        if sg.tail(s) > sg.head(s):
            dF = tuple(-x for x in dF)
        vals_d.append(dF)
    delta = AxialFunction(sg, vals_d, a.dim - 1)
    return CrossSection(level, crossing, sg, face_of, up, down, delta)


# surgery


@dataclass(frozen=True)
class SurgeryReport:
    vertex: int
    index: int
    eps: object
    deleted_complete: bool
    deleted_geodesic: bool
    inserted_complete: bool
    inserted_geodesic: bool
    remaining_match: bool

    @property
    def ok(self) -> bool:
        return (self.deleted_complete and self.deleted_geodesic and self.inserted_complete
                and self.inserted_geodesic and self.remaining_match)


def _gap(f: MorseFunction):
    vs = sorted(f.values)
    gaps = [b - a for a, b in zip(vs, vs[1:])]
    return min(gaps) / 2 if gaps else Fraction(1, 2)


def _complete(sec: CrossSection, verts: set) -> bool:
    return all(sec.graph.has_edge(u, v) for u, v in combinations(sorted(verts), 2))


def _sections_around(g, c, a, f, p, faces=None):
    faces = faces or _Faces(g, a)
    eps = _gap(f)
    c0 = f.values[p]
    return eps, build_cross_section(g, c, a, f, c0 - eps, faces), build_cross_section(g, c, a, f, c0 + eps, faces)


def surgery_check(g: Graph, c: Connection, a: AxialFunction, f: MorseFunction, p: int,
                  strict: bool = True) -> SurgeryReport:
    """Passing f(p) deletes a K_k and inserts a K_{d-k}, leaving the rest unchanged."""
    eps, lo, hi = _sections_around(g, c, a, f, p)
    vals = f.values
    down = {x ^ 1 for x in g.star(p) if vals[g.head(x)] < vals[p]}
    upe = {x for x in g.star(p) if vals[g.head(x)] > vals[p]}
    D = {lo.vertex_of(e) for e in down}
    U = {hi.vertex_of(e) for e in upe}
    sub_d = Subgraph.induced(lo.graph, D)
    sub_u = Subgraph.induced(hi.graph, U)
    rest_lo = set(lo.edges) - down
    rest_hi = set(hi.edges) - upe

    def rest_edges(sec, rest):
        out = set()
        for s in range(0, sec.graph.edge_count, 2):
            e1, e2 = sec.edges[sec.graph.tail(s)], sec.edges[sec.graph.head(s)]
            if e1 in rest and e2 in rest:
                out.add((frozenset((e1, e2)), sec.faces[s // 2].vertices))
        return out

    rep = SurgeryReport(
        vertex=p,
        index=len(down),
        eps=eps,
        deleted_complete=_complete(lo, D),
        deleted_geodesic=is_totally_geodesic(lo.graph, lo.up, sub_d),
        inserted_complete=_complete(hi, U),
        inserted_geodesic=is_totally_geodesic(hi.graph, hi.down, sub_u),
        remaining_match=rest_lo == rest_hi and rest_edges(lo, rest_lo) == rest_edges(hi, rest_hi),
    )
    if strict and not rep.ok:
        raise MismatchError(f"surgery bookkeeping fails at vertex {p}", rep, None)
    return rep


def section_dim_step(g: Graph, c: Connection, a: AxialFunction, f: MorseFunction, p: int, r: int,
                     faces=None) -> int:
    """dim H^r(section above) - dim H^r(section below) = d_{r-k}(n) - d_{r-l}(n)."""
    _, lo, hi = _sections_around(g, c, a, f, p, faces)
    lhs = hdim_bosonic(hi.graph, hi.delta, r, basis=False)[0] - hdim_bosonic(lo.graph, lo.delta, r, basis=False)[0]
    k = sum(1 for x in g.star(p) if f.values[g.head(x)] < f.values[p])
    ell = g.valence(p) - k
    n = a.dim
    rhs = d_r(r - k, n) - d_r(r - ell, n)
    if lhs != rhs:
        raise MismatchError(f"dimension step at vertex {p}: solver {lhs}, formula {rhs}", lhs, rhs)
    return lhs


# suspension


def suspension(g: Graph, c: Connection, a: AxialFunction, f: MorseFunction):
    """Gamma x I with the vertical axial value e_{n+1}; returns (graph, conn, axial, morse, c0)."""
    I = Graph(2, [(0, 1)])
    cI = Connection(I, [{0: 1}, {1: 0}])
    aI = AxialFunction(I, [(Fraction(1),), (Fraction(-1),)], 1)
    G, C, A = product(g, c, a, I, cI, aI)
    lo, hi = min(f.values), max(f.values)
    shift = hi - lo + 2
    vals = []
    for v in range(G.vertex_count):
        p, t = divmod(v, 2)
        vals.append(f.values[p] + (shift if t else 0))
    xi = tuple(f.xi) + (Fraction(1),)
    if any(sign(dot(xi, A[e])) != sign(vals[G.head(e)] - vals[G.tail(e)]) for e in range(G.edge_count)):
        raise HypothesisError("suspended function is not compatible with the direction",
                              "Morse compatibility")  # pragma: no cover
    return G, C, A, MorseFunction(tuple(vals), xi), hi + 1


def suspension_dimension(g: Graph, c: Connection, a: AxialFunction, f: MorseFunction, r: int) -> int:
    """Sum of dimension steps over the bottom copy of Gamma in Gamma x I."""
    G, C, A, F, _ = suspension(g, c, a, f)
    faces = _Faces(G, A)
    total = 0
    bottom = sorted((v for v in range(G.vertex_count) if v % 2 == 0), key=lambda v: F.values[v])
    for v in bottom:
        total += section_dim_step(G, C, A, F, v, r, faces)
    return total
