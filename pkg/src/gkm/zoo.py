"""Constructors for the example graphs, with expected invariants.

Plane polygons use the affine image ``(cos k t, sin k t / sin t)`` of the regular
polygon, whose coordinates lie in Q(cos t).  Affine maps preserve parallelism,
exactness and every count computed here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product as iproduct
from math import factorial

from .axial import (AxialFunction, Embedding, axial_from_embedding, connection_from_axial,
                    product)
from .graph import Connection, Graph, connection_from_geodesics
from .scalars import QuadraticNumber, sqrt

__all__ = [
    "Fixture",
    "NAMES",
    "make",
    "point",
    "edge",
    "path",
    "ngon",
    "pentagram",
    "dart",
    "complete",
    "tetrahedron",
    "hypercube",
    "cube",
    "johnson",
    "octahedron",
    "permutahedron",
    "dihedral",
    "petersen",
    "cuboctahedron",
    "dodecahedron",
    "great_stellated_dodecahedron",
    "small_stellated_dodecahedron",
    "affine_regular_polygon",
]

F = Fraction


@dataclass
class Fixture:
    name: str
    graph: Graph
    connection: Connection | None
    axial: AxialFunction | None
    embedding: Embedding | None = None
    expected: dict = field(default_factory=dict)
    provenance: str = "exact construction"

    @property
    def g(self):
        return self.graph

    @property
    def c(self):
        return self.connection

    @property
    def a(self):
        return self.axial


def _cos_2pi_over(m: int):
    """Exact cos(2 pi / m) for the orders used by the zoo."""
    table = {
        1: F(1), 2: F(-1), 3: F(-1, 2), 4: F(0), 6: F(1, 2),
        5: QuadraticNumber(F(-1, 4), F(1, 4), 5),
        8: QuadraticNumber(0, F(1, 2), 2),
        10: QuadraticNumber(F(1, 4), F(1, 4), 5),
        12: QuadraticNumber(0, F(1, 2), 3),
    }
    if m not in table:
        raise ValueError(f"no exact affine-regular {m}-gon available")
    return table[m]


def affine_regular_polygon(m: int) -> list[tuple]:
    """Vertices (T_k(c), U_{k-1}(c)) with c = cos(2 pi / m), k = 0..m-1."""
    c = _cos_2pi_over(m)
    T = [F(1), c]
    U = [F(0), F(1)]  # U_{-1}, U_0
    for _ in range(m):
        T.append(2 * c * T[-1] - T[-2])
        U.append(2 * c * U[-1] - U[-2])
    return [(T[k], U[k]) for k in range(m)]


def _fixture_from_embedding(name, g, emb, conn=None, geodesics=None, **kw):
    a = axial_from_embedding(g, emb)
    if conn is None:
        conn = connection_from_geodesics(g, geodesics) if geodesics is not None else connection_from_axial(g, a)
    return Fixture(name, g, conn, a, emb, **kw)


def _exact_connection(g: Graph, a: AxialFunction) -> Connection:
    """The connection whose chains (d, e, f) all satisfy alpha(d) + alpha(f) parallel to alpha(e)."""
    from .linalg import rank
    maps = [{e: e ^ 1} for e in range(g.edge_count)]
    for e in range(g.edge_count):
        for x in g.star(g.tail(e)):
            if x == e:
                continue
            d = x ^ 1
            cands = [f for f in g.star(g.head(e)) if f != e ^ 1
                     and rank([[u + v for u, v in zip(a[d], a[f])], list(a[e])]) <= 1]
            if len(cands) != 1:
                raise ValueError(f"no unique exact continuation of ({d},{e})")
            maps[e][x] = cands[0]
    return Connection(g, maps)


def _cycle_edges(g: Graph, verts) -> list[int]:
    return [g.edge_id(verts[i], verts[(i + 1) % len(verts)]) for i in range(len(verts))]


# building blocks


def point() -> Fixture:
    g = Graph(1, [])
    return Fixture("point", g, Connection(g, []), AxialFunction(g, [], 1), Embedding([(F(0),)]),
                   expected={"betti": (1,)})


def edge() -> Fixture:
    g = Graph(2, [(0, 1)])
    emb = Embedding([(F(0),), (F(1),)])
    conn = Connection(g, [{0: 1}, {1: 0}])
    return Fixture("edge", g, conn, axial_from_embedding(g, emb), emb,
                   expected={"betti": (1, 1), "redraw_dim": 2})


def path(k: int) -> Fixture:
    """Path with k edges; not regular, so no connection or axial function."""
    if k < 1:
        raise ValueError("path needs at least one edge")
    g = Graph(k + 1, [(i, i + 1) for i in range(k)])
    return Fixture(f"path({k})", g, None, None)


def ngon(n: int) -> Fixture:
    """Convex n-gon with rational vertices on the parabola y = x^2."""
    if n < 3:
        raise ValueError("ngon needs n >= 3")
    g = Graph(n, [(i, (i + 1) % n) for i in range(n)])
    emb = Embedding([(F(i), F(i * i)) for i in range(n)])
    return _fixture_from_embedding(f"ngon({n})", g, emb, geodesics=[_cycle_edges(g, list(range(n)))],
                                   expected={"betti": (1, n - 2, 1), "redraw_dim": n},
                                   provenance="convex polygon, coordinates chosen")


def pentagram() -> Fixture:
    """5-cycle immersed as the {5/2} star polygon over Q(sqrt 5)."""
    pts = affine_regular_polygon(5)
    g = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    emb = Embedding([pts[(2 * i) % 5] for i in range(5)])
    return _fixture_from_embedding("pentagram", g, emb, geodesics=[_cycle_edges(g, list(range(5)))],
                                   expected={"betti": (2, 1, 2)},
                                   provenance="coordinates reconstructed (affine-regular star polygon)")


def dart() -> Fixture:
    """Non-convex quadrilateral: tip, right wing, notch, left wing."""
    g = Graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    emb = Embedding([(F(0), F(3)), (F(2), F(0)), (F(0), F(1)), (F(-2), F(0))])
    return _fixture_from_embedding("dart", g, emb, geodesics=[_cycle_edges(g, [0, 1, 2, 3])],
                                   expected={"betti_chambers": [(1, 2, 1), (2, 0, 2)], "redraw_dim": 4},
                                   provenance="coordinates chosen")


# families


def complete(n: int) -> Fixture:
    """Simplex skeleton K_n with vertex i at basis vector e_i."""
    if n < 2:
        raise ValueError("complete needs n >= 2")
    g = Graph(n, list(combinations(range(n), 2)))
    emb = Embedding([tuple(F(int(i == j)) for j in range(n)) for i in range(n)])
    maps = []
    for e in range(g.edge_count):
        i, j = g.tail(e), g.head(e)
        maps.append({x: (g.edge_id(j, i) if x == e else g.edge_id(j, g.head(x))) for x in g.star(i)})
    fx = Fixture(f"complete({n})", g, Connection(g, maps), axial_from_embedding(g, emb), emb,
                 expected={"betti": (1,) * n, "holonomy_order": factorial(n - 1),
                           "geodesics": n * (n - 1) * (n - 2) // 6, "redraw_dim": n})
    return fx


def hypercube(n: int) -> Fixture:
    """n-fold product of an edge."""
    if n < 1:
        raise ValueError("hypercube needs n >= 1")
    e = edge()
    g, c, a = e.graph, e.connection, e.axial
    for _ in range(n - 1):
        g, c, a = product(g, c, a, e.graph, e.connection, e.axial)
    from .axial import immerse
    emb = immerse(g, a)
    betti = tuple(factorial(n) // (factorial(k) * factorial(n - k)) for k in range(n + 1))
    return Fixture(f"hypercube({n})", g, c, a, emb,
                   expected={"betti": betti, "holonomy_order": 1, "redraw_dim": 2 * n})


def johnson(n: int, k: int) -> Fixture:
    """J(n, k): k-subsets, adjacent when they share k - 1 elements."""
    if not 0 < k < n:
        raise ValueError("johnson needs 0 < k < n")
    verts = list(combinations(range(n), k))
    idx = {s: i for i, s in enumerate(verts)}
    edges = [(idx[s], idx[t]) for s, t in combinations(verts, 2) if len(set(s) & set(t)) == k - 1]
    g = Graph(len(verts), edges)
    emb = Embedding([tuple(F(int(j in s)) for j in range(n)) for s in verts])

    def move(v, i, j):  # remove i, add j
        s = set(verts[v])
        s.remove(i)
        s.add(j)
        return idx[tuple(sorted(s))]

    def label(e):
        s, t = set(verts[g.tail(e)]), set(verts[g.head(e)])
        return (s - t).pop(), (t - s).pop()

    maps = []
    for e in range(g.edge_count):
        i, j = label(e)
        T = g.head(e)
        m = {}
        for x in g.star(g.tail(e)):
            i2, j2 = label(x)
            if (i2, j2) == (i, j):
                tgt = move(T, j, i)
            elif i2 == i:
                tgt = move(T, j, j2)
            elif j2 == j:
                tgt = move(T, i2, i)
            else:
                tgt = move(T, i2, j2)
            m[x] = g.edge_id(T, tgt)
        maps.append(m)
    hol = factorial(k) * factorial(n - k)
    exp = {"holonomy_order": hol}
    if (n, k) == (4, 2):
        exp.update(betti=(1, 1, 2, 1, 1), redraw_dim=4)
    return Fixture(f"johnson({n},{k})", g, Connection(g, maps), axial_from_embedding(g, emb), emb,
                   expected=exp)


def permutahedron(n: int) -> Fixture:
    """Cayley graph of S_n for all transpositions; vertex sigma at (sigma(0)+1, ...)."""
    perms = list(permutations(range(n)))
    idx = {p: i for i, p in enumerate(perms)}

    def act(a, b, p):  # left multiplication by the transposition (a b)
        sw = {a: b, b: a}
        return tuple(sw.get(x, x) for x in p)

    trans = list(combinations(range(n), 2))
    edges = []
    for p in perms:
        for a, b in trans:
            q = act(a, b, p)
            if idx[p] < idx[q]:
                edges.append((idx[p], idx[q]))
    g = Graph(len(perms), edges)
    emb = Embedding([tuple(F(x + 1) for x in p) for p in perms])

    def label(e):
        p, q = perms[g.tail(e)], perms[g.head(e)]
        return tuple(sorted(x for x, y in zip(p, q) if x != y))

    maps = []
    for e in range(g.edge_count):
        h = g.head(e)
        m = {}
        for x in g.star(g.tail(e)):
            a, b = label(x)
            m[x] = g.edge_id(h, idx[act(a, b, perms[h])])
        maps.append(m)
    poly = [1]
    for k in range(n):
        new = [0] * (len(poly) + k)
        for i, c in enumerate(poly):
            for j in range(k + 1):
                new[i + j] += c
        poly = new
    return Fixture(f"permutahedron({n})", g, Connection(g, maps), axial_from_embedding(g, emb), emb,
                   expected={"betti": tuple(poly), "holonomy_order": 1})


def dihedral(n: int) -> Fixture:
    """K_{n,n} as the Cayley graph of D_n on its reflections.

    Group elements act on angle indices mod 4n (unit pi/(2n)); element g sits at
    the polygon vertex k with 2k + 1 = g^{-1}(1), as for the permutahedron.  Rotations are (1, 4j), reflections
    (-1, 4b).
    """
    if n < 1:
        raise ValueError("dihedral needs n >= 1")
    N = 4 * n
    elems = [(1, 4 * j % N) for j in range(n)] + [(-1, 4 * b % N) for b in range(n)]
    idx = {x: i for i, x in enumerate(elems)}
    refl = elems[n:]

    def mul(x, y):  # x after y
        return (x[0] * y[0], (x[0] * y[1] + x[1]) % N)

    edges = []
    for i, x in enumerate(elems):
        for r in refl:
            j = idx[mul(r, x)]
            if i < j:
                edges.append((i, j))
    g = Graph(2 * n, edges)
    pts = affine_regular_polygon(2 * n) if n > 1 else [(F(1), F(0)), (F(-1), F(0))]
    pos = []
    for x in elems:
        # the inverse of x sends the base angle index 1 to a = x^{-1}(1)
        a = (x[0] * (1 - x[1])) % N
        pos.append(pts[(a - 1) // 2])
    emb = Embedding(pos)

    def label(e):
        x, y = elems[g.tail(e)], elems[g.head(e)]
        # y = r x  =>  r = y x^{-1}
        inv = (x[0], (-x[0] * x[1]) % N)
        return mul(y, inv)

    maps = []
    for e in range(g.edge_count):
        h = elems[g.head(e)]
        m = {}
        for x in g.star(g.tail(e)):
            m[x] = g.edge_id(g.head(e), idx[mul(label(x), h)])
        maps.append(m)
    betti = (1,) + (2,) * (n - 1) + (1,) if n > 1 else (1, 1)
    return Fixture(f"dihedral({n})", g, Connection(g, maps), axial_from_embedding(g, emb), emb,
                   expected={"betti": betti, "redraw_dim": 4 if n == 3 else None},
                   provenance="affine-regular 2n-gon")


def tetrahedron() -> Fixture:
    fx = complete(4)
    fx.name = "tetrahedron"
    fx.expected.update(fvector=(1, 4, 6, 4), facets=4)
    return fx


def cube() -> Fixture:
    fx = hypercube(3)
    fx.name = "cube"
    fx.expected.update(fvector=(1, 6, 12, 8), facets=6)
    return fx


def octahedron() -> Fixture:
    fx = johnson(4, 2)
    fx.name = "octahedron"
    return fx


# Q(sqrt 5) and other solids


def _phi():
    return (1 + sqrt(5)) / 2


def _cyclic(v):
    return [v, (v[1], v[2], v[0]), (v[2], v[0], v[1])]


def _dist2(p, q):
    s = F(0)
    for a, b in zip(p, q):
        s = s + (a - b) * (a - b)
    return s


def _solid(name, pts, dist2, **kw):
    """Vertices ``pts``, edges between points at squared distance ``dist2``."""
    pts = [tuple(x if not isinstance(x, int) else F(x) for x in p) for p in pts]
    n = len(pts)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if _dist2(pts[i], pts[j]) == dist2]
    return _fixture_from_embedding(name, Graph(n, edges), Embedding(pts), **kw)


def _dodecahedral_points():
    phi = _phi()
    pts = [tuple(F(s) for s in sg) for sg in iproduct([1, -1], repeat=3)]
    for s1, s2 in iproduct([1, -1], repeat=2):
        pts += _cyclic((F(0), s1 / phi, s2 * phi))
    return pts


def _icosahedral_points():
    phi = _phi()
    pts = []
    for s1, s2 in iproduct([1, -1], repeat=2):
        pts += _cyclic((F(0), F(s1), s2 * phi))
    return pts


PETERSEN_EDGES = ([(i, (i + 1) % 5) for i in range(5)] + [(i, i + 5) for i in range(5)]
                  + [(5 + i, 5 + (i + 2) % 5) for i in range(5)])

# vertex cycles of the two geodesics: the inner pentagram and one 25-cycle
_PETERSEN_GEODESICS = [
    [5, 7, 9, 6, 8],
    [0, 1, 2, 3, 4, 0, 5, 8, 3, 4, 9, 7, 2, 3, 8, 6, 1, 2, 7, 5, 0, 1, 6, 9, 4],
]
# for the exact drawing: outer pentagon, inner pentagram, and a 20-cycle
_PETERSEN_EXACT_GEODESICS = [
    [0, 1, 2, 3, 4],
    [5, 7, 9, 6, 8],
]


def petersen(exact: bool = False) -> Fixture:
    """Outer pentagon with an inner pentagram joined by radial spokes.

    The default draws the pentagram at half the pentagon's size, which gives
    Betti numbers (1,4,4,1) but is not exact.  ``exact=True`` scales the
    pentagram by the golden ratio, the only radial scale that makes every chain
    exact; its Betti numbers are then (2,3,3,2).
    """
    g = Graph(10, PETERSEN_EDGES)
    pts = affine_regular_polygon(5)
    s = _phi() if exact else F(1, 2)
    emb = Embedding(pts + [tuple(s * x for x in p) for p in pts])
    a = axial_from_embedding(g, emb)
    if exact:
        conn = _exact_connection(g, a)
        exp = {"betti": (2, 3, 3, 2), "redraw_dim": 6, "exact": True}
    else:
        geos = []
        for cyc in _PETERSEN_GEODESICS:
            geos.append(_cycle_edges(g, cyc))
        conn = connection_from_geodesics(g, geos)
        exp = {"betti": (1, 4, 4, 1), "redraw_dim": 6, "exact": False, "geodesics": 2}
    return Fixture("petersen", g, conn, a, emb, expected=exp,
                   provenance="coordinates reconstructed (pentagon and scaled pentagram)")


def cuboctahedron() -> Fixture:
    pts = sorted(set(p for v in [(1, 1, 0), (1, -1, 0), (-1, 1, 0), (-1, -1, 0)]
                     for p in permutations(v)))
    pts = [tuple(F(x) for x in p) for p in pts]
    return _solid("cuboctahedron", pts, F(2),
                  expected={"betti": (1, 2, 6, 2, 1), "redraw_dim": 5, "geodesic_lengths": {3: 8, 4: 6, 6: 4}},
                  provenance="standard coordinates")


def dodecahedron() -> Fixture:
    phi = _phi()
    return _solid("dodecahedron", _dodecahedral_points(), (2 / phi) * (2 / phi),
                  expected={"betti": (1, 9, 9, 1), "facets": 12, "fvector": (1, 12, 30, 20)},
                  provenance="standard golden-ratio coordinates")


def great_stellated_dodecahedron() -> Fixture:
    """Dodecahedron vertices joined at distance 2*phi; faces are 12 pentagrams."""
    phi = _phi()
    return _solid("great_stellated_dodecahedron", _dodecahedral_points(), 4 * phi * phi,
                  expected={"betti": (7, 3, 3, 7), "betti_reference": (5, 5, 5, 5), "two_face_b0": 2},
                  provenance="standard golden-ratio coordinates")


def small_stellated_dodecahedron() -> Fixture:
    """Icosahedron vertices joined at distance 2*phi; 12 pentagrams and 20 triangles."""
    phi = _phi()
    return _solid("small_stellated_dodecahedron", _icosahedral_points(), 4 * phi * phi,
                  expected={"betti": (3, 1, 2, 2, 1, 3)},
                  provenance="standard golden-ratio coordinates")


NAMES = {
    "point": point,
    "edge": edge,
    "path": path,
    "ngon": ngon,
    "pentagram": pentagram,
    "dart": dart,
    "complete": complete,
    "tetrahedron": tetrahedron,
    "hypercube": hypercube,
    "cube": cube,
    "johnson": johnson,
    "octahedron": octahedron,
    "permutahedron": permutahedron,
    "dihedral": dihedral,
    "petersen": petersen,
    "cuboctahedron": cuboctahedron,
    "dodecahedron": dodecahedron,
    "great_stellated_dodecahedron": great_stellated_dodecahedron,
    "small_stellated_dodecahedron": small_stellated_dodecahedron,
}


def make(name: str, **params) -> Fixture:
    """Look up a constructor by name (dashes allowed) and call it with ``params``."""
    key = name.replace("-", "_")
    if key not in NAMES:
        raise ValueError(f"unknown fixture {name!r}; choose from {sorted(NAMES)}")
    return NAMES[key](**params)
