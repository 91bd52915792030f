"""Graphs with oriented edges, connections, geodesics and holonomy.

Edge ids: the i-th unoriented edge ``(p, q)`` yields oriented edges ``2i = (p, q)``
and ``2i + 1 = (q, p)``, so ``reverse(e) = e ^ 1``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ValidationError

__all__ = [
    "Graph",
    "Connection",
    "Geodesic",
    "PermGroup",
    "Subgraph",
    "Violation",
    "star",
    "validate_connection",
    "transport",
    "geodesic_through",
    "all_closed_geodesics",
    "connection_from_geodesics",
    "is_totally_geodesic",
    "holonomy_group",
    "edge_chains",
]


class Graph:
    """Finite simple graph with paired oriented edges."""

    __slots__ = ("vertex_count", "tails", "heads", "_stars", "_index")

    def __init__(self, vertex_count: int, edges: Iterable[Sequence[int]]):
        if vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        tails: list[int] = []
        heads: list[int] = []
        seen = set()
        for p, q in edges:
            p, q = int(p), int(q)
            if not (0 <= p < vertex_count and 0 <= q < vertex_count):
                raise ValidationError(f"edge ({p},{q}) has an endpoint out of range", "vertex range", (p, q))
            if p == q:
                raise ValidationError(f"loop at vertex {p}", "no loops", (p, q))
            if (p, q) in seen or (q, p) in seen:
                raise ValidationError(f"multi-edge between {p} and {q}", "no multi-edges", (p, q))
            seen.add((p, q))
            tails += [p, q]
            heads += [q, p]
        self.vertex_count = vertex_count
        self.tails = tuple(tails)
        self.heads = tuple(heads)
        stars: list[list[int]] = [[] for _ in range(vertex_count)]
        for e, t in enumerate(tails):
            stars[t].append(e)
        self._stars = tuple(tuple(s) for s in stars)
        self._index = {(t, h): e for e, (t, h) in enumerate(zip(tails, heads))}

    @property
    def edge_count(self) -> int:
        """Number of oriented edges."""
        return len(self.tails)

    def tail(self, e: int) -> int:
        return self.tails[e]

    def head(self, e: int) -> int:
        return self.heads[e]

    @staticmethod
    def reverse(e: int) -> int:
        return e ^ 1

    def star(self, v: int) -> tuple[int, ...]:
        return self._stars[v]

    def valence(self, v: int) -> int:
        return len(self._stars[v])

    def edge_id(self, p: int, q: int) -> int:
        try:
            return self._index[(p, q)]
        except KeyError:
            raise KeyError(f"no edge ({p},{q})") from None

    def has_edge(self, p: int, q: int) -> bool:
        return (p, q) in self._index

    def unoriented_edges(self) -> list[tuple[int, int]]:
        return [(self.tails[e], self.heads[e]) for e in range(0, self.edge_count, 2)]

    def components(self) -> list[list[int]]:
        seen = [False] * self.vertex_count
        comps = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            comp = []
            seen[s] = True
            dq = deque([s])
            while dq:
                v = dq.popleft()
                comp.append(v)
                for e in self._stars[v]:
                    w = self.heads[e]
                    if not seen[w]:
                        seen[w] = True
                        dq.append(w)
            comps.append(sorted(comp))
        return comps

    def bfs_tree(self, root: int) -> dict[int, int]:
        """Parent edge (into each vertex) of the BFS tree, in vertex-id order."""
        parent: dict[int, int] = {}
        seen = {root}
        dq = deque([root])
        while dq:
            v = dq.popleft()
            for e in sorted(self._stars[v], key=lambda x: self.heads[x]):
                w = self.heads[e]
                if w not in seen:
                    seen.add(w)
                    parent[w] = e
                    dq.append(w)
        return parent

    def tree_path(self, parent: dict[int, int], root: int, v: int) -> list[int]:
        """Edges from root down to v along a BFS tree."""
        path = []
        while v != root:
            e = parent[v]
            path.append(e)
            v = self.tails[e]
        return path[::-1]

    def __eq__(self, other):
        return isinstance(other, Graph) and (self.vertex_count, self.tails, self.heads) == (
            other.vertex_count, other.tails, other.heads)

    def __hash__(self):
        return hash((self.vertex_count, self.tails))

    def __repr__(self):
        return f"Graph(vertices={self.vertex_count}, edges={self.edge_count // 2})"


def star(g: Graph, v: int) -> tuple[int, ...]:
    if not 0 <= v < g.vertex_count:
        raise IndexError(f"vertex {v} out of range")
    return g.star(v)


class Connection:
    """Per-edge maps star(tail e) -> star(head e), stored as dicts."""

    __slots__ = ("graph", "maps")

    def __init__(self, graph: Graph, maps: dict[int, dict[int, int]] | Sequence[dict[int, int]]):
        if not isinstance(maps, dict):
            maps = dict(enumerate(maps))
        self.graph = graph
        frozen = []
        for e in range(graph.edge_count):
            if e not in maps:
                raise ValidationError(f"no table for edge {e}", "table coverage", e)
            m = maps[e]
            src = graph.star(graph.tail(e))
            if len(m) != len(src) or set(m) != set(src):
                raise ValidationError(f"table of edge {e} does not cover star({graph.tail(e)})",
                                      "table size", e)
            frozen.append({k: int(m[k]) for k in src})
        self.maps = tuple(frozen)

    def __call__(self, e: int, x: int) -> int:
        return self.maps[e][x]

    def __eq__(self, other):
        return isinstance(other, Connection) and self.graph == other.graph and self.maps == other.maps

    def __hash__(self):
        return hash(tuple(tuple(sorted(m.items())) for m in self.maps))

    def __repr__(self):
        return f"Connection({self.graph!r})"


@dataclass(frozen=True)
class Violation:
    axiom: str
    edge: int
    detail: str = ""


def validate_connection(g: Graph, c: Connection) -> Violation | None:
    """None when the connection axioms hold, else the first violation."""
    if c.graph is not g and c.graph != g:
        raise ValidationError("connection belongs to a different graph", "structure")
    for comp in g.components():
        vals = {g.valence(v) for v in comp}
        if len(vals) > 1:
            return Violation("regular component", g.star(comp[0])[0] if g.star(comp[0]) else -1,
                             f"component containing {comp[0]} has valences {sorted(vals)}")
    for e in range(g.edge_count):
        m = c.maps[e]
        target = set(g.star(g.head(e)))
        if set(m.values()) != target:
            return Violation("bijection", e, "image is not star(head)")
    for e in range(g.edge_count):
        if c.maps[e][e] != g.reverse(e):
            return Violation("axiom 2", e, "edge is not mapped to its reverse")
    for e in range(g.edge_count):
        back = c.maps[g.reverse(e)]
        for x, y in c.maps[e].items():
            if back[y] != x:
                return Violation("axiom 3", e, "reverse map is not the inverse")
    return None


def transport(g: Graph, c: Connection, path: Sequence[int], e0: int) -> int:
    """Image of e0 under the composition of the maps along ``path``."""
    if not path:
        return e0
    if g.tail(e0) != g.tail(path[0]):
        raise ValueError("e0 is not in the initial star")
    for a, b in zip(path, path[1:]):
        if g.head(a) != g.tail(b):
            raise ValueError("path is not a walk")
    x = e0
    for e in path:
        x = c.maps[e][x]
    return x


@dataclass(frozen=True)
class Geodesic:
    edges: tuple[int, ...]
    closed: bool = True

    def __len__(self):
        return len(self.edges)


def _next_edge(g: Graph, c: Connection, d: int, e: int) -> int:
    return c.maps[e][g.reverse(d)]


def geodesic_through(g: Graph, c: Connection, d: int, e: int) -> Geodesic:
    """Closed geodesic extending the pair (d, e) until the pair recurs."""
    if g.head(d) != g.tail(e) or e == g.reverse(d):
        raise ValueError("(d, e) is not a pair of consecutive distinct edges")
    seq = [d, e]
    a, b = d, e
    limit = 2 * g.edge_count * g.edge_count + 2
    while True:
        f = _next_edge(g, c, a, b)
        a, b = b, f
        if (a, b) == (d, e):
            seq.pop()  # the last edge is d again
            return Geodesic(tuple(seq), True)
        seq.append(f)
        if len(seq) > limit:  # pragma: no cover - bijectivity forbids this
            return Geodesic(tuple(seq), False)


def _min_rotation(seq: Sequence[int]) -> tuple[int, ...]:
    n = len(seq)
    return min(tuple(seq[i:]) + tuple(seq[:i]) for i in range(n))


def canonical_cycle(g: Graph, edges: Sequence[int]) -> tuple[int, ...]:
    fwd = _min_rotation(list(edges))
    bwd = _min_rotation([g.reverse(e) for e in reversed(edges)])
    return min(fwd, bwd)


def edge_chains(g: Graph, c: Connection):
    """All 3-geodesics (d, e, f): f = transport of reverse(d) along e."""
    for e in range(g.edge_count):
        for x in g.star(g.tail(e)):
            if x == e:
                continue
            d = g.reverse(x)
            yield d, e, c.maps[e][x]


def all_closed_geodesics(g: Graph, c: Connection) -> list[Geodesic]:
    """Canonical closed geodesics, sorted, one per unoriented cycle."""
    found = set()
    for d, e, _ in edge_chains(g, c):
        geo = geodesic_through(g, c, d, e)
        found.add(canonical_cycle(g, geo.edges))
    return [Geodesic(t, True) for t in sorted(found)]


def connection_from_geodesics(g: Graph, geodesics: Iterable) -> Connection:
    """The connection whose closed geodesics are the given edge cycles."""
    maps: list[dict[int, int]] = [{e: g.reverse(e)} for e in range(g.edge_count)]
    owner: dict[tuple[int, int], int] = {}
    for gi, geo in enumerate(geodesics):
        edges = list(geo.edges if isinstance(geo, Geodesic) else geo)
        L = len(edges)
        for i in range(L):
            a, b = edges[i], edges[(i + 1) % L]
            if g.head(a) != g.tail(b):
                raise ValidationError(f"geodesic {gi} is not a closed walk", "closed walk", gi)
        for i in range(L):
            d, e, f = edges[i - 1], edges[i], edges[(i + 1) % L]
            if e == g.reverse(d):
                raise ValidationError(f"geodesic {gi} backtracks", "no backtracking", gi)
            for src_e, x, y in ((e, g.reverse(d), f), (g.reverse(e), f, g.reverse(d))):
                key = (src_e, x)
                if key in owner:
                    if owner[key] == gi and maps[src_e][x] == y:
                        continue
                    raise ValidationError(f"star pair {key} covered twice", "covered twice", key)
                owner[key] = gi
                maps[src_e][x] = y
    for e in range(g.edge_count):
        for x in g.star(g.tail(e)):
            if x not in maps[e]:
                raise ValidationError(f"star pair ({e},{x}) is not covered", "uncovered pair", (e, x))
    conn = Connection(g, maps)
    v = validate_connection(g, conn)
    if v is not None:
        raise ValidationError(f"assembled maps violate {v.axiom} at edge {v.edge}", v.axiom, v.edge)
    return conn


@dataclass(frozen=True)
class Subgraph:
    vertices: frozenset
    edges: frozenset  # oriented edge ids, closed under reversal

    @classmethod
    def from_edges(cls, g: Graph, edges: Iterable[int], vertices: Iterable[int] = ()):
        es = set(edges)
        es |= {g.reverse(e) for e in es}
        vs = set(vertices) | {g.tail(e) for e in es}
        return cls(frozenset(vs), frozenset(es))

    @classmethod
    def induced(cls, g: Graph, vertices: Iterable[int]):
        vs = frozenset(vertices)
        es = frozenset(e for v in vs for e in g.star(v) if g.head(e) in vs)
        return cls(vs, es)


def is_totally_geodesic(g: Graph, c: Connection, sub: Subgraph) -> bool:
    for e in sub.edges:
        x = g.tail(e)
        for y in g.star(x):
            if y in sub.edges and c.maps[e][y] not in sub.edges:
                return False
    return True


def _compose(p: tuple, q: tuple) -> tuple:
    """p after q."""
    return tuple(p[i] for i in q)


@dataclass(frozen=True)
class PermGroup:
    degree: int
    generators: tuple
    elements: frozenset = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    @classmethod
    def generate(cls, degree: int, generators: Iterable[tuple]):
        ident = tuple(range(degree))
        gens = tuple(sorted(set(tuple(x) for x in generators) - {ident}))
        seen = {ident}
        dq = deque([ident])
        while dq:
            x = dq.popleft()
            for s in gens:
                y = _compose(s, x)
                if y not in seen:
                    seen.add(y)
                    dq.append(y)
        return cls(degree, gens, frozenset(seen))


def holonomy_group(g: Graph, c: Connection, base: int) -> PermGroup:
    """Transport around the fundamental cycles of the BFS tree at ``base``."""
    st = g.star(base)
    pos = {e: i for i, e in enumerate(st)}
    parent = g.bfs_tree(base)
    reached = set(parent) | {base}
    gens = []
    for e in range(0, g.edge_count, 2):
        u, v = g.tail(e), g.head(e)
        if u not in reached:
            continue
        if parent.get(v) in (e, e ^ 1) or parent.get(u) in (e, e ^ 1):
            continue
        loop = g.tree_path(parent, base, u) + [e] + [g.reverse(x) for x in reversed(g.tree_path(parent, base, v))]
        gens.append(tuple(pos[transport(g, c, loop, x)] for x in st))
    return PermGroup.generate(len(st), gens)
