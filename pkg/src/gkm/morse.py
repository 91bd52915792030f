"""Generic directions, indices, Betti numbers, Morse functions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from graphlib import CycleError, TopologicalSorter
from typing import Sequence

from .axial import AxialFunction, dot
from .errors import HypothesisError
from .graph import Connection, Graph
from .scalars import sign, to_scalar

__all__ = [
    "Direction",
    "BettiVector",
    "InvarianceReport",
    "MorseFunction",
    "power_direction",
    "is_generic",
    "generic_direction",
    "index",
    "betti",
    "betti_invariance_check",
    "morse_function",
    "poincare_check",
    "betti_polynomial",
    "poly_multiply",
    "generic_plane_projection",
]


@dataclass(frozen=True)
class Direction:
    xi: tuple
    certificate: tuple  # xi . alpha(e) per oriented edge, all nonzero


@dataclass(frozen=True)
class BettiVector:
    betti: tuple
    direction: Direction | None = None
    invariant: bool = False

    def __iter__(self):
        return iter(self.betti)

    def __len__(self):
        return len(self.betti)

    def __getitem__(self, i):
        return self.betti[i]


@dataclass(frozen=True)
class MorseFunction:
    values: tuple
    xi: tuple

    def __getitem__(self, v):
        return self.values[v]


def power_direction(n: int, M: int) -> tuple:
    return tuple(Fraction(M) ** k for k in range(n))


def is_generic(a: AxialFunction, xi: Sequence) -> bool:
    return all(dot(v, xi) for v in a.values)


def generic_direction(a: AxialFunction) -> Direction:
    """First xi = (1, M, M^2, ...) with xi . alpha(e) != 0 for all e."""
    M = 1
    while True:
        xi = power_direction(a.dim, M)
        cert = tuple(dot(v, xi) for v in a.values)
        if all(cert):
            return Direction(xi, cert)
        M += 1


def _direction(a: AxialFunction, xi) -> Direction:
    if isinstance(xi, Direction):
        return xi
    xi = tuple(to_scalar(x) for x in xi)
    cert = tuple(dot(v, xi) for v in a.values)
    if not all(cert):
        bad = next(e for e, c in enumerate(cert) if not c)
        raise HypothesisError(f"direction is orthogonal to alpha({bad})", "generic direction", bad)
    return Direction(xi, cert)


def index(a: AxialFunction, xi, v: int) -> int:
    """Number of star edges at v pointing down (alpha . xi < 0)."""
    d = _direction(a, xi)
    return sum(1 for e in a.graph.star(v) if sign(d.certificate[e]) < 0)


def _histogram(a: AxialFunction, cert: Sequence) -> tuple:
    g = a.graph
    deg = max((g.valence(v) for v in range(g.vertex_count)), default=0)
    h = [0] * (deg + 1)
    for v in range(g.vertex_count):
        h[sum(1 for e in g.star(v) if sign(cert[e]) < 0)] += 1
    return tuple(h)


def betti(g: Graph, c: Connection | None, a: AxialFunction, xi=None, certify: bool = True) -> BettiVector:
    """Index histogram for xi (default: generic_direction) with invariance flag."""
    d = generic_direction(a) if xi is None else _direction(a, xi)
    inv = betti_invariance_check(g, c, a).invariant if certify else False
    return BettiVector(_histogram(a, d.certificate), d, inv)


def generic_plane_projection(a: AxialFunction) -> tuple:
    """Rows (P1, P2) of a projection R^n -> R^2 keeping alpha nonzero and stars 2-independent."""
    n = a.dim
    g = a.graph
    M = 1
    while True:
        P = (power_direction(n, M), power_direction(n, M + 1))
        proj = [(dot(P[0], v), dot(P[1], v)) for v in a.values]
        ok = all(x or y for x, y in proj)
        if ok:
            for v in range(g.vertex_count):
                st = g.star(v)
                for i, e in enumerate(st):
                    for f in st[i + 1:]:
                        if proj[e][0] * proj[f][1] - proj[e][1] * proj[f][0] == 0 and not _parallel(a[e], a[f]):
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
        if ok:
            return P
        M += 1
        if M > 10000:  # pragma: no cover
            raise RuntimeError("no generic projection found")


def _parallel(u, v) -> bool:
    from .linalg import rank
    return rank([list(u), list(v)]) < 2


def _half(v) -> int:
    x, y = v
    return 0 if (y > 0 or (y == 0 and x > 0)) else 1


def _angle_cmp(u, v) -> int:
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu - hv
    cr = u[0] * v[1] - u[1] * v[0]
    return -sign(cr)


@dataclass(frozen=True)
class InvarianceReport:
    invariant: bool
    histograms: tuple  # one per chamber sample, in angular order
    samples: tuple  # chamber sample directions in R^n
    counterexample: tuple | None = None  # (xi1, betti1, xi2, betti2)

    def __bool__(self):
        return self.invariant


def betti_invariance_check(g: Graph, c: Connection | None, a: AxialFunction) -> InvarianceReport:
    """Scan one direction per chamber of the projected line arrangement."""
    if a.dim == 0 or g.edge_count == 0:
        return InvarianceReport(True, (_histogram(a, ()),), ())
    P = generic_plane_projection(a)
    w = [(dot(P[0], v), dot(P[1], v)) for v in a.values]
    # boundary rays: directions eta with eta . w = 0
    rays = []
    for x, y in w:
        rays.append((-y, x))
        rays.append((y, -x))
    rays.sort(key=cmp_to_key(_angle_cmp))
    uniq = []
    for r in rays:
        if uniq and _angle_cmp(uniq[-1], r) == 0:
            continue
        uniq.append(r)
    if len(uniq) == 2:
        # one line: the two half planes, sampled by its normals
        u = uniq[0]
        samples2 = [(u[1], -u[0]), (-u[1], u[0])]
    else:
        samples2 = [(uniq[i][0] + uniq[(i + 1) % len(uniq)][0],
                     uniq[i][1] + uniq[(i + 1) % len(uniq)][1]) for i in range(len(uniq))]
    hists = []
    samples = []
    for eta in samples2:
        xi = tuple(eta[0] * p + eta[1] * q for p, q in zip(P[0], P[1]))
        cert = tuple(dot(v, xi) for v in a.values)
        assert all(cert)
        samples.append(xi)
        hists.append(_histogram(a, cert))
    first = hists[0]
    for xi, h in zip(samples, hists):
        if h != first:
            return InvarianceReport(False, tuple(hists), tuple(samples), (samples[0], first, xi, h))
    return InvarianceReport(True, tuple(hists), tuple(samples))


def morse_function(g: Graph, a: AxialFunction, xi=None) -> MorseFunction:
    """Longest up-path length plus vertex_id/(m+1); raises on an up-cycle."""
    d = generic_direction(a) if xi is None else _direction(a, xi)
    ts = TopologicalSorter()
    for v in range(g.vertex_count):
        ts.add(v)
    for e in range(g.edge_count):
        if sign(d.certificate[e]) > 0:
            ts.add(g.head(e), g.tail(e))
    try:
        order = list(ts.static_order())
    except CycleError as exc:
        cyc = exc.args[1]
        raise HypothesisError("an up-cycle blocks every compatible Morse function",
                              "no closed up-cycle", list(reversed(cyc))) from None
    level = [0] * g.vertex_count
    for v in order:
        for e in g.star(v):
            if sign(d.certificate[e]) > 0:
                w = g.head(e)
                level[w] = max(level[w], level[v] + 1)
    m = g.vertex_count
    vals = tuple(Fraction(level[v]) + Fraction(v, m + 1) for v in range(m))
    return MorseFunction(vals, d.xi)


def poincare_check(b) -> bool:
    seq = tuple(b.betti if isinstance(b, BettiVector) else b)
    return seq == seq[::-1]


def betti_polynomial(b) -> tuple:
    return tuple(b.betti if isinstance(b, BettiVector) else b)


def poly_multiply(p: Sequence[int], q: Sequence[int]) -> tuple:
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        for j, y in enumerate(q):
            out[i + j] += x * y
    return tuple(out)
