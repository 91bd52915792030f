"""Acceptance suite: one test and one PASS/FAIL line per criterion.

The verdict lines print under plain ``pytest`` too, or execute this file directly.
Each criterion is a list of named checks; a criterion passes only if every check does.
"""

import random
import sys
import time
from fractions import Fraction
from math import factorial
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from gkm import zoo  # noqa: E402
from gkm.axial import (axial_from_embedding, connection_from_axial, immerse, is_exact,  # noqa: E402
                       is_inflection_free, span_reduce)
from gkm.cross_section import build_cross_section, surgery_check, suspension_dimension  # noqa: E402
from gkm.errors import HypothesisError, ValidationError  # noqa: E402
from gkm.graph import all_closed_geodesics, connection_from_geodesics, holonomy_group  # noqa: E402
from gkm.interpolation import (fermionic_face_scheme, fermionic_formula, formula_71,  # noqa: E402
                               hdim_bosonic, hdim_fermionic, is_fermionic_scheme, is_scheme,
                               kn_compose, kn_decompose, scheme_product)
from gkm.linalg import rank  # noqa: E402
from gkm.morse import betti, is_generic, morse_function  # noqa: E402
from gkm.polys import sym_basis  # noqa: E402
from gkm.polytope import (betti_to_faces_check, fvector_from_betti, redraw_basis,  # noqa: E402
                          skeleton)

from test_axial import _perturbed  # noqa: E402
from test_zoo import PARAMS  # noqa: E402

SUMMARY = {
    1: "Betti regression",
    2: "holonomy orders",
    3: "scheme dimension equals the Betti formula",
    4: "parallel redrawing counts",
    5: "face counts from Betti numbers",
    6: "fermionic schemes",
    7: "surgery and suspension steps",
    8: "seeded property suites",
    9: "hypothesis refusals",
}


def _run(crit, checks):
    """Evaluate (label, thunk) pairs, print the verdict line, return failures."""
    failed = []
    t0 = time.perf_counter()
    for label, thunk in checks:
        try:
            ok, got = thunk()
        except Exception as exc:  # a crash is a failed check, reported with its reason
            ok, got = False, f"{type(exc).__name__}: {exc}"
        if not ok:
            failed.append(f"{label} (got {got})")
    verdict = "PASS" if not failed else "FAIL"
    line = f"{verdict} criterion {crit}: {SUMMARY[crit]} [{len(checks) - len(failed)}/{len(checks)}]"
    if failed:
        line += " failed: " + "; ".join(failed)
    print(f"\n{line} ({time.perf_counter() - t0:.1f}s)")
    return failed


def _eq(got, want):
    return got == want, got


def _b(name, xi=None, **kw):
    fx = zoo.make(name, **kw)
    return betti(fx.graph, fx.connection, fx.axial, xi).betti


def _raises(fn, hypothesis=None, axiom=None):
    try:
        fn()
    except HypothesisError as exc:
        return (hypothesis is not None and exc.hypothesis == hypothesis), exc.hypothesis
    except ValidationError as exc:
        return (axiom is not None and exc.axiom == axiom), exc.axiom
    return False, "no error"


# 1 ---------------------------------------------------------------------------

def criterion_1():
    checks = [(f"K{n}", lambda n=n: _eq(_b("complete", n=n), (1,) * n)) for n in range(2, 8)]
    checks += [
        ("J(4,2)", lambda: _eq(_b("johnson", n=4, k=2), (1, 1, 2, 1, 1))),
        ("S3", lambda: _eq(_b("permutahedron", n=3), (1, 2, 2, 1))),
        ("S4", lambda: _eq(_b("permutahedron", n=4), (1, 3, 5, 6, 5, 3, 1))),
    ]
    checks += [(f"K{n},{n}", lambda n=n: _eq(_b("dihedral", n=n), (1,) + (2,) * (n - 1) + (1,)))
               for n in range(2, 6)]
    checks += [
        ("Petersen", lambda: _eq(_b("petersen"), (1, 4, 4, 1))),
        ("cuboctahedron", lambda: _eq(_b("cuboctahedron"), (1, 2, 6, 2, 1))),
        ("great stellated dodecahedron", lambda: _eq(_b("great_stellated_dodecahedron"), (5, 5, 5, 5))),
        ("small stellated dodecahedron", lambda: _eq(_b("small_stellated_dodecahedron"),
                                                     (3, 1, 2, 2, 1, 3))),
        ("dart chamber A", lambda: _eq(_b("dart", [1, Fraction(1, 100)]), (1, 2, 1))),
        ("dart chamber B", lambda: _eq(_b("dart", [0, 1]), (2, 0, 2))),
    ]
    return _run(1, checks)


# 2 ---------------------------------------------------------------------------

def _hol(name, **kw):
    fx = zoo.make(name, **kw)
    return holonomy_group(fx.graph, fx.connection, 0).order


def criterion_2():
    checks = [(f"K{n}", lambda n=n: _eq(_hol("complete", n=n), factorial(n - 1))) for n in range(2, 7)]
    checks += [(f"J({n},{k})", lambda n=n, k=k: _eq(_hol("johnson", n=n, k=k), factorial(k) * factorial(n - k)))
               for n, k in ((4, 2), (5, 2))]
    checks += [(f"S{n}", lambda n=n: _eq(_hol("permutahedron", n=n), 1)) for n in range(2, 5)]
    return _run(2, checks)


# 3 ---------------------------------------------------------------------------

THREE = [("K4", "complete", {"n": 4}, range(4), (1, 4, 10, 20)),
         ("Q3", "cube", {}, range(3), (1, 6, 18)),
         ("J(4,2)", "johnson", {"n": 4, "k": 2}, range(3), (1, 4, 11))]


def _setup(name, **kw):
    fx = zoo.make(name, **kw)
    a = span_reduce(fx.axial)[0]
    return fx.graph, fx.connection, a


def _hdim_vs_formula(name, kw, r):
    g, c, a = _setup(name, **kw)
    got = hdim_bosonic(g, a, r, basis=False)[0]
    return got == formula_71(a.dim, r, betti(g, c, a)), got


def criterion_3():
    checks = []
    for label, name, kw, rs, _ in THREE:
        checks += [(f"{label} r={r}", lambda name=name, kw=kw, r=r: _hdim_vs_formula(name, kw, r)) for r in rs]

    def relaxed(name, kw, want):
        g, c, a = _setup(name, **kw)
        got = hdim_bosonic(g, a, 1, basis=False)[0]
        return got == want == formula_71(a.dim, 1, betti(g, c, a)), got

    checks += [("Petersen r=1 is 6", lambda: relaxed("petersen", {}, 6)),
               ("K3,3 r=1 is 4", lambda: relaxed("dihedral", {"n": 3}, 4)),
               ("octahedron r=1 is 4", lambda: relaxed("octahedron", {}, 4))]
    return _run(3, checks)


# 4 ---------------------------------------------------------------------------

def _redraw(name, **kw):
    fx = zoo.make(name, **kw)
    return redraw_basis(fx.graph, fx.axial, fx.embedding).dim


def _redraw_matches_hdim():
    bad = []
    for name in sorted(zoo.NAMES):
        fx = zoo.make(name, **PARAMS.get(name, {}))
        if fx.axial is None:
            continue
        d = redraw_basis(fx.graph, fx.axial, fx.embedding).dim
        h = hdim_bosonic(fx.graph, span_reduce(fx.axial)[0], 1, basis=False)[0]
        if d != h:
            bad.append((name, d, h))
    return not bad, bad or "all equal"


def criterion_4():
    checks = [("octahedron", lambda: _eq(_redraw("octahedron"), 4)),
              ("K3,3", lambda: _eq(_redraw("dihedral", n=3), 4)),
              ("Petersen", lambda: _eq(_redraw("petersen"), 6)),
              ("great stellated dodecahedron", lambda: _eq(_redraw("great_stellated_dodecahedron"), 20))]
    checks += [(f"{n}-gon", lambda n=n: _eq(_redraw("ngon", n=n), n)) for n in range(3, 9)]
    checks += [("cube", lambda: _eq(_redraw("cube"), 6)),
               ("tetrahedron", lambda: _eq(_redraw("tetrahedron"), 4)),
               ("redraw dim = hdim r=1 on every fixture", _redraw_matches_hdim)]
    return _run(4, checks)


# 5 ---------------------------------------------------------------------------

def _faces(name, **kw):
    fx = zoo.make(name, **kw)
    rep = betti_to_faces_check(skeleton(fx.graph, fx.connection, fx.axial, fx.embedding))
    return rep.ok, (rep.from_betti, rep.from_faces)


def criterion_5():
    def dodeca():
        fx = zoo.dodecahedron()
        f = fvector_from_betti(3, betti(fx.graph, fx.connection, fx.axial))
        return f[1] == 12 and _faces("dodecahedron")[0], f

    checks = [("cube", lambda: _eq(fvector_from_betti(3, _b("cube")), (1, 6, 12, 8))),
              ("cube faces", lambda: _faces("cube")),
              ("tetrahedron", lambda: _eq(fvector_from_betti(3, _b("tetrahedron")), (1, 4, 6, 4))),
              ("tetrahedron faces", lambda: _faces("tetrahedron")),
              ("dodecahedron f2", dodeca),
              ("Q4 arithmetic", lambda: _eq(fvector_from_betti(4, (1, 4, 6, 4, 1)), (1, 8, 24, 32, 16))),
              ("Q4 faces", lambda: _faces("hypercube", n=4))]
    return _run(5, checks)


# 6 ---------------------------------------------------------------------------

def criterion_6():
    fx = zoo.cube()
    g, c, a = fx.graph, fx.connection, fx.axial

    def dims():
        b = betti(g, c, a)
        got = tuple(hdim_fermionic(g, a, r, basis=False)[0] for r in range(4))
        return got == (1, 6, 12, 8) == tuple(fermionic_formula(3, r, b) for r in range(4)), got

    def facets():
        faces = [sorted({g.tail(e) for e in x.edges}) for x in all_closed_geodesics(g, c)]
        ss = [fermionic_face_scheme(g, c, a, f) for f in faces]
        ok = all(is_fermionic_scheme(g, a, s)[0] for s in ss)
        got = rank([s.vector() for s in ss])
        return ok and len(ss) == 6 and got == 6, got

    return _run(6, [("Q3 dimensions", dims), ("facet schemes rank", facets)])


# 7 ---------------------------------------------------------------------------

def _surgery_all(name, **kw):
    fx = zoo.make(name, **kw)
    g, c, a = fx.graph, fx.connection, fx.axial
    f = morse_function(g, a)
    bad = [p for p in range(g.vertex_count) if not surgery_check(g, c, a, f, p, strict=False).ok]
    return not bad, bad or "all vertices"


def _suspension(name, kw, want):
    g, c, a = _setup(name, **kw)
    f = morse_function(g, a)
    got = tuple(suspension_dimension(g, c, a, f, r) for r in range(len(want)))
    ref = tuple(hdim_bosonic(g, a, r, basis=False)[0] for r in range(len(want)))
    return got == ref == want, got


def criterion_7():
    checks = [("surgery K4", lambda: _surgery_all("complete", n=4)),
              ("surgery Q3", lambda: _surgery_all("cube")),
              ("surgery J(4,2)", lambda: _surgery_all("johnson", n=4, k=2))]
    checks += [(f"suspension {label}", lambda name=name, kw=kw, want=want: _suspension(name, kw, want))
               for label, name, kw, _, want in THREE]
    return _run(7, checks)


# 8 ---------------------------------------------------------------------------

def _perturbations():
    rng = random.Random(20261016)
    names = ["cube", "tetrahedron", "complete", "hypercube"]
    bad = 0
    for i in range(100):
        g, c, a = _perturbed(rng, names[i % 4])
        if not (is_exact(g, c, a) and is_inflection_free(g, c, a)[0]):
            bad += 1
    return bad == 0, f"{bad} failures"


def _ring_closure():
    rng = random.Random(8)
    fx = zoo.cube()
    g, a = fx.graph, fx.axial
    _, basis = hdim_bosonic(g, a, 1)
    bad = 0
    for _ in range(50):
        s, t = rng.choice(basis), rng.choice(basis)
        p = scheme_product(s, t)
        bad += not is_scheme(g, a, p)[0]
    return bad == 0, f"{bad} failures"


def _kn_round_trip():
    rng = random.Random(9)
    bad = 0
    for trial in range(50):
        m = 3 + trial % 2
        fx = zoo.complete(m)
        n = fx.axial.dim
        r = rng.randint(0, 3)
        ps = [{mon: Fraction(rng.randint(-4, 4)) for mon in sym_basis(n, r - i)} if i <= r else {}
              for i in range(m)]
        s = kn_compose(fx.embedding, ps, n, r)
        back = kn_decompose(fx.graph, fx.embedding, s)
        clean = [{k: v for k, v in p.items() if v} for p in ps]
        bad += clean != [{k: v for k, v in q.items() if v} for q in back]
    return bad == 0, f"{bad} failures"


EMBEDDED = ["cube", "tetrahedron", "octahedron", "cuboctahedron", "dodecahedron", "petersen", "dart",
            "pentagram", "great_stellated_dodecahedron", "small_stellated_dodecahedron"]


def _immerse_round_trip():
    bad = []
    for name in EMBEDDED:
        fx = zoo.make(name)
        F = immerse(fx.graph, fx.axial)
        if axial_from_embedding(fx.graph, F) != fx.axial:
            bad.append(name)
    return not bad, bad or "ok"


def _geodesic_round_trip():
    bad = []
    for name in ["cube", "octahedron", "petersen", "cuboctahedron", "dodecahedron", "complete"]:
        fx = zoo.make(name, **PARAMS.get(name, {}))
        geos = all_closed_geodesics(fx.graph, fx.connection)
        if connection_from_geodesics(fx.graph, [x.edges for x in geos]) != fx.connection:
            bad.append(name)
    return not bad, bad or "ok"


def _betti_sums():
    bad = []
    for name in EMBEDDED:
        fx = zoo.make(name)
        rng = random.Random(name)
        done = 0
        while done < 20:
            xi = [Fraction(rng.randint(-50, 50), rng.randint(1, 9)) for _ in range(fx.axial.dim)]
            if not is_generic(fx.axial, xi):
                continue
            if sum(betti(fx.graph, fx.connection, fx.axial, xi, certify=False).betti) != fx.graph.vertex_count:
                bad.append(name)
                break
            done += 1
    return not bad, bad or "ok"


def criterion_8():
    return _run(8, [("exact implies inflection-free", _perturbations),
                    ("scheme ring closure", _ring_closure),
                    ("K_n decomposition round trip", _kn_round_trip),
                    ("immerse round trip", _immerse_round_trip),
                    ("connection from geodesics round trip", _geodesic_round_trip),
                    ("Betti sum is |V|", _betti_sums)])


# 9 ---------------------------------------------------------------------------

def criterion_9():
    def gsd():
        fx = zoo.great_stellated_dodecahedron()
        g, c, a = fx.graph, fx.connection, fx.axial
        f = morse_function(g, a)
        vs = sorted(f.values)
        results = []
        for lo, hi in zip(vs, vs[1:]):
            try:
                build_cross_section(g, c, a, f, (lo + hi) / 2)
                results.append("ok")
            except HypothesisError as exc:
                results.append(exc.hypothesis)
        return "two-face beta_0 = 1" in results, sorted(set(results))

    def dart():
        fx = zoo.dart()
        b = betti(fx.graph, fx.connection, fx.axial)
        return _raises(lambda: formula_71(2, 1, b), hypothesis="Betti invariance")

    def k33():
        fx = zoo.dihedral(3)
        return _raises(lambda: connection_from_axial(fx.graph, fx.axial), axiom="multiple candidates")

    return _run(9, [("cross section on the great stellated dodecahedron", gsd),
                    ("formula refuses the dart", dart),
                    ("K3,3 connection ambiguity", k33)])


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9]


@pytest.mark.parametrize("crit", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 10)])
def test_criterion(crit, capsys):
    with capsys.disabled():  # verdict lines belong in the log even without -s
        failed = crit()
    assert not failed, failed


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if not any(results) else 1)
