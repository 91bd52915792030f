"""Cross sections, up/down connections, delta, surgery and the dimension step."""

import pytest

from gkm import zoo
from gkm.axial import is_k_independent, span_reduce, validate_axial
from gkm.cross_section import (build_cross_section, section_dim_step, surgery_check, suspension,
                               suspension_dimension, two_faces)
from gkm.errors import HypothesisError
from gkm.graph import validate_connection
from gkm.interpolation import formula_71, hdim_bosonic
from gkm.linalg import rank
from gkm.morse import betti, morse_function
from gkm.polys import d_r


def _setup(name, reduce=False, **kw):
    fx = zoo.make(name, **kw)
    a = span_reduce(fx.axial)[0] if reduce else fx.axial
    return fx.graph, fx.connection, a, morse_function(fx.graph, a)


def _levels(f):
    vs = sorted(f.values)
    return [(x + y) / 2 for x, y in zip(vs, vs[1:])]


def test_two_face_census():
    g, c, a, _ = _setup("complete", n=4)
    assert [len(F.vertices) for F in two_faces(g, c, a)] == [3] * 4
    g, c, a, _ = _setup("cube")
    assert [len(F.vertices) for F in two_faces(g, c, a)] == [4] * 6
    g, c, a, _ = _setup("octahedron")
    sizes = sorted(len(F.vertices) for F in two_faces(g, c, a))
    assert sizes == [3] * 8 + [4] * 3


@pytest.mark.parametrize("name,kw", [("complete", {"n": 4}), ("cube", {}), ("octahedron", {})])
def test_sections_are_regular_and_valid(name, kw):
    g, c, a, f = _setup(name, **kw)
    d = g.valence(0)
    for level in _levels(f):
        sec = build_cross_section(g, c, a, f, level)
        sg = sec.graph
        assert all(sg.valence(v) == d - 1 for v in range(sg.vertex_count))
        assert validate_connection(sg, sec.up) is None
        assert validate_connection(sg, sec.down) is None
        assert validate_axial(sg, sec.up, sec.delta) is None
        assert validate_axial(sg, sec.down, sec.delta) is None
        assert sec.delta.dim == a.dim - 1
        if sg.vertex_count:
            assert is_k_independent(sec.delta, 2)


def test_cube_section_above_bottom_is_triangle():
    g, c, a, f = _setup("cube")
    lo = sorted(f.values)
    sec = build_cross_section(g, c, a, f, (lo[0] + lo[1]) / 2)
    assert sec.graph.vertex_count == 3 and sec.graph.edge_count == 6


def test_section_constant_between_critical_values():
    g, c, a, f = _setup("octahedron")
    vs = sorted(f.values)
    lo, hi = vs[2], vs[3]
    s1 = build_cross_section(g, c, a, f, lo + (hi - lo) / 3)
    s2 = build_cross_section(g, c, a, f, lo + 2 * (hi - lo) / 3)
    assert s1.edges == s2.edges and s1.graph == s2.graph
    assert s1.up == s2.up and s1.delta == s2.delta


def test_critical_level_rejected():
    g, c, a, f = _setup("cube")
    with pytest.raises(HypothesisError) as exc:
        build_cross_section(g, c, a, f, f.values[3])
    assert exc.value.hypothesis == "regular value"


def test_great_stellated_dodecahedron_fails_hypothesis():
    g, c, a, f = _setup("great_stellated_dodecahedron")
    with pytest.raises(HypothesisError) as exc:
        build_cross_section(g, c, a, f, _levels(f)[5])
    assert exc.value.hypothesis == "two-face beta_0 = 1"


@pytest.mark.parametrize("name,kw", [("complete", {"n": 4}), ("cube", {}), ("octahedron", {})])
def test_surgery_at_every_vertex(name, kw):
    g, c, a, f = _setup(name, **kw)
    for p in range(g.vertex_count):
        rep = surgery_check(g, c, a, f, p)
        assert rep.ok
        assert rep.index == sum(1 for e in g.star(p) if f[g.head(e)] < f[p])


def test_surgery_extremes_on_cube():
    g, c, a, f = _setup("cube")
    bottom = min(range(8), key=lambda v: f[v])
    top = max(range(8), key=lambda v: f[v])
    assert surgery_check(g, c, a, f, bottom).index == 0
    assert surgery_check(g, c, a, f, top).index == 3


def test_dimension_step_index_zero():
    g, c, a, f = _setup("cube")
    bottom = min(range(8), key=lambda v: f[v])
    assert section_dim_step(g, c, a, f, bottom, 1) == d_r(1, 3) == 3


def test_dimension_step_vanishes_in_degree_zero():
    g, c, a, f = _setup("octahedron")
    for p in range(g.vertex_count):
        k = sum(1 for e in g.star(p) if f[g.head(e)] < f[p])
        if 0 < k < 4:
            assert section_dim_step(g, c, a, f, p, 0) == 0


def test_suspension_mid_section_is_the_graph():
    g, c, a, f = _setup("cube")
    G, C, A, F, c0 = suspension(g, c, a, f)
    sec = build_cross_section(G, C, A, F, c0)
    # section vertex p is the vertical edge (p,0) -> (p,1)
    assert [G.tail(e) // 2 for e in sec.edges] == list(range(8))
    sg = sec.graph
    assert sorted(sg.unoriented_edges()) == sorted(g.unoriented_edges())

    def s(e):
        return sg.edge_id(g.tail(e), g.head(e))

    for e in range(g.edge_count):
        for x in g.star(g.tail(e)):
            assert sec.up(s(e), s(x)) == s(c(e, x))
            assert sec.down(s(e), s(x)) == s(c(e, x))
    # delta is alpha lifted into xi^perp, with the first coordinate dropped
    k = next(i for i, x in enumerate(F.xi) if x)
    for e in range(g.edge_count):
        lifted = tuple(a[e]) + (-sum(x * y for x, y in zip(f.xi, a[e])),)
        image = lifted[:k] + lifted[k + 1:]
        assert rank([list(image), list(sec.delta[s(e)])]) == 1


@pytest.mark.parametrize("name,kw,expected", [("complete", {"n": 4}, (1, 5, 15, 35)),
                                              ("cube", {}, (1, 6, 18)),
                                              ("octahedron", {"reduce": True}, (1, 4, 11)),
                                              ("octahedron", {}, (1, 5, 16))])
def test_suspension_steps_reproduce_dimensions(name, kw, expected):
    g, c, a, f = _setup(name, **kw)
    b = betti(g, c, a)
    for r, want in enumerate(expected):
        total = suspension_dimension(g, c, a, f, r)
        assert total == hdim_bosonic(g, a, r, basis=False)[0] == formula_71(a.dim, r, b) == want
