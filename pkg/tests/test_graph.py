"""Graphs, connections, geodesics and holonomy."""

from math import factorial

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from gkm import zoo
from gkm.errors import ValidationError
from gkm.graph import (Connection, Graph, Subgraph, all_closed_geodesics,
                       connection_from_geodesics, edge_chains, geodesic_through, holonomy_group,
                       is_totally_geodesic, transport, validate_connection)


def test_edge_ids_pair_up():
    g = Graph(3, [(0, 1), (1, 2)])
    assert (g.tail(0), g.head(0)) == (0, 1)
    assert (g.tail(1), g.head(1)) == (1, 0)
    assert g.reverse(2) == 3
    assert g.edge_id(2, 1) == 3
    assert g.star(1) == (1, 2)


@pytest.mark.parametrize("edges,axiom", [([(0, 0)], "no loops"), ([(0, 1), (1, 0)], "no multi-edges"),
                                         ([(0, 5)], "vertex range")])
def test_bad_graphs(edges, axiom):
    with pytest.raises(ValidationError) as exc:
        Graph(3, edges)
    assert exc.value.axiom == axiom


def test_connection_axioms_detected():
    fx = zoo.cube()
    g, c = fx.graph, fx.connection
    assert validate_connection(g, c) is None
    maps = [dict(m) for m in c.maps]
    e = 0
    x, y = [k for k in maps[e] if k != e][:2]
    maps[e][x], maps[e][y] = maps[e][y], maps[e][x]
    assert validate_connection(g, Connection(g, maps)).axiom == "axiom 3"
    maps = [dict(m) for m in c.maps]
    other = next(k for k in maps[e] if k != e)
    maps[e][e], maps[e][other] = maps[e][other], maps[e][e]
    assert validate_connection(g, Connection(g, maps)).axiom == "axiom 2"


def test_connection_table_must_cover_star():
    g = Graph(2, [(0, 1)])
    with pytest.raises(ValidationError):
        Connection(g, [{}, {1: 0}])


def test_non_regular_component_rejected():
    g = Graph(4, [(0, 1), (1, 2), (1, 3)])
    maps = [{x: (e ^ 1 if x == e else g.star(g.head(e))[0]) for x in g.star(g.tail(e))}
            for e in range(g.edge_count)]
    bad = validate_connection(g, Connection(g, maps))
    assert bad is not None and bad.axiom in ("regular component", "bijection")


def test_components_match_networkx():
    g = Graph(7, [(0, 1), (1, 2), (3, 4), (5, 6), (4, 6)])
    G = nx.Graph(g.unoriented_edges())
    G.add_nodes_from(range(7))
    ours = sorted(sorted(c) for c in g.components())
    assert ours == sorted(sorted(c) for c in nx.connected_components(G))


def test_transport_checks_walk():
    fx = zoo.cube()
    g, c = fx.graph, fx.connection
    e = g.star(0)[0]
    assert transport(g, c, [], e) == e
    assert transport(g, c, [e], e) == e ^ 1
    with pytest.raises(ValueError):
        transport(g, c, [g.star(1)[0]], e)


def test_k4_geodesics_are_triangles():
    fx = zoo.complete(4)
    geos = all_closed_geodesics(fx.graph, fx.connection)
    assert len(geos) == 4 and all(len(x) == 3 for x in geos)


def test_cube_geodesics_are_squares():
    fx = zoo.cube()
    geos = all_closed_geodesics(fx.graph, fx.connection)
    assert len(geos) == 6 and {len(x) for x in geos} == {4}


def test_cuboctahedron_geodesic_census():
    fx = zoo.cuboctahedron()
    lens = [len(x) for x in all_closed_geodesics(fx.graph, fx.connection)]
    assert {k: lens.count(k) for k in set(lens)} == fx.expected["geodesic_lengths"]


def test_geodesic_through_is_closed_and_follows_chains():
    fx = zoo.johnson(4, 2)
    g, c = fx.graph, fx.connection
    for d, e, f in list(edge_chains(g, c))[:10]:
        geo = geodesic_through(g, c, d, e)
        es = geo.edges
        assert geo.closed and d in es and e in es
        for i in range(len(es)):
            assert c.maps[es[i]][es[i - 1] ^ 1] == es[(i + 1) % len(es)]


FIXTURES = ["complete", "cube", "octahedron", "cuboctahedron", "petersen", "dihedral"]


def _fx(name):
    return {"complete": lambda: zoo.complete(5), "dihedral": lambda: zoo.dihedral(4)}.get(
        name, lambda: zoo.make(name))()


@pytest.mark.parametrize("name", FIXTURES)
def test_connection_geodesic_round_trip(name):
    fx = _fx(name)
    g, c = fx.graph, fx.connection
    geos = all_closed_geodesics(g, c)
    assert connection_from_geodesics(g, geos) == c


def test_geodesics_must_cover_every_pair():
    fx = zoo.cube()
    g = fx.graph
    geos = all_closed_geodesics(g, fx.connection)
    with pytest.raises(ValidationError) as exc:
        connection_from_geodesics(g, geos[:-1])
    assert exc.value.axiom == "uncovered pair"
    with pytest.raises(ValidationError) as exc:
        connection_from_geodesics(g, geos + [geos[0]])
    assert exc.value.axiom == "covered twice"


@pytest.mark.parametrize("n", range(2, 7))
def test_holonomy_complete(n):
    fx = zoo.complete(n)
    assert holonomy_group(fx.graph, fx.connection, 0).order == factorial(n - 1)


@pytest.mark.parametrize("n,k", [(4, 2), (5, 2)])
def test_holonomy_johnson(n, k):
    fx = zoo.johnson(n, k)
    assert holonomy_group(fx.graph, fx.connection, 0).order == factorial(k) * factorial(n - k)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_holonomy_permutahedron_trivial(n):
    fx = zoo.permutahedron(n)
    assert holonomy_group(fx.graph, fx.connection, 0).order == 1


@given(st.integers(0, 9))
def test_holonomy_order_is_base_independent(base):
    fx = zoo.johnson(5, 2)
    assert holonomy_group(fx.graph, fx.connection, base).order == 12


def test_totally_geodesic_faces():
    fx = zoo.cube()
    g, c = fx.graph, fx.connection
    geo = all_closed_geodesics(g, c)[0]
    assert is_totally_geodesic(g, c, Subgraph.from_edges(g, geo.edges))
    # an induced path of two edges is not closed under transport
    v = 0
    e1, e2 = g.star(v)[:2]
    assert not is_totally_geodesic(g, c, Subgraph.from_edges(g, [e1, e2]))
