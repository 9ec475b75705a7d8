import networkx as nx
import pytest
from hypothesis import given, settings

from packcolor.generators import complete, cycle, petersen, random_subcubic
from packcolor.graph import (
    DistanceQuery,
    Graph,
    GraphError,
    distance_leq,
    neighborhood,
    parse_edge_list,
    parse_graph6,
    read_graph,
    subdivide,
    write_edge_list,
    write_graph6,
)

from .conftest import floyd_warshall, subcubic_graphs


def test_constructor_rejects_loops_and_parallel_edges():
    with pytest.raises(GraphError):
        Graph(2, [(0, 0)])
    with pytest.raises(GraphError):
        Graph(2, [(0, 1), (1, 0)])
    with pytest.raises(GraphError):
        Graph(2, [(0, 2)])


def test_subcubic_constructor_enforces_degree():
    with pytest.raises(GraphError):
        Graph.subcubic(5, [(0, i) for i in range(1, 5)])
    assert Graph.subcubic(4, [(0, 1), (0, 2), (0, 3)]).max_degree() == 3


def test_adjacency_symmetric_and_sorted():
    g = petersen()
    for u in range(g.n):
        assert list(g.adj[u]) == sorted(g.adj[u])
        for v in g.adj[u]:
            assert u in g.adj[v]


def test_distance_examples():
    p = petersen()
    assert distance_leq(p, 0, 7, 2)
    assert all(distance_leq(p, u, v, 2) for u in range(10) for v in range(10))
    assert distance_leq(p, 3, 3, 0)
    c6 = cycle(6)
    assert not distance_leq(c6, 0, 3, 2)
    assert distance_leq(c6, 0, 3, 3)


def test_distance_rejects_bad_ids():
    with pytest.raises(GraphError):
        distance_leq(cycle(5), 0, 5, 1)
    with pytest.raises(GraphError):
        distance_leq(cycle(5), -1, 2, 1)


def test_neighborhood_examples():
    assert neighborhood(petersen(), 0) == [1, 4, 5]
    assert neighborhood(Graph(1), 0) == []
    k4 = complete(4)
    for u in range(4):
        assert neighborhood(k4, u) == [v for v in range(4) if v != u]


@settings(max_examples=60, deadline=None)
@given(subcubic_graphs(max_n=30))
def test_distance_leq_matches_all_pairs(g):
    d = floyd_warshall(g)
    q = DistanceQuery(g)
    for u in range(g.n):
        for v in range(g.n):
            for r in range(4):
                assert q.leq(u, v, r) == (d[u][v] <= r)


def test_distance_exhaustive_on_64_vertices():
    g = random_subcubic(64, 3, 0.1)
    d = floyd_warshall(g)
    q = DistanceQuery(g)
    for u in range(g.n):
        for v in range(g.n):
            for r in (1, 2, 3, 5):
                assert q.leq(u, v, r) == (d[u][v] <= r)


def test_subdivide_counts():
    sk4 = subdivide(complete(4))
    assert (sk4.graph.n, sk4.graph.edge_count) == (10, 12)
    sp = subdivide(petersen())
    assert (sp.graph.n, sp.graph.edge_count) == (25, 30)
    assert all(sp.graph.degree(x) == 2 for x in range(10, 25))
    assert all(not sp.is_original(x) for x in range(10, 25))


def test_subdivide_triangle_is_c6():
    sub = subdivide(cycle(3)).graph
    assert nx.is_isomorphic(nx.Graph(sub.edges()), nx.Graph(cycle(6).edges()))


def test_subdivide_distances_double():
    for seed in range(100):
        g = random_subcubic(4 + seed % 20, seed, 0.2)
        sub = subdivide(g)
        for u in range(g.n):
            base = g.distances_from(u)
            lifted = sub.graph.distances_from(u)
            for v in range(g.n):
                if base[v] < 0:
                    assert lifted[v] < 0
                else:
                    assert lifted[v] == 2 * base[v]


def test_graph6_examples():
    k3 = complete(3)
    assert parse_graph6("Bw") == k3
    assert write_graph6(k3) == "Bw"
    assert write_graph6(Graph(1)) == "@"
    assert parse_graph6("@") == Graph(1)
    assert parse_graph6(">>graph6<<Bw\n") == k3


def test_graph6_against_networkx_encoder():
    for seed in range(40):
        g = random_subcubic(1 + seed, seed)
        ng = nx.empty_graph(g.n)
        ng.add_edges_from(g.edges())
        ref = nx.to_graph6_bytes(ng, nodes=range(g.n), header=False).decode().strip()
        assert write_graph6(g) == ref
        assert parse_graph6(ref) == g


@pytest.mark.parametrize("bad", ["", "B", "Bww", "B\x01", "~??@", "Bx"])
def test_graph6_rejects_malformed(bad):
    with pytest.raises(GraphError):
        parse_graph6(bad)


def test_graph6_rejects_large():
    with pytest.raises(GraphError):
        write_graph6(cycle(63))


@settings(max_examples=50, deadline=None)
@given(subcubic_graphs(max_n=40))
def test_graph6_round_trip(g):
    text = write_graph6(g)
    assert parse_graph6(text) == g
    assert write_graph6(parse_graph6(text)) == text


def test_edge_list_examples():
    assert parse_edge_list("3 3\n0 1\n1 2\n0 2") == complete(3)
    all_pairs = "\n".join(f"{i} {j}" for i in range(4) for j in range(i + 1, 4))
    assert parse_edge_list("4 6\n" + all_pairs) == complete(4)
    with pytest.raises(GraphError, match="self-loop"):
        parse_edge_list("2 1\n0 0")


def test_edge_list_errors_carry_line_numbers():
    with pytest.raises(GraphError, match="line 3"):
        parse_edge_list("3 2\n0 1\n0 1")
    with pytest.raises(GraphError, match="line 2"):
        parse_edge_list("3 1\n0 x")
    with pytest.raises(GraphError):
        parse_edge_list("3 2\n0 1\n")


def test_edge_list_comments_and_round_trip():
    g = parse_edge_list("# triangle\n3 3\n0 1 # first\n1 2\n\n0 2\n")
    assert g == complete(3)
    p = petersen()
    assert parse_edge_list(write_edge_list(p)) == p


def test_format_sniffing():
    p = petersen()
    assert read_graph(write_graph6(p)) == p
    assert read_graph(">>graph6<<" + write_graph6(p)) == p
    assert read_graph(write_edge_list(p)) == p
