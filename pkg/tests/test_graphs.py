import networkx as nx
import numpy as np
import pytest

from sidelabel import graphs as G


def test_from_edges_normalizes_and_indexes():
    g = G.Graph.from_edges(4, [(2, 1), (0, 3)])
    assert g.edges == ((1, 2), (0, 3))
    assert g.edge_index(2, 1) == 0 and g.edge_index(3, 0) == 1
    assert g.neighbors(1) == (2,)


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 1), (1, 0)], [(0, 5)]])
def test_from_edges_rejects_bad_input(edges):
    with pytest.raises(G.GraphError):
        G.Graph.from_edges(3, edges)


def test_grid_matches_networkx():
    g = G.build_grid(3, 5)
    ref = nx.grid_2d_graph(3, 5)
    assert g.m == ref.number_of_edges()
    assert sorted(g.degrees()) == sorted(d for _, d in ref.degree())


def test_hypergrid_counts():
    g = G.build_hypergrid([3, 4, 5])
    assert g.n == 60
    assert g.m == 2 * 4 * 5 + 3 * 3 * 5 + 3 * 4 * 4


def test_ring_lattice_regular():
    g = G.build_ring_lattice(20, 3)
    assert set(g.degrees()) == {6}
    assert g.m == 60
    with pytest.raises(G.GraphError):
        G.build_ring_lattice(6, 3)


def test_newman_watts_deterministic_and_superset():
    a = G.build_newman_watts(500, 2, 0.5, seed=3)
    b = G.build_newman_watts(500, 2, 0.5, seed=3)
    c = G.build_newman_watts(500, 2, 0.5, seed=4)
    assert a.edges == b.edges
    assert a.edges != c.edges
    ring = set(G.ring_lattice_edges(500, 2))
    ring = {(min(u, v), max(u, v)) for u, v in ring}
    assert ring <= set(a.edges)


def test_newman_watts_shortcut_rate():
    n, k, alpha = 400, 2, 0.5
    extra = [G.build_newman_watts(n, k, alpha, seed=s).m - n * k for s in range(40)]
    expected = alpha / n * G.count_ring_non_edges(n, k)
    assert abs(np.mean(extra) - expected) < 4 * np.sqrt(expected / 40)


def test_triangular_and_hexagonal_degrees():
    t = G.build_triangular(6)
    assert max(t.degrees()) == 6
    assert t.m == 6 * 5 + 6 * 5 + 5 * 5  # rows, columns, diagonals
    h = G.build_hexagonal(6)
    assert max(h.degrees()) == 3
    assert h.is_connected()


def test_3regular_chain():
    g = G.build_3regular_chain(5)
    assert set(g.degrees()) == {3}
    for blk in G.chain_blocks(5):
        assert g.cut_size(blk) == 2
    with pytest.raises(G.GraphError):
        G.build_3regular_chain(1)


def test_spanning_tree_and_forest():
    g = G.build_grid(4, 4)
    t = G.spanning_tree(g)
    assert t.is_tree() and set(t.edges) <= set(g.edges)
    dis = G.Graph.from_edges(5, [(0, 1), (2, 3)])
    with pytest.raises(G.DisconnectedGraphError):
        G.spanning_tree(dis)
    assert G.spanning_forest(dis).m == 2


def test_path_predicates():
    assert G.build_path(5).is_path()
    assert not G.build_grid(2, 3).is_path()


def test_probed_graph_restrict():
    g = G.build_grid(2, 3)
    gp = G.ProbedGraph.create(g, [3, 0])
    assert gp.probed == (0, 3)
    x = np.arange(g.m)
    assert gp.restrict(x).tolist() == [0, 3]
    with pytest.raises(G.GraphError):
        gp.restrict(np.zeros(2))


def test_edgelist_roundtrip(tmp_path):
    g = G.build_ring_lattice(12, 2)
    path = tmp_path / "g.edges"
    G.write_edgelist(g, path)
    assert G.read_edgelist(path).edges == g.edges
    with pytest.raises(G.GraphError):
        G.loads_edgelist("3 5\n0 1\n")
