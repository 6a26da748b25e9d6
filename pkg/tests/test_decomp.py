import itertools

import networkx as nx
import numpy as np
import pytest

from sidelabel import decomp as D
from sidelabel import graphs as G

BUILDERS = {
    "grid3": lambda: D.decomp_constant_height_grid(3, 12),
    "grid4": lambda: D.decomp_constant_height_grid(4, 7),
    "zigzag": lambda: D.decomp_square_grid_zigzag(8),
    "zigzag10": lambda: D.decomp_square_grid_zigzag(10),
    "ring1": lambda: D.decomp_ring_lattice(15, 1),
    "ring2": lambda: D.decomp_ring_lattice(31, 2),
    "ring3": lambda: D.decomp_ring_lattice(40, 3),
    "nw": lambda: D.decomp_newman_watts(G.build_newman_watts(60, 2, 0.5, 1), 60, 2),
    "tube": lambda: D.decomp_hypertube(3, 5),
    "cube": lambda: D.decomp_hypergrid([5, 5, 5]),
    "tri": lambda: D.decomp_triangular(7),
    "hex": lambda: D.decomp_hexagonal(7),
}


@pytest.mark.parametrize("name", sorted(BUILDERS))
def test_builders_are_valid_and_admissible(name):
    gp, td = BUILDERS[name]()
    assert D.validate(td, gp) == []
    ok, report = D.check_admissible(td, gp)
    assert ok, report["problems"]


def test_ring_component_count_and_dropped_wraparound():
    gp, td = D.decomp_ring_lattice(15, 1)
    assert td.size == 7
    assert all(len(c) == 3 for c in td.components)
    assert gp.graph.m == gp.base.m - 1


def test_validate_reports_each_axiom():
    g = G.build_path(4)
    gp = G.ProbedGraph.create(g)
    good = D.TreeDecomposition.create([[0, 1], [1, 2], [2, 3]], [(0, 1), (1, 2)], probed=gp.probed)
    assert D.validate(good, gp) == []
    cases = {
        "vertex inclusion": D.TreeDecomposition.create([[0, 1], [1, 2]], [(0, 1)], probed=gp.probed),
        "edge inclusion": D.TreeDecomposition.create([[0, 1], [1, 3], [2, 3]], [(0, 1), (1, 2)], probed=gp.probed),
        "coherence": D.TreeDecomposition.create([[0, 1], [2, 3], [1, 2]], [(0, 1), (1, 2)], probed=gp.probed),
        "redundant": D.TreeDecomposition.create([[0, 1], [0, 1, 2], [2, 3]], [(0, 1), (1, 2)], probed=gp.probed),
        "not a tree": D.TreeDecomposition.create([[0, 1], [1, 2], [2, 3]], [(0, 1)], probed=gp.probed),
    }
    for key, td in cases.items():
        problems = D.validate(td, gp)
        assert any(key in p for p in problems), (key, problems)


def nx_split_cut(g, core, domain, count_outside):
    """Independent oracle: networkx min cut over ordered pairs of core vertices."""
    h = nx.DiGraph()
    dom = set(domain)
    for u, v in g.edges:
        for a, b in ((u, v), (v, u)):
            if a in dom and b in dom:
                h.add_edge(a, b, capacity=1)
            elif a in dom and count_outside:
                cap = h.get_edge_data(a, "out", {"capacity": 0})["capacity"]
                h.add_edge(a, "out", capacity=cap + 1)
    best = None
    for a, b in itertools.permutations(sorted(core), 2):
        k = h.copy()
        k.add_edge(b, "sink", capacity=10**6)
        if count_outside:
            k.add_edge("out", "sink", capacity=10**6)
        k.add_node(a)
        val = nx.maximum_flow_value(k, a, "sink")
        best = val if best is None else min(best, val)
    return best


@pytest.mark.parametrize("name", ["grid3", "zigzag", "ring2", "tri", "hex", "tube"])
def test_cut_methods_agree(name):
    gp, td = BUILDERS[name]()
    g = gp.graph
    for c, x in list(zip(td.components, td.extended))[:6]:
        for outside in (False, True):
            flow = D.split_cut_flow(g, c, x, outside)
            assert flow == nx_split_cut(g, c, x, outside)
            if len(x) <= 16:
                assert flow == D.split_cut_enum(g, c, x, outside)


def test_property_table_on_grid_blocks():
    gp, td = D.decomp_constant_height_grid(3, 10)
    props = D.compute_properties(td, gp)
    assert props.deg_T == 2
    assert props.wid == 5
    assert props.wid_star == 11
    assert props.max_edges_star == 17
    assert props.deg_E_star == 4
    assert props.mincut_star[1:-1] == [3] * (td.size - 2)
    assert min(props.mincut_star) == 2


def test_enum_and_flow_property_tables_agree():
    gp, td = D.decomp_square_grid_zigzag(6)
    a = D.compute_properties(td, gp, method="flow")
    b = D.compute_properties(td, gp, method="enum")
    assert a.mincut_star == b.mincut_star and a.mincut == b.mincut


def test_enum_gate():
    gp, td = D.decomp_hypergrid([5, 5, 5])
    big = max(td.extended, key=len)
    with pytest.raises(D.ComponentTooLarge):
        D.split_cut_enum(gp.graph, td.components[0], big, True)


def test_admissibility_flags_disconnected_extension():
    g = G.build_path(4)
    gp = G.ProbedGraph.create(g, [0, 2])
    td = D.TreeDecomposition.create([[0, 1, 2, 3]], [], probed=gp.probed)
    ok, report = D.check_admissible(td, gp)
    assert not ok and "disconnected" in report["problems"][0]


def test_serialization_roundtrip(tmp_path):
    gp, td = D.decomp_square_grid_zigzag(6)
    path = tmp_path / "t.decomp"
    D.write_decomposition(td, path)
    back = D.read_decomposition(path)
    assert back == td
    with pytest.raises(D.DecompositionError):
        D.loads_decomposition("C 0 1\nQ 1\nP 0\n")
    with pytest.raises(D.DecompositionError):
        D.loads_decomposition("C 0 1\n")


def test_component_of_vertex_prefers_lowest_index():
    gp, td = D.decomp_constant_height_grid(3, 5)
    owner = td.component_of_vertex(gp.n)
    assert owner[1] == 0 and owner[2] == 1


def test_tree_edge_decomposition():
    g = G.Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (3, 4)])
    gp, td = D.trivial_edge_decomposition(g)
    assert D.validate(td, gp) == []


def test_bands_and_windows():
    assert [len(b) for b in D._bands(10)] == [3, 3, 2, 2]
    assert [len(b) for b in D._bands(8)] == [3, 3, 2]
    assert [list(w) for w in D._windows(8)] == [[0, 1, 2], [2, 3, 4], [4, 5, 6], [5, 6, 7]]
    order = D._reflected([2, 3])
    assert all(sum(abs(a - b) for a, b in zip(s, t)) == 1 for s, t in zip(order, order[1:]))
