import itertools

import numpy as np
import pytest

from sidelabel import graphs as G
from sidelabel.bounds import (
    BoundReport,
    genie_map_decode,
    genie_map_vertex_error,
    lb_degree_profile,
    lb_system,
    majority_decode,
    spanning_tree_decode,
)
from sidelabel.measure import hamming_error, sample_edge_observations, sample_ground_truth, sample_vertex_observations
from sidelabel.treedp import tree_inference


def enumerated_genie_error(d, p, q):
    """Sum over all edge flip patterns and the vertex flip."""
    total = 0.0
    for flips in itertools.product((0, 1), repeat=d):
        w = np.prod([p if f else 1 - p for f in flips])
        wrong = sum(flips)
        if 2 * wrong > d:
            total += w
        elif 2 * wrong == d:
            total += w * q
    return total


@pytest.mark.parametrize("d", range(0, 8))
def test_genie_formula_matches_enumeration(d):
    for p, q in [(0.1, 0.3), (0.02, 0.25), (0.3, 0.45)]:
        assert genie_map_vertex_error(d, p, q) == pytest.approx(enumerated_genie_error(d, p, q) if d else q)


def test_genie_formula_examples():
    assert genie_map_vertex_error(2, 0.1, 0.3) == pytest.approx(0.064)
    assert genie_map_vertex_error(1, 0.17, 0.3) == pytest.approx(0.17)
    assert genie_map_vertex_error(4, 0.0, 0.3) == 0
    with pytest.raises(ValueError):
        genie_map_vertex_error(-1, 0.1, 0.2)


def test_lower_bound_calculators():
    assert lb_degree_profile(G.build_path(10), 0.1).value == pytest.approx(1.0)
    assert lb_degree_profile(G.build_ring_lattice(1000, 2), 0.05).value == pytest.approx(2.5)
    g = G.build_3regular_chain(6)
    assert lb_system(g, G.chain_blocks(6), 0.1).value == pytest.approx(0.6)
    assert lb_degree_profile(g, 0.0).value == 0
    with pytest.raises(ValueError):
        lb_system(g, [[0, 1], [1, 2]], 0.1)
    with pytest.raises(ValueError):
        BoundReport("x", -1.0)


def test_majority_decoder_cases():
    g = G.build_ring_lattice(50, 3)
    y = sample_ground_truth(50, 0)
    x = sample_edge_observations(g, y, 0.0, 0)
    assert np.array_equal(majority_decode(g, x, y), y)
    iso = G.Graph.from_edges(3, [(0, 1)])
    z = np.array([1, -1, -1])
    assert majority_decode(iso, np.array([1]), z)[2] == -1
    # tie on a degree-2 vertex goes to its own observation
    path = G.build_path(3)
    assert majority_decode(path, np.array([1, 1]), np.array([1, -1, -1]))[1] == -1


def test_majority_error_decreases_with_degree():
    n, p, q = 3000, 0.05, 0.25
    errs = []
    for k in (1, 3, 6, 12):
        g = G.build_ring_lattice(n, k)
        e = 0
        for s in range(3):
            y = sample_ground_truth(n, s, k)
            x = sample_edge_observations(g, y, p, s, k)
            z = sample_vertex_observations(y, q, s, k)
            e += hamming_error(majority_decode(g, x, z), y)
        errs.append(e)
    assert all(a >= b for a, b in zip(errs, errs[1:]))


def test_genie_decode_noiseless():
    g = G.build_grid(6, 6)
    y = sample_ground_truth(36, 2)
    x = sample_edge_observations(g, y, 0.0, 2)
    z = sample_vertex_observations(y, 0.4, 2)
    assert np.array_equal(genie_map_decode(g, x, z, y), y)


def test_spanning_tree_decode_cases():
    rng = np.random.default_rng(0)
    tree = G.Graph.from_edges(40, [(int(rng.integers(0, v)), v) for v in range(1, 40)])
    y = sample_ground_truth(40, 1)
    x = sample_edge_observations(tree, y, 0.1, 1)
    z = sample_vertex_observations(y, 0.25, 1)
    assert np.array_equal(spanning_tree_decode(tree, x, z, 0.1, 0.05), tree_inference(tree, x, z, 0.1, 0.05))
    cyc = G.Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    yc = np.array([1, -1, -1, 1])
    xc = sample_edge_observations(cyc, yc, 0.0, 0)
    assert np.array_equal(spanning_tree_decode(cyc, xc, yc, 0.0, 0.1), yc)
    dis = G.Graph.from_edges(5, [(0, 1), (2, 3)])
    yd = np.array([1, 1, -1, 1, -1])
    xd = sample_edge_observations(dis, yd, 0.0, 0)
    assert np.array_equal(spanning_tree_decode(dis, xd, yd, 0.0, 0.1), yd)
