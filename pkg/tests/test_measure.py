import numpy as np
import pytest

from sidelabel import graphs as G
from sidelabel import measure as M


def test_noise_params_validation():
    assert M.NoiseParams(0.1, 0.25).eps == pytest.approx(0.25)
    for p, q in [(0.3, 0.2), (0.1, 0.5), (-0.1, 0.2)]:
        with pytest.raises(ValueError):
            M.NoiseParams(p, q)


def test_samplers_are_keyed_and_reproducible():
    g = G.build_grid(10, 10)
    y = M.sample_ground_truth(g.n, 5, 1)
    assert np.array_equal(y, M.sample_ground_truth(g.n, 5, 1))
    assert not np.array_equal(y, M.sample_ground_truth(g.n, 5, 2))
    x1 = M.sample_edge_observations(g, y, 0.2, 5, 1)
    x2 = M.sample_edge_observations(g, y, 0.2, 5, 1)
    assert np.array_equal(x1, x2)


def test_noiseless_observations_match_truth():
    g = G.build_ring_lattice(30, 2)
    y = M.sample_ground_truth(g.n, 0)
    x = M.sample_edge_observations(g, y, 0.0, 0)
    ea = g.edge_array()
    assert np.array_equal(x, y[ea[:, 0]] * y[ea[:, 1]])
    assert np.array_equal(M.sample_vertex_observations(y, 0.0, 0), y)


def test_flip_rates():
    y = np.ones(200_000, dtype=np.int8)
    z = M.sample_vertex_observations(y, 0.3, 9)
    rate = np.mean(z == -1)
    assert abs(rate - 0.3) < 4 * np.sqrt(0.3 * 0.7 / y.size)


def test_hamming_and_failures():
    y = np.array([1, -1, 1, 1])
    assert M.hamming_error([1, 1, 1, 1], y) == 1
    with pytest.raises(ValueError):
        M.hamming_error([1, 1], y)
    comps = [[0, 1], [2, 3]]
    assert M.signed_component_failures([np.array([-1, 1]), np.array([1, -1])], comps, y) == 1
