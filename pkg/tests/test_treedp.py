import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sidelabel import graphs as G
from sidelabel.treedp import (
    NotATreeError,
    TreeDecodeProblem,
    brute_force_tree_decode,
    objective_of,
    path_decode,
    tree_budget,
    tree_error_bound,
    tree_decode,
    tree_inference,
)

from helpers import random_tree_edges


def star_problem():
    tree = G.Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    cost = [[0, 5], [3, 0], [3, 0], [3, 0]]
    return TreeDecodeProblem(tree, cost, np.ones(3), 2)


def test_star_example():
    res = tree_decode(star_problem())
    assert res.objective == 3
    assert res.labels[0] == 1
    assert sorted(res.labels[1:].tolist()) == [-1, -1, 1]
    assert res.violations == 2


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 9), st.integers(0, 2**32 - 1))
def test_tree_decode_matches_brute_force(n, seed):
    rng = np.random.default_rng(seed)
    tree = G.Graph.from_edges(n, random_tree_edges(n, rng))
    cost = rng.integers(0, 10, size=(n, 2))
    agree = rng.choice([-1, 1], size=tree.m)
    for k in range(n + 1):
        prob = TreeDecodeProblem(tree, cost, agree, k)
        res = tree_decode(prob)
        ref = brute_force_tree_decode(prob)
        assert res.objective == ref.objective
        assert res.violations <= k
        assert objective_of(prob, res.labels) == (res.objective, res.violations)


@pytest.mark.parametrize("seed", range(20))
def test_path_decode_matches_tree_decode(seed, backend):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 40))
    perm = rng.permutation(n)
    tree = G.Graph.from_edges(n, [(int(perm[i]), int(perm[i + 1])) for i in range(n - 1)])
    cost = rng.integers(0, 6, size=(n, 2))
    agree = rng.choice([-1, 1], size=tree.m)
    for k in (0, 1, 3, n):
        prob = TreeDecodeProblem(tree, cost, agree, k)
        a, b = path_decode(prob), tree_decode(prob)
        assert a.objective == b.objective
        assert a.violations <= k


def test_unconstrained_budget_is_pointwise_minimum(rng):
    tree = G.Graph.from_edges(30, random_tree_edges(30, rng))
    cost = rng.integers(0, 9, size=(30, 2))
    prob = TreeDecodeProblem(tree, cost, rng.choice([-1, 1], size=29), 29)
    assert tree_decode(prob).objective == cost.min(axis=1).sum()


def test_zero_budget_picks_consistent_labeling(rng):
    tree = G.Graph.from_edges(15, random_tree_edges(15, rng))
    agree = rng.choice([-1, 1], size=14)
    res = tree_decode(TreeDecodeProblem(tree, rng.integers(0, 5, size=(15, 2)), agree, 0))
    assert res.violations == 0


def test_invalid_problems():
    cyc = G.Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(NotATreeError):
        TreeDecodeProblem(cyc, np.zeros((3, 2)), np.ones(3), 1)
    path = G.build_path(3)
    with pytest.raises(ValueError):
        TreeDecodeProblem(path, -np.ones((3, 2)), np.ones(2), 1)
    with pytest.raises(ValueError):
        TreeDecodeProblem(path, np.zeros((3, 2)), np.array([1, 0]), 1)
    with pytest.raises(ValueError):
        TreeDecodeProblem(path, np.zeros((3, 2)), np.ones(2), -1)
    with pytest.raises(NotATreeError):
        path_decode(TreeDecodeProblem(G.Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)]), np.zeros((4, 2)), np.ones(3), 1))


def test_tree_budget_constants():
    assert tree_budget(1000, 0.01, 0.1) == int(np.ceil(20 + 2 * np.log(20)))
    eps = 0.25
    expected = (2 * 0.01 * 1000 + 2 * np.log(20) + 1) * np.log(2 * np.e / (0.01 * 0.1)) / eps**2
    assert tree_error_bound(1000, 0.01, 0.25, 0.1) == pytest.approx(expected)


def test_tree_inference_noiseless_recovers_truth(rng):
    tree = G.Graph.from_edges(50, random_tree_edges(50, rng))
    y = rng.choice([-1, 1], size=50)
    ea = tree.edge_array()
    x = y[ea[:, 0]] * y[ea[:, 1]]
    assert np.array_equal(tree_inference(tree, x, y, 0.0, 0.1), y)


def test_ops_linear_in_budget_on_paths():
    tree = G.build_path(200)
    prob = TreeDecodeProblem(tree, np.zeros((200, 2)), np.ones(199), 10)
    assert path_decode(prob).ops == 200 * 11
