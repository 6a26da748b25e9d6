"""Shared test utilities."""


def random_tree_edges(n, rng):
    """Random recursive tree: vertex v attaches to a uniform earlier vertex."""
    return [(int(rng.integers(0, v)), v) for v in range(1, n)]
