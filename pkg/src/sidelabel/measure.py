"""The noisy measurement model and evaluation metrics.

Edge observation ``x[e] = y[u] * y[v]``, flipped with probability ``p``;
vertex observation ``z[v] = y[v]``, flipped with probability ``q``. All
arrays are ``int8`` vectors over {-1, +1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graphs import Graph
from .rng import substream


@dataclass(frozen=True)
class NoiseParams:
    """Edge flip rate ``p`` and vertex flip rate ``q = 1/2 - eps``; requires 0 <= p < q < 1/2."""

    p: float
    q: float

    def __post_init__(self):
        if not (0 <= self.p < self.q < 0.5):
            raise ValueError(f"need 0 <= p < q < 1/2, got p={self.p}, q={self.q}")

    @property
    def eps(self) -> float:
        return 0.5 - self.q


def _check_prob(name: str, value: float) -> None:
    if not 0 <= value <= 1:
        raise ValueError(f"{name} must lie in [0, 1], got {value}")


def as_labels(a: Sequence[int] | np.ndarray) -> np.ndarray:
    arr = np.asarray(a, dtype=np.int8)
    if arr.ndim != 1 or not np.all(np.abs(arr) == 1):
        raise ValueError("labels must be a 1-D vector over {-1, +1}")
    return arr


def sample_ground_truth(n: int, seed: int, *keys: int) -> np.ndarray:
    rng = substream(seed, "ground_truth", *keys)
    return np.where(rng.random(n) < 0.5, -1, 1).astype(np.int8)


def sample_edge_observations(g: Graph, y: np.ndarray, p: float, seed: int, *keys: int) -> np.ndarray:
    """Draw X; uniform number ``e`` of the keyed stream decides edge ``e``."""
    _check_prob("p", p)
    y = as_labels(y)
    if y.shape[0] != g.n:
        raise ValueError("ground truth length does not match graph")
    ea = g.edge_array()
    truth = (y[ea[:, 0]] * y[ea[:, 1]]).astype(np.int8)
    flips = substream(seed, "edges", *keys).random(g.m) < p
    return np.where(flips, -truth, truth).astype(np.int8)


def sample_vertex_observations(y: np.ndarray, q: float, seed: int, *keys: int) -> np.ndarray:
    _check_prob("q", q)
    y = as_labels(y)
    flips = substream(seed, "vertices", *keys).random(y.shape[0]) < q
    return np.where(flips, -y, y).astype(np.int8)


def hamming_error(yhat: Sequence[int] | np.ndarray, y: Sequence[int] | np.ndarray) -> int:
    a, b = np.asarray(yhat), np.asarray(y)
    if a.shape != b.shape:
        raise ValueError(f"length mismatch: {a.shape} vs {b.shape}")
    return int(np.count_nonzero(a != b))


def signed_component_failures(
    estimates: Sequence[np.ndarray], components: Sequence[Sequence[int]], y: np.ndarray
) -> int:
    """Components whose estimate matches the truth restriction under neither sign."""
    y = np.asarray(y)
    fails = 0
    for est, comp in zip(estimates, components, strict=True):
        truth = y[np.asarray(comp, dtype=np.int64)]
        est = np.asarray(est)
        if not (np.array_equal(est, truth) or np.array_equal(-est, truth)):
            fails += 1
    return fails
