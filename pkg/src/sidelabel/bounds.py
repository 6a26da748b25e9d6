"""Baseline decoders and closed-form bound calculators."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graphs import Graph, spanning_forest
from .treedp import TreeDecodeProblem, tree_budget, tree_decode


@dataclass
class BoundReport:
    formula: str
    value: float
    inputs: dict = field(default_factory=dict)
    order_level: bool = True  # constants of the asymptotic bound are not included

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("bound value must be nonnegative")

    def as_dict(self) -> dict:
        return {"formula": self.formula, "value": self.value, "inputs": self.inputs, "order_level": self.order_level}


def spanning_tree_decode(g: Graph, x: np.ndarray, z: np.ndarray, p: float, delta: float) -> np.ndarray:
    """Budgeted tree decoding on a BFS spanning forest, using only its edges' observations.

    On a disconnected graph each tree of the forest gets its own budget
    with the same delta; isolated vertices take their ``z`` label.
    """
    z = np.asarray(z)
    x = np.asarray(x)
    forest = spanning_forest(g)
    labels = z.astype(np.int8).copy()
    for comp in forest.components():
        if len(comp) < 2:
            continue
        loc = {v: i for i, v in enumerate(comp)}
        edges = [(loc[u], loc[v]) for u, v in forest.edges if u in loc]
        sub = Graph.from_edges(len(comp), edges)
        agree = np.empty(sub.m, dtype=np.int8)
        for u, v in forest.edges:
            if u in loc:
                agree[sub.edge_index(loc[u], loc[v])] = x[g.edge_index(u, v)]
        zc = z[comp]
        cost = np.stack([(zc != 1), (zc != -1)], axis=1).astype(np.int64)
        res = tree_decode(TreeDecodeProblem(sub, cost, agree, tree_budget(sub.n, p, delta)))
        labels[comp] = res.labels
    return labels


def majority_decode(g: Graph, x: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Each vertex takes the majority of neighbor votes Z_u X_uv; ties and isolated vertices take Z_v."""
    z = np.asarray(z, dtype=np.int64)
    return _vote(g, np.asarray(x, dtype=np.int64), z, z)


def genie_map_decode(g: Graph, x: np.ndarray, z: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Per-vertex MAP given the true neighbor labels: majority of Y_u X_uv, ties to Z_v (diagnostic)."""
    return _vote(g, np.asarray(x, dtype=np.int64), np.asarray(y, dtype=np.int64), np.asarray(z, dtype=np.int64))


def _vote(g: Graph, x: np.ndarray, source: np.ndarray, tie: np.ndarray) -> np.ndarray:
    score = np.zeros(g.n, dtype=np.int64)
    if g.m:
        ea = g.edge_array()
        np.add.at(score, ea[:, 1], source[ea[:, 0]] * x)
        np.add.at(score, ea[:, 0], source[ea[:, 1]] * x)
    return np.where(score > 0, 1, np.where(score < 0, -1, tie)).astype(np.int8)


def genie_map_vertex_error(d: int, p: float, q: float) -> float:
    """Exact error probability of the genie predictor at a degree-d vertex.

    Odd d: at least ceil(d/2) wrong edges. Even d: more than d/2 wrong edges,
    or exactly d/2 and a wrong vertex observation.
    """
    if d < 0 or not (0 <= p <= 0.5 and 0 <= q <= 0.5):
        raise ValueError("need d >= 0 and p, q in [0, 1/2]")
    if d == 0:
        return q

    def pmf(k):
        return math.comb(d, k) * p**k * (1 - p) ** (d - k)

    if d % 2:
        return sum(pmf(k) for k in range((d + 1) // 2, d + 1))
    return sum(pmf(k) for k in range(d // 2 + 1, d + 1)) + q * pmf(d // 2)


def lb_degree_profile(g: Graph, p: float) -> BoundReport:
    """sum_v p^ceil(deg(v)/2); isolated vertices contribute 1 (their label is pure guesswork from Z)."""
    value = math.fsum(p ** math.ceil(int(d) / 2) for d in g.degrees())
    return BoundReport("degree_profile", value, {"n": g.n, "m": g.m, "p": p})


def lb_system(g: Graph, subsets: Sequence[Sequence[int]], p: float) -> BoundReport:
    """sum_W p^ceil(|cut(W)|/2) over pairwise-disjoint vertex subsets."""
    seen: set[int] = set()
    for s in subsets:
        s = set(s)
        if s & seen:
            raise ValueError("subsets must be pairwise disjoint")
        seen |= s
    value = math.fsum(p ** math.ceil(g.cut_size(s) / 2) for s in subsets)
    return BoundReport("disjoint_system", value, {"n": g.n, "subsets": len(subsets), "p": p})
