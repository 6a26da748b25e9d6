"""Budgeted sign labeling of a tree.

Solves::

    minimize   sum_v cost[v, s_v]
    subject to #{(u, v) in tree : s_u != s_v * agree(u, v)} <= budget

over s in {+1, -1}^V. Cost column 0 is the cost of label +1 and column 1 the
cost of label -1. Tables are "at most k violations" tables, so every table
is nonincreasing in k.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from . import kernels
from .graphs import Graph, GraphError

_LABELS = (1, -1)
_BIG = 1 << 60


class NotATreeError(GraphError):
    pass


@dataclass(frozen=True)
class TreeDecodeProblem:
    tree: Graph
    cost: np.ndarray  # (n, 2) nonnegative ints
    agree: np.ndarray  # (m,) over {-1, +1}, indexed like tree.edges
    budget: int

    def __post_init__(self):
        cost = np.asarray(self.cost, dtype=np.int64)
        agree = np.asarray(self.agree, dtype=np.int8)
        object.__setattr__(self, "cost", cost)
        object.__setattr__(self, "agree", agree)
        if not self.tree.is_tree():
            raise NotATreeError("decoding graph must be a tree")
        if cost.shape != (self.tree.n, 2):
            raise ValueError(f"cost must have shape ({self.tree.n}, 2), got {cost.shape}")
        if np.any(cost < 0):
            raise ValueError("costs must be nonnegative")
        if agree.shape != (self.tree.m,) or not np.all(np.abs(agree) == 1):
            raise ValueError("agree must hold one +-1 sign per tree edge")
        if self.budget < 0:
            raise ValueError("budget must be nonnegative")


@dataclass
class TreeDecodeResult:
    labels: np.ndarray
    objective: int
    violations: int
    ops: int = 0  # min-plus cells evaluated
    extra: dict = field(default_factory=dict)


def objective_of(prob: TreeDecodeProblem, labels: np.ndarray) -> tuple[int, int]:
    """(cost, violated edge count) of a labeling."""
    labels = np.asarray(labels)
    idx = np.where(labels == 1, 0, 1)
    cost = int(prob.cost[np.arange(prob.tree.n), idx].sum())
    if prob.tree.m == 0:
        return cost, 0
    ea = prob.tree.edge_array()
    viol = int(np.count_nonzero(labels[ea[:, 0]] != labels[ea[:, 1]] * prob.agree))
    return cost, viol


def tree_decode(prob: TreeDecodeProblem) -> TreeDecodeResult:
    """Exact budgeted minimizer by dynamic programming over the tree rooted at 0.

    Each node merges its children's tables with min-plus convolution, which
    costs O(deg * K^2) per node and O(n K^2) overall. Ties prefer label +1
    and, when splitting budget among children, the smallest share for the
    later child.
    """
    tree, cost = prob.tree, prob.cost
    n = tree.n
    K = min(prob.budget, max(n - 1, 0))
    parent, order, children = _bfs(tree, 0)
    sign_to_parent = np.ones(n, dtype=np.int8)
    for v in range(1, n):
        sign_to_parent[v] = prob.agree[tree.edge_index(v, parent[v])]

    opt: dict[int, tuple[np.ndarray, np.ndarray]] = {}
    splits: list[list[list]] = [[[], []] for _ in range(n)]
    choice: list = [None] * n
    base_len = np.zeros((n, 2), dtype=np.int64)
    ops = 0
    root_base = None
    for u in reversed(order):
        base = []
        for si in range(2):
            acc = np.array([cost[u, si]], dtype=np.int64)
            for c in children[u]:
                b = opt[c][si]
                if acc.shape[0] == 1:
                    acc = acc[0] + b[: K + 1]
                    splits[u][si].append(None)
                    ops += acc.shape[0]
                else:
                    ops += acc.shape[0] * b.shape[0]
                    acc, sp = kernels.minplus_merge(acc, b, K)
                    splits[u][si].append(sp)
            base.append(acc)
            base_len[u, si] = acc.shape[0]
        for c in children[u]:
            del opt[c]
        if u == 0:
            root_base = base
            continue
        L = min(K, max(base[0].shape[0] - 1, base[1].shape[0])) + 1
        tabs, ch = [], np.zeros((2, L), dtype=np.int8)
        for pi, sp_val in enumerate(_LABELS):
            ok = 0 if sp_val * sign_to_parent[u] == 1 else 1
            bad = 1 - ok
            ks = np.arange(L)
            val_ok = base[ok][np.minimum(ks, base[ok].shape[0] - 1)]
            val_bad = np.full(L, _BIG, dtype=np.int64)
            if L > 1:
                val_bad[1:] = base[bad][np.minimum(ks[1:] - 1, base[bad].shape[0] - 1)]
            # prefer +1 on ties
            plus_is_ok = ok == 0
            v_plus = val_ok if plus_is_ok else val_bad
            v_minus = val_bad if plus_is_ok else val_ok
            take_minus = v_minus < v_plus
            tabs.append(np.where(take_minus, v_minus, v_plus))
            ch[pi] = take_minus
        opt[u] = (tabs[0], tabs[1])
        choice[u] = ch

    kr = [min(K, root_base[si].shape[0] - 1) for si in range(2)]
    vals = [int(root_base[si][kr[si]]) for si in range(2)]
    root_si = 1 if vals[1] < vals[0] else 0

    labels = np.zeros(n, dtype=np.int8)
    stack = [(0, root_si, kr[root_si])]
    while stack:
        u, si, k = stack.pop()
        labels[u] = _LABELS[si]
        k = min(k, int(base_len[u, si]) - 1)
        kids = children[u]
        for j in range(len(kids) - 1, -1, -1):
            sp = splits[u][si][j]
            if sp is None:
                kc, k = k, 0
            else:
                kc = int(sp[k])
                k -= kc
            c = kids[j]
            ch = choice[c]
            kc = min(kc, ch.shape[1] - 1)
            ci = int(ch[si, kc])
            viol = int(_LABELS[ci] != _LABELS[si] * sign_to_parent[c])
            stack.append((c, ci, kc - viol))

    obj, viol = objective_of(prob, labels)
    if obj != vals[root_si] or viol > prob.budget:
        raise AssertionError("tree DP backtrack inconsistent with table value")
    return TreeDecodeResult(labels, obj, viol, ops)


def path_order(tree: Graph) -> list[int]:
    """Vertices of a path graph from its lower-index endpoint to the other."""
    if not tree.is_path():
        raise NotATreeError("graph is not a path")
    if tree.n == 1:
        return [0]
    ends = [v for v in range(tree.n) if tree.degree(v) == 1]
    order = [ends[0]]
    prev = -1
    while len(order) < tree.n:
        u = order[-1]
        nxt = next(w for w in tree.adjacency[u] if w != prev)
        prev = u
        order.append(nxt)
    return order


def path_decode(prob: TreeDecodeProblem) -> TreeDecodeResult:
    """Same contract as :func:`tree_decode`, specialized to paths in O(n K)."""
    tree = prob.tree
    order = path_order(tree)
    n = tree.n
    K = min(prob.budget, max(n - 1, 0))
    cost = np.ascontiguousarray(prob.cost[order])
    agree = np.array(
        [prob.agree[tree.edge_index(order[i], order[i + 1])] for i in range(n - 1)], dtype=np.int8
    )
    if n == 1:
        agree = np.zeros(0, dtype=np.int8)
    table, choice = kernels.path_dp(cost, agree, K)
    si = 1 if table[1, K] < table[0, K] else 0
    labels_along = np.zeros(n, dtype=np.int8)
    k = K
    for i in range(n):
        labels_along[i] = _LABELS[si]
        if i == n - 1:
            break
        sj = int(choice[i, si, k])
        if _LABELS[sj] != _LABELS[si] * agree[i]:
            k -= 1
        si = sj
    labels = np.zeros(n, dtype=np.int8)
    labels[np.asarray(order)] = labels_along
    obj, viol = objective_of(prob, labels)
    best = int(min(table[0, K], table[1, K]))
    if obj != best or viol > prob.budget:
        raise AssertionError("path DP backtrack inconsistent with table value")
    return TreeDecodeResult(labels, obj, viol, ops=n * (K + 1))


def brute_force_tree_decode(prob: TreeDecodeProblem, max_n: int = 20) -> TreeDecodeResult:
    """Exhaustive search over all 2^n labelings (test oracle)."""
    n = prob.tree.n
    if n > max_n:
        raise ValueError(f"brute force limited to n <= {max_n}, got {n}")
    best = None
    for labs in product(_LABELS, repeat=n):
        lab = np.array(labs, dtype=np.int8)
        obj, viol = objective_of(prob, lab)
        if viol <= prob.budget and (best is None or obj < best[1]):
            best = (lab, obj, viol)
    return TreeDecodeResult(best[0], best[1], best[2])


def tree_budget(n: int, p: float, delta: float) -> int:
    """ceil(2 p n + 2 ln(2 / delta)): violated-edge cap admitting the truth w.p. >= 1 - delta/2."""
    return int(math.ceil(2 * p * n + 2 * math.log(2 / delta)))


def tree_error_bound(n: int, p: float, q: float, delta: float) -> float:
    """Hamming error bound (1/eps^2)(2pn + 2 ln(2/delta) + 1) ln(2e/(p delta))."""
    eps = 0.5 - q
    return (2 * p * n + 2 * math.log(2 / delta) + 1) * math.log(2 * math.e / (p * delta)) / eps**2


def tree_inference(tree: Graph, x: np.ndarray, z: np.ndarray, p: float, delta: float) -> np.ndarray:
    """Labeling closest to ``z`` among those violating at most ``tree_budget`` tree edges.

    ``x`` is indexed like ``tree.edges``.
    """
    z = np.asarray(z)
    cost = np.stack([(z != 1), (z != -1)], axis=1).astype(np.int64)
    prob = TreeDecodeProblem(tree, cost, np.asarray(x, dtype=np.int8), tree_budget(tree.n, p, delta))
    return (path_decode(prob) if tree.is_path() else tree_decode(prob)).labels


def _bfs(tree: Graph, root: int):
    n = tree.n
    parent = [-1] * n
    children: list[list[int]] = [[] for _ in range(n)]
    seen = [False] * n
    seen[root] = True
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in tree.adjacency[u]:
            if not seen[w]:
                seen[w] = True
                parent[w] = u
                children[u].append(w)
                order.append(w)
                queue.append(w)
    return parent, order, children
