"""Undirected graphs, the lattice families used in the experiments, and edge-list I/O.

Vertices are dense integers ``0..n-1``. Lattice generators number vertices in
row-major (lexicographic coordinate) order so decomposition builders can
address blocks arithmetically.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .rng import substream


class GraphError(ValueError):
    """Raised for malformed graphs or invalid generator parameters."""


class DisconnectedGraphError(GraphError):
    """Raised when an operation needs a connected graph."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph.

    ``edges`` holds normalized pairs ``(u, v)`` with ``u < v``; the position of
    a pair in that tuple is its edge index.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)
    _index: dict = field(repr=False, compare=False, hash=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        if n < 0:
            raise GraphError(f"vertex count must be nonnegative, got {n}")
        norm: list[tuple[int, int]] = []
        index: dict[tuple[int, int], int] = {}
        nbrs: list[list[int]] = [[] for _ in range(n)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in index:
                raise GraphError(f"duplicate edge {key}")
            index[key] = len(norm)
            norm.append(key)
            nbrs[u].append(v)
            nbrs[v].append(u)
        adjacency = tuple(tuple(sorted(a)) for a in nbrs)
        return cls(n, tuple(norm), adjacency, index)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> np.ndarray:
        return np.array([len(a) for a in self.adjacency], dtype=np.int64)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def edge_index(self, u: int, v: int) -> int:
        """Index of edge ``{u, v}``; raises ``KeyError`` if absent."""
        return self._index[(u, v) if u < v else (v, u)]

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._index

    def edge_array(self) -> np.ndarray:
        if not self.edges:
            return np.zeros((0, 2), dtype=np.int64)
        return np.asarray(self.edges, dtype=np.int64)

    def cut_size(self, subset: Iterable[int]) -> int:
        """|delta(S)|: number of edges with exactly one endpoint in ``subset``."""
        s = set(subset)
        return sum((u in s) != (v in s) for u, v in self.edges)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        out = []
        for r in range(self.n):
            if seen[r]:
                continue
            seen[r] = True
            comp = [r]
            queue = deque([r])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def is_tree(self) -> bool:
        return self.n >= 1 and self.m == self.n - 1 and self.is_connected()

    def is_path(self) -> bool:
        if not self.is_tree():
            return False
        return all(len(a) <= 2 for a in self.adjacency)

    def subgraph_edges(self, edge_ids: Iterable[int]) -> "Graph":
        """Graph on the same vertex set keeping only ``edge_ids``."""
        return Graph.from_edges(self.n, [self.edges[i] for i in sorted(set(edge_ids))])


@dataclass(frozen=True)
class ProbedGraph:
    """A graph together with the subset E' of edges a decoder may read."""

    base: Graph
    probed: tuple[int, ...]
    graph: Graph = field(repr=False, compare=False)
    # probed-graph edge index -> base edge index
    base_ids: np.ndarray = field(repr=False, compare=False)

    @classmethod
    def create(cls, base: Graph, probed: Iterable[int] | None = None) -> "ProbedGraph":
        ids = tuple(range(base.m)) if probed is None else tuple(sorted(set(int(i) for i in probed)))
        if ids and (ids[0] < 0 or ids[-1] >= base.m):
            raise GraphError("probed edge index out of range")
        g = Graph.from_edges(base.n, [base.edges[i] for i in ids])
        return cls(base, ids, g, np.asarray(ids, dtype=np.int64))

    @property
    def n(self) -> int:
        return self.base.n

    def restrict(self, x: np.ndarray) -> np.ndarray:
        """Edge observations on the probed edges, indexed like ``self.graph.edges``."""
        x = np.asarray(x)
        if x.shape != (self.base.m,):
            raise GraphError(f"expected {self.base.m} edge observations, got shape {x.shape}")
        return x[self.base_ids]


# ---------------------------------------------------------------------------
# generators


def build_path(n: int) -> Graph:
    if n < 1:
        raise GraphError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def build_grid(height: int, width: int) -> Graph:
    """``height x width`` 4-neighbor lattice, vertex ``r * width + c``."""
    return build_hypergrid([height, width])


def build_hypergrid(dims: Sequence[int]) -> Graph:
    dims = [int(d) for d in dims]
    if not dims or any(d < 1 for d in dims):
        raise GraphError(f"hypergrid extents must be >= 1, got {dims}")
    n = int(np.prod(dims))
    strides = np.cumprod([1] + dims[::-1][:-1])[::-1]
    edges = []
    for coord in product(*(range(d) for d in dims)):
        v = int(np.dot(coord, strides))
        for axis, d in enumerate(dims):
            if coord[axis] + 1 < d:
                edges.append((v, v + int(strides[axis])))
    return Graph.from_edges(n, edges)


def ring_lattice_edges(n: int, k: int) -> list[tuple[int, int]]:
    return [(i, (i + d) % n) for i in range(n) for d in range(1, k + 1)]


def build_ring_lattice(n: int, k: int) -> Graph:
    """Regular ring lattice R_{n,k}: vertex i adjacent to i±1..i±k (mod n)."""
    if k < 1 or n <= 2 * k:
        raise GraphError(f"ring lattice needs n > 2k >= 2, got n={n}, k={k}")
    return Graph.from_edges(n, ring_lattice_edges(n, k))


def build_newman_watts(n: int, k: int, alpha: float, seed: int) -> Graph:
    """R_{n,k} plus each non-edge independently with probability alpha/n.

    Row ``i`` (candidates ``j > i``) draws from its own sub-stream keyed by
    ``(seed, i)`` using geometric skips, so the result does not depend on
    iteration order.
    """
    if not 0 <= alpha < 1:
        raise GraphError(f"alpha must lie in [0, 1), got {alpha}")
    base = ring_lattice_edges(n, k) if n > 2 * k and k >= 1 else None
    if base is None:
        raise GraphError(f"ring lattice needs n > 2k >= 2, got n={n}, k={k}")
    edges = list(base)
    prob = alpha / n
    if prob > 0:
        for i in range(n - 1):
            cand = _nw_candidates(n, k, i)
            if cand.size == 0:
                continue
            rng = substream(seed, "newman_watts", i)
            pos = -1
            while True:
                pos += int(rng.geometric(prob))
                if pos >= cand.size:
                    break
                edges.append((i, int(cand[pos])))
    return Graph.from_edges(n, edges)


def _nw_candidates(n: int, k: int, i: int) -> np.ndarray:
    """Non-neighbors j > i of vertex i in R_{n,k}, ascending."""
    j = np.arange(i + 1, n)
    d = np.minimum(j - i, n - (j - i))
    return j[d > k]


def count_ring_non_edges(n: int, k: int) -> int:
    return n * (n - 1) // 2 - n * k


def build_triangular(side: int) -> Graph:
    """Parallelogram patch of the triangular lattice.

    Vertex ``(r, c)`` -> ``r * side + c``; neighbors are ``(r, c±1)``,
    ``(r±1, c)``, ``(r+1, c-1)`` and ``(r-1, c+1)``.
    """
    if side < 2:
        raise GraphError("triangular lattice needs side >= 2")
    edges = []
    for r in range(side):
        for c in range(side):
            v = r * side + c
            if c + 1 < side:
                edges.append((v, v + 1))
            if r + 1 < side:
                edges.append((v, v + side))
                if c >= 1:
                    edges.append((v, v + side - 1))
    return Graph.from_edges(side * side, edges)


def build_hexagonal(side: int) -> Graph:
    """Brick-wall patch of the hexagonal lattice.

    ``side x side`` vertices ``(r, c)`` -> ``r * side + c``; every horizontal
    edge is present and the vertical edge ``(r, c)-(r+1, c)`` exists iff
    ``r + c`` is even.
    """
    if side < 2:
        raise GraphError("hexagonal lattice needs side >= 2")
    edges = []
    for r in range(side):
        for c in range(side):
            v = r * side + c
            if c + 1 < side:
                edges.append((v, v + 1))
            if r + 1 < side and (r + c) % 2 == 0:
                edges.append((v, v + side))
    return Graph.from_edges(side * side, edges)


def build_3regular_chain(blocks: int, d: int = 3) -> Graph:
    """Cyclic chain of K_{d+1}-minus-an-edge blocks (d-regular).

    Block ``b`` occupies vertices ``b*(d+1) .. b*(d+1)+d``; its removed pair is
    ``(u_b, v_b) = (first, last)`` and ``v_b`` is joined to ``u_{b+1}``.
    """
    if d < 3:
        raise GraphError("block degree d must be >= 3")
    if blocks < 2:
        raise GraphError("need at least 2 blocks (one block would duplicate its removed edge)")
    size = d + 1
    edges = []
    for b in range(blocks):
        base = b * size
        for i in range(size):
            for j in range(i + 1, size):
                if (i, j) != (0, size - 1):
                    edges.append((base + i, base + j))
        nxt = ((b + 1) % blocks) * size
        edges.append((base + size - 1, nxt))
    return Graph.from_edges(blocks * size, edges)


def chain_blocks(blocks: int, d: int = 3) -> list[list[int]]:
    size = d + 1
    return [list(range(b * size, (b + 1) * size)) for b in range(blocks)]


def spanning_tree(g: Graph) -> Graph:
    """BFS spanning tree from vertex 0, neighbors scanned in index order."""
    if not g.is_connected():
        raise DisconnectedGraphError("spanning_tree needs a connected graph; use spanning_forest")
    return spanning_forest(g)


def spanning_forest(g: Graph) -> Graph:
    """BFS spanning forest, one tree per connected component."""
    seen = [False] * g.n
    edges = []
    for r in range(g.n):
        if seen[r]:
            continue
        seen[r] = True
        queue = deque([r])
        while queue:
            u = queue.popleft()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    edges.append((u, w))
                    queue.append(w)
    return Graph.from_edges(g.n, edges)


# ---------------------------------------------------------------------------
# edge-list text format: "n m" then one "u v" per line


def dumps_edgelist(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def loads_edgelist(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or len(rows[0]) != 2:
        raise GraphError("edge list must start with a 'n m' header")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise GraphError(f"header promises {m} edges, found {len(edges)}")
    return Graph.from_edges(n, edges)


def write_edgelist(g: Graph, path: str | Path) -> None:
    Path(path).write_text(dumps_edgelist(g), encoding="ascii", newline="\n")


def read_edgelist(path: str | Path) -> Graph:
    return loads_edgelist(Path(path).read_text(encoding="ascii"))
