"""Tree decompositions of probed graphs: validity, extensions, cut properties, builders.

A decomposition is a tree over vertex subsets ("components") of a probed
graph G' = (V, E'). Each component W carries an extended component W* with
W ⊆ W* used for local estimation.

Cut quantities:

* ``mincut(W)``: smallest cut of the induced probed graph G'(W) separating a
  nonempty proper subset of W.
* ``mincut_star(W)``: smallest |delta_{G'}(S)| over S ⊆ W* that meets W and
  leaves part of W outside, with cut edges counted in the whole probed graph.
* ``mincut_star_local(W)``: same sets S, counting only edges of E'(W*).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from . import kernels
from .graphs import (
    Graph,
    GraphError,
    ProbedGraph,
    build_grid,
    build_hexagonal,
    build_hypergrid,
    build_ring_lattice,
    build_triangular,
)

ENUM_LIMIT = 24

DEFAULT_THRESHOLDS = {
    "deg_T": 32,
    "deg_E_star": 32,
    "wid_star": 64,
    "max_edges_star": 128,
}


class DecompositionError(ValueError):
    pass


class ComponentTooLarge(DecompositionError):
    pass


@dataclass(frozen=True)
class TreeDecomposition:
    components: tuple[tuple[int, ...], ...]
    tree_edges: tuple[tuple[int, int], ...]
    extended: tuple[tuple[int, ...], ...]
    probed: tuple[int, ...]
    meta: dict = field(default_factory=dict, compare=False)

    @classmethod
    def create(cls, components, tree_edges, extended=None, probed=(), meta=None) -> "TreeDecomposition":
        comps = tuple(tuple(sorted(set(int(v) for v in c))) for c in components)
        ext = comps if extended is None else tuple(tuple(sorted(set(int(v) for v in c))) for c in extended)
        if len(ext) != len(comps):
            raise DecompositionError("need one extended component per component")
        edges = tuple((int(a), int(b)) for a, b in tree_edges)
        return cls(comps, edges, ext, tuple(sorted(int(e) for e in probed)), dict(meta or {}))

    @property
    def size(self) -> int:
        return len(self.components)

    def tree_graph(self) -> Graph:
        return Graph.from_edges(self.size, self.tree_edges)

    def with_extension(self, extend: Callable[[Sequence[int]], Iterable[int]]) -> "TreeDecomposition":
        ext = [tuple(sorted(set(extend(c)))) for c in self.components]
        return TreeDecomposition(self.components, self.tree_edges, tuple(ext), self.probed, self.meta)

    def component_of_vertex(self, n: int) -> np.ndarray:
        """Lowest-index component containing each vertex (-1 if uncovered)."""
        out = np.full(n, -1, dtype=np.int64)
        for i in range(self.size - 1, -1, -1):
            out[list(self.components[i])] = i
        return out


# ---------------------------------------------------------------------------
# extensions


def extend_identity(component: Sequence[int]) -> tuple[int, ...]:
    return tuple(sorted(component))


def extend_neighborhood(component: Sequence[int], gprime: ProbedGraph) -> tuple[int, ...]:
    """W together with every G'-neighbor of W."""
    out = set(component)
    for v in component:
        out.update(gprime.graph.adjacency[v])
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# validation


def validate(td: TreeDecomposition, gprime: ProbedGraph) -> list[str]:
    """Itemized violations of the decomposition axioms; empty list means valid."""
    g = gprime.graph
    problems: list[str] = []
    if tuple(td.probed) != tuple(gprime.probed):
        problems.append("probed edge set differs from the probed graph")
    if not td.components:
        return problems + ["no components"]
    for i, (c, x) in enumerate(zip(td.components, td.extended)):
        if not c:
            problems.append(f"component {i} is empty")
        if any(not 0 <= v < g.n for v in x) or any(not 0 <= v < g.n for v in c):
            problems.append(f"component {i} has out-of-range vertices")
        if not set(c) <= set(x):
            problems.append(f"extension of component {i} does not contain it")
    if problems:
        return problems

    k = td.size
    try:
        tree = td.tree_graph()
    except GraphError as exc:
        return problems + [f"tree edges invalid: {exc}"]
    if not tree.is_tree():
        problems.append("decomposition tree is not a tree")

    where: list[list[int]] = [[] for _ in range(g.n)]
    for i, c in enumerate(td.components):
        for v in c:
            where[v].append(i)
    missing = [v for v in range(g.n) if not where[v]]
    if missing:
        problems.append(f"vertex inclusion fails for {len(missing)} vertices (first {missing[:5]})")
    sets = [set(c) for c in td.components]
    for u, v in g.edges:
        if not any(v in sets[i] for i in where[u]):
            problems.append(f"edge inclusion fails for edge ({u}, {v})")
            break
    for v in range(g.n):
        comps = where[v]
        if len(comps) > 1 and not _induces_subtree(tree, comps):
            problems.append(f"coherence fails at vertex {v}")
            break
    for a, b in td.tree_edges:
        if not (sets[a] & sets[b]):
            problems.append(f"empty intersection on tree edge ({a}, {b})")
        if sets[a] <= sets[b] or sets[b] <= sets[a]:
            problems.append(f"redundant tree edge ({a}, {b})")
    if k > g.n:
        problems.append("more components than vertices")
    return problems


def _induces_subtree(tree: Graph, nodes: list[int]) -> bool:
    keep = set(nodes)
    start = nodes[0]
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in tree.adjacency[u]:
            if w in keep and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(keep)


# ---------------------------------------------------------------------------
# cut computations


def _local_index(vertices: Sequence[int]) -> dict[int, int]:
    return {v: i for i, v in enumerate(vertices)}


def _induced_edges(g: Graph, vertices: Sequence[int]) -> list[tuple[int, int]]:
    """Edges of G[vertices] in local indices."""
    loc = _local_index(vertices)
    out = []
    for v in vertices:
        for w in g.adjacency[v]:
            if w in loc and v < w:
                out.append((loc[v], loc[w]))
    return out


def _outside_degree(g: Graph, vertices: Sequence[int]) -> list[int]:
    inside = set(vertices)
    return [sum(w not in inside for w in g.adjacency[v]) for v in vertices]


def _max_flow(nv: int, arcs: list[tuple[int, int, int]], s: int, t: int) -> int:
    """Edmonds-Karp on a tiny graph; arcs are (u, v, capacity) in both directions."""
    cap: list[dict[int, int]] = [dict() for _ in range(nv)]
    for u, v, c in arcs:
        cap[u][v] = cap[u].get(v, 0) + c
        cap[v].setdefault(u, 0)
    flow = 0
    while True:
        prev = [-1] * nv
        prev[s] = s
        queue = deque([s])
        while queue and prev[t] < 0:
            u = queue.popleft()
            for w, c in cap[u].items():
                if c > 0 and prev[w] < 0:
                    prev[w] = u
                    queue.append(w)
        if prev[t] < 0:
            return flow
        w = t
        while w != s:
            u = prev[w]
            cap[u][w] -= 1
            cap[w][u] += 1
            w = u
        flow += 1


def split_cut_flow(
    g: Graph, core: Sequence[int], domain: Sequence[int], count_outside: bool
) -> int | None:
    """min |cut(S)| over S ⊆ domain with S ∩ core and core \\ S both nonempty, via max-flow.

    With ``count_outside`` every edge from S to V \\ domain counts too; the
    outside is collapsed into one sink-side super vertex.
    """
    core = sorted(core)
    if len(core) < 2:
        return None
    domain = sorted(domain)
    loc = _local_index(domain)
    nv = len(domain) + 2  # extra: outside super vertex, super sink
    out_v, sink = len(domain), len(domain) + 1
    big = 10 * (g.m + 1)
    base_arcs = [(a, b, 1) for a, b in _induced_edges(g, domain)]
    base_arcs += [(b, a, 1) for a, b, _ in list(base_arcs)]
    if count_outside:
        for v, d in zip(domain, _outside_degree(g, domain)):
            if d:
                base_arcs.append((loc[v], out_v, d))
                base_arcs.append((out_v, loc[v], d))
        base_arcs.append((out_v, sink, big))
    a0 = loc[core[0]]
    best = None
    for b in core[1:]:
        lb = loc[b]
        cands = [(a0, lb)]
        if count_outside:
            cands.append((lb, a0))
        for s, t in cands:
            arcs = base_arcs + [(t, sink, big)]
            val = _max_flow(nv, arcs, s, sink)
            best = val if best is None else min(best, val)
    return best


def split_cut_enum(
    g: Graph, core: Sequence[int], domain: Sequence[int], count_outside: bool
) -> int | None:
    """Same quantity as :func:`split_cut_flow` by exhaustive enumeration (oracle)."""
    core = sorted(core)
    if len(core) < 2:
        return None
    domain = sorted(domain)
    if len(domain) > ENUM_LIMIT:
        raise ComponentTooLarge(f"|domain|={len(domain)} exceeds enumeration limit {ENUM_LIMIT}")
    indptr, nbr, neg = csr_local(g, domain)
    lin = np.asarray(_outside_degree(g, domain) if count_outside else [0] * len(domain), dtype=np.int64)
    cs = set(core)
    inw = np.array([v in cs for v in domain], dtype=np.int8)
    val, _ = kernels.enumerate_min(len(domain), indptr, nbr, neg, lin, inw, True, False)
    return int(val)


def csr_local(g: Graph, vertices: Sequence[int], signs: np.ndarray | None = None):
    """CSR adjacency of G[vertices] in local indices; ``neg`` marks edges with sign -1."""
    loc = _local_index(vertices)
    indptr = [0]
    nbr: list[int] = []
    neg: list[int] = []
    for v in vertices:
        for w in g.adjacency[v]:
            if w in loc:
                nbr.append(loc[w])
                neg.append(0 if signs is None else int(signs[g.edge_index(v, w)] < 0))
        indptr.append(len(nbr))
    return (
        np.asarray(indptr, dtype=np.int64),
        np.asarray(nbr, dtype=np.int64),
        np.asarray(neg, dtype=np.int8),
    )


# ---------------------------------------------------------------------------
# properties


@dataclass
class DecompositionProperties:
    deg_T: int
    wid: int
    wid_star: int
    deg_E: int
    deg_E_star: int
    mincut: list
    mincut_star: list
    mincut_star_local: list
    edges_star: list
    max_edges_star: int

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _edges_within(g: Graph, vertices: Sequence[int]) -> list[int]:
    s = set(vertices)
    return sorted({g.edge_index(v, w) for v in vertices for w in g.adjacency[v] if w in s})


def compute_properties(td: TreeDecomposition, gprime: ProbedGraph, method: str = "flow") -> DecompositionProperties:
    """Table of decomposition quantities; ``method`` is ``"flow"`` or ``"enum"`` for the cuts."""
    g = gprime.graph
    cut = {"flow": split_cut_flow, "enum": split_cut_enum}[method]
    tree = td.tree_graph()
    deg_T = max((tree.degree(i) for i in range(td.size)), default=0)
    count = np.zeros(g.m, dtype=np.int64)
    count_star = np.zeros(g.m, dtype=np.int64)
    mincut, mcs, mcs_local, edges_star = [], [], [], []
    for c, x in zip(td.components, td.extended):
        count[_edges_within(g, c)] += 1
        es = _edges_within(g, x)
        count_star[es] += 1
        edges_star.append(len(es))
        mincut.append(cut(g, c, c, False))
        mcs.append(cut(g, c, x, True))
        mcs_local.append(cut(g, c, x, False))
    return DecompositionProperties(
        deg_T=deg_T,
        wid=max(len(c) for c in td.components) - 1,
        wid_star=max(len(x) for x in td.extended) - 1,
        deg_E=int(count.max(initial=0)),
        deg_E_star=int(count_star.max(initial=0)),
        mincut=mincut,
        mincut_star=mcs,
        mincut_star_local=mcs_local,
        edges_star=edges_star,
        max_edges_star=max(edges_star, default=0),
    )


def check_admissible(
    td: TreeDecomposition,
    gprime: ProbedGraph,
    thresholds: dict | None = None,
    props: DecompositionProperties | None = None,
) -> tuple[bool, dict]:
    """Connected extensions and bounded size quantities. Returns ``(ok, report)``."""
    th = dict(DEFAULT_THRESHOLDS)
    th.update(thresholds or {})
    props = props or compute_properties(td, gprime)
    g = gprime.graph
    report: dict = {"measured": {k: getattr(props, k) for k in th}, "thresholds": th, "problems": []}
    for i, x in enumerate(td.extended):
        if not _connected_induced(g, x):
            report["problems"].append(f"disconnected extension at component {i}")
    for key, limit in th.items():
        if getattr(props, key) > limit:
            report["problems"].append(f"{key}={getattr(props, key)} exceeds {limit}")
    return not report["problems"], report


def _connected_induced(g: Graph, vertices: Sequence[int]) -> bool:
    s = set(vertices)
    start = next(iter(s))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w in s and w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(s)


# ---------------------------------------------------------------------------
# serialization: "C ids", "X ids", "T i j", "P e..."


def dumps_decomposition(td: TreeDecomposition) -> str:
    lines = [" ".join(["C", *map(str, c)]) for c in td.components]
    lines += [" ".join(["X", *map(str, x)]) for x in td.extended]
    lines += [f"T {a} {b}" for a, b in td.tree_edges]
    lines.append(" ".join(["P", *map(str, td.probed)]))
    return "\n".join(lines) + "\n"


def loads_decomposition(text: str) -> TreeDecomposition:
    comps, ext, tedges, probed = [], [], [], None
    for ln in text.splitlines():
        parts = ln.split()
        if not parts:
            continue
        tag, vals = parts[0], [int(t) for t in parts[1:]]
        if tag == "C":
            comps.append(vals)
        elif tag == "X":
            ext.append(vals)
        elif tag == "T":
            if len(vals) != 2:
                raise DecompositionError(f"bad tree edge line: {ln!r}")
            tedges.append(tuple(vals))
        elif tag == "P":
            probed = vals
        else:
            raise DecompositionError(f"unknown record {tag!r}")
    if probed is None:
        raise DecompositionError("missing P record")
    return TreeDecomposition.create(comps, tedges, ext or None, probed)


def write_decomposition(td: TreeDecomposition, path: str | Path) -> None:
    Path(path).write_text(dumps_decomposition(td), encoding="ascii", newline="\n")


def read_decomposition(path: str | Path) -> TreeDecomposition:
    return loads_decomposition(Path(path).read_text(encoding="ascii"))


# ---------------------------------------------------------------------------
# builders


def _path_edges(k: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(k - 1)]


def _finish(base: Graph, probed, comps, tree_edges, extend: str, meta) -> tuple[ProbedGraph, TreeDecomposition]:
    gp = ProbedGraph.create(base, probed)
    td = TreeDecomposition.create(comps, tree_edges, None, gp.probed, meta)
    if extend == "neighborhood":
        td = td.with_extension(lambda c: extend_neighborhood(c, gp))
    return gp, td


def decomp_constant_height_grid(c: int, width: int) -> tuple[ProbedGraph, TreeDecomposition]:
    """Overlapping ``c x 2`` column-pair blocks joined as a path; all edges probed."""
    if c < 2 or width < 2:
        raise DecompositionError("need c >= 2 and width >= 2")
    g = build_grid(c, width)
    comps = [[r * width + j + d for r in range(c) for d in (0, 1)] for j in range(width - 1)]
    k = len(comps)
    interior = [0 < i < k - 1 for i in range(k)]
    meta = {"family": "grid", "interior": interior}
    return _finish(g, None, comps, _path_edges(k), "neighborhood", meta)


def decomp_ring_lattice(n: int, k: int, base: Graph | None = None) -> tuple[ProbedGraph, TreeDecomposition]:
    """Arcs ``[s, s + 2k]`` (closed neighborhoods of their centers) with starts spaced k + 1.

    The k(k+1)/2 wrap-around edges are left unprobed so the arcs form a path
    decomposition; the last arc is shifted to end at vertex n - 1.
    """
    ring = build_ring_lattice(n, k)
    g = ring if base is None else base
    starts = list(range(0, n - 2 * k, k + 1))
    last = n - 1 - 2 * k
    if starts[-1] != last:
        starts.append(last)
    comps = [list(range(s, s + 2 * k + 1)) for s in starts]
    probed = [g.edge_index(u, v) for u, v in ring.edges if abs(u - v) <= k]
    m = len(comps)
    gp, td = _finish(g, probed, comps, _path_edges(m), "neighborhood", {"family": "ring", "k": k})
    # interior: every vertex of W keeps its full 2k ring neighbors in G'
    td.meta["interior"] = [all(gp.graph.degree(v) == 2 * k for v in c) for c in td.components]
    return gp, td


def decomp_newman_watts(g: Graph, n: int, k: int) -> tuple[ProbedGraph, TreeDecomposition]:
    """Ring-lattice decomposition on a Newman-Watts graph; shortcut edges are not probed."""
    if g.n != n:
        raise DecompositionError("graph size does not match n")
    gp, td = decomp_ring_lattice(n, k, base=g)
    td.meta["family"] = "newman_watts"
    return gp, td


def decomp_hypertube(c: int, length: int) -> tuple[ProbedGraph, TreeDecomposition]:
    """``length x c x c`` tube covered by overlapping ``2 x c x c`` slabs; identity extension."""
    if c < 2 or length < 2:
        raise DecompositionError("need c >= 2 and length >= 2")
    g = build_hypergrid([length, c, c])
    layer = c * c
    comps = [list(range(i * layer, (i + 2) * layer)) for i in range(length - 1)]
    m = len(comps)
    meta = {"family": "hypertube", "interior": [0 < i < m - 1 for i in range(m)]}
    return _finish(g, None, comps, _path_edges(m), "identity", meta)


def _bands(extent: int) -> list[range]:
    """Split ``range(extent)`` into consecutive bands of 3, using 2s for the remainder."""
    if extent <= 3:
        return [range(extent)]
    sizes = [3] * (extent // 3)
    rem = extent % 3
    if rem == 1:
        sizes[-1] = 2
        sizes.append(2)
    elif rem == 2:
        sizes.append(2)
    out, s = [], 0
    for sz in sizes:
        out.append(range(s, s + sz))
        s += sz
    return out


def _reflected(counts: Sequence[int]) -> list[tuple[int, ...]]:
    """Boustrophedon order: consecutive tuples differ by one step in one coordinate."""
    if not counts:
        return [()]
    rest = _reflected(counts[1:])
    out = []
    for i in range(counts[0]):
        seq = rest if i % 2 == 0 else rest[::-1]
        out.extend((i, *t) for t in seq)
    return out


def _windows(length: int) -> list[range]:
    if length <= 3:
        return [range(length)]
    starts = list(range(0, length - 2, 2))
    if starts[-1] != length - 3:
        starts.append(length - 3)
    return [range(s, s + 3) for s in starts]


def snake_decomposition(
    g: Graph, dims: Sequence[int], family: str
) -> tuple[ProbedGraph, TreeDecomposition]:
    """Zig-zag decomposition of a lattice whose vertices are row-major over ``dims``.

    All axes but the last are cut into bands of height 3 (2 for remainders);
    each product of bands is a tube running along the last axis. Tubes are
    visited in boustrophedon order and each is traversed opposite to the
    previous one. Edges between different tubes are left unprobed except
    those joining consecutive tubes within the 3 last-axis positions where
    the first tube ends. Components are 3-long windows of a tube stepping by
    2, plus one turn block per tube change spanning the face layer of the
    tube being left and up to two layers of the next one.
    """
    dims = [int(d) for d in dims]
    if len(dims) < 2:
        raise DecompositionError("snake decomposition needs at least 2 axes")
    strides = np.cumprod([1] + dims[::-1][:-1])[::-1]
    run = len(dims) - 1
    band_axes = [_bands(d) for d in dims[:-1]]
    order = _reflected([len(b) for b in band_axes])
    L = dims[-1]
    wins = _windows(L)

    def vid(coord) -> int:
        return int(np.dot(coord, strides))

    def block(bands: Sequence[Sequence[int]], positions: Sequence[int]) -> list[int]:
        return [vid((*c, z)) for c in product(*bands) for z in positions]

    coords = np.array(list(product(*(range(d) for d in dims))), dtype=np.int64)
    tube_of = np.zeros(g.n, dtype=np.int64)
    tube_index = {t: i for i, t in enumerate(order)}
    band_lookup = []
    for axis_bands in band_axes:
        lut = np.zeros(sum(len(b) for b in axis_bands), dtype=np.int64)
        for bi, b in enumerate(axis_bands):
            lut[list(b)] = bi
        band_lookup.append(lut)
    for v in range(g.n):
        key = tuple(int(band_lookup[a][coords[v, a]]) for a in range(run))
        tube_of[v] = tube_index[key]

    ends = []
    for t in range(len(order)):
        seq = wins if t % 2 == 0 else [w for w in reversed(wins)]
        ends.append(set(seq[-1]))
    probed = []
    for e, (u, v) in enumerate(g.edges):
        tu, tv = int(tube_of[u]), int(tube_of[v])
        if tu == tv:
            probed.append(e)
        elif abs(tu - tv) == 1:
            t = min(tu, tv)
            if coords[u, run] in ends[t] and coords[v, run] in ends[t]:
                probed.append(e)

    comps: list[list[int]] = []
    for t, key in enumerate(order):
        bands = [list(band_axes[a][key[a]]) for a in range(run)]
        seq = wins if t % 2 == 0 else [w for w in reversed(wins)]
        for wi, w in enumerate(seq):
            blk = block(bands, list(w))
            if wi == 0 and comps and set(blk) <= set(comps[-1]):
                continue
            comps.append(blk)
        if t + 1 < len(order):
            nxt = order[t + 1]
            axis = next(a for a in range(run) if key[a] != nxt[a])
            cur_band = list(band_axes[axis][key[axis]])
            nxt_band = list(band_axes[axis][nxt[axis]])
            forward = nxt[axis] > key[axis]
            face = [cur_band[-1] if forward else cur_band[0]]
            near = nxt_band[:2] if forward else nxt_band[-2:]
            turn_bands = [list(band_axes[a][key[a]]) if a != axis else sorted(face + near) for a in range(run)]
            comps.append(block(turn_bands, sorted(ends[t])))

    m = len(comps)
    lo, hi = coords.min(axis=0), coords.max(axis=0)
    on_side = np.any((coords == lo) | (coords == hi), axis=1)
    interior = [not bool(on_side[c].any()) for c in comps]
    meta = {"family": family, "interior": interior, "dims": dims}
    return _finish(g, probed, comps, _path_edges(m), "neighborhood", meta)


def decomp_square_grid_zigzag(side: int) -> tuple[ProbedGraph, TreeDecomposition]:
    if side < 4:
        raise DecompositionError("zig-zag decomposition needs side >= 4")
    return snake_decomposition(build_grid(side, side), [side, side], "grid_zigzag")


def decomp_hypergrid(dims: Sequence[int]) -> tuple[ProbedGraph, TreeDecomposition]:
    dims = [int(d) for d in dims]
    if len(dims) < 2 or any(d < 3 for d in dims):
        raise DecompositionError("hypergrid decomposition needs >= 2 axes of extent >= 3")
    return snake_decomposition(build_hypergrid(dims), dims, "hypergrid")


def decomp_triangular(side: int) -> tuple[ProbedGraph, TreeDecomposition]:
    if side < 4:
        raise DecompositionError("triangular decomposition needs side >= 4")
    return snake_decomposition(build_triangular(side), [side, side], "triangular")


def decomp_hexagonal(side: int) -> tuple[ProbedGraph, TreeDecomposition]:
    if side < 4:
        raise DecompositionError("hexagonal decomposition needs side >= 4")
    return snake_decomposition(build_hexagonal(side), [side, side], "hexagonal")


def trivial_edge_decomposition(g: Graph) -> tuple[ProbedGraph, TreeDecomposition]:
    """Edges of a tree as components, tree edges between edges sharing a vertex (spanning)."""
    if not g.is_tree() or g.n < 2:
        raise DecompositionError("edge decomposition needs a tree with >= 2 vertices")
    comps = [list(e) for e in g.edges]
    by_vertex: dict[int, list[int]] = {}
    for i, (u, v) in enumerate(g.edges):
        by_vertex.setdefault(u, []).append(i)
        by_vertex.setdefault(v, []).append(i)
    tedges = []
    for v, es in sorted(by_vertex.items()):
        for a, b in zip(es, es[1:]):
            tedges.append((a, b))
    m = len(comps)
    return _finish(g, None, comps, tedges, "identity", {"family": "tree_edges", "interior": [True] * m})
