"""Two-stage decoder over a tree decomposition.

Stage 1 estimates every extended component W* from edge observations alone,
up to a global sign. Stage 2 picks one sign per component by a budgeted tree
DP whose costs count disagreements with the vertex observations and whose
edge signs say whether neighboring estimates agree on a shared vertex.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .decomp import (
    ENUM_LIMIT,
    ComponentTooLarge,
    DecompositionProperties,
    TreeDecomposition,
    compute_properties,
    csr_local,
)
from .graphs import ProbedGraph
from .measure import hamming_error, signed_component_failures
from .treedp import TreeDecodeProblem, path_decode, tree_decode


@dataclass
class ComponentEstimate:
    index: int
    vertices: tuple[int, ...]  # W*
    labels: np.ndarray  # over W*
    restricted: np.ndarray  # over W, in sorted vertex order
    objective: int


@dataclass
class StitchBudget:
    delta: float
    A: float
    K_n: int
    L_n: int

    def __post_init__(self):
        if not 0 <= self.K_n <= self.L_n:
            raise ValueError("budget must satisfy 0 <= K_n <= L_n")


@dataclass
class DecodeResult:
    labels: np.ndarray
    estimates: list[ComponentEstimate]
    diagnostics: dict = field(default_factory=dict)


def component_mle(
    wstar, gprime: ProbedGraph, x: np.ndarray, index: int = 0, component=None, z: np.ndarray | None = None
) -> ComponentEstimate:
    """Labeling of W* with fewest disagreements against X on E'(W*).

    ``x`` is indexed like ``gprime.graph.edges``. Without ``z``, ties go to
    the smallest bit code. With ``z``, ties among edge-optimal labelings go to
    the one, of either global sign, closest to ``z`` on W*. Either way the
    returned sign labels the lowest vertex of W* with +1.
    """
    verts = tuple(sorted(int(v) for v in wstar))
    m = len(verts)
    if m > ENUM_LIMIT:
        raise ComponentTooLarge(f"|W*|={m} exceeds enumeration limit {ENUM_LIMIT}")
    indptr, nbr, neg = csr_local(gprime.graph, verts, np.asarray(x))
    no_w = np.zeros(m, dtype=np.int8)
    if z is None:
        lin = np.zeros(m, dtype=np.int64)
        _, code = kernels.enumerate_min(m, indptr, nbr, neg, lin, no_w, False, True)
    else:
        # bit 1 means label -1; it costs 1 against z = +1 and saves 1 against z = -1
        lin = np.where(np.asarray(z)[list(verts)] == 1, 1, -1).astype(np.int64)
        _, code = kernels.enumerate_min(m, indptr, nbr, neg, lin, no_w, False, False, m + 1)
    bits = (int(code) >> np.arange(m)) & 1
    labels = np.where(bits == 1, -1, 1).astype(np.int8)
    if labels[0] < 0:
        labels = -labels
    src = np.repeat(np.arange(m), np.diff(indptr))
    objective = int(np.count_nonzero((labels[src] != labels[nbr]) != neg.astype(bool))) // 2
    comp = verts if component is None else tuple(sorted(component))
    pos = {v: i for i, v in enumerate(verts)}
    restricted = labels[[pos[v] for v in comp]]
    return ComponentEstimate(index, verts, labels, restricted, objective)


def estimate_components(
    gprime: ProbedGraph, td: TreeDecomposition, x: np.ndarray, workers: int = 1, z: np.ndarray | None = None
):
    def one(i):
        return component_mle(td.extended[i], gprime, x, index=i, component=td.components[i], z=z)

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            return list(ex.map(one, range(td.size)))
    return [one(i) for i in range(td.size)]


def stitch_costs(estimates: list[ComponentEstimate], td: TreeDecomposition, z: np.ndarray):
    """Per-component (cost[+1], cost[-1]) and per-tree-edge agreement signs."""
    z = np.asarray(z)
    cost = np.zeros((td.size, 2), dtype=np.int64)
    for i, est in enumerate(estimates):
        zw = z[list(td.components[i])]
        wrong_plus = int(np.count_nonzero(est.restricted != zw))
        cost[i] = (wrong_plus, len(zw) - wrong_plus)
    agree = np.zeros(len(td.tree_edges), dtype=np.int8)
    for j, (a, b) in enumerate(td.tree_edges):
        shared = set(td.components[a]) & set(td.components[b])
        if not shared:
            raise ValueError(f"tree edge ({a}, {b}) joins disjoint components")
        v = min(shared)
        agree[j] = _label_at(estimates[a], v) * _label_at(estimates[b], v)
    return cost, agree


def _label_at(est: ComponentEstimate, v: int) -> int:
    return int(est.labels[est.vertices.index(v)])


def compute_stitch_budget(props: DecompositionProperties, p: float, delta: float, deg_T: int | None = None) -> StitchBudget:
    """K_n = 2^(wid*+2) sum_W p^ceil(mincut*/2) + A ln(2/delta), A = 6 deg*_E max|E'(W*)|; L_n = deg(T) K_n."""
    A = 6 * props.deg_E_star * props.max_edges_star
    power = sum(p ** math.ceil(mc / 2) for mc in props.mincut_star if mc is not None)
    k_real = 2 ** (props.wid_star + 2) * power + A * math.log(2 / delta)
    K = int(math.ceil(k_real))
    dT = props.deg_T if deg_T is None else deg_T
    return StitchBudget(delta, A, K, max(K, dT * K))


def expected_stitch_violations(
    gprime: ProbedGraph, td: TreeDecomposition, p: float, samples: int = 8000, seed: int = 0
) -> float:
    """Monte-Carlo estimate of how many tree edges the truth-aligned signs violate.

    For a tree edge (W1, W2) with shared vertex v, align each Stage-1
    estimate with the truth on its own component; the edge is violated when
    exactly one aligned estimate is wrong at v. Edge flips are Bernoulli(p), and identical local shapes share one
    simulation. The truth is drawn uniformly per sample because the solver's
    tie-breaking is not sign-symmetric. Deterministic for a fixed ``seed``.
    """
    g = gprime.graph
    cache: dict = {}
    total = 0.0
    for a, b in td.tree_edges:
        v = min(set(td.components[a]) & set(td.components[b]))
        union = sorted(set(td.extended[a]) | set(td.extended[b]))
        loc = {u: i for i, u in enumerate(union)}
        edges = tuple(sorted((loc[u], loc[w]) for u in union for w in g.adjacency[u] if w in loc and u < w))
        key = (
            edges,
            tuple(loc[u] for u in td.components[a]),
            tuple(loc[u] for u in td.extended[a]),
            tuple(loc[u] for u in td.components[b]),
            tuple(loc[u] for u in td.extended[b]),
            loc[v],
        )
        if key not in cache:
            cache[key] = _simulate_violation(key, p, samples, seed)
        total += cache[key]
    return total


def _simulate_violation(key, p: float, samples: int, seed: int) -> float:
    edges, wa, xa, wb, xb, v = key
    if p <= 0 or not edges:
        return 0.0
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, len(edges), len(xa), len(xb)])))
    nu = 1 + max(max(e) for e in edges)
    truth = rng.integers(0, 2, size=(samples, nu))
    flips = (rng.random((samples, len(edges))) < p).astype(np.int64)
    eu = np.array([e[0] for e in edges])
    ew = np.array([e[1] for e in edges])
    obs = flips ^ truth[:, eu] ^ truth[:, ew]  # 1 where the observation says "differ"
    wrong_a = _aligned_wrong_at(edges, wa, xa, v, obs, truth)
    wrong_b = _aligned_wrong_at(edges, wb, xb, v, obs, truth)
    return float(np.mean(wrong_a != wrong_b))


def _aligned_wrong_at(edges, comp, ext, v, obs, truth) -> np.ndarray:
    """Per sample: is the W*-estimate, sign-aligned with the truth on W, wrong at v?"""
    pos = {u: i for i, u in enumerate(ext)}
    sub = [j for j, (u, w) in enumerate(edges) if u in pos and w in pos]
    m = len(ext)
    if m > ENUM_LIMIT:
        raise ComponentTooLarge(f"|W*|={m} exceeds enumeration limit {ENUM_LIMIT}")
    codes = np.arange(0, 1 << m, 2, dtype=np.int64)  # lowest vertex fixed to +1
    bits = (codes[:, None] >> np.arange(m)[None, :]) & 1
    eu = np.array([pos[edges[j][0]] for j in sub], dtype=np.int64)
    ew = np.array([pos[edges[j][1]] for j in sub], dtype=np.int64)
    d = (bits[:, eu] ^ bits[:, ew]).astype(np.int64)
    f = obs[:, sub]
    obj = d.sum(axis=1)[None, :] + f.sum(axis=1)[:, None] - 2 * (f @ d.T)
    best = bits[np.argmin(obj, axis=1)]  # first minimum = smallest code, as in the solver
    errs = best ^ truth[:, list(ext)]
    cw = [pos[u] for u in comp]
    flip_sign = 2 * errs[:, cw].sum(axis=1) > len(cw)  # align by majority, ties keep the estimate
    return errs[:, pos[v]].astype(bool) ^ flip_sign


def plugin_stitch_budget(
    gprime: ProbedGraph, td: TreeDecomposition, p: float, delta: float, samples: int = 8000
) -> int:
    """Upper confidence bound on the violated stitch edges of the truth-aligned signs.

    With mu the expected count, the Chernoff bound
    P(V >= mu + t) <= exp(-t^2 / (2 (mu + t/3))) gives the level-delta margin
    t = L/3 + sqrt(L^2/9 + 2 mu L), L = ln(1/delta).
    """
    mu = expected_stitch_violations(gprime, td, p, samples)
    lg = math.log(1 / delta)
    t = lg / 3 + math.sqrt(lg * lg / 9 + 2 * mu * lg)
    return int(math.ceil(mu + t))


def decode(
    gprime: ProbedGraph,
    td: TreeDecomposition,
    x: np.ndarray,
    z: np.ndarray,
    p: float,
    delta: float,
    *,
    budget: str | int = "asymptotic",
    props: DecompositionProperties | None = None,
    y: np.ndarray | None = None,
    workers: int = 1,
    tie_break: str = "code",
) -> DecodeResult:
    """Decode vertex labels; ``x`` is indexed like ``gprime.graph.edges``.

    ``budget`` selects the stitch cap: ``"asymptotic"`` uses L_n, ``"plugin"`` uses
    :func:`plugin_stitch_budget`, ``"mean"`` the expected violation count
    alone, and an integer is used as given. ``tie_break="z"`` resolves ties
    among edge-optimal component labelings by agreement with ``z``; the
    Monte-Carlo budgets always simulate the default code-order ties. When ``y`` is
    supplied the diagnostics include the Hamming error and failure counts.
    """
    props = props or compute_properties(td, gprime)
    sb = compute_stitch_budget(props, p, delta)
    if budget == "asymptotic":
        cap = sb.L_n
    elif budget == "plugin":
        cap = plugin_stitch_budget(gprime, td, p, delta)
    elif budget == "mean":
        cap = int(math.ceil(expected_stitch_violations(gprime, td, p)))
    elif isinstance(budget, (int, np.integer)) and budget >= 0:
        cap = int(budget)
    else:
        raise ValueError(f"unknown budget policy {budget!r}")

    if tie_break not in ("z", "code"):
        raise ValueError(f"unknown tie_break {tie_break!r}")
    estimates = estimate_components(gprime, td, x, workers, z=z if tie_break == "z" else None)
    cost, agree = stitch_costs(estimates, td, z)
    tree = td.tree_graph()
    prob = TreeDecodeProblem(tree, cost, agree, cap)
    res = path_decode(prob) if tree.is_path() else tree_decode(prob)

    n = gprime.graph.n
    owner = td.component_of_vertex(n)
    labels = np.zeros(n, dtype=np.int8)
    for v in range(n):
        est = estimates[owner[v]]
        labels[v] = res.labels[owner[v]] * _label_at(est, v)

    diag = {
        "K_n": sb.K_n,
        "L_n": sb.L_n,
        "budget": cap,
        "budget_policy": budget if isinstance(budget, str) else "fixed",
        "vacuous": bool(cap >= tree.m),
        "tree_edges": tree.m,
        "stitch_violations": res.violations,
        "component_failures": None,
        "hamming_error": None,
    }
    if y is not None:
        diag["component_failures"] = signed_component_failures(
            [e.restricted for e in estimates], td.components, y
        )
        diag["hamming_error"] = hamming_error(labels, y)
    return DecodeResult(labels, estimates, diag)
