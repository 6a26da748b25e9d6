"""Compare the compiled and pure-Python kernel backends.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
Prints one line per workload with the best time of each backend and the speedup.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from sidelabel import graphs as G
from sidelabel import kernels
from sidelabel.decoder import estimate_components
from sidelabel.decomp import csr_local, decomp_constant_height_grid
from sidelabel.measure import sample_edge_observations, sample_ground_truth, sample_vertex_observations
from sidelabel.treedp import TreeDecodeProblem, path_decode, tree_budget, tree_decode


def workloads():
    rng = np.random.default_rng(0)
    a = np.sort(rng.integers(0, 1000, 400))
    b = np.sort(rng.integers(0, 1000, 400))
    yield "minplus_merge 400x400", lambda: kernels.minplus_merge(a, b, 600)

    n = 5000
    cost = rng.integers(0, 2, size=(n, 2))
    agree = rng.choice([-1, 1], size=n - 1).astype(np.int8)
    yield "path_dp n=5000 K=120", lambda: kernels.path_dp(cost, agree, 120)

    m = 16
    g = G.build_ring_lattice(m, 2)
    signs = rng.choice([-1, 1], size=g.m)
    indptr, nbr, neg = csr_local(g, range(m), signs)
    lin = np.zeros(m, dtype=np.int64)
    inw = np.ones(m, dtype=np.int8)
    yield "enumerate_min m=16", lambda: kernels.enumerate_min(m, indptr, nbr, neg, lin, inw, False, True)

    tn = 3000
    parent = [int(rng.integers(0, v)) for v in range(1, tn)]
    tree = G.Graph.from_edges(tn, [(p, v) for v, p in zip(range(1, tn), parent)])
    tcost = rng.integers(0, 2, size=(tn, 2))
    tsigns = rng.choice([-1, 1], size=tree.m)
    prob = TreeDecodeProblem(tree, tcost, tsigns, tree_budget(tn, 0.01, 0.01))
    yield "tree_decode random tree n=3000", lambda: tree_decode(prob)

    path = G.Graph.from_edges(20000, [(i, i + 1) for i in range(19999)])
    y = sample_ground_truth(path.n, 1)
    x = sample_edge_observations(path, y, 0.01, 1)
    z = sample_vertex_observations(y, 0.25, 1)
    pcost = np.stack([(z != 1), (z != -1)], axis=1).astype(np.int64)
    pprob = TreeDecodeProblem(path, pcost, x, tree_budget(path.n, 0.01, 0.01))
    yield "path_decode n=20000", lambda: path_decode(pprob)

    gp, td = decomp_constant_height_grid(3, 300)
    gy = sample_ground_truth(gp.n, 2)
    gx = gp.restrict(sample_edge_observations(gp.base, gy, 0.04, 2))
    yield "component MLE grid 3x300", lambda: estimate_components(gp, td, gx)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = kernels.available_backends()
    print(f"backends: {', '.join(backends)}")
    print(f"{'workload':34s}" + "".join(f"{b:>12s}" for b in backends) + ("     speedup" if len(backends) > 1 else ""))
    for name, fn in workloads():
        times = []
        for b in backends:
            kernels.use_backend(b)
            times.append(min(timeit.repeat(fn, number=1, repeat=args.repeat)))
        row = f"{name:34s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times)
        if len(times) > 1:
            row += f"{times[1] / times[0]:11.1f}x"
        print(row)
    kernels.use_backend(backends[0])


if __name__ == "__main__":
    main()
