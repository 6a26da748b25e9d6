"""Seeded Monte-Carlo sweeps: build a family, run a decoder over a p grid, aggregate."""

from __future__ import annotations

import csv
import io
import json
import math
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from . import graphs as G
from . import decomp as D
from .bounds import genie_map_decode, majority_decode, spanning_tree_decode
from .decoder import compute_stitch_budget, decode, expected_stitch_violations, plugin_stitch_budget
from .measure import (
    hamming_error,
    sample_edge_observations,
    sample_ground_truth,
    sample_vertex_observations,
)
from .treedp import tree_inference

CSV_HEADER = [
    "family", "n", "p", "q", "delta", "decoder", "trial", "seed",
    "hamming", "frac", "comp_failures", "stitch_violations", "ms",
]
DECODERS = ("tree", "decomp", "spanning-tree", "majority", "genie")
BUDGETS = ("plugin", "mean", "asymptotic")


class ConfigError(ValueError):
    pass


@dataclass
class Instance:
    family: str
    graph: G.Graph
    gprime: G.ProbedGraph | None = None
    td: D.TreeDecomposition | None = None
    blocks: list | None = None  # disjoint subsets for the system lower bound


def _isqrt_exact(n: int, what: str) -> int:
    s = math.isqrt(n)
    if s * s != n:
        raise ConfigError(f"{what} needs n to be a perfect square, got {n}")
    return s


def build_family(family: str, n: int, k: int = 2, c: int = 3, alpha: float = 0.5, seed: int = 0) -> Instance:
    """Graph (and decomposition when one is defined) for a named family of about n vertices."""
    if family == "path":
        return Instance(family, G.build_path(n))
    if family == "grid3":
        if n % c:
            raise ConfigError(f"grid3 needs n divisible by c={c}")
        gp, td = D.decomp_constant_height_grid(c, n // c)
        return Instance(family, gp.base, gp, td)
    if family == "grid":
        gp, td = D.decomp_square_grid_zigzag(_isqrt_exact(n, "grid"))
        return Instance(family, gp.base, gp, td)
    if family == "ring":
        gp, td = D.decomp_ring_lattice(n, k)
        return Instance(family, gp.base, gp, td)
    if family == "newman_watts":
        g = G.build_newman_watts(n, k, alpha, seed)
        gp, td = D.decomp_newman_watts(g, n, k)
        return Instance(family, g, gp, td)
    if family == "hypertube":
        if n % (c * c):
            raise ConfigError(f"hypertube needs n divisible by c^2={c * c}")
        gp, td = D.decomp_hypertube(c, n // (c * c))
        return Instance(family, gp.base, gp, td)
    if family == "hypergrid":
        side = round(n ** (1 / 3))
        if side**3 != n:
            raise ConfigError(f"hypergrid needs n to be a perfect cube, got {n}")
        gp, td = D.decomp_hypergrid([side] * 3)
        return Instance(family, gp.base, gp, td)
    if family == "triangular":
        gp, td = D.decomp_triangular(_isqrt_exact(n, "triangular"))
        return Instance(family, gp.base, gp, td)
    if family == "hexagonal":
        gp, td = D.decomp_hexagonal(_isqrt_exact(n, "hexagonal"))
        return Instance(family, gp.base, gp, td)
    if family == "chain3":
        if n % 4:
            raise ConfigError("chain3 needs n divisible by 4")
        blocks = n // 4
        return Instance(family, G.build_3regular_chain(blocks), blocks=G.chain_blocks(blocks))
    raise ConfigError(f"unknown family {family!r}")


FAMILIES = ("path", "grid3", "grid", "ring", "newman_watts", "hypertube", "hypergrid", "triangular", "hexagonal", "chain3")


@dataclass
class ExperimentConfig:
    family: str
    n: int
    p: list
    q: float
    decoder: str = "decomp"
    trials: int = 20
    seed: int = 0
    delta: float | None = None  # None means 1/n
    k: int = 2
    c: int = 3
    alpha: float = 0.5
    budget: str = "plugin"
    tie_break: str = "code"
    workers: int = 1
    record_time: bool = False
    out: str | None = None

    def __post_init__(self):
        self.p = [float(v) for v in (self.p if isinstance(self.p, (list, tuple)) else [self.p])]
        if self.family not in FAMILIES:
            raise ConfigError(f"unknown family {self.family!r}")
        if self.decoder not in DECODERS:
            raise ConfigError(f"unknown decoder {self.decoder!r}")
        if self.budget not in BUDGETS:
            raise ConfigError(f"unknown budget policy {self.budget!r}")
        if self.tie_break not in ("code", "z"):
            raise ConfigError(f"unknown tie_break {self.tie_break!r}")
        if not self.p:
            raise ConfigError("need at least one p value")
        for p in self.p:
            if not 0 <= p < self.q < 0.5:
                raise ConfigError(f"need 0 <= p < q < 1/2, got p={p}, q={self.q}")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.delta is not None and not 0 < self.delta < 1:
            raise ConfigError("delta must lie in (0, 1)")

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        data = json.loads(text)
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True)


@dataclass
class TrialResult:
    p_index: int
    trial: int
    seed: int
    hamming: int | None
    frac: float | None
    comp_failures: int | None = None
    stitch_violations: int | None = None
    ms: float | None = None
    error: str | None = None


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    n: int
    delta: float
    rows: list[TrialResult]
    budgets: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)


def trial_seed(master: int, p_index: int, trial: int) -> int:
    """Reported identifier of a trial's random streams."""
    return int(np.random.SeedSequence(master, spawn_key=(p_index, trial)).generate_state(1)[0])


def run_experiment(cfg: ExperimentConfig) -> ExperimentResult:
    inst = build_family(cfg.family, cfg.n, cfg.k, cfg.c, cfg.alpha, cfg.seed)
    g = inst.graph
    n = g.n
    delta = cfg.delta if cfg.delta is not None else 1.0 / n
    if cfg.decoder == "decomp" and inst.td is None:
        raise ConfigError(f"family {cfg.family!r} has no decomposition")
    if cfg.decoder == "tree" and not g.is_tree():
        raise ConfigError("tree decoder needs a tree-shaped family")

    props = D.compute_properties(inst.td, inst.gprime) if cfg.decoder == "decomp" else None
    budgets: dict = {}
    if props is not None:
        for p in cfg.p:
            sb = compute_stitch_budget(props, p, delta)
            entry = {"K_n": sb.K_n, "L_n": sb.L_n, "cap": None, "vacuous": None, "error": None}
            try:
                if cfg.budget == "asymptotic":
                    cap = sb.L_n
                elif cfg.budget == "mean":
                    cap = int(math.ceil(expected_stitch_violations(inst.gprime, inst.td, p)))
                else:
                    cap = plugin_stitch_budget(inst.gprime, inst.td, p, delta)
            except Exception as exc:  # surfaces as a per-trial error below
                entry["error"] = f"{type(exc).__name__}: {exc}"
            else:
                entry.update(cap=cap, vacuous=cap >= len(inst.td.tree_edges))
            budgets[p] = entry

    def one(task):
        pi, t = task
        p = cfg.p[pi]
        seed = trial_seed(cfg.seed, pi, t)
        y = sample_ground_truth(n, cfg.seed, pi, t)
        x = sample_edge_observations(g, y, p, cfg.seed, pi, t)
        z = sample_vertex_observations(y, cfg.q, cfg.seed, pi, t)
        start = time.perf_counter()
        try:
            fails = viol = None
            if cfg.decoder == "tree":
                yh = tree_inference(g, x, z, p, delta)
            elif cfg.decoder == "spanning-tree":
                yh = spanning_tree_decode(g, x, z, p, delta)
            elif cfg.decoder == "majority":
                yh = majority_decode(g, x, z)
            elif cfg.decoder == "genie":
                yh = genie_map_decode(g, x, z, y)
            elif budgets[p]["error"]:
                raise RuntimeError(budgets[p]["error"])
            else:
                res = decode(
                    inst.gprime, inst.td, inst.gprime.restrict(x), z, p, delta,
                    budget=budgets[p]["cap"], props=props, y=y, tie_break=cfg.tie_break,
                )
                yh = res.labels
                fails = res.diagnostics["component_failures"]
                viol = res.diagnostics["stitch_violations"]
        except Exception as exc:  # recorded per trial, not fatal
            return TrialResult(pi, t, seed, None, None, error=f"{type(exc).__name__}: {exc}")
        ms = (time.perf_counter() - start) * 1000 if cfg.record_time else None
        h = hamming_error(yh, y)
        return TrialResult(pi, t, seed, h, h / n, fails, viol, ms)

    tasks = [(pi, t) for pi in range(len(cfg.p)) for t in range(cfg.trials)]
    if cfg.workers > 1:
        with ThreadPoolExecutor(cfg.workers) as ex:
            rows = list(ex.map(one, tasks))
    else:
        rows = [one(t) for t in tasks]
    result = ExperimentResult(cfg, n, delta, rows, budgets)
    result.summary = summarize(result)
    return result


def summarize(result: ExperimentResult) -> dict:
    cfg = result.config
    per_p = []
    for pi, p in enumerate(cfg.p):
        vals = [r.hamming for r in result.rows if r.p_index == pi and r.hamming is not None]
        errs = [r.error for r in result.rows if r.p_index == pi and r.error]
        arr = np.asarray(vals, dtype=float)
        entry = {
            "p": p,
            "trials": len(vals),
            "mean": float(arr.mean()) if len(vals) else None,
            "std": float(arr.std(ddof=1)) if len(vals) > 1 else 0.0 if len(vals) else None,
            "mean_frac": float(arr.mean() / result.n) if len(vals) else None,
            "errors": errs,
        }
        if p in result.budgets:
            entry["budget"] = result.budgets[p]
        per_p.append(entry)
    slope = intercept = None
    usable = [(e["p"], e["mean"]) for e in per_p if e["mean"] is not None]
    if len(usable) >= 3:
        try:
            slope, intercept = fit_scaling([u[0] for u in usable], [u[1] for u in usable])
        except ValueError:
            pass
    return {
        "family": cfg.family,
        "decoder": cfg.decoder,
        "n": result.n,
        "q": cfg.q,
        "delta": result.delta,
        "seed": cfg.seed,
        "per_p": per_p,
        "slope": slope,
        "intercept": intercept,
    }


def fit_scaling(ps: Sequence[float], means: Sequence[float]) -> tuple[float, float]:
    """Least-squares line through (log p, log mean); zero means are dropped with a warning."""
    pts = []
    for p, m in zip(ps, means, strict=True):
        if m is None or m <= 0 or p <= 0:
            warnings.warn(f"dropping p={p}: mean error {m} has no logarithm", stacklevel=2)
            continue
        pts.append((math.log(p), math.log(m)))
    if len(pts) < 2 or len({a for a, _ in pts}) < 2:
        raise ValueError("need at least two distinct positive points to fit a slope")
    slope, intercept = np.polyfit(*zip(*pts), 1)
    return float(slope), float(intercept)


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return format(v, ".10g")
    return str(v)


def rows_to_csv(result: ExperimentResult) -> str:
    cfg = result.config
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in result.rows:
        w.writerow([_fmt(v) for v in (
            cfg.family, result.n, cfg.p[r.p_index], cfg.q, result.delta, cfg.decoder, r.trial, r.seed,
            r.hamming, r.frac, r.comp_failures, r.stitch_violations, r.ms,
        )])
    return buf.getvalue()


def write_outputs(result: ExperimentResult, out: str | Path) -> tuple[Path, Path]:
    """CSV rows at ``out`` and the JSON summary next to it (``<stem>.summary.json``)."""
    out = Path(out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(rows_to_csv(result), encoding="utf-8", newline="")
    summ = out.with_name(out.stem + ".summary.json")
    summ.write_text(json.dumps(result.summary, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return out, summ
