"""Command line: generate, decode, experiment, bounds."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import decomp as D
from .bounds import genie_map_vertex_error, lb_degree_profile, lb_system
from .decoder import decode
from .graphs import GraphError, ProbedGraph, read_edgelist, write_edgelist
from .harness import (
    BUDGETS,
    DECODERS,
    FAMILIES,
    ConfigError,
    ExperimentConfig,
    build_family,
    run_experiment,
    write_outputs,
)
from .measure import sample_edge_observations, sample_ground_truth, sample_vertex_observations


def _floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _family_args(sp: argparse.ArgumentParser, required: bool = True) -> None:
    sp.add_argument("--family", choices=FAMILIES, required=required)
    sp.add_argument("--n", type=int, required=required, help="number of vertices")
    sp.add_argument("--k", type=int, default=2, help="ring half-degree")
    sp.add_argument("--c", type=int, default=3, help="grid height or tube side")
    sp.add_argument("--alpha", type=float, default=0.5, help="Newman-Watts shortcut rate")
    sp.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sidelabel", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="write a graph, its decomposition and optionally observations")
    _family_args(gen)
    gen.add_argument("--p", type=float, help="also sample observations with this edge flip rate")
    gen.add_argument("--q", type=float, default=0.25)
    gen.add_argument("--out", required=True, help="output prefix")

    dec = sub.add_parser("decode", help="decode one instance from files")
    dec.add_argument("--graph", required=True)
    dec.add_argument("--decomp", required=True)
    dec.add_argument("--obs", required=True, help="JSON with x (base edge order), z and optionally y")
    dec.add_argument("--p", type=float, required=True)
    dec.add_argument("--delta", type=float)
    dec.add_argument("--budget", default="asymptotic", help=f"{', '.join(BUDGETS)} or an integer")
    dec.add_argument("--out", help="labels and diagnostics JSON (stdout if omitted)")

    exp = sub.add_parser("experiment", help="run a seeded sweep")
    exp.add_argument("--config", help="JSON config; flags below override it")
    _family_args(exp, required=False)
    exp.add_argument("--p", type=_floats)
    exp.add_argument("--q", type=float)
    exp.add_argument("--delta", type=float)
    exp.add_argument("--trials", type=int)
    exp.add_argument("--decoder", choices=DECODERS)
    exp.add_argument("--budget", choices=BUDGETS)
    exp.add_argument("--workers", type=int)
    exp.add_argument("--time", action="store_true", help="record wall time (makes output nondeterministic)")
    exp.add_argument("--out", help="CSV path; summary goes to <stem>.summary.json")

    bnd = sub.add_parser("bounds", help="print lower-bound formulas for a family")
    _family_args(bnd)
    bnd.add_argument("--p", type=float, required=True)
    bnd.add_argument("--q", type=float, help="also report genie error per degree class")
    return ap


def cmd_generate(a) -> dict:
    inst = build_family(a.family, a.n, a.k, a.c, a.alpha, a.seed)
    prefix = Path(a.out)
    files = {"graph": str(prefix.with_suffix(".edges"))}
    write_edgelist(inst.graph, files["graph"])
    if inst.td is not None:
        files["decomp"] = str(prefix.with_suffix(".decomp"))
        D.write_decomposition(inst.td, files["decomp"])
    if a.p is not None:
        y = sample_ground_truth(inst.graph.n, a.seed)
        x = sample_edge_observations(inst.graph, y, a.p, a.seed)
        z = sample_vertex_observations(y, a.q, a.seed)
        files["obs"] = str(prefix.with_suffix(".obs.json"))
        obs = {"p": a.p, "q": a.q, "x": x.tolist(), "z": z.tolist(), "y": y.tolist()}
        Path(files["obs"]).write_text(json.dumps(obs) + "\n", encoding="utf-8")
    return files


def cmd_decode(a) -> dict:
    g = read_edgelist(a.graph)
    td = D.read_decomposition(a.decomp)
    if td.probed and max(td.probed) >= g.m:
        raise D.DecompositionError("decomposition references edges the graph does not have")
    gp = ProbedGraph.create(g, td.probed)
    problems = D.validate(td, gp)
    if problems:
        raise D.DecompositionError(f"invalid decomposition: {problems[0]}")
    obs = json.loads(Path(a.obs).read_text(encoding="utf-8"))
    x = np.asarray(obs["x"], dtype=np.int8)
    z = np.asarray(obs["z"], dtype=np.int8)
    if x.shape != (g.m,) or z.shape != (g.n,):
        raise ValueError("observation lengths do not match the graph")
    y = np.asarray(obs["y"], dtype=np.int8) if "y" in obs else None
    budget = int(a.budget) if a.budget.isdigit() else a.budget
    delta = a.delta if a.delta is not None else 1.0 / g.n
    res = decode(gp, td, gp.restrict(x), z, a.p, delta, budget=budget, y=y)
    out = {"labels": res.labels.tolist(), "diagnostics": res.diagnostics}
    if a.out:
        Path(a.out).write_text(json.dumps(out) + "\n", encoding="utf-8")
        return res.diagnostics
    return out


def cmd_experiment(a) -> dict:
    data = json.loads(Path(a.config).read_text(encoding="utf-8")) if a.config else {}
    for key in ("family", "n", "k", "c", "alpha", "seed", "p", "q", "delta", "trials", "decoder", "budget", "workers", "out"):
        val = getattr(a, key)
        if val is not None and (key not in ("k", "c", "alpha", "seed") or key not in data or val != _DEFAULTS[key]):
            data[key] = val
    if a.time:
        data["record_time"] = True
    missing = [k for k in ("family", "n", "p", "q") if k not in data]
    if missing:
        raise ConfigError(f"missing settings: {', '.join(missing)}")
    cfg = ExperimentConfig(**data)
    result = run_experiment(cfg)
    if cfg.out:
        csv_path, summ = write_outputs(result, cfg.out)
        return {"csv": str(csv_path), "summary": str(summ), "slope": result.summary["slope"]}
    return result.summary


_DEFAULTS = {"k": 2, "c": 3, "alpha": 0.5, "seed": 0}


def cmd_bounds(a) -> dict:
    inst = build_family(a.family, a.n, a.k, a.c, a.alpha, a.seed)
    out = {"degree_profile": lb_degree_profile(inst.graph, a.p).as_dict()}
    if inst.blocks is not None:
        out["disjoint_system"] = lb_system(inst.graph, inst.blocks, a.p).as_dict()
    if a.q is not None:
        degs, counts = np.unique(inst.graph.degrees(), return_counts=True)
        out["genie_error"] = {
            str(int(d)): {"vertices": int(c), "rate": genie_map_vertex_error(int(d), a.p, a.q)}
            for d, c in zip(degs, counts)
        }
    return out


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {"generate": cmd_generate, "decode": cmd_decode, "experiment": cmd_experiment, "bounds": cmd_bounds}
    try:
        out = handlers[args.command](args)
    except (ValueError, GraphError, OSError, KeyError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        print(f"sidelabel {args.command}: error: {msg}", file=sys.stderr)
        return 2
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
