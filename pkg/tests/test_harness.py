import json
import warnings

import numpy as np
import pytest

from sidelabel.harness import (
    CSV_HEADER,
    ConfigError,
    ExperimentConfig,
    build_family,
    fit_scaling,
    rows_to_csv,
    run_experiment,
    write_outputs,
)


def test_fit_scaling_exact():
    ps = [0.01, 0.02, 0.04, 0.08]
    slope, _ = fit_scaling(ps, [3 * p**2 for p in ps])
    assert slope == pytest.approx(2.0, abs=1e-9)
    slope, _ = fit_scaling(ps, [5 * p for p in ps])
    assert slope == pytest.approx(1.0, abs=1e-9)


def test_fit_scaling_drops_zero_with_warning():
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        slope, _ = fit_scaling([0.01, 0.02, 0.04], [0.0, 4.0, 16.0])
    assert slope == pytest.approx(2.0)
    assert any("dropping" in str(x.message) for x in w)
    with pytest.raises(ValueError):
        fit_scaling([0.01, 0.02], [0.0, 0.0])


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(family="grid3", n=90, p=[0.3], q=0.25),
        dict(family="grid3", n=90, p=[0.1], q=0.25, trials=0),
        dict(family="nope", n=90, p=[0.1], q=0.25),
        dict(family="grid3", n=90, p=[0.1], q=0.25, decoder="magic"),
        dict(family="grid3", n=90, p=[0.1], q=0.25, delta=2.0),
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ConfigError):
        ExperimentConfig(**kwargs)


def test_config_json_roundtrip():
    cfg = ExperimentConfig(family="ring", n=101, p=[0.01, 0.02], q=0.2, k=2)
    assert ExperimentConfig.from_json(cfg.to_json()) == cfg
    with pytest.raises(ConfigError):
        ExperimentConfig.from_json('{"family": "ring", "n": 10, "p": [0.1], "q": 0.2, "bogus": 1}')


@pytest.mark.parametrize("family,n", [
    ("path", 50), ("grid3", 60), ("grid", 49), ("ring", 41), ("newman_watts", 41), ("hypertube", 36),
    ("hypergrid", 64), ("triangular", 36), ("hexagonal", 36), ("chain3", 40),
])
def test_build_family(family, n):
    inst = build_family(family, n)
    assert inst.graph.n == n


def test_noiseless_trials_are_exact():
    cfg = ExperimentConfig(family="ring", n=61, p=[0.0], q=0.05, trials=3, decoder="decomp", seed=4)
    res = run_experiment(cfg)
    assert [r.hamming for r in res.rows] == [0, 0, 0]


def test_rows_ordered_and_deterministic_across_workers(tmp_path):
    base = dict(family="grid3", n=120, p=[0.02, 0.05, 0.1], q=0.25, trials=4, seed=11)
    a = run_experiment(ExperimentConfig(**base, workers=1))
    b = run_experiment(ExperimentConfig(**base, workers=6))
    assert [(r.p_index, r.trial) for r in a.rows] == [(i, t) for i in range(3) for t in range(4)]
    assert rows_to_csv(a) == rows_to_csv(b)
    csv_path, summ = write_outputs(a, tmp_path / "r.csv")
    lines = csv_path.read_text().splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert len(lines) == 13
    summary = json.loads(summ.read_text())
    for entry in summary["per_p"]:
        vals = [r.hamming for r in a.rows if a.config.p[r.p_index] == entry["p"]]
        assert entry["mean"] == pytest.approx(np.mean(vals))
        assert entry["std"] == pytest.approx(np.std(vals, ddof=1))


def test_decoder_errors_are_recorded_not_raised():
    cfg = ExperimentConfig(family="hypergrid", n=125, p=[0.01], q=0.25, trials=2, decoder="decomp")
    res = run_experiment(cfg)
    assert all(r.hamming is None and "ComponentTooLarge" in r.error for r in res.rows)
    assert res.summary["per_p"][0]["errors"]


@pytest.mark.parametrize("decoder", ["tree", "spanning-tree", "majority", "genie"])
def test_other_decoders_run(decoder):
    family = "path" if decoder == "tree" else "grid"
    cfg = ExperimentConfig(family=family, n=49, p=[0.02], q=0.25, trials=2, decoder=decoder)
    res = run_experiment(cfg)
    assert all(r.hamming is not None for r in res.rows)
