import csv
import io

import numpy as np
import pytest

from kgng.datasets import generate, normalize
from kgng.experiments import (
    ExperimentConfig,
    RunError,
    default_gamma_grid,
    load_dataset,
    run_experiment,
    sweep_gamma,
    table,
    table_to_csv,
    worker_count,
)
from kgng.kernels import KernelKind, KernelSpec
from kgng.metrics import MetricsReport
from kgng.trainer import HyperParams

HP = HyperParams(iterations=1500)


@pytest.fixture(scope="module")
def moons():
    return normalize(generate("moons", 300, seed=1))[0]


def test_single_run_mean_is_the_run(moons):
    res = run_experiment(ExperimentConfig(moons, KernelSpec.plain(), HP, runs=1))
    assert res.mean == res.reports[0]
    assert res.seeds == [1]


def test_parallel_equals_sequential(moons):
    spec = KernelSpec("cauchy", 1.8)
    seq = run_experiment(ExperimentConfig(moons, spec, HP, runs=3, base_seed=4, workers=1))
    par = run_experiment(ExperimentConfig(moons, spec, HP, runs=3, base_seed=4, workers=2))
    assert seq.seeds == par.seeds == [4, 5, 6]
    assert seq.reports == par.reports
    assert [n.to_dict() for n in seq.networks] == [n.to_dict() for n in par.networks]


def test_mean_trace(moons):
    res = run_experiment(ExperimentConfig(moons, KernelSpec("imq", 1.8), HP, runs=2,
                                          trace_schedule=[500, 1000, 1500]))
    its, vals = res.mean_trace("kmse")
    np.testing.assert_array_equal(its, [500, 1000, 1500])
    assert vals.shape == (3,)


def test_run_error_names_seed(moons):
    bad = np.array([[0.0, 0.0]])
    with pytest.raises(RunError, match="seed 7"):
        run_experiment(ExperimentConfig(type(moons)(bad), KernelSpec.plain(), HP, runs=1, base_seed=7))


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("KGNG_THREADS", "1")
    assert worker_count(8) == 1
    monkeypatch.delenv("KGNG_THREADS")
    assert worker_count(3) == 3


def test_default_grids():
    g = default_gamma_grid("gaussian")
    assert g[0] == 0.5 and g[-1] == 5.0 and len(g) == 19
    assert default_gamma_grid("log") == [float(i) for i in range(1, 11)]


def test_sweep(moons):
    cfg = ExperimentConfig(moons, KernelSpec("gaussian", 1.0), HP, runs=2)
    res = sweep_gamma(cfg, [0.75, 3.0])
    assert res.column("gamma").tolist() == [0.75, 3.0]
    rows = list(csv.reader(io.StringIO(res.to_csv())))
    assert rows[0] == ["gamma", "mse_mean", "mse_std", "deg_mean", "deg_std", "clust_mean", "clust_std", "runs"]
    assert len(rows) == 3 and all(len(r) == 8 for r in rows)
    # each row equals the corresponding stand-alone experiment
    single = run_experiment(ExperimentConfig(moons, KernelSpec("gaussian", 3.0), HP, runs=2))
    assert res.rows[1]["deg_mean"] == pytest.approx(single.mean.avg_degree)
    assert len(sweep_gamma(cfg, [1.8]).rows) == 1
    with pytest.raises(ValueError):
        sweep_gamma(cfg, [2.0, 1.0])
    with pytest.raises(ValueError):
        sweep_gamma(cfg, [])


def test_table_layout_and_idempotence(moons):
    ds = {"moons": moons}
    a = table(ds, ["plain", "laplacian"], hp=HP, runs=2)
    b = table(ds, ["plain", "laplacian"], hp=HP, runs=2)
    text = table_to_csv(a, ds, "avg_degree")
    assert text == table_to_csv(b, ds, "avg_degree")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["dataset", "D", "GNG", "Laplacian"]
    assert rows[1][:2] == ["moons", "2"]
    assert float(rows[1][2]) == a["moons"][KernelKind.PLAIN].mean.avg_degree


def test_load_dataset(tmp_path):
    d = load_dataset("blobs", n=90, seed=2)
    assert d.normalized and d.n == 90
    p = tmp_path / "x.csv"
    p.write_text("1,2\n3,5\n4,4\n")
    raw = load_dataset(str(p), do_normalize=False)
    np.testing.assert_array_equal(raw.points[1], [3, 5])


def test_experiment_config_validation(moons):
    with pytest.raises(ValueError):
        ExperimentConfig(moons, KernelSpec.plain(), runs=0)
    assert isinstance(MetricsReport.mean([MetricsReport(0, 0, 0, 0)]), MetricsReport)
