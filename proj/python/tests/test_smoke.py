import json
import math
from pathlib import Path

import numpy as np
import pytest

import cburr

ROOT = Path(__file__).resolve().parents[2]


def test_pointwise_examples():
    y = np.array([1.0])
    assert cburr.pdf(y, 1, 1, 1, 1)[0] == pytest.approx(0.25 * math.exp(-0.5) * 1.5, abs=1e-12)
    assert cburr.survival(y, 1, 1, 1, 0)[0] == pytest.approx(0.5, abs=1e-15)
    u = np.linspace(0.01, 0.99, 25)
    q = cburr.quantile(u, 50.877, 5.5685, 0.7234, 0.6978)
    assert np.allclose(cburr.cdf(q, 50.877, 5.5685, 0.7234, 0.6978), u, atol=1e-10)


def test_shapes_are_preserved():
    y = np.ones((2, 3))
    assert cburr.hazard(y, 2, 1.5, 1.2, 0.5).shape == (2, 3)


def test_regime_errors():
    with pytest.raises(cburr.DomainError):
        cburr.pdf(np.array([1.0]), 1, 1, 1, -1.5)
    assert np.isfinite(cburr.pdf(np.array([1.0]), 1, 1, 1, -1.5, regime="paper-compat"))[0]


def test_sample_and_fit():
    draws = cburr.sample("cburr", [3.0, 1.4, 1.2, 1.0], 2000, seed=4)
    assert draws == cburr.sample("cburr", [3.0, 1.4, 1.2, 1.0], 2000, seed=4)
    assert min(draws) > 0
    fit = cburr.fit(draws)
    assert fit["family"] == "cburr"
    assert fit["converged"]
    assert fit["loglik"] >= cburr.loglik(draws, 3.0, 1.4, 1.2, 1.0) - 2.0


def test_moments():
    assert cburr.moment(1.0, 3.0, 2.0, 0.0, 1.0) == pytest.approx(3 * math.pi / 16, rel=1e-9)
    with pytest.raises(cburr.MomentNonexistenceError):
        cburr.moment(1.0, 1.0, 1.0, 0.5, 1.0)


def test_metrics_and_degrees():
    m = cburr.metrics([10, 5, 2], [8, 6, 3])
    assert m["rmse"] == pytest.approx(math.sqrt(2), abs=1e-12)
    assert m["mae"] == pytest.approx(4 / 3, abs=1e-12)
    assert cburr.degree_histogram("1 2\n2 3\n1 3\n") == {2: 3}
    with pytest.raises(cburr.DataError):
        cburr.degree_histogram("1 2\n3\n")


def test_gof_dict():
    values = [float(k) for k in cburr.sample("poisson", [4.0], 500, seed=2) if k >= 1]
    g = cburr.gof(values, "poisson", [4.0], replicates=5, refit=False)
    assert g["rmse"] >= g["mae"] * (1 - 1e-12)
    assert g["p_boot"] is None or 0 < g["p_boot"] <= 1


def test_compare_report_matches_schema():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads((ROOT / "schema" / "cburr-report-v1.schema.json").read_text())
    report = cburr.compare(ROOT / "data" / "synthetic_dmela.csv",
                           models=["cburr", "burr", "poisson"])
    jsonschema.validate(report, schema)
    assert report["schema_version"] == cburr.REPORT_SCHEMA_VERSION
    assert len(report["datasets"][0]["fits"]) == 3
