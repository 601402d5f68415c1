"""Compounded Burr distribution for degree-distribution fitting."""

import json

from ._cburr import (
    REPORT_SCHEMA_VERSION,
    CBurrError,
    DataError,
    DomainError,
    FitFailure,
    MomentNonexistenceError,
    NumericError,
    cdf,
    degree_histogram,
    families,
    hazard,
    loglik,
    metrics,
    moment,
    mrl,
    pdf,
    quantile,
    sample,
    survival,
)
from . import _cburr

__all__ = [
    "REPORT_SCHEMA_VERSION",
    "CBurrError",
    "DataError",
    "DomainError",
    "FitFailure",
    "MomentNonexistenceError",
    "NumericError",
    "cdf",
    "compare",
    "degree_histogram",
    "families",
    "fit",
    "gof",
    "hazard",
    "loglik",
    "metrics",
    "moment",
    "mrl",
    "pdf",
    "quantile",
    "sample",
    "survival",
]


def fit(values, model="cburr", starts=5, regime="validity", seed=1,
        likelihood="continuous", free_scale=False):
    """Maximum-likelihood fit; returns the report's fit object as a dict."""
    return json.loads(_cburr._fit_json(list(map(float, values)), model, starts, regime,
                                       seed, likelihood, free_scale))


def gof(values, model, params, regime="validity", replicates=0, refit=True,
        min_expected=5.0, seed=1, likelihood="interval"):
    """RMSE, KLD, MAE, pooled chi-square and optional bootstrap p-value."""
    return json.loads(_cburr._gof_json(list(map(float, values)), model, list(params), regime,
                                       replicates, refit, min_expected, seed, likelihood))


def compare(path, models=(), starts=5, regime="validity", seed=1, likelihood="auto"):
    """Runs the compare command on a data file and returns the report dict."""
    return json.loads(_cburr._compare_json(str(path), list(models), starts, regime, seed,
                                           likelihood))
