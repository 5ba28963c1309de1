"""Full Bayesian significance tests for unit roots and cointegration rank."""

import json as _json

from ._evcoint import (
    ConfigError,
    EvcointError,
    EvidenceResult,
    InputError,
    NumericError,
    RankRow,
    RankTestReport,
    UnitRootResult,
    __version__,
    chi2_cdf,
    chi2_quantile,
    chi2_sf,
    chi2_upper_quantile,
    estimate_evidence,
    ev_from_pvalue,
    pvalue_from_ev,
    rank_bridge_dims,
    run_json,
    test_rank,
    test_unit_root,
)


def run(config):
    """Run a configuration dict and return the report as a dict."""
    return _json.loads(run_json(_json.dumps(config)))


__all__ = [
    "ConfigError",
    "EvcointError",
    "EvidenceResult",
    "InputError",
    "NumericError",
    "RankRow",
    "RankTestReport",
    "UnitRootResult",
    "__version__",
    "chi2_cdf",
    "chi2_quantile",
    "chi2_sf",
    "chi2_upper_quantile",
    "estimate_evidence",
    "ev_from_pvalue",
    "pvalue_from_ev",
    "rank_bridge_dims",
    "run",
    "run_json",
    "test_rank",
    "test_unit_root",
]
