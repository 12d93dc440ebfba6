"""Monotone quantum Fisher information metrics for density matrices.

Thin python layer over the C++ core. Functions are selected by spec strings
such as "sld", "harmonic", "bkm", "geometric", "wy", "wyd:beta=0.3",
"chi2:alpha=0.5". States, tangents and Kraus operators are numpy arrays of
complex128.
"""

from ._core import (
    apply_channel,
    bkm_perturbation_variance,
    check_standard,
    chi2_divergence,
    classical_fisher,
    covariance,
    cramer_rao,
    extended_metric,
    f_eval,
    f_zero,
    fisher_metric,
    function_names,
    jd_apply,
    jd_inverse_apply,
    mean,
    metric_monotonicity_gap,
    optimal_measurement,
    outcome_probs,
    qfim,
    qfim_monotonicity_gap,
    random_channel_kraus,
    random_density,
    score_operators,
    skew_information,
    sld_optimal_observable,
    supremum_certificate,
    verify_all,
    wyd_skew,
)

__all__ = [
    "apply_channel",
    "bkm_perturbation_variance",
    "check_standard",
    "chi2_divergence",
    "classical_fisher",
    "covariance",
    "cramer_rao",
    "extended_metric",
    "f_eval",
    "f_zero",
    "fisher_metric",
    "function_names",
    "jd_apply",
    "jd_inverse_apply",
    "mean",
    "metric_monotonicity_gap",
    "optimal_measurement",
    "outcome_probs",
    "qfim",
    "qfim_monotonicity_gap",
    "random_channel_kraus",
    "random_density",
    "score_operators",
    "skew_information",
    "sld_optimal_observable",
    "supremum_certificate",
    "verify_all",
    "wyd_skew",
]

__version__ = "0.1.0"
