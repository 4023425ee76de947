"""DirectLiNGAM causal discovery: order and strength estimation, an ICA-LiNGAM
baseline, synthetic LiNGAM data and bootstrap intervals.

Arrays are (n_samples, n_features) unless ``variables_as_rows=True``.
Variable subscripts are 0-based.
"""

from ._core import (
    LingamError,
    bootstrap,
    estimate_order,
    estimate_strengths,
    fit,
    frobenius_distance,
    ica_lingam_fit,
    order_errors,
    simulate,
    t_statistic,
)

__all__ = [
    "LingamError",
    "bootstrap",
    "estimate_order",
    "estimate_strengths",
    "fit",
    "frobenius_distance",
    "ica_lingam_fit",
    "order_errors",
    "simulate",
    "t_statistic",
]

__version__ = "0.1.0"
