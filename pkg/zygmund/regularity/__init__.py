"""Weights, norms and regularity estimates built on the transform layer."""

from zygmund.regularity.norms import (
    NormReport,
    halfspace_seminorm,
    holder_norm,
    refinement_ratio,
    schwartz_seminorm,
    second_difference_norm,
    zygmund_norm,
)
from zygmund.regularity.pointwise import (
    ConeScanResult,
    RegularityReport,
    cone_scan,
    fit_regularity,
    point_value,
    pointwise_fit,
)
from zygmund.regularity.weights import (
    SlowlyVaryingWeight,
    WeightFamily,
    check_slow_variation,
    eval_weight,
    potter_bound,
)

__all__ = [
    "ConeScanResult",
    "NormReport",
    "RegularityReport",
    "SlowlyVaryingWeight",
    "WeightFamily",
    "check_slow_variation",
    "cone_scan",
    "eval_weight",
    "fit_regularity",
    "halfspace_seminorm",
    "holder_norm",
    "point_value",
    "pointwise_fit",
    "potter_bound",
    "refinement_ratio",
    "schwartz_seminorm",
    "second_difference_norm",
    "zygmund_norm",
]
