"""Slowly varying weights L on (0, 1] and their diagnostics."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from zygmund.errors import DomainError, ParameterError

logger = logging.getLogger(__name__)


class WeightFamily(str, Enum):
    CONST = "const"
    LOGPOW = "logpow"
    LOGLOGPOW = "loglogpow"


@dataclass(frozen=True)
class SlowlyVaryingWeight:
    """L(y) = 1, (1 + |ln y|)^beta or (1 + ln(1 + |ln y|))^beta."""

    family: WeightFamily = WeightFamily.CONST
    beta: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "family", WeightFamily(self.family))
        if not math.isfinite(self.beta):
            raise ParameterError(f"weight exponent must be finite, got {self.beta}")

    def __call__(self, y: ArrayLike) -> np.ndarray:
        """Vectorised L(y); callers guarantee 0 < y <= 1."""
        y = np.asarray(y, dtype=float)
        if self.family is WeightFamily.CONST or self.beta == 0:
            return np.ones_like(y)
        log_y = np.abs(np.log(y))
        if self.family is WeightFamily.LOGPOW:
            return (1.0 + log_y) ** self.beta
        return (1.0 + np.log1p(log_y)) ** self.beta

    @property
    def name(self) -> str:
        if self.family is WeightFamily.CONST:
            return "const"
        return f"{self.family.value}({self.beta:g})"

    def to_dict(self) -> dict[str, Any]:
        return {"family": self.family.value, "beta": self.beta}

    @classmethod
    def from_spec(cls, spec: dict[str, Any] | str | None) -> SlowlyVaryingWeight:
        """Accept {"family", "beta"} or the short form ``logpow:1``."""
        if spec is None:
            return cls()
        try:
            if isinstance(spec, str):
                family, _, beta = spec.strip().partition(":")
                spec = {"family": family, "beta": float(beta) if beta else 0.0}
            kind = WeightFamily(str(spec.get("family", "const")).lower())
            return cls(kind, float(spec.get("beta", 0.0)))
        except ValueError as exc:
            raise ParameterError(f"bad weight spec {spec!r}: {exc}") from exc


CONST = SlowlyVaryingWeight()


def _check_unit_interval(y: np.ndarray, what: str = "y") -> None:
    if not np.all((y > 0) & (y <= 1)):
        bad = y[~((y > 0) & (y <= 1))][0]
        raise DomainError(f"{what} must lie in (0, 1], got {bad!r}")


def eval_weight(weight: SlowlyVaryingWeight, y: float) -> float:
    _check_unit_interval(np.asarray([y], dtype=float))
    return float(weight(y))


def slow_variation_profile(
    weight: SlowlyVaryingWeight,
    a_set: ArrayLike,
    eps_grid: ArrayLike,
) -> np.ndarray:
    """max_a |L(a eps)/L(eps) - 1| for every eps in the grid."""
    a = np.asarray(a_set, dtype=float)
    eps = np.asarray(eps_grid, dtype=float)
    if a.size == 0 or eps.size == 0:
        raise DomainError("need at least one dilation and one eps")
    if np.any(a <= 0):
        raise DomainError(f"dilations must be positive, got {a.min()!r}")
    _check_unit_interval(eps, "eps")
    products = np.outer(eps, a)
    _check_unit_interval(products.ravel(), "a * eps")
    ratios = weight(products) / weight(eps)[:, None]
    return np.max(np.abs(ratios - 1.0), axis=1)


def check_slow_variation(
    weight: SlowlyVaryingWeight,
    a_set: ArrayLike,
    eps_grid: ArrayLike,
) -> float:
    """Deviation of L(a eps)/L(eps) from 1 at the smallest eps."""
    eps = np.asarray(eps_grid, dtype=float)
    profile = slow_variation_profile(weight, a_set, eps)
    order = np.argsort(eps)[::-1]
    monotone = bool(np.all(np.diff(profile[order]) <= 1e-15))
    if not monotone:
        logger.warning("%s: slow-variation deviation is not monotone along eps", weight.name)
    deviation = float(profile[np.argmin(eps)])
    logger.debug("check_slow_variation(%s): %.4g (monotone=%s)", weight.name, deviation, monotone)
    return deviation


def potter_bound(weight: SlowlyVaryingWeight, y_grid: ArrayLike, a_grid: ArrayLike) -> float:
    """Smallest C with L(a y)/L(y) <= C (a + 1/a) over the grid pairs with a y <= 1."""
    y = np.asarray(y_grid, dtype=float)[:, None]
    a = np.asarray(a_grid, dtype=float)[None, :]
    if np.any(y <= 0) or np.any(y > 1) or np.any(a <= 0):
        raise DomainError("potter_bound needs y in (0, 1] and a > 0")
    admissible = a * y <= 1.0
    if not np.any(admissible):
        raise DomainError("no grid pair satisfies a * y <= 1")
    products = np.where(admissible, a * y, 1.0)
    quotient = weight(products) / weight(y) / (a + 1.0 / a)
    return float(np.max(np.where(admissible, quotient, -np.inf)))
