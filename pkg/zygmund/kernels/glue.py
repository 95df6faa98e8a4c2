"""Smooth transition functions built from h(x) = exp(-1/x).

These are the only building blocks of the frequency-side constructions: low-pass
windows, band bumps and mollifiers all come from ``smooth_step`` and its derivative.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike

# exp(-1/x) underflows to 0.0 below this, and h'(x) = h(x)/x^2 must not divide by 0.
_H_FLOOR = 1e-3


def glue(x: ArrayLike) -> np.ndarray:
    """h(x) = exp(-1/x) for x > 0, else 0."""
    x = np.asarray(x, dtype=float)
    safe = np.where(x > 0, x, 1.0)
    return np.where(x > 0, np.exp(-1.0 / safe), 0.0)


def glue_prime(x: ArrayLike) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    safe = np.where(x > _H_FLOOR, x, 1.0)
    return np.where(x > _H_FLOOR, np.exp(-1.0 / safe) / safe**2, 0.0)


def smooth_step(x: ArrayLike) -> np.ndarray:
    """C-infinity transition: 0 for x <= 0, 1 for x >= 1."""
    x = np.asarray(x, dtype=float)
    left, right = glue(x), glue(1.0 - x)
    return left / (left + right)


def smooth_step_prime(x: ArrayLike) -> np.ndarray:
    """Exact derivative of ``smooth_step``; supported in [0, 1]."""
    x = np.asarray(x, dtype=float)
    left, right = glue(x), glue(1.0 - x)
    dleft, dright = glue_prime(x), glue_prime(1.0 - x)
    return (dleft * right + left * dright) / (left + right) ** 2


def plateau(x: ArrayLike, a: float, b: float) -> np.ndarray:
    """Even bump supported in a <= |x| <= b, equal to 1 on the middle third."""
    ax = np.abs(np.asarray(x, dtype=float))
    w = (b - a) / 3.0
    return smooth_step((ax - a) / w) * (1.0 - smooth_step((ax - (b - w)) / w))
