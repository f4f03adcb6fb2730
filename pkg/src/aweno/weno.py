"""Fifth-order interface interpolation of point values.

Two flavours share one kernel: the limited variant forms nonlinear weights
from smoothness indicators of three parabolic sub-stencils, the nonlimited
variant combines the same parabolas with fixed linear weights (equivalent to
the unique quartic through the five left-biased points).

Stencils are arrays with the six point values ``W[j-2] .. W[j+3]`` on the
last axis; all kernels broadcast over leading axes.  The left-sided interface
value uses the first five slots, the right-sided value is the same kernel
applied to the reversed stencil.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError

#: linear weights of the three parabolic sub-stencils (sum to one)
LINEAR_WEIGHTS = (1.0 / 16.0, 5.0 / 8.0, 5.0 / 16.0)


@dataclass(frozen=True)
class WenoParams:
    """Tunables of the limited weights: power, desingularization, linear weights."""

    power: int = 2
    eps: float = 1.0e-12
    linear_weights: tuple = LINEAR_WEIGHTS

    def __post_init__(self):
        if not self.eps > 0.0:
            raise ConfigurationError("weno eps must be positive")
        if abs(sum(self.linear_weights) - 1.0) > 1e-14:
            raise ConfigurationError("linear weights must sum to 1")


DEFAULT_PARAMS = WenoParams()


def parabolic_values(w: np.ndarray) -> np.ndarray:
    """Midpoint values of the three sub-stencil parabolas, stacked last.

    Only the first five stencil slots are read.
    """
    w = np.asarray(w)
    p = np.empty(w.shape[:-1] + (3,))
    p[..., 0] = 0.375 * w[..., 0] - 1.25 * w[..., 1] + 1.875 * w[..., 2]
    p[..., 1] = -0.125 * w[..., 1] + 0.75 * w[..., 2] + 0.375 * w[..., 3]
    p[..., 2] = 0.375 * w[..., 2] + 0.75 * w[..., 3] - 0.125 * w[..., 4]
    return p


def smoothness_betas(w: np.ndarray) -> np.ndarray:
    """Sub-stencil smoothness indicators (scaled H1-type seminorms)."""
    w = np.asarray(w)
    b = np.empty(w.shape[:-1] + (3,))
    c0 = 13.0 / 12.0
    b[..., 0] = (
        c0 * (w[..., 0] - 2.0 * w[..., 1] + w[..., 2]) ** 2
        + 0.25 * (w[..., 0] - 4.0 * w[..., 1] + 3.0 * w[..., 2]) ** 2
    )
    b[..., 1] = (
        c0 * (w[..., 1] - 2.0 * w[..., 2] + w[..., 3]) ** 2
        + 0.25 * (w[..., 1] - w[..., 3]) ** 2
    )
    b[..., 2] = (
        c0 * (w[..., 2] - 2.0 * w[..., 3] + w[..., 4]) ** 2
        + 0.25 * (3.0 * w[..., 2] - 4.0 * w[..., 3] + w[..., 4]) ** 2
    )
    return b


def wenoz_weights(betas: np.ndarray, params: WenoParams = DEFAULT_PARAMS) -> np.ndarray:
    """Nonlinear weights from the global smoothness ratio; they sum to one."""
    betas = np.asarray(betas)
    tau = np.abs(betas[..., 2] - betas[..., 0])
    d0, d1, d2 = params.linear_weights
    a = np.empty_like(betas)
    if params.power == 2:
        r0 = tau / (betas[..., 0] + params.eps)
        r1 = tau / (betas[..., 1] + params.eps)
        r2 = tau / (betas[..., 2] + params.eps)
        a[..., 0] = d0 * (1.0 + r0 * r0)
        a[..., 1] = d1 * (1.0 + r1 * r1)
        a[..., 2] = d2 * (1.0 + r2 * r2)
    else:
        a[..., 0] = d0 * (1.0 + (tau / (betas[..., 0] + params.eps)) ** params.power)
        a[..., 1] = d1 * (1.0 + (tau / (betas[..., 1] + params.eps)) ** params.power)
        a[..., 2] = d2 * (1.0 + (tau / (betas[..., 2] + params.eps)) ** params.power)
    total = a[..., 0] + a[..., 1] + a[..., 2]
    return a / total[..., None]


def _combine(w: np.ndarray, weights: np.ndarray) -> np.ndarray:
    p = parabolic_values(w)
    return (
        weights[..., 0] * p[..., 0]
        + weights[..., 1] * p[..., 1]
        + weights[..., 2] * p[..., 2]
    )


def interpolate_left(
    w: np.ndarray, limited: bool, params: WenoParams = DEFAULT_PARAMS
) -> np.ndarray:
    """Left-sided interface value from a six-point stencil.

    ``limited=True`` uses the WENO-Z weights, otherwise the linear weights.
    The last stencil slot is carried for symmetry with the right-sided kernel
    but never read.
    """
    w = np.asarray(w)
    if limited:
        weights = wenoz_weights(smoothness_betas(w), params)
    else:
        weights = np.broadcast_to(
            np.asarray(params.linear_weights), w.shape[:-1] + (3,)
        )
    return _combine(w, weights)


def interpolate_right(
    w: np.ndarray, limited: bool, params: WenoParams = DEFAULT_PARAMS
) -> np.ndarray:
    """Right-sided interface value: the left kernel on the mirrored stencil."""
    return interpolate_left(np.asarray(w)[..., ::-1], limited, params)
