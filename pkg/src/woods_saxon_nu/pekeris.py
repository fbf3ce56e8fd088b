"""Pekeris replacement of the centrifugal barrier.

The barrier ``delta / (1 + x)^2`` with ``x = (r - R0)/R0`` is traded for
``delta * (C0 + C1 t + C2 t^2)`` with the Fermi function
``t = 1 / (1 + exp(alpha x))``.  The three constants are fixed by matching
the Taylor expansions about ``r = R0`` through second order in ``x``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import PotentialSpec, centrifugal, dimensionless, fermi
from .errors import DivergenceError, InvalidInputError

MAX_SERIES_ORDER = 4


@dataclass(frozen=True)
class PekerisCoefficients:
    C0: float
    C1: float
    C2: float
    alpha: float


def coefficients(alpha: float) -> PekerisCoefficients:
    if not alpha > 0:
        raise InvalidInputError(f"alpha must be positive, got {alpha!r}")
    inv = 1.0 / alpha
    return PekerisCoefficients(
        C0=1 - 4 * inv + 12 * inv**2,
        C1=8 * inv - 48 * inv**2,
        C2=48 * inv**2,
        alpha=float(alpha),
    )


def centrifugal_series(delta_tilde: float, x: float, order: int) -> float:
    """Partial sum ``delta * sum_k (-1)^k (k+1) x^k`` of ``delta / (1+x)^2``.

    Any non-negative ``order`` is accepted; the sum converges only for ``|x| < 1``.
    """
    if abs(x) >= 1:
        raise DivergenceError(f"expansion of (1+x)^-2 diverges for |x| >= 1 (x={x})")
    if order < 0:
        raise InvalidInputError("order must be non-negative")
    k = np.arange(order + 1)
    return float(delta_tilde * np.sum((-1.0) ** k * (k + 1) * x**k))


def pekeris_taylor_coefficients(coeffs: PekerisCoefficients, alpha: float) -> np.ndarray:
    """Taylor coefficients in ``x`` (orders 0..4) of ``C0 + C1 t + C2 t^2``."""
    c0, c1, c2 = coeffs.C0, coeffs.C1, coeffs.C2
    return np.array([
        c0 + c1 / 2 + c2 / 4,
        -alpha / 4 * (c1 + c2),
        alpha**2 / 16 * c2,
        alpha**3 / 48 * (c1 + c2),
        -(alpha**4) / 96 * c2,
    ])


def pekeris_series(coeffs: PekerisCoefficients, delta_tilde: float, alpha: float,
                   x: float, order: int) -> float:
    if not 0 <= order <= MAX_SERIES_ORDER:
        raise InvalidInputError(f"order must lie in 0..{MAX_SERIES_ORDER}, got {order}")
    taylor = pekeris_taylor_coefficients(coeffs, alpha)[: order + 1]
    return float(delta_tilde * np.sum(taylor * x ** np.arange(order + 1)))


def pekeris_centrifugal(spec: PotentialSpec, l_tilde: float, r):
    """Pekeris stand-in for the barrier alone: ``delta (C0 + C1 t + C2 t^2)``."""
    d = dimensionless(spec, l_tilde)
    t = fermi((np.asarray(r, dtype=float) - spec.R0) / spec.a)
    out = d.delta_tilde * (d.C0 + d.C1 * t + d.C2 * t**2)
    return out if np.ndim(out) else float(out)


def effective_potential_pekeris(spec: PotentialSpec, l_tilde: float, r):
    """Pekeris-approximated effective potential.

    Defined for every real ``r``; tends to ``delta C0`` as ``r -> inf`` and to
    ``delta (C0 + C1 + C2) - V0`` as ``r -> -inf``.
    """
    d = dimensionless(spec, l_tilde)
    t = fermi((np.asarray(r, dtype=float) - spec.R0) / spec.a)
    out = d.delta_tilde * d.C0 - (spec.V0 - d.delta_tilde * d.C1) * t + d.delta_tilde * d.C2 * t**2
    return out if np.ndim(out) else float(out)


def pekeris_asymptotes(spec: PotentialSpec, l_tilde: float) -> tuple[float, float]:
    """Limits ``(r -> -inf, r -> +inf)`` of the Pekeris effective potential."""
    d = dimensionless(spec, l_tilde)
    return d.delta_tilde * (d.C0 + d.C1 + d.C2) - spec.V0, d.delta_tilde * d.C0


class ErrorPoint(NamedTuple):
    r: float
    exact: float
    approx: float
    abs_diff: float
    rel_diff: float


def pekeris_error_profile(spec: PotentialSpec, l_tilde: float, grid) -> list[ErrorPoint]:
    """Compare the exact barrier with its Pekeris stand-in at each ``r`` in ``grid``.

    The relative difference uses ``max(|exact|, 1e-12 * delta)`` as denominator.
    """
    r = np.asarray(grid, dtype=float)
    exact = np.asarray(centrifugal(spec, l_tilde, r), dtype=float)
    approx = np.asarray(pekeris_centrifugal(spec, l_tilde, r), dtype=float)
    diff = np.abs(exact - approx)
    delta = abs(dimensionless(spec, l_tilde).delta_tilde)
    floor = np.maximum(np.abs(exact), 1e-12 * delta)
    rel = np.divide(diff, floor, out=np.zeros_like(diff), where=floor > 0)
    return [ErrorPoint(*map(float, row)) for row in zip(r.ravel(), exact.ravel(), approx.ravel(),
                                                      diff.ravel(), rel.ravel())]
