"""Radial eigenfunctions ``u(z) = z^eps (1-z)^s P_n^(2eps, 2s)(1 - 2z)``.

The Fermi variable covers the whole real ``r`` axis, so the closed-form ``u``
is an eigenfunction on ``(-inf, inf)``; ``u(0) = 0`` holds only approximately
(to roughly ``exp(-2 s R0/a)``).  ``RadialTable.u0_ratio`` records how well.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson

from .core import PotentialSpec, fermi
from .errors import DegenerateWavefunctionError, DomainError, InvalidInputError
from .spectrum import QuantizationResult

DEFAULT_POINTS_PER_A = 200
TAIL_RATIO = 1e-12


def z_of_r(spec: PotentialSpec, r):
    out = fermi((np.asarray(r, dtype=float) - spec.R0) / spec.a)
    return out if np.ndim(out) else float(out)


def _check_params(a: float, b: float) -> None:
    if not (a > -1 and b > -1):
        raise InvalidInputError(f"Jacobi parameters must exceed -1, got ({a}, {b})")


def jacobi_all(n: int, a: float, b: float, x) -> np.ndarray:
    """``P_k^(a,b)(x)`` for ``k = 0..n`` stacked along the first axis."""
    _check_params(a, b)
    x = np.asarray(x, dtype=float)
    out = np.empty((n + 1,) + x.shape)
    out[0] = 1.0
    if n >= 1:
        out[1] = 0.5 * (a - b + (a + b + 2) * x)
    apb = a + b
    for k in range(2, n + 1):
        c = 2 * k + apb
        a1 = 2 * k * (k + apb) * (c - 2)
        a2 = (c - 1) * (a * a - b * b)
        a3 = (c - 2) * (c - 1) * c
        a4 = 2 * (k + a - 1) * (k + b - 1) * c
        out[k] = ((a2 + a3 * x) * out[k - 1] - a4 * out[k - 2]) / a1
    return out


def jacobi(n: int, a: float, b: float, x):
    """Jacobi polynomial ``P_n^(a,b)(x)`` by forward three-term recurrence."""
    if n < 0:
        raise InvalidInputError("degree must be non-negative")
    out = jacobi_all(n, a, b, x)[n]
    return out if np.ndim(out) else float(out)


def jacobi_recurrence_residual(n: int, a: float, b: float, x) -> np.ndarray:
    """Relative residual of the three-term recurrence at degrees ``2..n``."""
    p = jacobi_all(n, a, b, x)
    apb = a + b
    res = []
    for k in range(2, n + 1):
        c = 2 * k + apb
        lhs = 2 * k * (k + apb) * (c - 2) * p[k]
        rhs = (c - 1) * ((a * a - b * b) + (c - 2) * c * x) * p[k - 1] \
            - 2 * (k + a - 1) * (k + b - 1) * c * p[k - 2]
        scale = np.maximum.reduce([np.abs(lhs), np.abs(rhs), np.full_like(lhs, np.finfo(float).tiny)])
        res.append(np.abs(lhs - rhs) / scale)
    return np.array(res)


def _log_z_parts(spec: PotentialSpec, r):
    x = (np.asarray(r, dtype=float) - spec.R0) / spec.a
    # log z and log(1 - z) without cancellation
    return -np.logaddexp(0.0, x), -np.logaddexp(0.0, -x), fermi(x)


def u_unnormalized(spec: PotentialSpec, q: QuantizationResult, n: int, r):
    """Unnormalized closed-form ``u`` at ``r`` (any real ``r``)."""
    if not q.valid:
        raise DomainError(f"no eigenfunction for an invalid level ({q.failure_reason})")
    log_z, log_1mz, z = _log_z_parts(spec, r)
    envelope = np.exp(q.epsilon * log_z + q.s * log_1mz)
    out = envelope * jacobi(n, 2 * q.epsilon, 2 * q.s, 1 - 2 * z)
    return out if np.ndim(out) else float(out)


def count_sign_changes(u, rel_floor: float = 1e-14) -> int:
    """Sign changes of ``u`` ignoring entries below ``rel_floor * max|u|``."""
    u = np.asarray(u, dtype=float)
    peak = np.max(np.abs(u)) if u.size else 0.0
    signs = np.sign(u[np.abs(u) > rel_floor * peak])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))


def full_line_nodes(spec: PotentialSpec, q: QuantizationResult, n: int, samples: int = 20001) -> int:
    """Nodes of ``u`` over the whole Fermi-variable line ``0 < z < 1``."""
    z = np.linspace(0, 1, samples)[1:-1]
    r = spec.R0 + spec.a * np.log((1 - z) / z)
    return count_sign_changes(u_unnormalized(spec, q, n, r))


@dataclass
class RadialTable:
    r: np.ndarray
    u: np.ndarray
    R: np.ndarray
    C_nl: float
    nodes: int
    nodes_full_line: int
    r_max: float
    u0_ratio: float
    metadata: dict = field(default_factory=dict)


def default_grid(spec: PotentialSpec, r_max: float, points_per_a: int = DEFAULT_POINTS_PER_A) -> np.ndarray:
    intervals = int(np.ceil(r_max / spec.a * points_per_a))
    intervals += intervals % 2
    return np.linspace(0.0, r_max, intervals + 1)


def _auto_r_max(spec: PotentialSpec, q: QuantizationResult, n: int) -> float:
    r_max = spec.R0 + 40 * spec.a
    probe = np.linspace(0.0, r_max, 4001)
    peak = np.max(np.abs(u_unnormalized(spec, q, n, probe)))
    for _ in range(200):
        if abs(u_unnormalized(spec, q, n, r_max)) < TAIL_RATIO * peak:
            break
        r_max += 10 * spec.a
    return r_max


def _extrapolate_origin(r: np.ndarray, R: np.ndarray) -> float:
    r3, R3 = r[1:4], R[1:4]
    # Lagrange quadratic through the three innermost nonzero points, at r = 0
    w = [r3[1] * r3[2] / ((r3[0] - r3[1]) * (r3[0] - r3[2])),
         r3[0] * r3[2] / ((r3[1] - r3[0]) * (r3[1] - r3[2])),
         r3[0] * r3[1] / ((r3[2] - r3[0]) * (r3[2] - r3[1]))]
    return float(np.dot(w, R3))


def normalize(spec: PotentialSpec, q: QuantizationResult, n: int, grid=None,
              points_per_a: int = DEFAULT_POINTS_PER_A) -> RadialTable:
    """Normalize ``u`` on ``[0, r_max]`` by composite Simpson quadrature.

    Without ``grid`` the outer edge starts at ``R0 + 40 a`` and grows until
    ``|u(r_max)| / max|u| < 1e-12``.  A supplied grid must start at 0, be
    uniform with an even number of intervals, and reach ``R0 + 40 a``.
    """
    if grid is None:
        r = default_grid(spec, _auto_r_max(spec, q, n), points_per_a)
    else:
        r = np.asarray(grid, dtype=float)
        if r[0] != 0 or r[-1] < spec.R0 + 40 * spec.a - 1e-12 or np.any(np.diff(r) <= 0):
            raise InvalidInputError("grid must start at 0, increase strictly and reach R0 + 40a")
    u_raw = u_unnormalized(spec, q, n, r)
    norm2 = simpson(u_raw**2, x=r)
    if not norm2 > 1e-300:
        raise DegenerateWavefunctionError(f"norm integral {norm2!r} underflowed")
    C = 1.0 / np.sqrt(norm2)
    u = C * u_raw
    R = np.empty_like(u)
    R[1:] = u[1:] * r[1:] ** (-(spec.D - 1) / 2)
    R[0] = _extrapolate_origin(r, R)
    return RadialTable(
        r=r, u=u, R=R, C_nl=float(C),
        nodes=count_sign_changes(u[1:]),
        nodes_full_line=full_line_nodes(spec, q, n),
        r_max=float(r[-1]),
        u0_ratio=float(abs(u[0]) / np.max(np.abs(u))),
        metadata={"R_origin": "quadratic-extrapolation"},
    )


def overlap(spec: PotentialSpec, q1: QuantizationResult, n1: int, q2: QuantizationResult, n2: int,
            r_lo: float, r_hi: float, points: int = 200001) -> float:
    """Normalized overlap ``<u1|u2>`` on ``[r_lo, r_hi]`` (which may extend below 0)."""
    r = np.linspace(r_lo, r_hi, points + (points + 1) % 2)
    u1 = u_unnormalized(spec, q1, n1, r)
    u2 = u_unnormalized(spec, q2, n2, r)
    return float(simpson(u1 * u2, x=r) / np.sqrt(simpson(u1**2, x=r) * simpson(u2**2, x=r)))
