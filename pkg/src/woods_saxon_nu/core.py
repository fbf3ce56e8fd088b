"""Physical parameters, effective angular momentum and the Woods-Saxon well.

Units are whatever the caller picks: energies follow ``V0`` and lengths follow
``R0``/``a``, tied together by ``hbar2_over_2mu`` (energy x length^2).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import expit

from .errors import DomainError, InvalidInputError

SURFACE_NOT_THIN = "SURFACE_NOT_THIN"


def fermi(x):
    """Overflow-safe ``1 / (1 + exp(x))``."""
    return expit(-np.asarray(x, dtype=float))


@dataclass(frozen=True)
class PotentialSpec:
    """Spherical Woods-Saxon well in ``D`` dimensions.

    Parameters
    ----------
    V0 : float
        Depth of the well (positive).
    R0 : float
        Radius of the well.
    a : float
        Surface diffuseness.
    hbar2_over_2mu : float
        Kinetic prefactor hbar^2 / (2 mu), in energy x length^2.
    D : int
        Spatial dimension, ``D >= 2``.
    """

    V0: float
    R0: float
    a: float
    hbar2_over_2mu: float = 1.0
    D: int = 3

    def __post_init__(self):
        for name in ("V0", "R0", "a", "hbar2_over_2mu"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise InvalidInputError(f"{name} must be a positive finite number, got {value!r}")
        if int(self.D) != self.D or self.D < 2:
            raise InvalidInputError(f"D must be an integer >= 2, got {self.D!r}")
        object.__setattr__(self, "D", int(self.D))

    @property
    def alpha(self) -> float:
        return self.R0 / self.a

    @property
    def flags(self) -> frozenset:
        """Non-fatal diagnostics. ``SURFACE_NOT_THIN`` when ``a >= R0``."""
        return frozenset({SURFACE_NOT_THIN}) if self.a >= self.R0 else frozenset()

    def replace(self, **changes) -> "PotentialSpec":
        fields = dict(V0=self.V0, R0=self.R0, a=self.a,
                      hbar2_over_2mu=self.hbar2_over_2mu, D=self.D)
        fields.update(changes)
        return PotentialSpec(**fields)


def effective_l(l: int, D: int) -> float:
    """Effective angular momentum ``l + (D - 3)/2`` of the hyper-radial equation."""
    if int(l) != l or l < 0:
        raise InvalidInputError(f"l must be a non-negative integer, got {l!r}")
    if int(D) != D or D < 2:
        raise InvalidInputError(f"D must be an integer >= 2, got {D!r}")
    return l + (D - 3) / 2


@dataclass(frozen=True)
class Channel:
    n: int
    l: int
    l_tilde: float

    @classmethod
    def of(cls, n: int, l: int, D: int) -> "Channel":
        if int(n) != n or n < 0:
            raise InvalidInputError(f"n must be a non-negative integer, got {n!r}")
        return cls(int(n), int(l), effective_l(l, D))


def woods_saxon(spec: PotentialSpec, r):
    """``-V0 / (1 + exp((r - R0)/a))``; accepts scalars or arrays."""
    out = -spec.V0 * fermi((np.asarray(r, dtype=float) - spec.R0) / spec.a)
    return out if np.ndim(out) else float(out)


def centrifugal(spec: PotentialSpec, l_tilde: float, r):
    """Exact barrier ``hbar^2 l~(l~+1) / (2 mu r^2)``."""
    r = np.asarray(r, dtype=float)
    strength = spec.hbar2_over_2mu * l_tilde * (l_tilde + 1)
    if strength == 0:
        out = np.zeros_like(r)
    else:
        if np.any(r <= 0):
            raise DomainError("centrifugal barrier has a pole at r = 0")
        out = strength / r**2
    return out if np.ndim(out) else float(out)


def effective_potential_exact(spec: PotentialSpec, l_tilde: float, r):
    """Woods-Saxon well plus the exact centrifugal barrier."""
    return centrifugal(spec, l_tilde, r) + woods_saxon(spec, r)


@dataclass(frozen=True)
class DimensionlessSet:
    """Dimensionless couplings of the Pekeris-approximated problem.

    ``beta_sq`` is kept signed; ``gamma_sq`` is negative only for
    ``l~ = -1/2`` (D = 2, l = 0).
    """

    alpha: float
    delta_tilde: float
    C0: float
    C1: float
    C2: float
    beta_sq: float
    gamma_sq: float
    l_tilde: float


def dimensionless(spec: PotentialSpec, l_tilde: float) -> DimensionlessSet:
    from .pekeris import coefficients

    coeffs = coefficients(spec.alpha)
    delta = spec.hbar2_over_2mu * l_tilde * (l_tilde + 1) / spec.R0**2
    scale = spec.a**2 / spec.hbar2_over_2mu
    return DimensionlessSet(
        alpha=spec.alpha,
        delta_tilde=delta,
        C0=coeffs.C0,
        C1=coeffs.C1,
        C2=coeffs.C2,
        beta_sq=scale * (spec.V0 - delta * coeffs.C1),
        gamma_sq=scale * delta * coeffs.C2,
        l_tilde=l_tilde,
    )
