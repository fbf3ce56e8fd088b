"""Bound-state quantization and closed-form spectrum of the Pekeris-approximated well.

With the Fermi variable ``z = 1/(1 + exp((r - R0)/a))`` the radial equation
becomes hypergeometric-type with ``sigma = z(1 - z)``, ``tau~ = 1 - 2z`` and
``sigma~ = -eps^2 + beta^2 z - gamma^2 z^2``.  The admissible choice

    pi(z)  = eps - (eps + s) z,          s = sqrt(eps^2 - beta^2 + gamma^2)
    tau(z) = 1 + 2 eps - 2 (1 + eps + s) z
    k      = beta^2 - 2 eps^2 - 2 eps s

together with ``lambda = k + pi'`` and ``lambda_n = -n tau' - n(n-1) sigma''/2``
quantizes ``eps + s = n'`` with ``n' = (sqrt(1 + 4 gamma^2) - 1)/2 - n``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import DimensionlessSet, PotentialSpec, dimensionless, effective_l
from .errors import InvalidInputError


class FailureReason(str, enum.Enum):
    N_PRIME_NONPOSITIVE = "N_PRIME_NONPOSITIVE"
    WELL_TOO_SHALLOW = "WELL_TOO_SHALLOW"
    WINDOW_VIOLATED = "WINDOW_VIOLATED"


class Method(str, enum.Enum):
    ANALYTIC = "ANALYTIC"
    NUMEROV_PEKERIS = "NUMEROV_PEKERIS"
    NUMEROV_EXACT = "NUMEROV_EXACT"


@dataclass(frozen=True)
class QuantizationResult:
    n_prime: float
    epsilon: float
    s: float
    valid: bool
    failure_reason: FailureReason | None = None

    @classmethod
    def invalid(cls, n_prime: float, reason: FailureReason) -> "QuantizationResult":
        return cls(n_prime, math.nan, math.nan, False, reason)


@dataclass(frozen=True)
class EnergyLevel:
    n: int
    l: int
    D: int
    E: float
    quantization: QuantizationResult
    method: Method = Method.ANALYTIC
    l_tilde: float = math.nan

    @property
    def valid(self) -> bool:
        return self.quantization.valid


def n_prime(n: int, gamma_sq: float) -> float:
    """``-n + (sqrt(1 + 4 gamma^2) - 1)/2``; NaN when the radicand is negative."""
    radicand = 1 + 4 * gamma_sq
    if radicand < 0:
        return math.nan
    return -n + (math.sqrt(radicand) - 1) / 2


def quantize(dimless: DimensionlessSet, n: int) -> QuantizationResult:
    if n < 0:
        raise InvalidInputError(f"n must be non-negative, got {n}")
    npr = n_prime(n, dimless.gamma_sq)
    if not npr > 0:
        return QuantizationResult.invalid(npr, FailureReason.N_PRIME_NONPOSITIVE)
    coupling = dimless.beta_sq - dimless.gamma_sq
    if coupling <= 0:
        return QuantizationResult.invalid(npr, FailureReason.WELL_TOO_SHALLOW)
    if coupling >= npr**2:
        return QuantizationResult.invalid(npr, FailureReason.WINDOW_VIOLATED)
    ratio = coupling / npr
    return QuantizationResult(npr, (npr + ratio) / 2, (npr - ratio) / 2, True)


def quantization_residual(dimless: DimensionlessSet, q: QuantizationResult, n: int) -> float:
    """Mismatch between ``k + pi'`` and ``lambda_n`` at the quantized ``eps``."""
    eps, s = q.epsilon, q.s
    lhs = dimless.beta_sq - 2 * eps**2 - 2 * eps * s - eps - s
    rhs = 2 * (eps + s) * n + n * (n + 1)
    return abs(lhs - rhs)


def energy_epsilon_form(spec: PotentialSpec, dimless: DimensionlessSet, q: QuantizationResult) -> float:
    return dimless.delta_tilde * dimless.C0 - spec.hbar2_over_2mu * q.epsilon**2 / spec.a**2


def energy_coupling_form(spec: PotentialSpec, dimless: DimensionlessSet, q: QuantizationResult) -> float:
    """``delta C0 - (V0 - delta C1) ((n'^2 + beta^2 - gamma^2) / (2 beta n'))^2``."""
    d = dimless
    factor = (q.n_prime**2 + d.beta_sq - d.gamma_sq) / (2 * math.sqrt(d.beta_sq) * q.n_prime)
    return d.delta_tilde * d.C0 - (spec.V0 - d.delta_tilde * d.C1) * factor**2


def energy_expanded_form(spec: PotentialSpec, n: int, l_tilde: float) -> float:
    """Spectrum written directly in the physical parameters.

    Uses ``mu a^2 V0 / hbar^2 = a^2 V0 / (2 hbar2_over_2mu)``.
    """
    h2m, a, R0, V0 = spec.hbar2_over_2mu, spec.a, spec.R0, spec.V0
    lam = l_tilde * (l_tilde + 1)
    root = math.sqrt(1 + 192 * lam * a**4 / R0**4) - 2 * n - 1
    reduced_depth = a**2 * V0 / (2 * h2m)
    brace = (root**2 / 16
             + 4 * (reduced_depth - 4 * lam * a**3 / R0**3) ** 2 / root**2
             + reduced_depth)
    return h2m * lam / R0**2 * (1 + 12 * a**2 / R0**2) - h2m / a**2 * brace


def _level(spec: PotentialSpec, n: int, l: int) -> tuple[EnergyLevel, DimensionlessSet]:
    lt = effective_l(l, spec.D)
    d = dimensionless(spec, lt)
    q = quantize(d, n)
    E = energy_epsilon_form(spec, d, q) if q.valid else math.nan
    return EnergyLevel(n, l, spec.D, E, q, Method.ANALYTIC, lt), d


def energy(spec: PotentialSpec, n: int, l: int) -> EnergyLevel:
    """Solve level ``(n, l)``; invalid levels carry ``E = nan`` and a failure reason."""
    if int(n) != n or n < 0:
        raise InvalidInputError(f"n must be a non-negative integer, got {n!r}")
    return _level(spec, int(n), l)[0]


def energy_d3(spec: PotentialSpec, n: int, l: int) -> EnergyLevel:
    """Three-dimensional spectrum, with ``l`` entering the closed form directly."""
    if spec.D != 3:
        raise InvalidInputError(f"energy_d3 requires D = 3, got D = {spec.D}")
    level = energy(spec, n, l)
    if not level.valid:
        return level
    E = energy_expanded_form(spec, n, float(l))
    return EnergyLevel(n, l, 3, E, level.quantization, Method.ANALYTIC, float(l))


def candidate_count(gamma_sq: float) -> int:
    """Number of ``n`` with ``n' > 0``."""
    top = n_prime(0, gamma_sq)
    if not top > 0:
        return 0
    return int(math.ceil(top))


def levels_for_l(spec: PotentialSpec, l: int, include_invalid: bool = False) -> list[EnergyLevel]:
    """All levels of one partial wave, ``n`` running while ``n' > 0``.

    With ``include_invalid`` the rejected candidates are returned too; when no
    candidate has ``n' > 0`` the ``n = 0`` rejection is reported.
    """
    d = dimensionless(spec, effective_l(l, spec.D))
    out = []
    for n in range(max(candidate_count(d.gamma_sq), 1)):
        level = energy(spec, n, l)
        if level.valid or include_invalid:
            out.append(level)
    return out


def enumerate_levels(spec: PotentialSpec, l_max: int, include_invalid: bool = False) -> list[EnergyLevel]:
    """Valid levels for ``l = 0..l_max``, sorted by ``(l, n)``."""
    if l_max < 0:
        raise InvalidInputError("l_max must be non-negative")
    out = []
    for l in range(l_max + 1):
        out.extend(levels_for_l(spec, l, include_invalid))
    return out


@dataclass(frozen=True)
class DepthThreshold:
    """Smallest depth with ``beta^2 > gamma^2`` for one partial wave.

    ``printed`` is ``hbar^2 l~(l~+1) a / (2 mu R0^3)``, a factor 8 below ``V0_min``.
    """

    V0_min: float
    no_bound_states_ever: bool
    printed: float


def depth_threshold(spec: PotentialSpec, l_tilde: float) -> DepthThreshold:
    lam = l_tilde * (l_tilde + 1)
    printed = spec.hbar2_over_2mu * lam * spec.a / spec.R0**3
    if lam <= 0:
        return DepthThreshold(0.0, True, printed)
    d = dimensionless(spec, l_tilde)
    return DepthThreshold(d.delta_tilde * (d.C1 + d.C2), False, printed)
