"""Numerov shooting solver used as an independent check on the closed forms.

Levels are located by node counting: for a Dirichlet problem on
``[r_min, r_max]`` the number of interior zeros of the outward solution at
energy ``E`` equals the number of eigenvalues below ``E``.  A node-count
bisection isolates a bracket ``[lo, hi]`` with ``n`` and ``n + 1`` zeros, and
the terminal value ``u(r_max)`` (which changes sign exactly once inside it)
is then driven to zero with Brent's method.

The Pekeris potential is solved on the full real line, the domain on which
the closed-form eigenfunctions live; the exact effective potential is solved
on the half-line with the regular ``r^(l~+1)`` seed.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .core import PotentialSpec, effective_l, effective_potential_exact
from .errors import GridTooCoarseError, InvalidInputError
from .pekeris import effective_potential_pekeris, pekeris_asymptotes
from .spectrum import EnergyLevel

_RESCALE_AT = 1e150
_BRACKET_NUDGE = 1e-9
_DECAY_LENGTHS = 30.0
_MAX_DOMAIN_A = 4000.0


class PotentialKind(str, enum.Enum):
    EXACT_EFFECTIVE = "EXACT_EFFECTIVE"
    PEKERIS = "PEKERIS"


@dataclass(frozen=True)
class ShootingConfig:
    """Uniform grid and energy search window.

    ``r_min`` may be negative; that is only meaningful for potentials defined
    on the whole line (the Pekeris form).
    """

    h: float
    r_min: float
    r_max: float
    energy_bracket: tuple[float, float]
    tol_E: float = 1e-10
    max_iter: int = 200

    def __post_init__(self):
        if not (self.h > 0 and self.r_min < self.r_max and self.tol_E > 0):
            raise InvalidInputError(f"inconsistent shooting configuration: {self}")
        lo, hi = self.energy_bracket
        if not lo < hi:
            raise InvalidInputError(f"energy bracket must satisfy E_lo < E_hi, got {self.energy_bracket}")

    def grid(self) -> np.ndarray:
        steps = int(round((self.r_max - self.r_min) / self.h))
        return self.r_min + self.h * np.arange(steps + 1)


@dataclass(frozen=True)
class OracleLevel:
    n: int
    E: float
    converged: bool
    iterations: int
    potential_kind: Optional[PotentialKind] = None
    bracket_width: float = math.nan


@dataclass
class NumerovResult:
    r: np.ndarray
    u: np.ndarray
    nodes: int
    terminal: float
    rescales: int


def _seeds(r0: float, h: float, seed_power: Optional[float]) -> tuple[float, float]:
    if seed_power is None:
        return 0.0, float(h)
    return float(r0) ** seed_power, float(r0 + h) ** seed_power


def _shoot_py(V, E, c, u0, u1):
    """Numerov recursion with ``f = 1 + c (E - V)``; returns (nodes, u_end / max|u|, rescales)."""
    nodes = 0
    sign = 0
    if u1 != 0:
        sign = 1 if u1 > 0 else -1
    elif u0 != 0:
        sign = 1 if u0 > 0 else -1
    peak = max(abs(u0), abs(u1))
    rescales = 0
    f0 = 1.0 + c * (E - V[0])
    f1 = 1.0 + c * (E - V[1])
    for i in range(1, len(V) - 1):
        f2 = 1.0 + c * (E - V[i + 1])
        u2 = ((12.0 - 10.0 * f1) * u1 - f0 * u0) / f2
        u0 = u1
        u1 = u2
        f0 = f1
        f1 = f2
        a2 = abs(u2)
        if a2 > peak:
            peak = a2
            if peak > _RESCALE_AT:
                u0 /= peak
                u1 /= peak
                peak = 1.0
                rescales += 1
        if u2 != 0:
            s2 = 1 if u2 > 0 else -1
            if sign != 0 and s2 != sign:
                nodes += 1
            sign = s2
    return nodes, u1 / peak, rescales


try:
    from numba import njit
except ImportError:  # pragma: no cover - pure Python is correct, only slower
    _shoot = _shoot_py
else:
    _shoot = njit(cache=True)(_shoot_py)


def numerov_integrate(potential: Callable, E: float, cfg: ShootingConfig,
                      hbar2_over_2mu: float = 1.0,
                      seed_power: Optional[float] = None) -> NumerovResult:
    """Integrate ``u'' = (V(r) - E) u / hbar2_over_2mu`` outward over ``cfg.grid()``.

    With ``seed_power=None`` the start is ``u(r_min) = 0, u(r_min + h) = h``;
    otherwise the regular power law ``u = r^seed_power`` seeds the first two points.
    The returned trajectory is scaled so that ``max|u| = 1``.
    """
    r = cfg.grid()
    k2 = (E - np.asarray(potential(r), dtype=float)) / hbar2_over_2mu
    f = 1.0 + cfg.h**2 / 12.0 * k2
    u = np.empty_like(r)
    u[0], u[1] = _seeds(r[0], cfg.h, seed_power)
    rescales = 0
    for i in range(1, len(r) - 1):
        u[i + 1] = ((12.0 - 10.0 * f[i]) * u[i] - f[i - 1] * u[i - 1]) / f[i + 1]
        if abs(u[i + 1]) > _RESCALE_AT:
            u[: i + 2] /= np.max(np.abs(u[: i + 2]))
            rescales += 1
    u /= np.max(np.abs(u))
    signs = np.sign(u[u != 0])
    return NumerovResult(r, u, int(np.count_nonzero(signs[1:] != signs[:-1])), float(u[-1]), rescales)


class _Shooter:
    def __init__(self, potential, cfg: ShootingConfig, hbar2_over_2mu: float, seed_power):
        self.cfg = cfg
        r = cfg.grid()
        self.V = np.asarray(potential(r), dtype=float)
        self.c = float(cfg.h**2 / (12.0 * hbar2_over_2mu))
        self.seeds = _seeds(r[0], cfg.h, seed_power)
        self.evaluated: dict[float, int] = {}

    def __call__(self, E: float):
        nodes, terminal, _ = _shoot(self.V, float(E), self.c, *self.seeds)
        self.evaluated[E] = nodes
        return nodes, terminal

    def bracket(self, n: int) -> tuple[float, float]:
        below = [E for E, k in self.evaluated.items() if k <= n]
        above = [E for E, k in self.evaluated.items() if k > n]
        lo, hi = max(below), min(above)
        if lo > hi:
            raise GridTooCoarseError(
                f"node count is not monotone in energy near n={n}; reduce the grid step h")
        return lo, hi


def find_levels(potential: Callable, cfg: ShootingConfig, n_values, hbar2_over_2mu: float = 1.0,
                seed_power: Optional[float] = None) -> list[OracleLevel]:
    """Locate the eigenvalues with the requested node counts inside ``cfg.energy_bracket``.

    Node counts with no eigenvalue in the bracket are skipped.
    """
    shoot = _Shooter(potential, cfg, hbar2_over_2mu, seed_power)
    E_lo, E_hi = cfg.energy_bracket
    shoot(E_lo)
    top, _ = shoot(E_hi)
    levels = []
    for n in sorted(n_values):
        if top <= n or shoot.evaluated[E_lo] > n:
            continue
        lo, hi = shoot.bracket(n)
        iterations = 0
        while not (shoot.evaluated[lo] == n and shoot.evaluated[hi] == n + 1):
            iterations += 1
            if iterations > cfg.max_iter:
                raise GridTooCoarseError(f"could not isolate level n={n}; reduce the grid step h")
            mid = 0.5 * (lo + hi)
            shoot(mid)
            lo, hi = shoot.bracket(n)
        xtol = cfg.tol_E * max(min(abs(lo), abs(hi)), 1.0)
        E, info = brentq(lambda e: shoot(e)[1], lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps,
                         maxiter=cfg.max_iter, full_output=True, disp=False)
        levels.append(OracleLevel(n, float(E), bool(info.converged), iterations + info.iterations,
                                  bracket_width=2 * xtol))
    return levels


def _decay_extent(spec: PotentialSpec, gap: float) -> float:
    """Distance needed for a bound tail decaying at ``sqrt(gap / hbar2_over_2mu)``."""
    base = 40 * spec.a
    if gap <= 0:
        return _MAX_DOMAIN_A * spec.a
    return min(max(base, _DECAY_LENGTHS * math.sqrt(spec.hbar2_over_2mu / gap)), _MAX_DOMAIN_A * spec.a)


def _extent(spec: PotentialSpec, gap: Optional[float], widest: bool) -> float:
    if widest:
        return _MAX_DOMAIN_A * spec.a
    return 40 * spec.a if gap is None else _decay_extent(spec, gap)


def _nudge_down(E: float) -> float:
    return E - _BRACKET_NUDGE * max(abs(E), 1.0)


def default_config(kind: PotentialKind, spec: PotentialSpec, l: int, h: Optional[float] = None,
                   E_target: Optional[float] = None, tol_E: float = 1e-10,
                   widest: bool = False) -> ShootingConfig:
    """Default grid: ``h = a/200``; the domain reaches 30 decay lengths past ``R0``
    at ``E_target`` (at least 40 ``a``, at most 4000 ``a``; ``widest`` takes the maximum)."""
    h = spec.a / 200 if h is None else h
    lt = effective_l(l, spec.D)
    E_lo = -spec.V0 * (1 + _BRACKET_NUDGE)
    if kind is PotentialKind.EXACT_EFFECTIVE:
        E_hi = _nudge_down(0.0)
        right = _extent(spec, None if E_target is None else -E_target, widest)
        r_min = 0.0 if lt * (lt + 1) == 0 else h
        return ShootingConfig(h, r_min, spec.R0 + right, (E_lo, E_hi), tol_E)
    V_left, V_right = pekeris_asymptotes(spec, lt)
    E_hi = _nudge_down(min(V_left, V_right))
    left = _extent(spec, None if E_target is None else V_left - E_target, widest)
    right = _extent(spec, None if E_target is None else V_right - E_target, widest)
    r = np.linspace(spec.R0 - left, spec.R0 + right, 20001)
    floor = min(E_lo, float(np.min(effective_potential_pekeris(spec, lt, r))))
    E_lo = floor - _BRACKET_NUDGE * max(abs(floor), 1.0)
    if not E_lo < E_hi:
        E_hi = E_lo + _BRACKET_NUDGE * max(abs(E_lo), 1.0)
    return ShootingConfig(h, spec.R0 - left, spec.R0 + right, (E_lo, E_hi), tol_E)


def _problem(kind: PotentialKind, spec: PotentialSpec, l: int):
    lt = effective_l(l, spec.D)
    if kind is PotentialKind.PEKERIS:
        return (lambda r: effective_potential_pekeris(spec, lt, r)), None
    if lt * (lt + 1) == 0:
        return (lambda r: effective_potential_exact(spec, lt, r)), None
    return (lambda r: effective_potential_exact(spec, lt, r)), lt + 1


def solve_levels(kind: PotentialKind, spec: PotentialSpec, l: int, n_max: int,
                 cfg: Optional[ShootingConfig] = None, h: Optional[float] = None) -> list[OracleLevel]:
    """Numerov levels ``n = 0..n_max`` of one partial wave.

    Without ``cfg`` the domain is sized automatically: a probe on the widest
    domain (4000 ``a`` each side) counts the levels and locates the most weakly
    bound one, then all levels are solved on a domain reaching 30 decay lengths
    of that level.  States bound so weakly that even the widest box pushes them
    above threshold are not found.
    """
    if n_max < 0:
        raise InvalidInputError("n_max must be non-negative")
    kind = PotentialKind(kind)
    potential, seed = _problem(kind, spec, l)
    n_values = range(n_max + 1)
    if cfg is None:
        probe = default_config(kind, spec, l, h, widest=True)
        shoot = _Shooter(potential, probe, spec.hbar2_over_2mu, seed)
        available = min(shoot(probe.energy_bracket[1])[0], n_max + 1)
        if available == 0:
            return []
        top = find_levels(potential, probe, [available - 1], spec.hbar2_over_2mu, seed)
        cfg = default_config(kind, spec, l, h, E_target=top[0].E) if top else probe
        levels = find_levels(potential, cfg, n_values, spec.hbar2_over_2mu, seed)
        if len(levels) < available:
            cfg = probe
            levels = find_levels(potential, cfg, n_values, spec.hbar2_over_2mu, seed)
    else:
        levels = find_levels(potential, cfg, n_values, spec.hbar2_over_2mu, seed)
    return [replace(lv, potential_kind=kind) for lv in levels]


def eigenfunction(kind: PotentialKind, spec: PotentialSpec, l: int, E: float,
                  cfg: Optional[ShootingConfig] = None) -> NumerovResult:
    """Trajectory at a converged level energy, with the diverging tail clipped.

    Past the outer turning point the residual growing solution is cut at the
    minimum of ``|u|``; the result is rescaled to ``max|u| = 1``.
    """
    kind = PotentialKind(kind)
    potential, seed = _problem(kind, spec, l)
    cfg = cfg or default_config(kind, spec, l, E_target=E)
    res = numerov_integrate(potential, E, cfg, spec.hbar2_over_2mu, seed)
    allowed = np.nonzero(np.asarray(potential(res.r)) < E)[0]
    if allowed.size:
        start = allowed[-1]
        cut = start + int(np.argmin(np.abs(res.u[start:])))
        res.u[cut:] = 0.0
        res.u /= np.max(np.abs(res.u))
        signs = np.sign(res.u[res.u != 0])
        res.nodes = int(np.count_nonzero(signs[1:] != signs[:-1]))
        res.terminal = float(res.u[-1])
    return res


@dataclass(frozen=True)
class ComparisonRow:
    n: int
    E_analytic: float
    E_oracle: float
    delta: float
    rel_error: float


@dataclass
class ComparisonReport:
    rows: list[ComparisonRow] = field(default_factory=list)
    analytic_only: list[int] = field(default_factory=list)
    oracle_only: list[int] = field(default_factory=list)

    @property
    def max_rel_error(self) -> float:
        return max((row.rel_error for row in self.rows), default=0.0)


def compare_levels(analytic: list[EnergyLevel], oracle: list[OracleLevel]) -> ComparisonReport:
    """Pair analytic and numerical levels by node count ``n``.

    The relative error is ``|dE| / max(|E_analytic|, 1)``.
    """
    a_map = {lv.n: lv.E for lv in analytic if lv.valid}
    o_map = {lv.n: lv.E for lv in oracle}
    report = ComparisonReport()
    for n in sorted(a_map.keys() & o_map.keys()):
        d = o_map[n] - a_map[n]
        report.rows.append(ComparisonRow(n, a_map[n], o_map[n], d, abs(d) / max(abs(a_map[n]), 1.0)))
    report.analytic_only = sorted(a_map.keys() - o_map.keys())
    report.oracle_only = sorted(o_map.keys() - a_map.keys())
    return report


def oscillator_selftest(h: float = 0.01, r_max: float = 8.0, n_values=(0, 1, 2),
                        l_tildes=(0, 1)) -> list[tuple[int, float, float, float]]:
    """Levels of ``V = r^2`` (``hbar2_over_2mu = 1``), exact ``E = 4n + 2l~ + 3``.

    Returns ``(n, l_tilde, E_numerov, E_exact)`` tuples.
    """
    out = []
    for lt in l_tildes:
        potential = (lambda r, lt=lt: r**2 + lt * (lt + 1) / r**2) if lt else (lambda r: r**2)
        r_min = h if lt else 0.0
        top = 4 * max(n_values) + 2 * lt + 5
        cfg = ShootingConfig(h, r_min, r_max, (0.0, float(top)), tol_E=1e-12)
        for lv in find_levels(potential, cfg, n_values, 1.0, lt + 1 if lt else None):
            out.append((lv.n, float(lt), lv.E, 4.0 * lv.n + 2 * lt + 3))
    return out
