"""Bound states of the D-dimensional Woods-Saxon well.

Closed-form energies and eigenfunctions of the Pekeris-approximated problem
(Nikiforov-Uvarov quantization), with a Numerov shooting solver to check them.
"""
from .core import (Channel, DimensionlessSet, PotentialSpec, centrifugal, dimensionless,
                   effective_l, effective_potential_exact, woods_saxon)
from .errors import (DegenerateWavefunctionError, DivergenceError, DomainError,
                     GridTooCoarseError, InvalidInputError)
from .numerov import (OracleLevel, PotentialKind, ShootingConfig, compare_levels,
                      numerov_integrate, solve_levels)
from .pekeris import (PekerisCoefficients, centrifugal_series, coefficients,
                      effective_potential_pekeris, pekeris_asymptotes, pekeris_error_profile,
                      pekeris_series)
from .spectrum import (EnergyLevel, FailureReason, Method, QuantizationResult, depth_threshold,
                       energy, energy_d3, enumerate_levels, levels_for_l, n_prime,
                       quantization_residual, quantize)
from .wavefunctions import RadialTable, jacobi, normalize, u_unnormalized, z_of_r

__version__ = "0.1.0"
