import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import eval_jacobi

from oracles import rodrigues

from woods_saxon_nu import (DegenerateWavefunctionError, DomainError, InvalidInputError, PotentialSpec,
                            effective_potential_pekeris, energy, enumerate_levels, jacobi, normalize,
                            u_unnormalized, z_of_r)
from woods_saxon_nu.spectrum import QuantizationResult, levels_for_l
from woods_saxon_nu.wavefunctions import (count_sign_changes, jacobi_all, jacobi_recurrence_residual,
                                          overlap)


def test_z_of_r(demo_spec):
    assert z_of_r(demo_spec, 1.0) == 0.5
    assert 0 < z_of_r(demo_spec, 1e4) < 1e-300 or z_of_r(demo_spec, 1e4) == 0.0
    assert z_of_r(demo_spec, 0.0) == pytest.approx(1 / (1 + math.exp(-2)), rel=1e-15)
    r = np.linspace(0, 20, 1000)
    assert np.all(np.diff(z_of_r(demo_spec, r)) < 0)


def test_jacobi_base_cases():
    x = np.linspace(-1, 1, 11)
    np.testing.assert_array_equal(jacobi(0, 3.2, 0.7, x), np.ones_like(x))
    np.testing.assert_allclose(jacobi(1, 0.0, 0.0, x), x, atol=1e-15)
    assert jacobi(1, 2.0, 1.0, 0.3) == pytest.approx(0.5 + 2.5 * 0.3)
    with pytest.raises(InvalidInputError):
        jacobi(2, -1.5, 0.0, 0.1)


@settings(max_examples=200)
@given(st.integers(0, 12), st.floats(-0.9, 20), st.floats(-0.9, 20), st.floats(-1, 1))
def test_jacobi_against_scipy(n, a, b, x):
    ref = eval_jacobi(n, a, b, x)
    assert jacobi(n, a, b, x) == pytest.approx(ref, rel=1e-10, abs=1e-10 * max(1.0, abs(ref)))


def test_jacobi_against_rodrigues_at_demo_parameters():
    eps, s = 3.91957, 2.47244
    assert jacobi(5, 2 * eps, 2 * s, 0.3) == pytest.approx(rodrigues(5, 2 * eps, 2 * s, 0.3), rel=1e-8)


@pytest.mark.parametrize("n", range(6))
@pytest.mark.parametrize("a, b", [(7.8, 4.9), (1.3, 0.02), (0.5, 6.0)])
def test_jacobi_against_rodrigues(n, a, b):
    for x in (-0.8, -0.1, 0.35, 0.9):
        assert jacobi(n, a, b, x) == pytest.approx(rodrigues(n, a, b, x), rel=1e-8, abs=1e-12)


def test_jacobi_recurrence_residual():
    x = np.linspace(-1, 1, 201)
    assert np.max(jacobi_recurrence_residual(8, 6.1, 0.7, x)) < 1e-12
    assert jacobi_all(3, 1.0, 2.0, x).shape == (4, 201)


def _ode_residual(spec, level, r, h=1e-4):
    q = level.quantization
    u = lambda x: u_unnormalized(spec, q, level.n, x)
    upp = (u(r + h) - 2 * u(r) + u(r - h)) / h**2
    rhs = (effective_potential_pekeris(spec, level.l_tilde, r) - level.E) / spec.hbar2_over_2mu * u(r)
    return np.max(np.abs(upp - rhs)) / np.max(np.abs(rhs))


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_closed_form_solves_pekeris_equation(demo_spec, n):
    level = energy(demo_spec, n, 0)
    r = np.linspace(-3, 6, 301)
    assert _ode_residual(demo_spec, level, r) < 1e-5


def test_wrong_energy_does_not_solve_equation(demo_spec):
    level = energy(demo_spec, 0, 0)
    shifted = type(level)(level.n, level.l, level.D, level.E + 0.1, level.quantization,
                          level.method, level.l_tilde)
    assert _ode_residual(demo_spec, shifted, np.linspace(-3, 6, 301)) > 1e-3


def test_u_asymptotics_and_errors(demo_spec):
    level = energy(demo_spec, 0, 0)
    assert abs(u_unnormalized(demo_spec, level.quantization, 0, 60.0)) < 1e-100
    r = np.linspace(0, 25, 2001)
    assert count_sign_changes(u_unnormalized(demo_spec, level.quantization, 0, r)) == 0
    bad = energy(demo_spec, 5, 0)
    with pytest.raises(DomainError):
        u_unnormalized(demo_spec, bad.quantization, 5, 1.0)


def test_normalization(demo_spec):
    level = energy(demo_spec, 1, 0)
    tab = normalize(demo_spec, level.quantization, 1)
    from scipy.integrate import simpson, trapezoid
    assert trapezoid(tab.u**2, x=tab.r) == pytest.approx(1.0, abs=1e-5)
    assert simpson(tab.u**2, x=tab.r) == pytest.approx(1.0, abs=1e-8)
    assert tab.r[0] == 0 and abs(tab.u[-1]) / np.max(np.abs(tab.u)) < 1e-12
    dense = normalize(demo_spec, level.quantization, 1, points_per_a=400)
    assert dense.C_nl == pytest.approx(tab.C_nl, rel=1e-8)
    assert tab.nodes == 1 and tab.nodes_full_line == 1


def test_normalization_independent_quadrature(demo_spec):
    """Adaptive quadrature of the raw closed form gives the same constant."""
    from scipy.integrate import quad
    level = energy(demo_spec, 2, 0)
    tab = normalize(demo_spec, level.quantization, 2)
    f = lambda r: u_unnormalized(demo_spec, level.quantization, 2, r) ** 2
    val = sum(quad(f, lo, hi, epsabs=0, epsrel=1e-13, limit=200)[0]
              for lo, hi in [(0, 1), (1, 3), (3, 10), (10, tab.r_max)])
    assert tab.C_nl == pytest.approx(1 / math.sqrt(val), rel=1e-9)


def test_inner_boundary_diagnostic_demo(demo_spec):
    # alpha = 2: the closed form is far from vanishing at r = 0
    tab = normalize(demo_spec, energy(demo_spec, 0, 0).quantization, 0)
    assert tab.u0_ratio == pytest.approx(0.22518, abs=5e-5)
    n3 = energy(demo_spec, 3, 0)
    tab3 = normalize(demo_spec, n3.quantization, 3)
    assert tab3.nodes_full_line == 3 and tab3.nodes == 2  # one node sits at r < 0


# u(0) is small only when alpha * s >> 1, i.e. for l~ well above alpha
HIGH_L_SPEC = PotentialSpec(V0=60.155, R0=5.0, a=1.0, hbar2_over_2mu=1.0, D=3)


def test_inner_boundary_for_high_partial_wave():
    levels = levels_for_l(HIGH_L_SPEC, 30)
    assert len(levels) >= 4
    ratios = []
    for lv in levels:
        tab = normalize(HIGH_L_SPEC, lv.quantization, lv.n)
        ratios.append(tab.u0_ratio)
        if tab.u0_ratio < 1e-3:
            assert tab.nodes == lv.n
    assert ratios[0] < 1e-5 and ratios == sorted(ratios)


def test_radial_function_and_origin(demo_spec):
    tab = normalize(demo_spec, energy(demo_spec, 0, 0).quantization, 0)
    k = 50
    assert tab.R[k] == pytest.approx(tab.u[k] * tab.r[k] ** -4.5, rel=1e-14)
    assert tab.metadata["R_origin"] == "quadratic-extrapolation"
    assert np.isfinite(tab.R[0])


def test_monotone_decay_beyond_turning_point(demo_spec):
    for n in range(4):
        level = energy(demo_spec, n, 0)
        tab = normalize(demo_spec, level.quantization, n)
        v = effective_potential_pekeris(demo_spec, 3.5, tab.r)
        outside = tab.r > tab.r[np.nonzero(v < level.E)[0][-1]]
        assert np.all(np.diff(np.abs(tab.u[outside])) <= 0)


def test_orthogonality(demo_spec):
    qs = [energy(demo_spec, n, 0).quantization for n in range(4)]
    for i in range(4):
        for j in range(i + 1, 4):
            assert abs(overlap(demo_spec, qs[i], i, qs[j], j, -80.0, 40.0)) < 1e-8
    lv = levels_for_l(HIGH_L_SPEC, 30)
    assert abs(overlap(HIGH_L_SPEC, lv[0].quantization, 0, lv[1].quantization, 1, 0.0, 65.0)) < 1e-2


def test_degenerate_norm(demo_spec):
    fake = QuantizationResult(n_prime=6001.0, epsilon=6000.0, s=1.0, valid=True)
    with pytest.raises(DegenerateWavefunctionError):
        normalize(demo_spec, fake, 0)


def test_grid_validation(demo_spec):
    q = energy(demo_spec, 0, 0).quantization
    with pytest.raises(InvalidInputError):
        normalize(demo_spec, q, 0, grid=np.linspace(0, 5, 101))
    tab = normalize(demo_spec, q, 0, grid=np.linspace(0, 30, 6001))
    assert tab.r_max == 30
