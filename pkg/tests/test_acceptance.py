"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line.

The lines are collected in the terminal summary under "acceptance criteria".
"""
import json
import math
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy.integrate import simpson

from oracles import rodrigues
from sweep import L_MAX, random_specs

from woods_saxon_nu import (PotentialKind, PotentialSpec, coefficients, compare_levels, dimensionless,
                            effective_l, enumerate_levels, jacobi, n_prime, normalize, solve_levels)
from woods_saxon_nu.numerov import oscillator_selftest
from woods_saxon_nu.spectrum import (energy_coupling_form, energy_d3, energy_epsilon_form,
                                     energy_expanded_form, levels_for_l, quantization_residual)
from woods_saxon_nu.wavefunctions import jacobi_recurrence_residual, u_unnormalized

DEMO_ARGS = ["--V0", "100", "--R0", "1", "--a", "0.5", "--hbar2-over-2mu", "1", "--D", "10"]


def rel(x, y):
    return abs(x - y) / max(abs(x), abs(y), 1e-300)


@pytest.fixture(scope="module")
def sweep():
    specs = random_specs()
    levels = [(s, lv) for s in specs for lv in enumerate_levels(s, L_MAX)]
    return specs, levels


@pytest.fixture
def report(request):
    lines = request.config._acceptance_lines

    def emit(k, ok, detail):
        lines.append((k, f"CRITERION {k}: {'PASS' if ok else 'FAIL'} {detail}"))
        print(lines[-1][1])
        assert ok, detail

    return emit


def test_criterion_01_coefficient_identities(report):
    rng = np.random.default_rng(1)
    worst = 0.0
    for alpha in rng.uniform(1.5, 50.0, 100):
        c = coefficients(alpha)
        worst = max(worst,
                    rel(c.C0 + c.C1 / 2 + c.C2 / 4, 1.0),
                    rel(alpha / 4 * (c.C1 + c.C2), 2.0),
                    rel(alpha**2 / 16 * c.C2, 3.0))
    report(1, worst < 1e-10, f"Pekeris coefficient identities, 100 alphas, worst rel {worst:.2e} (tol 1e-10)")


def test_criterion_02_quantization_residual(report, sweep):
    specs, levels = sweep
    worst_res = worst_id = 0.0
    for spec, lv in levels:
        d = dimensionless(spec, lv.l_tilde)
        q = lv.quantization
        worst_res = max(worst_res, quantization_residual(d, q, lv.n))
        worst_id = max(worst_id, rel(q.epsilon + q.s, q.n_prime),
                       rel(q.epsilon - q.s, (d.beta_sq - d.gamma_sq) / q.n_prime))
    ok = len(specs) >= 500 and levels and worst_res < 1e-9 and worst_id < 1e-10
    report(2, ok, f"{len(specs)} specs, {len(levels)} levels, max residual {worst_res:.2e} (tol 1e-9), "
                  f"eps/s identities {worst_id:.2e} (tol 1e-10)")


def test_criterion_03_energy_forms_agree(report, sweep):
    _, levels = sweep
    worst = 0.0
    for spec, lv in levels:
        d = dimensionless(spec, lv.l_tilde)
        forms = (energy_epsilon_form(spec, d, lv.quantization),
                 energy_coupling_form(spec, d, lv.quantization),
                 energy_expanded_form(spec, lv.n, lv.l_tilde))
        worst = max(worst, rel(forms[0], forms[1]), rel(forms[0], forms[2]), rel(forms[1], forms[2]))
    report(3, worst < 1e-10, f"three energy forms on {len(levels)} levels, worst pairwise rel {worst:.2e} "
                             f"(tol 1e-10)")


def test_criterion_04_three_dimensional_form(report, sweep):
    _, levels = sweep
    d3 = [(s, lv) for s, lv in levels if s.D == 3]
    worst = max(rel(energy_d3(s, lv.n, lv.l).E, lv.E) for s, lv in d3)
    report(4, bool(d3) and worst < 1e-12, f"energy_d3 vs energy on {len(d3)} D=3 levels, worst rel "
                                          f"{worst:.2e} (tol 1e-12)")


def test_criterion_05_no_s_wave_in_three_dimensions(report, sweep):
    specs, _ = sweep
    d3 = [s for s in specs if s.D == 3]
    found = sum(len(levels_for_l(s, 0)) for s in d3)
    report(5, bool(d3) and found == 0, f"{len(d3)} D=3 specs, {found} s-wave levels")


def test_criterion_06_demo_oracle_agreement(report, demo_spec):
    start = time.perf_counter()
    analytic = levels_for_l(demo_spec, 0)
    oracle = solve_levels(PotentialKind.PEKERIS, demo_spec, 0, len(analytic) + 1)
    cmp = compare_levels(analytic, oracle)
    elapsed = time.perf_counter() - start
    E0 = analytic[0].E
    ok = (len(analytic) == 4 and abs(E0 + 29.95) < 5e-3 and not cmp.analytic_only and not cmp.oracle_only
          and len(cmp.rows) == 4 and cmp.max_rel_error < 1e-5 and elapsed < 10)
    report(6, ok, f"demo: {len(analytic)} levels, E0 = {E0:.6f}, Pekeris Numerov matched "
                  f"{len(cmp.rows)} by node count, max rel {cmp.max_rel_error:.2e} (tol 1e-5), {elapsed:.1f} s")


def test_criterion_07_oscillator(report):
    fine = oscillator_selftest(h=0.01)
    worst = max(rel(E, exact) for _, _, E, exact in fine)
    errs = []
    for h in (0.08, 0.04, 0.02):
        errs.append(max(abs(E - exact) for _, _, E, exact in oscillator_selftest(h=h)))
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    ok = len(fine) == 6 and worst < 1e-6 and min(orders) >= 3.9
    report(7, ok, f"oscillator 6 levels, worst rel {worst:.2e} (tol 1e-6), observed orders "
                  f"{orders[0]:.2f}, {orders[1]:.2f} (need >= 4)")


def test_criterion_08_wavefunction_laws(report, sweep):
    _, levels = sweep
    norm_err = 0.0
    node_bad = half_bad = 0
    for spec, lv in levels:
        table = normalize(spec, lv.quantization, lv.n)
        # re-evaluate on a grid of twice the density, independent of the table's quadrature
        r = np.linspace(0.0, table.r_max, 2 * (len(table.r) - 1) + 1)
        u = table.C_nl * u_unnormalized(spec, lv.quantization, lv.n, r)
        norm_err = max(norm_err, abs(simpson(u**2, x=r) - 1.0))
        node_bad += table.nodes_full_line != lv.n
        half_bad += table.nodes != lv.n
    x = np.linspace(-0.999, 0.999, 201)
    rec = max(float(np.max(jacobi_recurrence_residual(n, a, b, x)))
              for n in range(2, 30) for a, b in ((0.5, 0.5), (7.8, 4.9), (20.0, 1.0), (2.0, 40.0)))
    rod = 0.0
    for n in range(6):
        for a, b in ((0.0, 0.0), (7.83914, 4.9449), (3.5, 12.0)):
            for xv in (-0.9, -0.3, 0.2, 0.8):
                ref = rodrigues(n, a, b, xv)
                rod = max(rod, abs(jacobi(n, a, b, xv) - ref) / max(abs(ref), 1e-12))
    ok = norm_err < 1e-8 and node_bad == 0 and rec < 1e-12 and rod < 1e-8
    report(8, ok, f"{len(levels)} levels: norm err {norm_err:.2e} (tol 1e-8), full-line nodes != n on "
                  f"{node_bad} (half-line r>0 count differs on {half_bad}), recurrence {rec:.2e} "
                  f"(tol 1e-12), Rodrigues {rod:.2e} (tol 1e-8)")


def _onset(spec, l, lo, hi, rtol=1e-10):
    while hi - lo > rtol * hi:
        mid = 0.5 * (lo + hi)
        if levels_for_l(spec.replace(V0=mid), l):
            hi = mid
        else:
            lo = mid
    return hi


def test_criterion_09_depth_threshold(report, demo_spec):
    cases = [(demo_spec, 0), (demo_spec, 2),
             (PotentialSpec(V0=1.0, R0=5.0, a=0.5, hbar2_over_2mu=1.0, D=3), 1),
             (PotentialSpec(V0=1.0, R0=3.0, a=1.0, hbar2_over_2mu=0.3, D=6), 0),
             (PotentialSpec(V0=1.0, R0=8.0, a=0.4, hbar2_over_2mu=20.0, D=4), 3)]
    worst = 0.0
    for spec, l in cases:
        d = dimensionless(spec, effective_l(l, spec.D))
        expected = d.delta_tilde * (d.C1 + d.C2)
        # the n = 0 window is expected < V0 < expected + width
        width = n_prime(0, d.gamma_sq) ** 2 * spec.hbar2_over_2mu / spec.a**2
        found = _onset(spec, l, 0.5 * expected, expected + 0.5 * width)
        worst = max(worst, rel(found, expected))
    report(9, worst < 1e-8, f"onset bisected on {len(cases)} channels, worst rel offset from "
                            f"delta(C1+C2) {worst:.2e} (tol 1e-8)")


def _cli(*argv):
    return subprocess.run([sys.executable, "-m", "woods_saxon_nu", *argv], capture_output=True,
                          check=True).stdout


def test_criterion_10_cli_determinism(report):
    runs = [("levels", *DEMO_ARGS, "--l-max", "3"),
            ("levels", *DEMO_ARGS, "--format", "json"),
            ("scan", *DEMO_ARGS, "--param", "V0", "--start", "60", "--stop", "120", "--num", "7"),
            ("wavefunction", *DEMO_ARGS, "--n", "2", "--l", "0")]
    identical = all(_cli(*argv) == _cli(*argv) for argv in runs)
    json.loads(_cli(*runs[1]))
    report(10, identical, f"{len(runs)} CLI invocations run twice, byte-identical: {identical}")
