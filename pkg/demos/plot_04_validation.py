"""
Checking the closed forms with a shooting solver
================================================

Numerov integration with node-counting bisection gives an independent answer
for both the Pekeris potential and the exact effective potential.
"""

from woods_saxon_nu import PotentialKind, PotentialSpec, compare_levels, levels_for_l, solve_levels
from woods_saxon_nu.numerov import oscillator_selftest

# First make sure the solver itself is right, on the oscillator.
for n, lt, E, exact in oscillator_selftest():
    print(f"oscillator n={n} l~={lt}  E={E:.10f}  exact={exact}")

spec = PotentialSpec(V0=100.0, R0=1.0, a=0.5, hbar2_over_2mu=1.0, D=10)
analytic = levels_for_l(spec, 0)
pekeris = solve_levels(PotentialKind.PEKERIS, spec, 0, len(analytic) + 1)
exact = solve_levels(PotentialKind.EXACT_EFFECTIVE, spec, 0, len(analytic) + 1)

report = compare_levels(analytic, pekeris)
print("max relative error, closed form vs Pekeris Numerov:", report.max_rel_error)

# The remaining gap to the true potential is the cost of the expansion.
by_n = {lv.n: lv.E for lv in exact}
for lv in analytic:
    print(f"n={lv.n}  closed form {lv.E:10.5f}  true potential {by_n.get(lv.n, float('nan')):10.5f}")
