"""
Bound-state spectrum of a D-dimensional Woods-Saxon well
========================================================

A well of depth 100 and radius 1 with surface thickness 0.5, in units where
hbar^2/2mu = 1, studied in ten dimensions.
"""

import numpy as np

from woods_saxon_nu import PotentialSpec, enumerate_levels, depth_threshold, effective_l

spec = PotentialSpec(V0=100.0, R0=1.0, a=0.5, hbar2_over_2mu=1.0, D=10)
print("alpha = R0/a =", spec.alpha)

# Every partial wave up to l = 3; the analytic spectrum stops at the
# first n whose quantum number n' leaves the admissible window.
for lv in enumerate_levels(spec, l_max=3):
    print(f"l={lv.l}  l~={lv.l_tilde:4.1f}  n={lv.n}  E={lv.E:12.6f}")

# The dimension only enters through l~ = l + (D-3)/2, so raising D at fixed l
# is the same as raising the angular momentum.
for D in range(3, 11):
    lt = effective_l(0, D)
    th = depth_threshold(spec.replace(D=D), lt)
    n_levels = len(enumerate_levels(spec.replace(D=D), 0))
    print(f"D={D:2d}  l~={lt:4.1f}  V0_min={th.V0_min:8.3f}  levels(l=0)={n_levels}")

# In three dimensions the s-wave has no bound state at all.
print(enumerate_levels(spec.replace(D=3), 0))
print(np.isclose(enumerate_levels(spec, 0)[0].E, -29.95212, atol=1e-5))
