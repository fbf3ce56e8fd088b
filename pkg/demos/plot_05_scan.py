"""
Where do bound states appear?
=============================

Sweeping the depth shows the lowest level appearing at V0 = delta~ (C1 + C2)
and sinking as the well deepens.
"""

import numpy as np

from woods_saxon_nu import PotentialSpec, depth_threshold, effective_l, levels_for_l, pekeris_asymptotes

spec = PotentialSpec(V0=100.0, R0=1.0, a=0.5, hbar2_over_2mu=1.0, D=10)
th = depth_threshold(spec, effective_l(0, spec.D))
print("onset", th.V0_min)

for V0 in np.linspace(th.V0_min - 2, th.V0_min + 40, 8):
    levels = levels_for_l(spec.replace(V0=float(V0)), 0)
    print(f"V0={V0:7.2f}  " + "  ".join(f"{lv.E:9.4f}" for lv in levels))

# Levels with E > 0 are not a bug: the Pekeris form tends to delta~ C0 rather
# than zero at large r, and everything below that asymptote is bound in it.
print("large-r asymptote of the approximate potential:", pekeris_asymptotes(spec, effective_l(0, spec.D))[1])

# The same table comes from the command line:
#   woods-saxon-nu scan --V0 100 --R0 1 --a 0.5 --D 10 --param V0 --start 61 --stop 103 --num 8
