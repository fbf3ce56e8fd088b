"""
How good is the Pekeris expansion?
==================================

The centrifugal barrier is replaced by a combination of Woods-Saxon-shaped
terms that matches it to second order around the well radius. Here we look at
the error away from that point.
"""

import numpy as np

from woods_saxon_nu import PotentialSpec, effective_l, pekeris_error_profile

spec = PotentialSpec(V0=100.0, R0=1.0, a=0.5, hbar2_over_2mu=1.0, D=10)
lt = effective_l(0, spec.D)

r = np.linspace(0.2, 3.0, 15)
for p in pekeris_error_profile(spec, lt, r):
    print(f"r={p.r:5.2f}  exact={p.exact:10.4f}  pekeris={p.approx:10.4f}  rel={p.rel_diff:.2e}")

# The replacement terms flatten out a few a away from R0 while the true barrier
# keeps changing, so the error is best read on windows measured in units of a.
for a in (0.1, 0.25, 0.5):
    s = spec.replace(a=a)
    errs = []
    for k in (0.25, 0.5, 1.0):
        prof = pekeris_error_profile(s, lt, np.linspace(s.R0 - k * a, s.R0 + k * a, 101))
        errs.append(max(p.rel_diff for p in prof))
    print(f"alpha={s.alpha:5.1f}  max rel error within R0 +- (1/4, 1/2, 1) a: "
          + ", ".join(f"{e:.2e}" for e in errs))
