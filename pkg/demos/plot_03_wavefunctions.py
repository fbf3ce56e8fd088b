"""
Radial wave functions
=====================

The closed forms are Jacobi polynomials in z = 1/(1+exp((r-R0)/a)) dressed
with powers of z and 1-z. We normalize them on r >= 0 and look at their nodes.
"""

import numpy as np

from woods_saxon_nu import PotentialSpec, levels_for_l, normalize

spec = PotentialSpec(V0=100.0, R0=1.0, a=0.5, hbar2_over_2mu=1.0, D=10)

for lv in levels_for_l(spec, 0):
    t = normalize(spec, lv.quantization, lv.n)
    peak = t.r[np.argmax(np.abs(t.u))]
    print(f"n={lv.n}  C={t.C_nl:.4e}  r_max={t.r_max:.1f}  peak at r={peak:.3f}  "
          f"nodes(r>0)={t.nodes}  nodes(all r)={t.nodes_full_line}  u(0)/max|u|={t.u0_ratio:.3f}")

# With alpha = 2 the functions do not vanish at the origin: the solutions are
# eigenfunctions of the Pekeris potential on the whole real line, and part of
# the probability sits at r < 0. Only when l~ is large compared with alpha does
# u(0) become negligible.
high = PotentialSpec(V0=60.155, R0=5.0, a=1.0, hbar2_over_2mu=1.0, D=3)
lv = levels_for_l(high, 30)[0]
print("l=30, alpha=5:", normalize(high, lv.quantization, lv.n).u0_ratio)
