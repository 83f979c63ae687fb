# # A multi-term operator
#
# (-Delta)^0.77 + 2(-Delta)^0.33 + sqrt(2)(-Delta)^0.21 + I, applied to
# u = (1+x^2)^{-3pi/4}.  Each term is diagonal in the same basis, so the
# operator symbol is just the sum of the individual symbols.

# %%
import math

import numpy as np

from mcfrac import analytic
from mcfrac.basis import MCFBasis
from mcfrac.solver import FracOperatorSpec, solve_fractional, solve_multiterm
from mcfrac.transforms import sample, synthesize

spec = FracOperatorSpec.parse_terms("1:0.77,2:0.33,1.41421356237:0.21,1:0", gamma=0.0)
terms = spec.terms
pr = analytic.rational_problem(0.77, 3 * math.pi / 4, 1, 0.0, terms)

for N in (16, 32, 64, 128, 256):
    B = (MCFBasis(N, 2.5),)
    u = synthesize(solve_multiterm(pr.rhs, spec, B))
    print(f"N={N:4d}  max error {np.max(np.abs(u.values - sample(pr.exact, B))):.2e}")

# %% With one term the multi-term path reproduces the single-order solver exactly.
B = (MCFBasis(64, 2.5),)
a = solve_fractional(analytic.table_source, 0.6, 1.0, B).coeffs
c = solve_multiterm(analytic.table_source, FracOperatorSpec(((1.0, 0.6),), 1.0), B).coeffs
print("bitwise equal:", np.array_equal(a, c))
