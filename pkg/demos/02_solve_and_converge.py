# # Solving (-Delta)^s u + gamma u = f and watching the error decay
#
# Manufactured solutions with closed-form fractional Laplacians give exact
# right-hand sides.  In the Fourier-like basis the discrete operator is
# diagonal, so a solve is one forward transform, one division, one synthesis.

# %%
import numpy as np

from mcfrac import analytic
from mcfrac.basis import make_bases
from mcfrac.norms import ConvergenceReport, error_hs, error_l2, error_max, predicted_rate
from mcfrac.solver import solve_fractional
from mcfrac.transforms import sample, synthesize

s, gamma, nu = 0.7, 1.0, 2.5

# %% A single solve in 1D with u = exp(-x^2).
pr = analytic.gaussian_problem(s, 1, gamma)
B = make_bases(64, nu, 1)
u = solve_fractional(pr.rhs, s, gamma, B)
print("max nodal error at N=64:", error_max(synthesize(u), sample(pr.exact, B)))

# %% The rational solution (1+x^2)^{-r} decays algebraically, so its error does too.
for family, prob in [("gaussian", pr), ("rational", analytic.rational_problem(s, 2.3, 1, gamma))]:
    rep = ConvergenceReport(meta={"family": family, "s": s})
    for N in (16, 32, 64, 128, 256):
        B = make_bases(N, nu, 1)
        u = solve_fractional(prob.rhs, s, gamma, B)
        ex = sample(prob.exact, B)
        rep.add(N, error_max(synthesize(u), ex), error_l2(synthesize(u), ex), error_hs(u, ex, s, B))
    print(rep.to_csv(), end="")
    print("fitted H^s order %.2f, predicted %.2f\n" % (rep.slopes()["error_hs"], predicted_rate(family, s, 1, 2.3)))

# %% Two dimensions work the same way with tensor bases.
pr2 = analytic.gaussian_problem(0.5, 2, gamma)
for N in (16, 32, 64):
    B = make_bases(N, nu, 2)
    u = solve_fractional(pr2.rhs, 0.5, gamma, B)
    print(N, "max error %.2e" % error_max(synthesize(u), sample(pr2.exact, B)))
