# # Mapped Chebyshev functions and the Fourier-like basis
#
# The map x = nu*y/sqrt(1-y^2) pulls Chebyshev polynomials out to the whole
# real line.  Weighted by (1+(x/nu)^2)^{-1/2} they become orthonormal in L^2(R).
# Their stiffness matrix is pentadiagonal, and its eigenvectors give a basis
# that is orthogonal in both L^2 and H^1.

# %%
import numpy as np

from mcfrac.basis import MCFBasis
from mcfrac.mcf import mapped_quadrature, stiffness_matrix
from mcfrac.validate import biorthogonality_errors

N, nu = 32, 2.5
b = MCFBasis(N, nu)

# %% The collocation grid spreads out algebraically; the outermost nodes sit far away.
print("innermost nodes:", np.round(b.nodes[N // 2 - 1:N // 2 + 2], 4))
print("outermost node: %.1f" % b.nodes[-1])

# %% The stiffness matrix only couples indices two apart, so it splits into two parity blocks.
S = stiffness_matrix(N, nu).dense()
print("nonzero offsets:", sorted({j - i for i, j in zip(*np.nonzero(np.abs(S) > 1e-14)) if j >= i}))

# %% Eigenvalues grow like N^2 and shrink with larger nu (they scale as 1/nu^2).
print("lambda_min, lambda_max:", b.eigenvalues[0], b.eigenvalues[-1])
print("same N with nu=1.25:", MCFBasis(N, 1.25).eigenvalues[-1] / b.eigenvalues[-1])

# %% Bi-orthogonality under a mapped rule with 2(N+1) points.
em, es = biorthogonality_errors(N, nu)
print(f"L2 Gram deviation {em:.1e}, H1 Gram deviation {es:.1e}")

# %% Quadrature check: the rule integrates exp(-x^2) accurately once N is moderate.
rule = mapped_quadrature(128, nu)
print("int exp(-x^2) dx - sqrt(pi) =", rule.weights @ np.exp(-rule.nodes**2) - np.sqrt(np.pi))
