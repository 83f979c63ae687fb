"""Per-dimension MCF basis bundling grid, stiffness and Fourier-like data."""

from __future__ import annotations

from functools import cached_property

from .fourier_like import FourierLikeBasis1d, eigendecompose
from .mcf import MappedRule, StiffnessMatrix, mapped_quadrature, stiffness_matrix


class MCFBasis:
    """Scaled MCF space V_N on one axis.

    The eigendecomposition is computed on first use only, so pure
    interpolation/synthesis work never pays for it.
    """

    def __init__(self, N: int, nu: float = 1.0):
        N = int(N)
        if N < 0:
            raise ValueError(f"degree must be non-negative, got {N}")
        if not nu > 0:
            raise ValueError(f"scaling factor must be positive, got {nu}")
        self.N = N
        self.nu = float(nu)

    def __repr__(self) -> str:
        return f"MCFBasis(N={self.N}, nu={self.nu})"

    def __eq__(self, other) -> bool:
        return isinstance(other, MCFBasis) and (self.N, self.nu) == (other.N, other.nu)

    def __hash__(self) -> int:
        return hash((self.N, self.nu))

    @property
    def size(self) -> int:
        return self.N + 1

    @cached_property
    def rule(self) -> MappedRule:
        return mapped_quadrature(self.N, self.nu)

    @property
    def nodes(self):
        return self.rule.nodes

    @property
    def weights(self):
        return self.rule.weights

    @cached_property
    def stiffness(self) -> StiffnessMatrix:
        return stiffness_matrix(self.N, self.nu)

    @cached_property
    def fourier_like(self) -> FourierLikeBasis1d:
        return eigendecompose(self.stiffness)

    @property
    def eigenvalues(self):
        return self.fourier_like.eigenvalues

    @property
    def eigenvectors(self):
        return self.fourier_like.eigenvectors

    @classmethod
    def from_fourier_like(cls, fl: FourierLikeBasis1d) -> "MCFBasis":
        """Rebuild a basis around a previously serialized eigendecomposition."""
        b = cls(fl.N, fl.nu)
        b.__dict__["fourier_like"] = fl
        return b


def make_bases(N: int, nu: float = 1.0, d: int = 1) -> tuple[MCFBasis, ...]:
    """The same 1-D basis shared across ``d`` dimensions."""
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    b = MCFBasis(N, nu)
    return (b,) * d
