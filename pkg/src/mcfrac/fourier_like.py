"""Fourier-like MCF basis: eigenpairs of the stiffness matrix.

The columns e_p of the orthonormal eigenvector matrix E define
``That_p = sum_j e_jp T_j``, a basis of V_N that is orthonormal in L^2 and
orthogonal in H^1 with (That_p', That_q') = lambda_p delta_pq.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import linalg

from .mcf import StiffnessMatrix, mcf_derivative_vandermonde, mcf_vandermonde

FORMAT_VERSION = 1


class EigenSolverError(RuntimeError):
    """Raised when the banded symmetric eigensolver fails."""


@dataclass(frozen=True)
class FourierLikeBasis1d:
    N: int
    nu: float
    eigenvalues: np.ndarray      # ascending
    eigenvectors: np.ndarray     # column p is e_p

    def _check_index(self, p):
        p = np.asarray(p)
        if np.any(p < 0) or np.any(p > self.N):
            raise IndexError(f"Fourier-like index out of range 0..{self.N}: {p}")

    def values(self, x) -> np.ndarray:
        """Matrix of That_p(x) for all p, shape x.shape + (N+1,)."""
        return mcf_vandermonde(self.N, x, self.nu) @ self.eigenvectors

    def derivatives(self, x) -> np.ndarray:
        return mcf_derivative_vandermonde(self.N, x, self.nu) @ self.eigenvectors

    def eval(self, p: int, x):
        self._check_index(p)
        v = mcf_vandermonde(self.N, x, self.nu) @ self.eigenvectors[:, p]
        return float(v) if np.ndim(v) == 0 else v

    def save(self, path) -> None:
        payload = {
            "format": "mcfrac.fourier_like",
            "version": FORMAT_VERSION,
            "N": self.N,
            "nu": self.nu,
            "eigenvalues": self.eigenvalues.tolist(),
            "eigenvectors": self.eigenvectors.tolist(),
        }
        Path(path).write_text(json.dumps(payload))

    @classmethod
    def load(cls, path) -> "FourierLikeBasis1d":
        payload = json.loads(Path(path).read_text())
        if payload.get("format") != "mcfrac.fourier_like":
            raise ValueError(f"{path} is not a serialized Fourier-like basis")
        if payload.get("version") != FORMAT_VERSION:
            raise ValueError(f"unsupported basis file version {payload.get('version')}")
        N = int(payload["N"])
        lam = np.asarray(payload["eigenvalues"], dtype=float)
        E = np.asarray(payload["eigenvectors"], dtype=float)
        if lam.shape != (N + 1,) or E.shape != (N + 1, N + 1):
            raise ValueError("basis file has inconsistent array shapes")
        return cls(N, float(payload["nu"]), lam, E)


def _fix_signs(E: np.ndarray) -> np.ndarray:
    k = np.argmax(np.abs(E), axis=0)
    signs = np.sign(E[k, np.arange(E.shape[1])])
    signs[signs == 0] = 1.0
    return E * signs


def eigendecompose(S: StiffnessMatrix) -> FourierLikeBasis1d:
    """Eigenpairs of S via its even- and odd-index banded sub-blocks.

    Each parity block is pentadiagonal; LAPACK reduces it to tridiagonal form
    and finishes with implicit QL/QR.  Eigenvalues come back ascending (ties
    keep even-block-first order) and each eigenvector's largest entry is
    positive.
    """
    n = S.N + 1
    lam_parts, vec_parts = [], []
    for parity in (0, 1):
        idx = np.arange(parity, n, 2)
        if idx.size == 0:
            continue
        try:
            # LAPACK needs bandwidth <= block size - 1
            kd = min(2, idx.size - 1)
            w, v = linalg.eig_banded(S.parity_block(parity)[2 - kd:], lower=False)
        except linalg.LinAlgError as exc:
            raise EigenSolverError(
                f"banded eigensolver failed on parity-{parity} block of size {idx.size} "
                f"(N={S.N}, nu={S.nu}): {exc}") from exc
        full = np.zeros((n, idx.size))
        full[idx] = v
        lam_parts.append(w)
        vec_parts.append(full)
    lam = np.concatenate(lam_parts)
    E = np.concatenate(vec_parts, axis=1)
    order = np.argsort(lam, kind="stable")
    lam, E = lam[order], _fix_signs(E[:, order])
    if np.any(lam <= 0) or not np.all(np.isfinite(lam)):
        raise EigenSolverError(f"stiffness matrix not positive definite: min eigenvalue {lam.min():.3e}")
    lam.flags.writeable = False
    E.flags.writeable = False
    return FourierLikeBasis1d(S.N, S.nu, lam, E)


def eigendecompose_dense(S: StiffnessMatrix) -> FourierLikeBasis1d:
    """Reference path: dense symmetric eigensolver on the full matrix."""
    lam, E = np.linalg.eigh(S.dense())
    return FourierLikeBasis1d(S.N, S.nu, lam, _fix_signs(E))


def eigen_sum_grid(eigenvalue_lists) -> np.ndarray:
    """Tensor of |lambda_p|_1 = sum_k lambda_{p_k} over all multi-indices."""
    lams = [np.asarray(l, dtype=float) for l in eigenvalue_lists]
    d = len(lams)
    total = np.zeros([l.size for l in lams])
    for k, l in enumerate(lams):
        shape = [1] * d
        shape[k] = l.size
        total = total + l.reshape(shape)
    return total


def tensor_eigen_sum(bases, p) -> float:
    """|lambda_p|_1 for one multi-index ``p`` over the per-dimension bases."""
    p = tuple(int(k) for k in np.atleast_1d(p))
    if len(p) != len(bases):
        raise ValueError(f"multi-index has {len(p)} entries for {len(bases)} dimensions")
    total = 0.0
    for b, pk in zip(bases, p):
        fl = b.fourier_like if hasattr(b, "fourier_like") else b
        if not 0 <= pk <= fl.N:
            raise IndexError(f"index component {pk} outside 0..{fl.N}")
        total += fl.eigenvalues[pk]
    return total
