"""Analysis and synthesis on tensorised mapped Chebyshev-Gauss grids.

Grid samples are turned into MCF coefficients one axis at a time: divide by
the weight g(x) = nu^{-1/2} sqrt(1-y^2), run the fast Chebyshev transform,
and rescale mode n by sqrt(c_n pi/2).  Fourier-like coefficients follow by
contracting every axis with E^T.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .basis import MCFBasis
from .cheb import coeffs_to_values, values_to_coeffs
from .mcf import mcf_vandermonde

MCF = "mcf"
FOURIER_LIKE = "fourier_like"


class DataError(ValueError):
    """Non-finite or otherwise unusable input data."""


@dataclass(frozen=True)
class GridField:
    """Samples on the tensor grid of mapped nodes (axis k uses bases[k].nodes)."""

    values: np.ndarray
    bases: tuple

    def __post_init__(self):
        _check_shape(self.values, self.bases)

    @property
    def d(self) -> int:
        return len(self.bases)


@dataclass(frozen=True)
class Expansion:
    """Coefficient tensor in the MCF or Fourier-like representation."""

    coeffs: np.ndarray
    bases: tuple
    representation: str = MCF

    def __post_init__(self):
        if self.representation not in (MCF, FOURIER_LIKE):
            raise ValueError(f"unknown representation {self.representation!r}")
        _check_shape(self.coeffs, self.bases)

    @property
    def d(self) -> int:
        return len(self.bases)

    def with_coeffs(self, coeffs) -> "Expansion":
        return Expansion(np.asarray(coeffs), self.bases, self.representation)


def _check_shape(arr, bases):
    shape = tuple(b.size for b in bases)
    if np.shape(arr) != shape:
        raise ValueError(f"array shape {np.shape(arr)} does not match basis sizes {shape}")


def _as_bases(bases) -> tuple:
    if isinstance(bases, MCFBasis):
        return (bases,)
    return tuple(bases)


def grid_points(bases) -> list[np.ndarray]:
    """Open-mesh coordinate arrays (indexing='ij') of the tensor grid."""
    bases = _as_bases(bases)
    return np.meshgrid(*[b.nodes for b in bases], indexing="ij", sparse=True)


def quadrature_weights(bases) -> np.ndarray:
    """Tensor product of the per-axis mapped quadrature weights."""
    bases = _as_bases(bases)
    w = np.ones(())
    for b in bases:
        w = np.multiply.outer(w, b.weights)
    return w


def _axis_shape(d: int, axis: int, n: int) -> list[int]:
    shape = [1] * d
    shape[axis] = n
    return shape


def _mode_scale(N: int) -> np.ndarray:
    c = np.ones(N + 1)
    c[0] = 2.0
    return np.sqrt(c * np.pi / 2)


def _weight_function(b: MCFBasis) -> np.ndarray:
    y = b.rule.y
    return np.sqrt((1.0 - y) * (1.0 + y) / b.nu)


def sample(f, bases) -> np.ndarray:
    """Evaluate ``f(x_1, ..., x_d)`` on the tensor grid and check finiteness."""
    bases = _as_bases(bases)
    X = grid_points(bases)
    vals = np.broadcast_to(np.asarray(f(*X)), tuple(b.size for b in bases))
    bad = ~np.isfinite(vals)
    if bad.any():
        j = tuple(int(i) for i in np.argwhere(bad)[0])
        x = tuple(float(b.nodes[i]) for b, i in zip(bases, j))
        raise DataError(f"non-finite sample at node index {j}, x = {x}")
    return np.array(vals)


def interpolate(f, bases) -> Expansion:
    """MCF coefficients of the tensor interpolant I_N^d f.

    ``f`` may be a callable of d coordinate arrays, a :class:`GridField`,
    or an array of grid samples.
    """
    bases = _as_bases(bases)
    if isinstance(f, GridField):
        if tuple(f.bases) != bases:
            raise ValueError("grid field lives on different bases")
        vals = f.values
    elif callable(f):
        vals = sample(f, bases)
    else:
        vals = np.asarray(f)
        _check_shape(vals, bases)
        if not np.all(np.isfinite(vals)):
            j = tuple(int(i) for i in np.argwhere(~np.isfinite(vals))[0])
            raise DataError(f"non-finite sample at node index {j}")
    d = len(bases)
    out = vals
    for k, b in enumerate(bases):
        out = out / _weight_function(b).reshape(_axis_shape(d, k, b.size))
        out = values_to_coeffs(out, axis=k)
        out = out * _mode_scale(b.N).reshape(_axis_shape(d, k, b.size))
    return Expansion(out, bases, MCF)


def synthesize(e: Expansion, points=None):
    """Evaluate an expansion.

    ``points=None`` returns a :class:`GridField` on the native grid (fast
    transforms).  A sequence of d 1-D arrays evaluates on their tensor grid;
    an ``(M, d)`` array (or 1-D array for d = 1) evaluates at scattered points.
    """
    if e.representation != MCF:
        e = from_fourier_like(e)
    bases = e.bases
    d = len(bases)
    if points is None:
        out = e.coeffs
        for k, b in enumerate(bases):
            out = out / _mode_scale(b.N).reshape(_axis_shape(d, k, b.size))
            out = coeffs_to_values(out, axis=k)
            out = out * _weight_function(b).reshape(_axis_shape(d, k, b.size))
        return GridField(out, bases)
    if isinstance(points, (list, tuple)):
        if len(points) != d:
            raise ValueError(f"need {d} coordinate axes, got {len(points)}")
        out = e.coeffs
        for k, (b, xk) in enumerate(zip(bases, points)):
            V = mcf_vandermonde(b.N, np.asarray(xk, dtype=float).ravel(), b.nu)
            out = np.moveaxis(np.tensordot(V, out, axes=([1], [k])), 0, k)
        return out
    pts = np.asarray(points, dtype=float)
    if d == 1 and pts.ndim == 1:
        pts = pts[:, None]
    if pts.ndim != 2 or pts.shape[1] != d:
        raise ValueError(f"scattered points must have shape (M, {d})")
    if not np.all(np.isfinite(pts)):
        raise DataError("evaluation point with non-finite coordinate")
    M = pts.shape[0]
    V0 = mcf_vandermonde(bases[0].N, pts[:, 0], bases[0].nu)
    acc = V0 @ e.coeffs.reshape(bases[0].size, -1)
    for k in range(1, d):
        Vk = mcf_vandermonde(bases[k].N, pts[:, k], bases[k].nu)
        acc = np.einsum("mjr,mj->mr", acc.reshape(M, bases[k].size, -1), Vk)
    return acc.reshape(M)


def _contract(coeffs, bases, transpose: bool):
    out = coeffs
    for k, b in enumerate(bases):
        E = b.eigenvectors.T if transpose else b.eigenvectors
        out = np.moveaxis(np.tensordot(E, out, axes=([1], [k])), 0, k)
    return out


def _check_bases(e: Expansion, bases):
    if bases is not None and tuple(_as_bases(bases)) != tuple(e.bases):
        raise ValueError("expansion and supplied bases do not match")


def to_fourier_like(e: Expansion, bases=None) -> Expansion:
    """MCF coefficients -> Fourier-like coefficients (E^T along every axis)."""
    _check_bases(e, bases)
    if e.representation == FOURIER_LIKE:
        return e
    return Expansion(_contract(e.coeffs, e.bases, True), e.bases, FOURIER_LIKE)


def from_fourier_like(e: Expansion, bases=None) -> Expansion:
    """Fourier-like coefficients -> MCF coefficients (E along every axis)."""
    _check_bases(e, bases)
    if e.representation == MCF:
        return e
    return Expansion(_contract(e.coeffs, e.bases, False), e.bases, MCF)


def analyze(values, bases) -> Expansion:
    """Grid samples straight to Fourier-like coefficients."""
    return to_fourier_like(interpolate(values, bases))


# --- binary tensor format -------------------------------------------------

_MAGIC = b"MCFT"
_VERSION = 1
_KINDS = {"grid": 0, MCF: 1, FOURIER_LIKE: 2}


def save_tensor(obj, path) -> None:
    """Write a GridField or Expansion: little-endian header, row-major payload.

    Header: magic 'MCFT', u16 version, u8 kind (0 grid, 1 mcf, 2 fourier_like),
    u8 complex flag, u32 d, then d records of (u32 size, f64 nu).
    """
    if isinstance(obj, GridField):
        kind, data = "grid", obj.values
    elif isinstance(obj, Expansion):
        kind, data = obj.representation, obj.coeffs
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    is_complex = np.iscomplexobj(data)
    header = _MAGIC + struct.pack("<HBBI", _VERSION, _KINDS[kind], int(is_complex), len(obj.bases))
    for b in obj.bases:
        header += struct.pack("<Id", b.size, b.nu)
    dtype = "<c16" if is_complex else "<f8"
    with open(Path(path), "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(data, dtype=dtype).tobytes(order="C"))


def load_tensor(path):
    raw = Path(path).read_bytes()
    if raw[:4] != _MAGIC:
        raise ValueError(f"{path}: not an MCF tensor file")
    version, kind, is_complex, d = struct.unpack_from("<HBBI", raw, 4)
    if version != _VERSION:
        raise ValueError(f"{path}: unsupported tensor format version {version}")
    off = 12
    bases = []
    for _ in range(d):
        size, nu = struct.unpack_from("<Id", raw, off)
        off += 12
        bases.append(MCFBasis(size - 1, nu))
    dtype = "<c16" if is_complex else "<f8"
    shape = tuple(b.size for b in bases)
    data = np.frombuffer(raw, dtype=dtype, offset=off).reshape(shape).copy()
    kind_name = {v: k for k, v in _KINDS.items()}[kind]
    if kind_name == "grid":
        return GridField(data, tuple(bases))
    return Expansion(data, tuple(bases), kind_name)


