"""Dense Hermitian linear algebra and matrix functional calculus.

Operators are square complex numpy arrays, optionally wrapped in the light
validating types below.  Every matrix power of a positive semidefinite
operator uses the support convention 0**s = 0 for all real s; the numerical
rank decision behind that convention lives in :func:`rank_cut`.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import ConvergenceError, DimensionError

HERM_TOL = 1e-10
TRACE_TOL = 1e-9
DEFAULT_DIM_CAP = 4096


def dim_cap() -> int:
    """Largest allowed operator dimension; override with SYMTEST_DIM_CAP."""
    raw = os.environ.get("SYMTEST_DIM_CAP", "")
    return int(raw) if raw.strip() else DEFAULT_DIM_CAP


def asmatrix(a) -> np.ndarray:
    """Coerce to a finite square complex matrix, unwrapping the operator types."""
    if isinstance(a, (HermitianOperator, DensityOperator, Spectrum)):
        a = a.mat if not isinstance(a, Spectrum) else a.reconstruct()
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ValueError("matrix entries must be finite")
    return m


def frob(a) -> float:
    return float(np.linalg.norm(np.asarray(a)))


@dataclass(frozen=True)
class HermitianOperator:
    """A Hermitian matrix, stored canonically as (A + A*)/2."""

    mat: np.ndarray
    herm_tol: float = HERM_TOL

    def __post_init__(self):
        m = asmatrix(self.mat)
        dev = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
        if dev > self.herm_tol:
            raise ValueError(
                f"matrix is not Hermitian within {self.herm_tol:g} (deviation {dev:.3e})"
            )
        canon = (m + m.conj().T) / 2.0
        canon.setflags(write=False)
        object.__setattr__(self, "mat", canon)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True)
class DensityOperator:
    """Positive semidefinite, unit-trace Hermitian operator.

    Eigenvalues in [-trace_tol, 0) are clipped to zero on construction and the
    trace renormalized; anything more negative is rejected.
    """

    op: HermitianOperator
    trace_tol: float = TRACE_TOL

    def __post_init__(self):
        if not isinstance(self.op, HermitianOperator):
            object.__setattr__(self, "op", HermitianOperator(asmatrix(self.op)))
        m = self.op.mat
        tr = float(np.trace(m).real)
        if abs(tr - 1.0) > self.trace_tol:
            raise ValueError(f"trace must be 1 within {self.trace_tol:g}, got {tr!r}")
        w = np.linalg.eigvalsh(m)
        if w[0] < -self.trace_tol:
            raise ValueError(
                f"eigenvalue {w[0]:.3e} below -{self.trace_tol:g}; not a density matrix"
            )
        rebuilt = False
        if w[0] < 0.0:
            spec = eig(self.op)
            clipped = np.maximum(spec.eigenvalues, 0.0)
            m = (spec.eigenvectors * clipped) @ spec.eigenvectors.conj().T
            m = (m + m.conj().T) / 2.0
            tr = float(np.trace(m).real)
            rebuilt = True
        if abs(tr - 1.0) > 1e-15:
            m = m / tr
            rebuilt = True
        if rebuilt:
            object.__setattr__(self, "op", HermitianOperator(m))

    @classmethod
    def from_matrix(cls, m, trace_tol: float = TRACE_TOL) -> "DensityOperator":
        return cls(HermitianOperator(asmatrix(m)), trace_tol)

    @property
    def mat(self) -> np.ndarray:
        return self.op.mat

    @property
    def dim(self) -> int:
        return self.op.dim


@dataclass(frozen=True)
class Spectrum:
    """Eigendecomposition: ascending eigenvalues, unitary eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def eig(h) -> Spectrum:
    """Eigendecomposition of a Hermitian operator.

    Eigenvalues come back ascending; the eigenvector matrix is unitary within
    1e-9 and the reconstruction error is bounded by 1e-8 * dim * ||H||_F.
    """
    m = asmatrix(h)
    m = (m + m.conj().T) / 2.0
    d = m.shape[0]
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(
            f"eigendecomposition did not converge for a {d}x{d} matrix"
        ) from exc
    gram_dev = float(np.max(np.abs(v.conj().T @ v - np.eye(d))))
    if gram_dev > 1e-9:
        raise ConvergenceError(
            f"eigenvector basis of a {d}x{d} matrix lost orthonormality ({gram_dev:.3e})"
        )
    resid = frob((v * w) @ v.conj().T - m)
    if resid > 1e-8 * d * frob(m) + 1e-12:
        raise ConvergenceError(
            f"eigendecomposition residual {resid:.3e} too large for a {d}x{d} matrix"
        )
    w.setflags(write=False)
    v.setflags(write=False)
    return Spectrum(w, v)


def rank_cut(eigenvalues: np.ndarray, dim: int) -> float:
    """Threshold below which an eigenvalue counts as zero: max(dim*eps*lmax, 1e-12)."""
    lam_max = float(np.max(eigenvalues, initial=0.0))
    return max(dim * float(np.finfo(float).eps) * lam_max, 1e-12)


def mpow(h, s: float, *, psd_tol: float = TRACE_TOL, cut_scale: float = 1.0) -> HermitianOperator:
    """Matrix power H**s of a PSD operator with the convention 0**s = 0 (all real s)."""
    spec = eig(h)
    w = spec.eigenvalues
    if w.size and w[0] < -psd_tol:
        raise ValueError(
            f"matrix power needs a positive semidefinite operator (min eigenvalue {w[0]:.3e})"
        )
    cut = rank_cut(w, w.size) * cut_scale
    powered = np.zeros_like(w)
    mask = w > cut
    powered[mask] = w[mask] ** s
    m = (spec.eigenvectors * powered) @ spec.eigenvectors.conj().T
    return HermitianOperator((m + m.conj().T) / 2.0)


def support_projection(h) -> HermitianOperator:
    """Projection onto the eigenspaces of a PSD operator above the rank cut."""
    spec = eig(h)
    w = spec.eigenvalues
    cut = rank_cut(w, w.size)
    v = spec.eigenvectors[:, w > cut]
    p = v @ v.conj().T
    p = (p + p.conj().T) / 2.0
    idem = float(np.max(np.abs(p @ p - p))) if p.size else 0.0
    if idem > 1e-9:
        raise ConvergenceError(f"support projection not idempotent ({idem:.3e})")
    return HermitianOperator(p)


def trace_norm(a) -> float:
    """Sum of singular values; for Hermitian input this is sum |eigenvalues|."""
    m = asmatrix(a)
    if m.size == 0:
        return 0.0
    return float(np.linalg.svd(m, compute_uv=False).sum())


def kron(a, b) -> np.ndarray:
    """Kronecker product with the configured dimension cap enforced."""
    ma, mb = asmatrix(a), asmatrix(b)
    out_dim = ma.shape[0] * mb.shape[0]
    cap = dim_cap()
    if out_dim > cap:
        raise DimensionError(f"kron product dimension {out_dim} exceeds cap {cap}")
    return np.kron(ma, mb)


def kron_power(a, n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("tensor power exponent must be >= 1")
    m = asmatrix(a)
    return reduce(kron, [m] * n)


def abs_power_trace(a, b, s: float) -> float:
    """Tr |A**s B**(1-s)| for PSD operators A, B."""
    prod = mpow(a, s).mat @ mpow(b, 1.0 - s).mat
    return trace_norm(prod)


def spectral_clusters(h, tol: float | None = None) -> list[tuple[float, np.ndarray]]:
    """Group nearly-degenerate eigenvalues; returns (mean eigenvalue, basis columns)."""
    spec = eig(h)
    w, v = spec.eigenvalues, spec.eigenvectors
    if w.size == 0:
        return []
    scale = max(1.0, float(np.max(np.abs(w))))
    if tol is None:
        tol = 1e-9 * scale
    splits = np.nonzero(np.diff(w) > tol)[0] + 1
    starts = [0, *splits.tolist()]
    stops = [*splits.tolist(), w.size]
    return [(float(np.mean(w[a:b])), v[:, a:b]) for a, b in zip(starts, stops)]


def spectral_projections(h, tol: float | None = None) -> list[tuple[float, np.ndarray]]:
    """Spectral projections of a Hermitian operator, one per eigenvalue cluster."""
    out = []
    for value, basis in spectral_clusters(h, tol):
        p = basis @ basis.conj().T
        out.append((value, (p + p.conj().T) / 2.0))
    return out
