"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy.ndarray`` objects (complex128).  Vectorization is
row-major everywhere: ``vec(rho)[k*cols + l] == rho[k, l]``, i.e. ``|k><l|``
maps to ``|k> (x) |l>``.  Every superoperator and Choi reshuffle in the
package relies on this single convention.
"""
from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch, InvalidState, NonHermitian

#: eigenvalues at or below this are treated as exact zeros in 0 log 0
ENTROPY_CLAMP = 1e-12


def as_cmatrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def kron(a, b) -> np.ndarray:
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def dagger(m) -> np.ndarray:
    return np.conj(np.transpose(m))


def is_hermitian(m, tol: float = 1e-10) -> bool:
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and np.abs(m - dagger(m)).max(initial=0.0) <= tol


def hermitian_eig(m, tol: float = 1e-10):
    """Eigendecomposition of a Hermitian matrix.

    Returns ascending real eigenvalues and the matrix whose columns are the
    orthonormal eigenvectors.  The Hermiticity check is relative to the
    largest entry so that large-norm inputs are not rejected spuriously.
    """
    m = as_cmatrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"square matrix required, got {m.shape}")
    scale = max(1.0, np.abs(m).max(initial=0.0))
    if np.abs(m - dagger(m)).max(initial=0.0) > tol * scale:
        raise NonHermitian("matrix is not Hermitian within tolerance")
    w, v = np.linalg.eigh(0.5 * (m + dagger(m)))
    return w, v


def check_density_matrix(rho, herm_tol: float = 1e-12, trace_tol: float = 1e-12,
                         eig_tol: float = 1e-10) -> np.ndarray:
    """Validate ``rho`` as a density matrix and return it as complex128."""
    rho = as_cmatrix(rho)
    if rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"density matrix must be square, got {rho.shape}")
    if np.abs(rho - dagger(rho)).max() > herm_tol:
        raise InvalidState("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > trace_tol:
        raise InvalidState(f"trace {np.trace(rho).real:.3e} differs from 1")
    if np.linalg.eigvalsh(rho).min() < -eig_tol:
        raise InvalidState("density matrix has a negative eigenvalue")
    return rho


def shannon_bits(p) -> float:
    """-sum p log2 p with entries at or below ENTROPY_CLAMP dropped."""
    p = np.asarray(p, dtype=float)
    p = p[p > ENTROPY_CLAMP]
    return float(-np.sum(p * np.log2(p)))


def von_neumann_entropy(rho) -> float:
    """Von Neumann entropy in bits.

    Raises InvalidState when an eigenvalue is below -1e-8; smaller negative
    eigenvalues are roundoff and are clamped to zero.
    """
    w, _ = hermitian_eig(rho)
    if w[0] < -1e-8:
        raise InvalidState(f"eigenvalue {w[0]:.3e} is negative")
    return max(shannon_bits(w), 0.0)


def vec(m) -> np.ndarray:
    return np.asarray(m).reshape(-1).copy()


def unvec(v, rows: int, cols: int) -> np.ndarray:
    v = np.asarray(v)
    if v.size != rows * cols:
        raise DimensionMismatch(f"cannot reshape {v.size} entries into {rows}x{cols}")
    return v.reshape(rows, cols).copy()


def partial_trace(m, dims, keep: str = "A") -> np.ndarray:
    """Trace out one factor of a bipartite operator on ``dA (x) dB``."""
    d_a, d_b = dims
    m = as_cmatrix(m)
    if m.shape != (d_a * d_b, d_a * d_b):
        raise DimensionMismatch(f"operator shape {m.shape} does not match dims {dims}")
    t = m.reshape(d_a, d_b, d_a, d_b)
    if keep.upper() == "A":
        return np.einsum("ijkj->ik", t)
    if keep.upper() == "B":
        return np.einsum("ijil->jl", t)
    raise ValueError("keep must be 'A' or 'B'")


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_density_matrix(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    k = d if rank is None else rank
    g = rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))
    rho = g @ dagger(g)
    rho = 0.5 * (rho + dagger(rho))
    return rho / np.trace(rho).real


def random_pure_state(d: int, rng: np.random.Generator) -> np.ndarray:
    psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return psi / np.linalg.norm(psi)
