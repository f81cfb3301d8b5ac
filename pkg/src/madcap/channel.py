"""Kraus channels, superoperators, Choi matrices and channel algebra."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, OutOfRange
from .linalg import as_cmatrix, check_density_matrix, dagger

COMPLETENESS_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class KrausChannel:
    """Ordered Kraus operators, each ``dim_out x dim_in``.

    Completeness is checked at construction unless ``check=False``; the
    unchecked form exists so that certifiers can be fed corrupted lists.
    """

    kraus: tuple
    dim_in: int
    dim_out: int

    def __init__(self, kraus, check: bool = True):
        ops = tuple(as_cmatrix(k) for k in kraus)
        if not ops:
            raise DimensionMismatch("a channel needs at least one Kraus operator")
        shape = ops[0].shape
        if any(k.shape != shape for k in ops):
            raise DimensionMismatch("Kraus operators have inconsistent shapes")
        for k in ops:
            k.setflags(write=False)
        object.__setattr__(self, "kraus", ops)
        object.__setattr__(self, "dim_out", shape[0])
        object.__setattr__(self, "dim_in", shape[1])
        if check and completeness_error(self) > COMPLETENESS_TOL:
            raise ValueError("Kraus operators violate the completeness relation")

    def __len__(self):
        return len(self.kraus)

    def __repr__(self):
        return f"KrausChannel(dim_in={self.dim_in}, dim_out={self.dim_out}, n={len(self)})"


@dataclass(frozen=True, eq=False)
class SuperOperator:
    """Matrix acting on row-major vectorized operators (dim_out^2 x dim_in^2)."""

    mat: np.ndarray
    dim_in: int
    dim_out: int

    def __post_init__(self):
        if self.mat.shape != (self.dim_out ** 2, self.dim_in ** 2):
            raise DimensionMismatch(f"superoperator shape {self.mat.shape} does not match dims")


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    """Unnormalized Choi matrix, output factor first: C = sum Phi(|k><l|) (x) |k><l|."""

    mat: np.ndarray
    dim_in: int
    dim_out: int


def identity_channel(d: int) -> KrausChannel:
    return KrausChannel([np.eye(d)])


def completeness_error(ch: KrausChannel) -> float:
    s = sum(dagger(k) @ k for k in ch.kraus)
    return float(np.abs(s - np.eye(ch.dim_in)).max())


def unitality_error(ch: KrausChannel) -> float:
    """max|sum E E^dag - I|; nonzero means the channel is non-unital."""
    s = sum(k @ dagger(k) for k in ch.kraus)
    return float(np.abs(s - np.eye(ch.dim_out)).max()) if ch.dim_in == ch.dim_out else float("inf")


def apply_map(ch: KrausChannel, m) -> np.ndarray:
    """Apply the channel to an arbitrary operator (no state validation)."""
    m = as_cmatrix(m)
    if m.shape != (ch.dim_in, ch.dim_in):
        raise DimensionMismatch(f"operator {m.shape} does not match dim_in={ch.dim_in}")
    return sum(k @ m @ dagger(k) for k in ch.kraus)


def apply(ch: KrausChannel, rho) -> np.ndarray:
    """rho -> sum_n E_n rho E_n^dag for a density matrix ``rho``."""
    rho = check_density_matrix(rho)
    if rho.shape[0] != ch.dim_in:
        raise DimensionMismatch(f"state dim {rho.shape[0]} does not match dim_in={ch.dim_in}")
    return apply_map(ch, rho)


def superoperator(ch: KrausChannel) -> SuperOperator:
    m = sum(np.kron(k, np.conj(k)) for k in ch.kraus)
    return SuperOperator(m, ch.dim_in, ch.dim_out)


def superop_to_choi(s: SuperOperator) -> ChoiMatrix:
    """Reshuffle C[(i,k),(j,l)] = M[(i,j),(k,l)]."""
    do, di = s.dim_out, s.dim_in
    if s.mat.shape != (do * do, di * di):
        raise DimensionMismatch("superoperator shape inconsistent with its dims")
    c = s.mat.reshape(do, do, di, di).transpose(0, 2, 1, 3).reshape(do * di, do * di)
    return ChoiMatrix(c, di, do)


def choi_to_superop(c: ChoiMatrix) -> SuperOperator:
    do, di = c.dim_out, c.dim_in
    m = c.mat.reshape(do, di, do, di).transpose(0, 2, 1, 3).reshape(do * do, di * di)
    return SuperOperator(m, di, do)


def choi(ch: KrausChannel) -> ChoiMatrix:
    do, di = ch.dim_out, ch.dim_in
    c = np.zeros((do * di, do * di), dtype=np.complex128)
    for k in ch.kraus:
        # column (i,k) of the vectorized Kraus operator: v[(i,k)] = E[i,k]
        v = k.reshape(-1)
        c += np.outer(v, np.conj(v))
    return ChoiMatrix(c, di, do)


def min_choi_eigenvalue(c: ChoiMatrix) -> float:
    h = 0.5 * (c.mat + dagger(c.mat))
    return float(np.linalg.eigvalsh(h)[0])


def is_cptp(ch: KrausChannel, tol: float = 1e-10) -> bool:
    """Completeness within ``tol`` and Choi eigenvalues >= -tol*||C||."""
    if completeness_error(ch) > tol:
        return False
    c = choi(ch)
    norm = np.linalg.norm(c.mat, 2)
    return min_choi_eigenvalue(c) >= -tol * max(norm, 1.0)


def complementary(ch: KrausChannel) -> KrausChannel:
    """Complementary channel with environment dimension len(ch).

    Its Kraus operators satisfy (F_i)[k, m] = (E_k)[i, m], so that
    Phi~(rho)[k, l] = tr(E_k rho E_l^dag).
    """
    e = np.stack(ch.kraus)  # (N, dim_out, dim_in)
    f = np.transpose(e, (1, 0, 2))
    return KrausChannel(list(f), check=False)


def compose(second: KrausChannel, first: KrausChannel) -> KrausChannel:
    """second o first, with Kraus set {F_j E_i}."""
    if first.dim_out != second.dim_in:
        raise DimensionMismatch("first.dim_out must equal second.dim_in")
    ops = [f @ e for f in second.kraus for e in first.kraus]
    return KrausChannel(ops, check=False)


def tensor(a: KrausChannel, b: KrausChannel) -> KrausChannel:
    return KrausChannel([np.kron(x, y) for x in a.kraus for y in b.kraus], check=False)


def memory_channel(mu: float, memoryless: KrausChannel, correlated: KrausChannel) -> KrausChannel:
    """(1-mu) * (memoryless (x) memoryless) + mu * correlated, as a Kraus union."""
    if not 0.0 <= mu <= 1.0:
        raise OutOfRange(f"memory parameter {mu} outside [0, 1]")
    if memoryless.dim_in ** 2 != correlated.dim_in or memoryless.dim_out ** 2 != correlated.dim_out:
        raise DimensionMismatch("memoryless channel must act on one factor of the correlated space")
    ops = []
    if mu < 1.0:
        ops += [np.sqrt(1.0 - mu) * np.kron(x, y) for x in memoryless.kraus for y in memoryless.kraus]
    if mu > 0.0:
        ops += [np.sqrt(mu) * k for k in correlated.kraus]
    return KrausChannel(ops)


def kraus_from_choi(c: ChoiMatrix, clamp: float = 1e-12) -> KrausChannel:
    """Kraus operators from the eigendecomposition of a (PSD) Choi matrix."""
    w, v = np.linalg.eigh(0.5 * (c.mat + dagger(c.mat)))
    ops = [np.sqrt(x) * v[:, i].reshape(c.dim_out, c.dim_in) for i, x in enumerate(w) if x > clamp]
    if not ops:
        ops = [np.zeros((c.dim_out, c.dim_in))]
    return KrausChannel(ops, check=False)


def _superop_matrix(x):
    if isinstance(x, SuperOperator):
        return x.mat
    if isinstance(x, KrausChannel):
        return superoperator(x).mat
    return np.asarray(x)


def superop_equal(a, b) -> float:
    """max entrywise difference between two channels' superoperators."""
    ma, mb = (_superop_matrix(x) for x in (a, b))
    if ma.shape != mb.shape:
        raise DimensionMismatch("superoperators have different shapes")
    return float(np.abs(ma - mb).max())
