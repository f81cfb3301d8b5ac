"""Lindblad dissipators, damping bases, and the Kraus cross-check oracle."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from .channel import SuperOperator, apply
from .errors import DefectiveSpectrum, OutOfRange
from .linalg import dagger, random_density_matrix
from .madfamily import DecayParams, mad_channel


@dataclass(frozen=True)
class RateParams:
    gamma1: float
    gamma2: float
    gamma3: float
    t: float = 1.0

    def __post_init__(self):
        for name in ("gamma1", "gamma2", "gamma3", "t"):
            v = getattr(self, name)
            if not (v >= 0.0 and math.isfinite(v)):
                raise OutOfRange(f"{name}={v} must be finite and non-negative")

    @property
    def rates(self):
        return (self.gamma1, self.gamma2, self.gamma3)

    def decay_params(self) -> DecayParams:
        """p_i = 1 - exp(-Gamma_i t)."""
        return DecayParams(*(-math.expm1(-g * self.t) for g in self.rates))


def _ket(d, i):
    v = np.zeros(d)
    v[i] = 1.0
    return v


def _lindblad_term(s, rate):
    d = s.shape[0]
    eye = np.eye(d)
    sds = dagger(s) @ s
    return 0.5 * rate * (2.0 * np.kron(s, np.conj(s)) - np.kron(sds, eye) - np.kron(eye, sds.T))


def _jumps(d_factor):
    """sigma_kl = |k><l| for the three downward transitions (rate order 1, 2, 3)."""
    e = [_ket(3, i) for i in range(3)]
    sig01 = np.outer(e[0], e[1])
    sig02 = np.outer(e[0], e[2])
    sig12 = np.outer(e[1], e[2])
    if d_factor == 1:
        return sig01, sig02, sig12
    return tuple(np.kron(s, s) for s in (sig01, sig02, sig12))


def dissipator_single(g: RateParams) -> SuperOperator:
    """Generator on one qutrit: rate gamma1 for 1->0, gamma2 for 2->0, gamma3 for 2->1."""
    m = sum(_lindblad_term(s, r) for s, r in zip(_jumps(1), g.rates))
    return SuperOperator(m.astype(np.complex128), 3, 3)


def dissipator_correlated(g: RateParams) -> SuperOperator:
    """Generator on two qutrits with jumps S_kl = sigma_kl (x) sigma_kl."""
    m = sum(_lindblad_term(s, r) for s, r in zip(_jumps(2), g.rates))
    return SuperOperator(m.astype(np.complex128), 9, 9)


@dataclass(frozen=True, eq=False)
class DampingMode:
    """One damping-basis pair: L(right) = lam * right and tr(left @ right') = delta."""

    lam: complex
    left: np.ndarray
    right: np.ndarray


def _clusters(w, tol):
    """Group eigenvalue indices whose values lie within ``tol`` (single linkage)."""
    order = np.lexsort((w.imag, w.real))
    groups, cur = [], [order[0]]
    for i in order[1:]:
        if abs(w[i] - w[cur[-1]]) <= tol:
            cur.append(i)
        else:
            groups.append(cur)
            cur = [i]
    groups.append(cur)
    return groups


def damping_basis(L: SuperOperator, tol: float = 1e-8):
    """Biorthogonal left/right eigenoperators of a diagonalizable generator.

    The left operator is stored so that tr(left @ rho) = w^dag vec(rho) for
    the left eigenvector w.  Degenerate clusters are biorthogonalized by
    inverting their Gram matrix; a singular Gram matrix means the
    generator is defective.
    """
    m = L.mat
    n = m.shape[0]
    d = L.dim_in
    w, vl, vr = scipy.linalg.eig(m, left=True, right=True)
    scale = max(np.abs(w).max(), 1.0)
    right = np.empty_like(vr)
    left = np.empty_like(vl)
    lam = np.empty_like(w)
    for grp in _clusters(w, 1e-8 * scale):
        a = vl[:, grp]
        b = vr[:, grp]
        gram = dagger(a) @ b
        sv = np.linalg.svd(gram, compute_uv=False)
        if sv.min() < 1e-10 * max(sv.max(), 1.0):
            raise DefectiveSpectrum("generator is not diagonalizable on an eigenvalue cluster")
        # new left vectors A' with A'^dag B = I
        a = a @ dagger(np.linalg.inv(gram))
        left[:, grp] = a
        right[:, grp] = b
        lam[grp] = w[grp]
    resid = np.abs(dagger(left) @ right - np.eye(n)).max()
    if resid > tol:
        raise DefectiveSpectrum(f"biorthogonality residual {resid:.2e} exceeds {tol:.0e}")
    modes = []
    for i in range(n):
        r = right[:, i].reshape(d, d)
        lop = np.conj(left[:, i]).reshape(d, d).T
        modes.append(DampingMode(complex(lam[i]), lop, r))
    return modes


@lru_cache(maxsize=256)
def _basis_arrays(rates):
    modes = damping_basis(dissipator_correlated(RateParams(*rates, t=0.0)))
    lam = np.array([md.lam for md in modes])
    # row i of lefts holds conj(w_i) so that lefts @ vec(rho) = tr(L_i rho)
    lefts = np.array([md.left.T.reshape(-1) for md in modes])
    rights = np.array([md.right.reshape(-1) for md in modes]).T
    return lam, lefts, rights


def evolve(rho, g: RateParams) -> np.ndarray:
    """rho(t) = sum_i tr(L_i rho) e^{lambda_i t} R_i for the correlated generator."""
    rho = np.asarray(rho, dtype=np.complex128)
    lam, lefts, rights = _basis_arrays(g.rates)
    coeff = (lefts @ rho.reshape(-1)) * np.exp(lam * g.t)
    out = (rights @ coeff).reshape(rho.shape)
    return 0.5 * (out + dagger(out))


def evolve_expm(rho, g: RateParams) -> np.ndarray:
    """Reference evolution by the matrix exponential of the generator."""
    m = dissipator_correlated(g).mat
    return (scipy.linalg.expm(m * g.t) @ np.asarray(rho, dtype=np.complex128).reshape(-1)).reshape(9, 9)


def kraus_consistency(g: RateParams, n_states: int = 20, seed: int = 0) -> float:
    """Max entrywise gap between damping-basis evolution and the MAD Kraus map."""
    ch = mad_channel(g.decay_params())
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_states):
        rho = random_density_matrix(9, rng)
        worst = max(worst, float(np.abs(evolve(rho, g) - apply(ch, rho)).max()))
    return worst


def spectrum_multiplicities(L: SuperOperator, rel_tol: float = 1e-8):
    """Sorted list of (eigenvalue, multiplicity) with clustering at rel_tol*max|lambda|."""
    w = np.linalg.eigvals(L.mat)
    scale = max(np.abs(w).max(), 1e-300)
    out = []
    for grp in _clusters(w, rel_tol * scale):
        out.append((complex(w[grp].mean()), len(grp)))
    out.sort(key=lambda x: (-x[0].real, x[0].imag))
    return out


def expected_multiplicities(g: RateParams):
    """The eigenvalue multiset of the correlated generator for generic rates."""
    g1, g2, g3 = g.rates
    return sorted([(0.0, 49), (-g1, 1), (-g1 / 2, 14), (-(g2 + g3), 1),
                   (-(g2 + g3) / 2, 14), (-(g1 + g2 + g3) / 2, 2)], key=lambda x: -x[0])
