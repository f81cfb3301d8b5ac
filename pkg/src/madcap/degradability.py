"""Degradability and anti-degradability certification."""
from __future__ import annotations

import enum
import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from .channel import (ChoiMatrix, KrausChannel, SuperOperator, apply_map, complementary,
                      kraus_from_choi, min_choi_eigenvalue, superop_to_choi, superoperator)
from .errors import CptpViolation, SingularSuperoperator
from .madfamily import FREE_PARAMS, FamilyTag, family_channel

SINGULAR_REL = 1e-10
KERNEL_TOL = 1e-9


class Verdict(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class DegradabilityReport:
    degradable: Verdict
    antidegradable: Verdict
    min_choi_eig_deg: float
    min_choi_eig_anti: float
    rank_phi: int
    rank_phic: int
    structural_notes: tuple = field(default_factory=tuple)


def _rank(m):
    s = np.linalg.svd(m, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0, s
    return int(np.sum(s > SINGULAR_REL * s[0])), s


def _invert(m, what):
    if m.shape[0] != m.shape[1]:
        raise SingularSuperoperator(f"{what} is {m.shape[0]}x{m.shape[1]}, not square",
                                    rank=_rank(m)[0], full_rank=m.shape[1])
    r, _ = _rank(m)
    if r < m.shape[1]:
        raise SingularSuperoperator(f"{what} has rank {r} < {m.shape[1]}", rank=r, full_rank=m.shape[1])
    return np.linalg.inv(m)


def degrading_superop(ch: KrausChannel) -> SuperOperator:
    """M_D = M_complement @ inv(M_channel), mapping the output onto the environment."""
    m = superoperator(ch).mat
    mc = superoperator(complementary(ch))
    return SuperOperator(mc.mat @ _invert(m, "channel superoperator"), ch.dim_out, mc.dim_out)


def degrading_channel(ch: KrausChannel) -> KrausChannel:
    """Kraus form of the degrading map (meaningful when it is CP)."""
    return kraus_from_choi(superop_to_choi(degrading_superop(ch)))


def _min_rel_eig(s: SuperOperator):
    c = superop_to_choi(s)
    lo = min_choi_eigenvalue(c)
    return lo, max(np.linalg.norm(c.mat, 2), 1.0)


def _kernel_escapes(a, b):
    """True if some X has a X = 0 but b X != 0 (ker a is not inside ker b)."""
    ns = scipy.linalg.null_space(a, rcond=SINGULAR_REL)
    if ns.shape[1] == 0:
        return False
    return float(np.abs(b @ ns).max()) > KERNEL_TOL


def _element_presence(m, mc, d_in):
    """Input coefficients rho_kl that reach the environment but not the output."""
    out = []
    for col in range(m.shape[1]):
        if np.abs(m[:, col]).max() <= KERNEL_TOL and np.abs(mc[:, col]).max() > KERNEL_TOL:
            out.append(divmod(col, d_in))
    return out


def classify(ch: KrausChannel, tol: float = 1e-8) -> DegradabilityReport:
    """Degradable / anti-degradable verdicts with the evidence behind them.

    Invertible superoperators are decided by Choi positivity of the
    candidate post-processing map.  Singular ones only ever yield No (from a
    kernel obstruction or a noiseless subspace) or Inconclusive.
    """
    comp = complementary(ch)
    m = superoperator(ch).mat
    mc = superoperator(comp).mat
    rank_phi, _ = _rank(m)
    rank_phic, _ = _rank(mc)
    notes = []

    deg, eig_deg = Verdict.INCONCLUSIVE, math.nan
    try:
        md = SuperOperator(mc @ _invert(m, "channel superoperator"), ch.dim_out, comp.dim_out)
        eig_deg, norm = _min_rel_eig(md)
        if eig_deg >= -tol * norm:
            deg = Verdict.YES
        elif ch.dim_out <= ch.dim_in:
            deg = Verdict.NO
        else:
            notes.append("degrading map not unique; negative Choi eigenvalue is not decisive")
    except SingularSuperoperator as exc:
        notes.append(f"channel superoperator singular: {exc}")
        present = _element_presence(m, mc, ch.dim_in)
        if present:
            notes.append("coefficients seen only by the environment: "
                         + ", ".join(f"rho[{k},{l}]" for k, l in present))
        if present or _kernel_escapes(m, mc):
            deg = Verdict.NO
            notes.append("ker(channel) not contained in ker(complement): not degradable")

    anti, eig_anti = Verdict.INCONCLUSIVE, math.nan
    try:
        ma = SuperOperator(m @ _invert(mc, "complement superoperator"), comp.dim_out, ch.dim_out)
        eig_anti, norm = _min_rel_eig(ma)
        anti = Verdict.YES if eig_anti >= -tol * norm else Verdict.NO
    except SingularSuperoperator:
        if _kernel_escapes(mc, m):
            anti = Verdict.NO
            notes.append("ker(complement) not contained in ker(channel): not anti-degradable")
        elif len(noiseless_subspace(ch)) >= 2:
            anti = Verdict.NO
            notes.append("noiseless subspace of dimension >= 2: positive capacity")
    return DegradabilityReport(deg, anti, float(eig_deg), float(eig_anti),
                               rank_phi, rank_phic, tuple(notes))


def _basis_op(d, i, j):
    e = np.zeros((d, d), dtype=np.complex128)
    e[i, j] = 1.0
    return e


def noiseless_subspace(ch: KrausChannel, tol: float = 1e-12):
    """Largest set B of basis indices with Phi(|i><j|) = |i><j| for all i, j in B."""
    if ch.dim_in != ch.dim_out:
        return []
    d = ch.dim_in

    def fixed(i, j):
        e = _basis_op(d, i, j)
        return np.abs(apply_map(ch, e) - e).max() <= tol

    cand = [i for i in range(d) if fixed(i, i)]
    ok = {(i, j): fixed(i, j) and fixed(j, i) for i, j in itertools.combinations(cand, 2)}

    def clique(s):
        return all(ok[(a, b)] for a, b in itertools.combinations(s, 2))

    greedy = []
    for i in cand:
        if clique(greedy + [i]):
            greedy.append(i)
    if len(cand) > 16:
        return greedy
    for size in range(len(cand), len(greedy), -1):
        for s in itertools.combinations(cand, size):
            if clique(list(s)):
                return list(s)
    return greedy


def grid_values(step: float):
    if not 0.0 < step <= 0.25:
        raise ValueError(f"grid step {step} outside (0, 0.25]")
    n = int(math.floor(1.0 / step + 1e-9))
    return [round(k * step, 12) for k in range(n + 1)]


def family_grid(tag, step: float):
    """All free-parameter assignments on the grid, in lexicographic order."""
    tag = FamilyTag.parse(tag)
    names = FREE_PARAMS[tag]
    vals = grid_values(step)
    return [dict(zip(names, combo)) for combo in itertools.product(vals, repeat=len(names))]


def _classify_point(tag, free, tol):
    try:
        ch, params = family_channel(tag, **free)
    except CptpViolation:
        return None
    return params, classify(ch, tol)


def region_map(tag, grid_step: float, tol: float = 1e-8, workers: int = 1):
    """[(DecayParams, DegradabilityReport)] over the CPTP part of the family grid."""
    points = family_grid(tag, grid_step)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as ex:
            res = list(ex.map(lambda f: _classify_point(tag, f, tol), points))
    else:
        res = [_classify_point(tag, f, tol) for f in points]
    return [r for r in res if r is not None]
