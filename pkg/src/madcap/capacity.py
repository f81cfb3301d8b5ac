"""Entropic functionals, capacity values and bounds for the MAD family."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import forms
from .channel import KrausChannel, apply, apply_map, complementary
from .degradability import Verdict, classify, noiseless_subspace
from .diagonal import DiagonalState
from .errors import OutOfRange, PreconditionViolation, UnsupportedFamily
from .linalg import (as_cmatrix, check_density_matrix, dagger, random_density_matrix,
                     shannon_bits, von_neumann_entropy)
from .madfamily import DecayParams, FamilyTag, family_channel, mad_channel, symmetrize_swap, twirl_diagonal
from .optimize import maximize_simplex

LOG2_9 = math.log2(9)
PINCH_TOL = 1e-6
PIPELINE_TOL = 1e-9


class Status(str, enum.Enum):
    EXACT = "Exact"
    UPPER = "UpperBound"
    LOWER = "LowerBound"


class Region(str, enum.Enum):
    DEGRADABLE = "Degradable"
    MONOTONE_EXACT = "NonDegradableExactByMonotonicity"
    BOUNDS_ONLY = "NonDegradableBoundsOnly"


@dataclass(frozen=True)
class CapacityResult:
    value: float
    status: Status
    argmax: DiagonalState | None = None
    region: Region | None = None
    notes: tuple = field(default_factory=tuple)
    lower: float | None = None
    upper: float | None = None


# --- entropic functionals --------------------------------------------------------

def binary_entropy(x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise OutOfRange(f"binary entropy argument {x} outside [0, 1]")
    return shannon_bits([x, 1.0 - x])


def _entropy_of_map(ch, rho):
    out = apply_map(ch, rho)
    return von_neumann_entropy(0.5 * (out + dagger(out)))


def coherent_information(ch: KrausChannel, rho) -> float:
    """S(Phi(rho)) - S(Phi~(rho))."""
    rho = check_density_matrix(rho)
    apply(ch, rho)  # dimension check
    return _entropy_of_map(ch, rho) - _entropy_of_map(complementary(ch), rho)


def mutual_information(ch: KrausChannel, rho) -> float:
    """S(rho) + I_c(Phi, rho)."""
    rho = check_density_matrix(rho)
    return von_neumann_entropy(rho) + coherent_information(ch, rho)


def v_output_eigs(a: float, e: float, k: float, p1: float, p2: float):
    """Nonzero output eigenvalues (eta+, eta-) of a pure state under the V-type channel.

    ``a``, ``e``, ``k`` are the magnitudes of the |00>, |11>, |22> amplitudes.
    """
    damped = p1 * e * e + p2 * k * k
    l2 = 4.0 * (1.0 - a * a - damped) * damped
    if l2 > 1.0 + 1e-12 or l2 < -1e-12:
        raise OutOfRange(f"l^2 = {l2} outside [0, 1]")
    s = math.sqrt(max(1.0 - l2, 0.0))
    return 0.5 * (1.0 + s), 0.5 * (1.0 - s)


def brute_force_holevo(ch: KrausChannel, ensemble) -> float:
    """chi = S(Phi(sum xi psi psi^dag)) - sum xi S(Phi(psi psi^dag)) for pure states."""
    weights = np.array([w for w, _ in ensemble], dtype=float)
    if abs(weights.sum() - 1.0) > 1e-12 or weights.min() < 0.0:
        raise ValueError("ensemble weights must be non-negative and sum to 1")
    avg = np.zeros((ch.dim_in, ch.dim_in), dtype=np.complex128)
    inner = 0.0
    for w, psi in ensemble:
        psi = np.asarray(psi, dtype=np.complex128).reshape(-1)
        proj = np.outer(psi, np.conj(psi)) / np.vdot(psi, psi).real
        avg += w * proj
        inner += w * _entropy_of_map(ch, proj)
    return _entropy_of_map(ch, avg) - inner


# --- helpers ---------------------------------------------------------------------

def _opt(form):
    return maximize_simplex(form)


def _cross_check(value, reference, what):
    if abs(value - reference) > PIPELINE_TOL:
        raise AssertionError(f"{what}: closed form {value!r} disagrees with pipeline {reference!r}")


def reduced_fulldamp1_channel(p2: float) -> KrausChannel:
    """The 8-level channel obtained by removing |11> from Phi_(1,p2,0)."""
    keep = [i for i in range(9) if i != 4]
    proj = np.eye(9)[keep]
    ch = mad_channel(DecayParams(1.0, p2, 0.0))
    ops = [proj @ k @ proj.T for k in ch.kraus]
    return KrausChannel([k for k in ops if np.abs(k).max() > 0.0])


def _single_q(p: float) -> float:
    """Quantum capacity of a single decay of strength p."""
    if p > 0.5:
        return 3.0
    return _opt(forms.single_decay_ic(p))[0]


def _composition_chain(p: DecayParams):
    """Single-decay strengths (p1, pbar2, pbar3) whose composition equals Phi_p.

    Phi_p = Phi_(0,0,pbar3) o Phi_(0,pbar2,0) o Phi_(p1,0,0) with
    pbar2 = w2 and pbar3 = w3 / (1 - w2).
    """
    surv = 1.0 - p.w2
    pbar3 = min(p.w3 / surv, 1.0) if surv > 0.0 else 0.0
    return p.p1, p.w2, pbar3


def _nondegradable_bounds(tag: FamilyTag, p: DecayParams, ns_dim: int):
    """(upper, lower, lower_argmax, notes) for a non-degradable member."""
    lower = math.log2(ns_dim) if ns_dim > 0 else 0.0
    notes = [f"noiseless subspace of dimension {ns_dim} gives lower bound {lower:.9g}"]
    lower_arg = None
    if tag in (FamilyTag.SINGLE1, FamilyTag.SINGLE2, FamilyTag.SINGLE3):
        upper = _opt(forms.single_decay_ic(0.5))[0]
        notes.append("upper bound from monotonicity: Q at the degradable boundary p = 1/2")
    elif tag is FamilyTag.V:
        p1, p2 = p.p1, p.p2
        if p1 > 0.5 and p2 > 0.5:
            upper = _opt(forms.vtype_ic(0.5, 0.5))[0]
            notes.append("upper bound from monotonicity: Q at (1/2, 1/2)")
        elif p1 > 0.5 or p2 > 0.5:
            inner = p2 if p1 > 0.5 else p1
            edge = (0.5, inner) if p1 > 0.5 else (inner, 0.5)
            upper = _opt(forms.vtype_ic(*edge))[0]
            phi = reduced_fulldamp1_channel(inner)
            if classify(phi).degradable is Verdict.YES:
                val, _ = _opt(forms.fulldamp1_ic(inner))
                if val > lower:
                    lower = val
                notes.append(f"lower bound Q = {val:.9g} of the fully damped edge map")
            notes.append(f"upper bound from monotonicity: Q at {edge}")
        else:
            upper = LOG2_9
            notes.append("point inside the nominal degradable region failed certification")
    elif tag is FamilyTag.LAMBDA:
        p23 = 1.0 - p.q
        theta = p.w3 / p23 if p23 > 0 else 0.0
        upper = _opt(forms.lambda_ic(0.5, theta))[0]
        notes.append(f"upper bound from monotonicity at (1-p2)(1-p3) = 1/2, theta = {theta:.9g}")
    elif tag is FamilyTag.THREE:
        upper = _opt(forms.three_decay_ic(0.5))[0]
        notes.append("upper bound from monotonicity at (1-p2)(1-p3) = 1/2")
    elif tag is FamilyTag.FULLDAMP1:
        upper = _opt(forms.fulldamp1_ic(0.5))[0]
        notes.append("upper bound from monotonicity of the 8-level restriction at p2 = 1/2")
    else:
        chain = _composition_chain(p)
        upper = min(_single_q(x) for x in chain)
        notes.append("upper bound from the composition into single decays "
                     + "(" + ", ".join(f"{x:.6g}" for x in chain) + ")")
    return upper, lower, lower_arg, notes


def _check_range(value):
    if not -1e-9 <= value <= LOG2_9 + 1e-9:
        raise AssertionError(f"capacity value {value} outside [0, log2 9]")


# --- capacities ------------------------------------------------------------------

def quantum_capacity(tag, **free) -> CapacityResult:
    """Quantum capacity (exact where certified) of a family member."""
    tag = FamilyTag.parse(tag)
    ch, p = family_channel(tag, **free)
    ns_dim = len(noiseless_subspace(ch))

    if tag is FamilyTag.FULLDAMP1:
        phi = reduced_fulldamp1_channel(p.p2)
        if classify(phi).degradable is Verdict.YES:
            val, arg = _opt(forms.fulldamp1_ic(p.p2))
            _cross_check(val, coherent_information(ch, arg.matrix()), "fulldamp1 restricted I_c")
            _check_range(val)
            return CapacityResult(val, Status.EXACT, arg, Region.MONOTONE_EXACT,
                                  ("exact through the degradable 8-level restriction",), val, val)
    else:
        report = classify(ch)
        if report.degradable is Verdict.YES:
            form = forms.coherent_info_form(tag, p)
            val, arg = _opt(form)
            _cross_check(val, coherent_information(ch, arg.matrix()), form.label)
            _check_range(val)
            return CapacityResult(val, Status.EXACT, arg, Region.DEGRADABLE, (), val, val)

    upper, lower, lower_arg, notes = _nondegradable_bounds(tag, p, ns_dim)
    _check_range(lower)
    if upper - lower <= PINCH_TOL:
        notes.append(f"upper {upper:.12g} meets lower {lower:.12g}")
        return CapacityResult(lower, Status.EXACT, lower_arg, Region.MONOTONE_EXACT,
                              tuple(notes), lower, upper)
    notes.append(f"bounds only: {lower:.9g} <= Q <= {upper:.9g}")
    return CapacityResult(lower, Status.LOWER, lower_arg, Region.BOUNDS_ONLY, tuple(notes), lower, upper)


def coherent_info_max(tag, **free) -> CapacityResult:
    """Largest single-letter coherent information over the diagonal family."""
    tag = FamilyTag.parse(tag)
    ch, p = family_channel(tag, **free)
    form = forms.coherent_info_form(tag, p)
    val, arg = _opt(form)
    _cross_check(val, coherent_information(ch, arg.matrix()), form.label)
    return CapacityResult(val, Status.LOWER, arg, None,
                          ("maximum of I_c over diagonal states; a lower bound on Q",))


def holevo_upper_bound(tag, **free) -> CapacityResult:
    """Upper bound on the single-shot classical capacity C1."""
    tag = FamilyTag.parse(tag)
    if tag not in forms.HOLEVO_FAMILIES:
        raise UnsupportedFamily(f"no Holevo bound expression for family {tag.value}")
    _, p = family_channel(tag, **free)
    val, arg = _opt(forms.holevo_form(tag, p))
    _check_range(val)
    return CapacityResult(val, Status.UPPER, arg, None, ("upper bound on C1",), None, val)


def ea_quantum_capacity(tag, **free) -> CapacityResult:
    """Entanglement-assisted quantum capacity Q_E = max I / 2."""
    tag = FamilyTag.parse(tag)
    ch, p = family_channel(tag, **free)
    form = forms.mutual_info_form(tag, p)
    val, arg = _opt(form)
    _cross_check(val, mutual_information(ch, arg.matrix()), "mutual information")
    q = 0.5 * val
    _check_range(q)
    return CapacityResult(q, Status.EXACT, arg, None, ())


def ea_classical(tag, **free) -> CapacityResult:
    """Entanglement-assisted classical capacity C_E = 2 Q_E."""
    r = ea_quantum_capacity(tag, **free)
    return CapacityResult(2.0 * r.value, r.status, r.argmax, r.region, r.notes)


@dataclass(frozen=True)
class DominanceReport:
    worst_margin: float
    trials: int
    passed: bool


def diagonal_dominance_check(ch: KrausChannel, trials: int = 100, seed: int = 0,
                             tol: float = 1e-9) -> DominanceReport:
    """I_c(symmetrized rho) - I_c(rho) over seeded random states; needs a degradable channel."""
    if classify(ch).degradable is not Verdict.YES:
        raise PreconditionViolation("diagonal dominance requires a degradable channel")
    rng = np.random.default_rng(seed)
    worst = math.inf
    for _ in range(trials):
        rho = random_density_matrix(ch.dim_in, rng)
        sym = symmetrize_swap(np.diag(np.diag(twirl_diagonal(rho))))
        margin = coherent_information(ch, sym) - coherent_information(ch, rho)
        worst = min(worst, margin)
    return DominanceReport(float(worst), trials, bool(worst >= -tol))


QUANTITIES = {
    "quantum": quantum_capacity,
    "classical-upper": holevo_upper_bound,
    "ea-quantum": ea_quantum_capacity,
    "ea-classical": ea_classical,
    "coherent-info": coherent_info_max,
}
