"""Closed-form entropy objectives over the diagonal family.

Every objective is a weighted sum of terms phi(c . (alpha, beta, gamma,
delta) + c0) where phi is either eta(x) = -x log2 x or the relaxation
term H2((1 + sqrt(1 - x^2)) / 2).  Keeping objectives in this table form
lets the compiled kernel evaluate them without Python callbacks.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .diagonal import DiagonalState
from .errors import UnsupportedFamily
from .madfamily import DecayParams, FamilyTag


@dataclass(frozen=True, eq=False)
class EntropyForm:
    coef: np.ndarray
    weight: np.ndarray
    kind: np.ndarray
    #: which of (alpha, gamma, delta) may be nonzero
    free: tuple = (True, True, True)
    label: str = ""

    def evaluate(self, points) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
        return kernels.eval_forms(pts, self.coef, self.weight, self.kind)

    def __call__(self, state: DiagonalState) -> float:
        return float(self.evaluate(state.as_array())[0])

    def __add__(self, other: "EntropyForm") -> "EntropyForm":
        return EntropyForm(np.vstack([self.coef, other.coef]),
                           np.concatenate([self.weight, other.weight]),
                           np.concatenate([self.kind, other.kind]),
                           tuple(a and b for a, b in zip(self.free, other.free)),
                           self.label)

    def restricted(self, free, label=None) -> "EntropyForm":
        return EntropyForm(self.coef, self.weight, self.kind, tuple(free), label or self.label)

    def permuted(self, perm, label=None) -> "EntropyForm":
        """Form g(a, b, c, d) = f(x) where x[k] is the coordinate ``perm[k]`` of (a, b, c, d).

        ``perm`` lists, for each of (alpha, gamma, delta) in the original
        form, which new coordinate (0 = alpha, 2 = gamma, 3 = delta) feeds it.
        """
        src = {0: perm[0], 2: perm[1], 3: perm[2], 1: 1}
        c = np.zeros_like(self.coef)
        for old, new in src.items():
            c[:, new] += self.coef[:, old]
        c[:, 4] = self.coef[:, 4]
        return EntropyForm(c, self.weight, self.kind, self.free, label or self.label)


def _form(terms, label=""):
    """terms: iterable of (weight, kind, (ca, cb, cg, cd, c0))."""
    # a term with no variable part is the constant eta(c0); drop it when it is 0
    terms = [t for t in terms if any(t[2][:4]) or t[2][4] not in (0.0, 1.0)]
    return EntropyForm(np.array([t[2] for t in terms], dtype=np.float64).reshape(-1, 5),
                       np.array([t[0] for t in terms], dtype=np.float64),
                       np.array([t[1] for t in terms], dtype=np.intc),
                       label=label)


E, H = kernels.ETA, kernels.H2REL
BETA6 = (6.0, E, (0, 1, 0, 0, 0))


def input_entropy_form() -> EntropyForm:
    """S(rho_bar) for the diagonal family."""
    return _form([(1.0, E, (1, 0, 0, 0, 0)), BETA6, (1.0, E, (0, 0, 1, 0, 0)),
                  (1.0, E, (0, 0, 0, 1, 0))], "S(rho)")


# --- generic: any (p1, p2, p3) -------------------------------------------------

def output_entropy_generic(p: DecayParams) -> EntropyForm:
    return _form([
        (1.0, E, (1, 0, p.p1, p.w2, 0)),
        BETA6,
        (1.0, E, (0, 0, 1 - p.p1, p.w3, 0)),
        (1.0, E, (0, 0, 0, p.q, 0)),
    ], "S(out)")


def env_entropy_generic(p: DecayParams) -> EntropyForm:
    return _form([
        (1.0, E, (0, 0, -p.p1, -(1 - p.q), 1)),
        (1.0, E, (0, 0, p.p1, 0, 0)),
        (1.0, E, (0, 0, 0, p.w2, 0)),
        (1.0, E, (0, 0, 0, p.w3, 0)),
    ], "S(env)")


def _neg(f: EntropyForm) -> EntropyForm:
    return EntropyForm(f.coef, -f.weight, f.kind, f.free, f.label)


def coherent_info_generic(p: DecayParams) -> EntropyForm:
    return output_entropy_generic(p) + _neg(env_entropy_generic(p))


# --- closed forms as printed (with the repairs noted per function) ---------------

def single_decay_ic(p1: float) -> EntropyForm:
    """I_c of the single decay |11> -> |00> on the diagonal family."""
    return _form([
        (1.0, E, (1, 0, p1, 0, 0)), BETA6, (1.0, E, (0, 0, 1 - p1, 0, 0)), (1.0, E, (0, 0, 0, 1, 0)),
        (-1.0, E, (0, 0, -p1, 0, 1)), (-1.0, E, (0, 0, p1, 0, 0)),
    ], "single-decay I_c")


def vtype_ic(p1: float, p2: float) -> EntropyForm:
    """I_c of the V-type channel; the environment term is log2(1 - p1 gamma - p2 delta)."""
    return _form([
        (1.0, E, (1, 0, p1, p2, 0)), BETA6,
        (1.0, E, (0, 0, 1 - p1, 0, 0)), (1.0, E, (0, 0, 0, 1 - p2, 0)),
        (-1.0, E, (0, 0, p1, 0, 0)), (-1.0, E, (0, 0, -p1, -p2, 1)), (-1.0, E, (0, 0, 0, p2, 0)),
    ], "V-type I_c")


def lambda_ic(p23: float, theta: float) -> EntropyForm:
    """I_c of the Lambda-type channel in terms of p23 = 1 - (1-p2)(1-p3) and theta."""
    return _form([
        (1.0, E, (1, 0, 0, (1 - theta) * p23, 0)), BETA6,
        (1.0, E, (0, 0, 1, theta * p23, 0)), (1.0, E, (0, 0, 0, 1 - p23, 0)),
        (-1.0, E, (0, 0, 0, theta * p23, 0)), (-1.0, E, (0, 0, 0, (1 - theta) * p23, 0)),
        (-1.0, E, (0, 0, 0, -p23, 1)),
    ], "Lambda-type I_c")


def three_decay_ic(p23: float) -> EntropyForm:
    """I_c on the p123 = 0 surface: the V-type form with p1 = p2 = p23."""
    return vtype_ic(p23, p23).restricted((True, True, True), "three-decay I_c")


def equal_rates_output(p: float) -> EntropyForm:
    return _form([
        (1.0, E, (1, 0, p, p, 0)), BETA6,
        (1.0, E, (0, 0, 1 - p, p * (1 - p), 0)), (1.0, E, (0, 0, 0, (1 - p) ** 2, 0)),
    ])


def equal_rates_ic(p: float) -> EntropyForm:
    """I_c of Phi_(p,p,p), where theta = 1, w2 = p and w3 = p(1-p)."""
    env = _form([
        (-1.0, E, (0, 0, -p, -(2 * p - p * p), 1)), (-1.0, E, (0, 0, p, 0, 0)),
        (-1.0, E, (0, 0, 0, p, 0)), (-1.0, E, (0, 0, 0, p * (1 - p), 0)),
    ])
    f = equal_rates_output(p) + env
    return EntropyForm(f.coef, f.weight, f.kind, f.free, "equal-rates I_c")


def fulldamp1_ic(p2: float) -> EntropyForm:
    """I_c of the 8-level restriction of Phi_(1,p2,0): gamma is pinned to 0."""
    return vtype_ic(1.0, p2).restricted((True, False, True), "fulldamp1 restricted I_c")


def holevo_relaxation(x_gamma: float, x_delta: float) -> EntropyForm:
    """-H2((1 + sqrt(1 - x^2)) / 2) with x = x_gamma*gamma + x_delta*delta."""
    return _form([(-1.0, H, (0, 0, x_gamma, x_delta, 0))])


def vtype_output(p1, p2) -> EntropyForm:
    return _form([
        (1.0, E, (1, 0, p1, p2, 0)), BETA6,
        (1.0, E, (0, 0, 1 - p1, 0, 0)), (1.0, E, (0, 0, 0, 1 - p2, 0)),
    ])


def vtype_holevo(p1: float, p2: float) -> EntropyForm:
    """S(Phi(rho_bar)) minus the pure-state relaxation term, for the V-type channel."""
    f = vtype_output(p1, p2) + holevo_relaxation(2 * p1, 2 * p2)
    return EntropyForm(f.coef, f.weight, f.kind, f.free, "V-type Holevo bound")


def single_decay_holevo(p1: float) -> EntropyForm:
    f = vtype_holevo(p1, 0.0)
    return EntropyForm(f.coef, f.weight, f.kind, f.free, "single-decay Holevo bound")


# --- family dispatch -------------------------------------------------------------

#: (alpha, gamma, delta) source coordinates for single2 / single3 relative to single1
_SINGLE_PERM = {
    FamilyTag.SINGLE1: (0, 2, 3),
    FamilyTag.SINGLE2: (0, 3, 2),
    FamilyTag.SINGLE3: (2, 3, 0),
}
_SINGLE_P = {FamilyTag.SINGLE1: "p1", FamilyTag.SINGLE2: "p2", FamilyTag.SINGLE3: "p3"}


def _single(tag, p: DecayParams, maker):
    return maker(getattr(p, _SINGLE_P[tag])).permuted(_SINGLE_PERM[tag])


def _lambda_coords(p: DecayParams):
    p23 = 1.0 - p.q
    theta = p.w3 / p23 if p23 > 0 else 0.0
    return p23, theta


def coherent_info_form(tag, p: DecayParams) -> EntropyForm:
    """Family-specific closed form of I_c on the diagonal family."""
    tag = FamilyTag.parse(tag)
    if tag in _SINGLE_PERM:
        return _single(tag, p, single_decay_ic)
    if tag is FamilyTag.V:
        return vtype_ic(p.p1, p.p2)
    if tag is FamilyTag.LAMBDA:
        return lambda_ic(*_lambda_coords(p))
    if tag is FamilyTag.THREE:
        return three_decay_ic(p.p1)
    if tag is FamilyTag.EQUAL:
        return equal_rates_ic(p.p1)
    if tag is FamilyTag.FULLDAMP1:
        return vtype_ic(1.0, p.p2)
    return coherent_info_generic(p)


def mutual_info_form(tag, p: DecayParams) -> EntropyForm:
    """I = S(rho_bar) + I_c on the diagonal family."""
    f = input_entropy_form() + coherent_info_form(tag, p)
    return EntropyForm(f.coef, f.weight, f.kind, f.free, "mutual information")


HOLEVO_FAMILIES = (FamilyTag.SINGLE1, FamilyTag.SINGLE2, FamilyTag.SINGLE3, FamilyTag.V,
                   FamilyTag.FULLDAMP1)


def holevo_form(tag, p: DecayParams) -> EntropyForm:
    tag = FamilyTag.parse(tag)
    if tag in _SINGLE_PERM:
        return _single(tag, p, single_decay_holevo)
    if tag in (FamilyTag.V, FamilyTag.FULLDAMP1):
        return vtype_holevo(p.p1, p.p2)
    raise UnsupportedFamily(f"no Holevo bound expression for family {tag.value}")
