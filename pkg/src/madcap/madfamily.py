"""The fully correlated two-qutrit MAD channel family.

Basis index of |ij> is 3*i + j, so |00>, |11>, |22> sit at 0, 4, 8.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .channel import KrausChannel
from .errors import CptpViolation, DimensionMismatch, NonDiagonalInput, OutOfRange, Singular, Undefined
from .linalg import as_cmatrix, dagger

CPTP_SLACK = 1e-12
#: below this p123 the E33 weight vanishes and theta is never evaluated
P123_BYPASS = 1e-14

I00, I11, I22 = 0, 4, 8


class FamilyTag(str, enum.Enum):
    FULL = "full"
    SINGLE1 = "single1"
    SINGLE2 = "single2"
    SINGLE3 = "single3"
    V = "v"
    LAMBDA = "lambda"
    THREE = "three"
    FULLDAMP1 = "fulldamp1"
    EQUAL = "equal"

    @classmethod
    def parse(cls, name) -> "FamilyTag":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).lower())
        except ValueError:
            raise ValueError(f"unknown family {name!r}; choose from "
                             + ", ".join(t.value for t in cls)) from None


#: names of the free parameters per family, in CLI slot order
FREE_PARAMS = {
    FamilyTag.FULL: ("p1", "p2", "p3"),
    FamilyTag.SINGLE1: ("p1",),
    FamilyTag.SINGLE2: ("p2",),
    FamilyTag.SINGLE3: ("p3",),
    FamilyTag.V: ("p1", "p2"),
    FamilyTag.LAMBDA: ("p2", "p3"),
    FamilyTag.THREE: ("p2", "p3"),
    FamilyTag.FULLDAMP1: ("p2",),
    FamilyTag.EQUAL: ("p1",),
}


def _log1m(p):
    return -math.inf if p >= 1.0 else math.log1p(-p)


def theta_from_p(p1: float, p2: float, p3: float) -> float:
    """Rate ratio Gamma3 / (Gamma3 + Gamma2 - Gamma1) from Gamma_i t = -ln(1 - p_i).

    Limits with p2 or p3 equal to 1 are taken through the rates: the
    infinite rate dominates, and p2 = p3 = 1 gives the symmetric value 1/2.
    """
    p123 = (1.0 - p1) - (1.0 - p2) * (1.0 - p3)
    if p123 <= P123_BYPASS:
        raise Undefined("theta is undefined on the p123 = 0 surface")
    l1, l2, l3 = _log1m(p1), _log1m(p2), _log1m(p3)
    if p3 == 0.0:
        return 0.0
    if math.isinf(l2) and math.isinf(l3):
        return 0.5
    if math.isinf(l3):
        return 1.0
    if math.isinf(l2):
        return 0.0
    den = l3 + l2 - l1
    if den == 0.0:
        raise Singular("Gamma2 + Gamma3 = Gamma1: theta denominator vanishes")
    return l3 / den


@dataclass(frozen=True)
class DecayParams:
    """Damping triple with derived weights.

    ``q`` is the survival probability of |22>, ``w2`` and ``w3`` the weights
    of the |22> -> |00> and |22> -> |11> jumps.
    """

    p1: float
    p2: float
    p3: float

    def __post_init__(self):
        for name in ("p1", "p2", "p3"):
            v = getattr(self, name)
            if not (0.0 <= v <= 1.0) or not math.isfinite(v):
                raise OutOfRange(f"{name}={v} outside [0, 1]")
            object.__setattr__(self, name, float(v))
        if self.p3 > 0.0 and self.p123 < -CPTP_SLACK:
            raise CptpViolation(
                f"(1-p1)={1 - self.p1:.6g} < (1-p2)(1-p3)={self.q:.6g}: not completely positive")

    @property
    def q(self) -> float:
        return (1.0 - self.p2) * (1.0 - self.p3)

    @property
    def p123(self) -> float:
        return (1.0 - self.p1) - self.q

    @property
    def theta(self) -> float:
        return theta_from_p(self.p1, self.p2, self.p3)

    @property
    def w3(self) -> float:
        if self.p3 == 0.0 or self.p123 <= P123_BYPASS:
            return 0.0
        return self.theta * self.p123

    @property
    def w2(self) -> float:
        return max(1.0 - self.q - self.w3, 0.0)

    def as_tuple(self):
        return (self.p1, self.p2, self.p3)


def mad_kraus(params: DecayParams):
    """Nonzero Kraus operators in the order E00, E11, E22, E33."""
    e00 = np.eye(9, dtype=np.complex128)
    e00[I11, I11] = math.sqrt(1.0 - params.p1)
    e00[I22, I22] = math.sqrt(params.q)
    ops = [e00]
    for weight, row, col in ((params.p1, I00, I11), (params.w2, I00, I22), (params.w3, I11, I22)):
        if weight > 0.0:
            e = np.zeros((9, 9), dtype=np.complex128)
            e[row, col] = math.sqrt(weight)
            ops.append(e)
    return ops


def mad_channel(params) -> KrausChannel:
    if not isinstance(params, DecayParams):
        params = DecayParams(*params)
    return KrausChannel(mad_kraus(params))


def _qutrit_perm(images):
    p = np.zeros((3, 3))
    for src, dst in enumerate(images):
        p[dst, src] = 1.0
    return p


#: P|1> = |2>, P|2> = |1>; maps the |11> -> |00> decay onto |22> -> |00>
_SWAP12 = _qutrit_perm([0, 2, 1])
#: P|0> = |1>, P|1> = |2>, P|2> = |0>; maps |11> -> |00> onto |22> -> |11>
_CYCLE = _qutrit_perm([1, 2, 0])


def conjugate(ch: KrausChannel, u) -> KrausChannel:
    u = as_cmatrix(u)
    return KrausChannel([u @ k @ dagger(u) for k in ch.kraus])


def family_params(tag, **free) -> DecayParams:
    """DecayParams for a family member; ``free`` holds the family's free slots."""
    tag = FamilyTag.parse(tag)
    names = FREE_PARAMS[tag]
    missing = [n for n in names if n not in free or free[n] is None]
    if missing:
        raise ValueError(f"family {tag.value} needs parameter(s) {', '.join(missing)}")
    for n, v in free.items():
        if v is not None and not (0.0 <= float(v) <= 1.0):
            raise OutOfRange(f"{n}={v} outside [0, 1]")
    g = {n: float(free[n]) for n in names}
    if tag is FamilyTag.FULL:
        return DecayParams(g["p1"], g["p2"], g["p3"])
    if tag is FamilyTag.SINGLE1:
        return DecayParams(g["p1"], 0.0, 0.0)
    if tag is FamilyTag.SINGLE2:
        return DecayParams(0.0, g["p2"], 0.0)
    if tag is FamilyTag.SINGLE3:
        return DecayParams(0.0, 0.0, g["p3"])
    if tag is FamilyTag.V:
        return DecayParams(g["p1"], g["p2"], 0.0)
    if tag is FamilyTag.LAMBDA:
        return DecayParams(0.0, g["p2"], g["p3"])
    if tag is FamilyTag.THREE:
        return DecayParams(1.0 - (1.0 - g["p2"]) * (1.0 - g["p3"]), g["p2"], g["p3"])
    if tag is FamilyTag.FULLDAMP1:
        return DecayParams(1.0, g["p2"], 0.0)
    return DecayParams(g["p1"], g["p1"], g["p1"])


def family_channel(tag, **free):
    """(KrausChannel, DecayParams) for a named family member.

    single2 and single3 are built by conjugating single1 with a level
    permutation applied to both qutrits; every other family is mad_channel
    at the family's parameter point.
    """
    tag = FamilyTag.parse(tag)
    params = family_params(tag, **free)
    if tag is FamilyTag.SINGLE2:
        base = mad_channel(DecayParams(params.p2, 0.0, 0.0))
        return conjugate(base, np.kron(_SWAP12, _SWAP12)), params
    if tag is FamilyTag.SINGLE3:
        base = mad_channel(DecayParams(params.p3, 0.0, 0.0))
        return conjugate(base, np.kron(_CYCLE, _CYCLE)), params
    return mad_channel(params), params


_V = [np.diag(d).astype(np.complex128) for d in ((1, 1, 1), (1, 1, -1), (1, -1, 1), (-1, 1, 1))]


@lru_cache(maxsize=None)
def _sign_unitaries():
    return tuple(np.kron(_V[m], _V[n]) for m in range(4) for n in range(4))


def sign_unitaries():
    """The 16 diagonal sign unitaries V_m (x) V_n, U_0 = identity."""
    return [u.copy() for u in _sign_unitaries()]


def _pairs(s):
    return [tuple(3 * int(c[0]) + int(c[1]) for c in item.split("<")) for item in s.split()]


# "ab<cd" means the matrix element |ab><cd| is 1
_SWAPS = (
    "01<02 10<12 02<01 20<21 12<10 21<20",
    "01<21 10<02 02<10 20<12 12<20 21<01",
    "01<10 10<01 02<20 20<02 12<21 21<12",
    "01<12 10<20 02<21 20<10 12<01 21<02",
    "01<20 10<21 02<12 20<01 12<02 21<10",
)


@lru_cache(maxsize=None)
def _swap_unitaries():
    out = []
    for s in _SWAPS:
        v = np.zeros((9, 9), dtype=np.complex128)
        for i in (I00, I11, I22):
            v[i, i] = 1.0
        for row, col in _pairs(s):
            v[row, col] = 1.0
        out.append(v)
    return tuple(out)


def swap_unitaries():
    """The five permutations fixing |00>, |11>, |22> and mixing the other six."""
    return [u.copy() for u in _swap_unitaries()]


def _check9(rho):
    rho = as_cmatrix(rho)
    if rho.shape != (9, 9):
        raise DimensionMismatch(f"two-qutrit operator required, got {rho.shape}")
    return rho


def twirl_diagonal(rho) -> np.ndarray:
    """(1/16) sum_i U_i rho U_i over the sign unitaries; keeps only the diagonal."""
    rho = _check9(rho)
    return sum(u @ rho @ u for u in _sign_unitaries()) / 16.0


OFF_DIAG = (1, 2, 3, 5, 6, 7)


def symmetrize_swap(rho) -> np.ndarray:
    """(1/6)(rho + sum_i V_i rho V_i) for a diagonal ``rho``."""
    rho = _check9(rho)
    if np.abs(rho - np.diag(np.diag(rho))).max() > 1e-12:
        raise NonDiagonalInput("symmetrize_swap expects a diagonal operator")
    return (rho + sum(v @ rho @ v for v in _swap_unitaries())) / 6.0
