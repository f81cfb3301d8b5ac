"""Invariant suite behind ``madcap verify``."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import forms
from .capacity import (brute_force_holevo, coherent_information, diagonal_dominance_check,
                       holevo_upper_bound, mutual_information)
from .channel import KrausChannel, apply_map, completeness_error, compose, is_cptp, superop_equal
from .degradability import Verdict, classify, noiseless_subspace
from .diagonal import DiagonalState
from .lindblad import (RateParams, dissipator_correlated, evolve, expected_multiplicities,
                       kraus_consistency, spectrum_multiplicities)
from .linalg import dagger, random_density_matrix, random_pure_state, von_neumann_entropy
from .madfamily import (DecayParams, family_channel, mad_channel, sign_unitaries, swap_unitaries)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    worst: float
    limit: float

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name:<28} worst={self.worst:.2e} limit={self.limit:.0e}"


COVARIANCE_POINTS = {
    "single1": [dict(p1=0.2), dict(p1=0.5), dict(p1=0.9)],
    "v": [dict(p1=0.3, p2=0.6), dict(p1=0.5, p2=0.5), dict(p1=0.9, p2=0.1)],
    "lambda": [dict(p2=0.3, p3=0.2), dict(p2=0.5, p3=0.5), dict(p2=0.8, p3=0.4)],
    "full": [dict(p1=0.5, p2=0.5, p3=0.2), dict(p1=0.2, p2=0.4, p3=0.3), dict(p1=0.6, p2=0.7, p3=0.5)],
}

PIPELINE_POINTS = {
    "single1": dict(p1=0.3), "single2": dict(p2=0.4), "single3": dict(p3=0.25),
    "v": dict(p1=0.3, p2=0.45), "lambda": dict(p2=0.3, p3=0.2), "three": dict(p2=0.2, p3=0.15),
    "fulldamp1": dict(p2=0.35), "equal": dict(p1=0.5), "full": dict(p1=0.5, p2=0.5, p3=0.2),
}


def random_simplex_states(n, rng, free=(True, True, True)):
    out = []
    for _ in range(n):
        w = rng.dirichlet(np.ones(4))
        a, g, d = w[0], w[2], w[3]
        if not free[1]:
            g = 0.0
        out.append(DiagonalState.from_free(a, g, d))
    return out


def check_completeness():
    worst = 0.0
    for tag, pts in COVARIANCE_POINTS.items():
        for free in pts:
            worst = max(worst, completeness_error(family_channel(tag, **free)[0]))
    return Check("completeness", worst <= 1e-12, worst, 1e-12)


def check_negative_control():
    """A corrupted Kraus list must be caught by the CPTP certifier."""
    ch = mad_channel(DecayParams(0.3, 0.2, 0.2))
    bad = KrausChannel([1.01 * ch.kraus[0]] + list(ch.kraus[1:]), check=False)
    caught = not is_cptp(bad)
    return Check("negative-control-detected", caught, completeness_error(bad), 1e-10)


def covariance_residual(ch, unitaries, states):
    worst = 0.0
    for u in unitaries:
        ud = dagger(u)
        for rho in states:
            lhs = apply_map(ch, u @ rho @ ud)
            rhs = u @ apply_map(ch, rho) @ ud
            worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def check_covariance(rng):
    states = [random_density_matrix(9, rng) for _ in range(50)]
    us = sign_unitaries() + swap_unitaries()
    worst = 0.0
    for tag, pts in COVARIANCE_POINTS.items():
        for free in pts:
            worst = max(worst, covariance_residual(family_channel(tag, **free)[0], us, states))
    return Check("covariance", worst <= 1e-12, worst, 1e-12)


def admissible_rates(rng, n):
    out = []
    while len(out) < n:
        g = rng.uniform(0.05, 2.0, size=3)
        if g[1] + g[2] > g[0] * 1.05:
            out.append(RateParams(*g, t=float(rng.uniform(0.1, 2.0))))
    return out


def check_lindblad(rng):
    worst = max(kraus_consistency(g, 20, seed=i) for i, g in enumerate(admissible_rates(rng, 20)))
    return Check("kraus-vs-lindblad", worst <= 1e-9, worst, 1e-9)


def check_spectrum():
    g = RateParams(0.7, 1.1, 1.9, 1.0)
    got = spectrum_multiplicities(dissipator_correlated(g))
    want = expected_multiplicities(g)
    ok = len(got) == len(want) and all(m1 == m2 for (_, m1), (_, m2) in zip(got, want))
    worst = max(abs(l1 - l2) for (l1, _), (l2, _) in zip(got, want)) if ok else math.inf
    return Check("spectrum-multiplicities", ok and worst <= 1e-8, worst, 1e-8)


def check_composition(rng):
    worst = 0.0
    for _ in range(10):
        a, b = rng.uniform(0, 1, 2)
        lhs = compose(mad_channel(DecayParams(a, 0, 0)), mad_channel(DecayParams(b, 0, 0)))
        worst = max(worst, superop_equal(lhs, mad_channel(DecayParams(a + b - a * b, 0, 0))))
    return Check("composition-rule", worst <= 1e-12, worst, 1e-12)


def check_semigroup(rng):
    worst = 0.0
    for g in admissible_rates(rng, 5):
        t1, t2 = rng.uniform(0.1, 1.0, 2)
        rho = random_density_matrix(9, rng)
        a = evolve(rho, RateParams(*g.rates, t=t1 + t2))
        b = evolve(evolve(rho, RateParams(*g.rates, t=t1)), RateParams(*g.rates, t=t2))
        worst = max(worst, float(np.abs(a - b).max()))
    return Check("semigroup", worst <= 1e-9, worst, 1e-9)


def pipeline_residual(tag, free, rng, n=50):
    ch, p = family_channel(tag, **free)
    ic = forms.coherent_info_form(tag, p)
    mi = forms.mutual_info_form(tag, p)
    worst = 0.0
    for s in random_simplex_states(n, rng):
        rho = s.matrix()
        worst = max(worst, abs(ic(s) - coherent_information(ch, rho)),
                    abs(mi(s) - mutual_information(ch, rho)))
    return worst


def check_pipeline(rng):
    worst = max(pipeline_residual(t, f, rng) for t, f in PIPELINE_POINTS.items())
    return Check("closed-form-vs-pipeline", worst <= 1e-9, worst, 1e-9)


def random_ensemble(rng, d=9, max_states=6):
    k = int(rng.integers(1, max_states + 1))
    w = rng.dirichlet(np.ones(k))
    return [(float(x), random_pure_state(d, rng)) for x in w]


def twirled_ensemble(ensemble):
    group = [s @ u for s in [np.eye(9)] + swap_unitaries() for u in sign_unitaries()]
    return [(w / len(group), g @ psi) for w, psi in ensemble for g in group]


def check_holevo_dominance(rng):
    worst = math.inf
    for tag, pts in COVARIANCE_POINTS.items():
        ch = family_channel(tag, **pts[0])[0]
        for _ in range(5):
            ens = random_ensemble(rng)
            worst = min(worst, brute_force_holevo(ch, twirled_ensemble(ens)) - brute_force_holevo(ch, ens))
    return Check("holevo-twirl-dominance", worst >= -1e-9, max(-worst, 0.0), 1e-9)


HOLEVO_POINTS = [("single1", dict(p1=0.0)), ("single1", dict(p1=0.3)), ("single1", dict(p1=0.7)),
                 ("single2", dict(p2=0.5)), ("single3", dict(p3=0.9)), ("v", dict(p1=0.2, p2=0.3)),
                 ("v", dict(p1=0.6, p2=0.4)), ("v", dict(p1=1.0, p2=0.0)), ("v", dict(p1=0.9, p2=0.9)),
                 ("fulldamp1", dict(p2=0.5))]


def check_holevo_bound(rng, n_ensembles=200):
    worst = -math.inf
    for tag, free in HOLEVO_POINTS:
        ch = family_channel(tag, **free)[0]
        bound = holevo_upper_bound(tag, **free).value
        for _ in range(n_ensembles):
            worst = max(worst, brute_force_holevo(ch, random_ensemble(rng)) - bound)
    return Check("holevo-bound-vs-brute-force", worst <= 1e-9, max(worst, 0.0), 1e-9)


def check_diagonal_dominance(seed):
    worst = math.inf
    for tag, free in (("single1", dict(p1=0.3)), ("lambda", dict(p2=0.2, p3=0.2))):
        rep = diagonal_dominance_check(family_channel(tag, **free)[0], 30, seed)
        worst = min(worst, rep.worst_margin)
    return Check("diagonal-dominance", worst >= -1e-9, max(-worst, 0.0), 1e-9)


def check_antidegradable():
    hits = 0
    for p1 in np.arange(0.0, 1.01, 0.25):
        for p2 in np.arange(0.0, 1.01, 0.25):
            for p3 in np.arange(0.0, 1.01, 0.25):
                try:
                    ch = mad_channel(DecayParams(p1, p2, p3))
                except ValueError:
                    continue
                hits += classify(ch).antidegradable is Verdict.YES
    return Check("never-antidegradable", hits == 0, float(hits), 0.0)


def run_suite(seed: int = 0):
    rng = np.random.default_rng(seed)
    return [
        check_completeness(),
        check_negative_control(),
        check_covariance(rng),
        check_lindblad(rng),
        check_spectrum(),
        check_composition(rng),
        check_semigroup(rng),
        check_pipeline(rng),
        check_holevo_dominance(rng),
        check_holevo_bound(rng),
        check_diagonal_dominance(seed),
        check_antidegradable(),
    ]


def certify_channel(ch: KrausChannel):
    """Checks for a user-supplied channel file."""
    comp = completeness_error(ch)
    checks = [Check("completeness", comp <= 1e-10, comp, 1e-10),
              Check("cptp", is_cptp(ch), comp, 1e-10)]
    if ch.dim_in == ch.dim_out:
        rep = classify(ch)
        ns = noiseless_subspace(ch)
        info = (f"degradable={rep.degradable.value} antidegradable={rep.antidegradable.value} "
                f"noiseless_dim={len(ns)}")
    else:
        info = "classification skipped: dim_in != dim_out"
    return checks, info
