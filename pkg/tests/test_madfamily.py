import numpy as np
import pytest

from madcap.channel import apply_map, completeness_error, superop_equal
from madcap.errors import CptpViolation, DimensionMismatch, NonDiagonalInput, OutOfRange, Undefined
from madcap.linalg import random_density_matrix
from madcap.madfamily import (DecayParams, FamilyTag, conjugate, family_channel, mad_channel,
                              sign_unitaries, swap_unitaries, symmetrize_swap, theta_from_p,
                              twirl_diagonal)


def test_theta_values():
    assert abs(theta_from_p(0, 0.4, 0.4) - 0.5) < 1e-15
    assert abs(theta_from_p(0, 0.75, 0.5) - 1 / 3) < 1e-15
    lam = np.log(0.8) / (np.log(0.8) + np.log(0.7))
    assert abs(theta_from_p(0, 0.3, 0.2) - np.log(0.8) / (np.log(0.8) + np.log(0.7))) < 1e-15
    assert abs(theta_from_p(0, 0.2, 0.3) - (1 - lam)) < 1e-15


def test_theta_undefined_on_surface():
    with pytest.raises(Undefined):
        theta_from_p(0.75, 0.5, 0.5)


def test_theta_rate_limits():
    assert theta_from_p(0.2, 1.0, 0.5) == 0.0
    assert theta_from_p(0.2, 0.5, 1.0) == 1.0
    assert theta_from_p(0.0, 1.0, 1.0) == 0.5


def test_theta_matches_rates():
    g1, g2, g3, t = 0.5, 1.0, 2.0, 0.8
    p = [1 - np.exp(-g * t) for g in (g1, g2, g3)]
    assert abs(theta_from_p(*p) - g3 / (g3 + g2 - g1)) < 1e-14


def test_identity_member():
    ch = mad_channel(DecayParams(0, 0, 0))
    assert len(ch) == 1 and np.abs(ch.kraus[0] - np.eye(9)).max() == 0


def test_single_decay_kraus():
    ch = mad_channel(DecayParams(0.3, 0, 0))
    assert len(ch) == 2
    assert abs(ch.kraus[1][0, 4] - np.sqrt(0.3)) < 1e-15
    assert abs(ch.kraus[0][4, 4] - np.sqrt(0.7)) < 1e-15


def test_cptp_violation():
    with pytest.raises(CptpViolation):
        DecayParams(0.5, 0.2, 0.2)
    with pytest.raises(OutOfRange):
        DecayParams(1.2, 0, 0)


def test_completeness_over_domain():
    worst = 0.0
    for p1 in np.linspace(0, 1, 11):
        for p2 in np.linspace(0, 1, 11):
            for p3 in np.linspace(0, 1, 11):
                try:
                    ch = mad_channel(DecayParams(p1, p2, p3))
                except CptpViolation:
                    continue
                worst = max(worst, completeness_error(ch))
    assert worst < 1e-12


def test_three_decay():
    ch, p = family_channel("three", p2=0.5, p3=0.5)
    assert abs(p.p1 - 0.75) < 1e-15 and len(ch) == 3
    assert abs(ch.kraus[1][0, 4] - np.sqrt(0.75)) < 1e-15
    assert abs(ch.kraus[2][0, 8] - np.sqrt(0.75)) < 1e-15


def test_three_decay_on_surface_matches_mad():
    for p2, p3 in [(0.2, 0.3), (0.6, 0.1), (0.9, 0.9)]:
        ch, p = family_channel("three", p2=p2, p3=p3)
        e00 = np.eye(9); e00[4, 4] = e00[8, 8] = np.sqrt(1 - p.p1)
        assert abs(p.p123) < 1e-15
        assert np.abs(ch.kraus[0] - e00).max() < 1e-13


def test_lambda_weights():
    ch, p = family_channel("lambda", p2=0.3, p3=0.2)
    th = np.log(0.8) / (np.log(0.8) + np.log(0.7))
    assert abs(ch.kraus[1][0, 8] ** 2 - (1 - th) * 0.44) < 1e-14
    assert abs(ch.kraus[2][4, 8] ** 2 - th * 0.44) < 1e-14


def test_single2_single3_levels():
    ch2, _ = family_channel("single2", p2=0.3)
    ch3, _ = family_channel("single3", p3=0.3)
    assert superop_equal(ch2, mad_channel(DecayParams(0, 0.3, 0))) < 1e-15
    assert superop_equal(ch3, mad_channel(DecayParams(0, 0, 0.3))) < 1e-15


def test_single2_is_swap_conjugate():
    s = np.eye(3)[[0, 2, 1]]
    base = mad_channel(DecayParams(0.4, 0, 0))
    ch2, _ = family_channel("single2", p2=0.4)
    assert superop_equal(ch2, conjugate(base, np.kron(s, s))) < 1e-15


def test_family_tags_and_params():
    assert FamilyTag.parse("V") is FamilyTag.V
    assert family_channel("v", p1=0.7, p2=0.2)[1].as_tuple() == (0.7, 0.2, 0.0)
    assert family_channel("fulldamp1", p2=0.4)[1].as_tuple() == (1.0, 0.4, 0.0)
    assert family_channel("equal", p1=0.3)[1].as_tuple() == (0.3, 0.3, 0.3)
    with pytest.raises(ValueError):
        family_channel("v", p1=0.3)
    with pytest.raises(ValueError):
        FamilyTag.parse("nope")


def test_sign_unitaries():
    us = sign_unitaries()
    assert len(us) == 16 and np.abs(us[0] - np.eye(9)).max() == 0
    for u in us:
        assert np.abs(u @ u - np.eye(9)).max() == 0
        assert np.abs(u - np.diag(np.diag(u))).max() == 0


def test_sign_unitary_commutation_pattern():
    ch = mad_channel(DecayParams(0.5, 0.4, 0.3))
    u1 = sign_unitaries()[1]
    e00, e22 = ch.kraus[0], ch.kraus[2]
    assert np.abs(e00 @ u1 - u1 @ e00).max() == 0
    assert np.abs(e22 @ u1 + u1 @ e22).max() == 0
    for u in sign_unitaries():
        for e in ch.kraus:
            assert (np.abs(e @ u - u @ e).max() == 0) or (np.abs(e @ u + u @ e).max() == 0)


def test_swap_unitaries():
    vs = swap_unitaries()
    assert len(vs) == 5
    v3 = vs[2]
    for a, b in [(1, 3), (2, 6), (5, 7)]:
        assert v3[a, b] == 1 and v3[b, a] == 1
    ch = mad_channel(DecayParams(0.5, 0.4, 0.3))
    for v in vs:
        assert np.abs(v @ v.conj().T - np.eye(9)).max() == 0
        assert all(v[i, i] == 1 for i in (0, 4, 8))
        for e in ch.kraus:
            assert np.abs(e @ v - v @ e).max() < 1e-14


def test_swap_covariance(rng):
    ch = mad_channel(DecayParams(0.5, 0.4, 0.3))
    for v in swap_unitaries():
        rho = random_density_matrix(9, rng)
        assert np.abs(apply_map(ch, v @ rho @ v) - v @ apply_map(ch, rho) @ v).max() < 1e-12


def test_twirl(rng):
    rho = random_density_matrix(9, rng)
    t = twirl_diagonal(rho)
    assert np.abs(t - np.diag(np.diag(rho))).max() < 1e-14
    d = np.diag(np.diag(rho))
    assert np.abs(twirl_diagonal(d) - d).max() < 1e-15
    assert abs(np.trace(t) - np.trace(rho)) < 1e-15
    with pytest.raises(DimensionMismatch):
        twirl_diagonal(np.eye(3))


def test_symmetrize_swap(rng):
    pops = rng.dirichlet(np.ones(9))
    out = np.diag(symmetrize_swap(np.diag(pops))).real
    beta = pops[[1, 2, 3, 5, 6, 7]].mean()
    assert np.abs(out[[1, 2, 3, 5, 6, 7]] - beta).max() < 1e-15
    assert np.abs(out[[0, 4, 8]] - pops[[0, 4, 8]]).max() < 1e-15
    sym = np.diag(out)
    assert np.abs(symmetrize_swap(sym) - sym).max() < 1e-15
    with pytest.raises(NonDiagonalInput):
        symmetrize_swap(random_density_matrix(9, rng))
