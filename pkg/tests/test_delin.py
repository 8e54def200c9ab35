import numpy as np
import pytest
from hypothesis import given, strategies as st

from plgroups import delin as D
from plgroups.cotangent import CotangentPoint, omega_can_at
from plgroups.liealg import Ad_matrix, basis_su_n, coadjoint, random_su_n

SQRT2 = np.sqrt(2.0)


@pytest.mark.parametrize("xi,s", [(1.0, 0.5), (0.3, 2.0), (4.0, 0.05)])
def test_gamma_and_pi_xy(xi, s):
    g = (1 - np.exp(s * SQRT2 * xi)) / (2 * s)
    assert D.gamma(xi, s) == pytest.approx(g, rel=1e-13)
    assert D.pi_xy_identity(xi, s) == pytest.approx(-1 / g - SQRT2 / xi, rel=1e-9)


def test_pi_xy_series_branch_continuous():
    # either side of the series cutoff: pi_xy = -s + sqrt2 xi s^2 / 6 + O(s^3)
    for x in (0.99e-4, 1.01e-4):
        s = x / SQRT2
        assert D.pi_xy_identity(1.0, s) == pytest.approx(-s + SQRT2 * s * s / 6, rel=1e-8)


def test_gamma_small_s_limit():
    assert D.gamma(2.0, 1e-9) == pytest.approx(-2.0 / SQRT2, rel=1e-8)


def test_sub_identity_p_P_q():
    for xi, s in [(0.5, 0.3), (2.0, 1.1), (5.0, 0.05)]:
        g = D.gamma(xi, s)
        p, P, q = -g, D.pi_xy_identity(xi, s), -SQRT2 * g / xi
        assert p * P + q == pytest.approx(1.0, abs=1e-10)


def _random_pt(rng):
    v = rng.standard_normal(3)
    return CotangentPoint(random_su_n(2, rng), v * rng.uniform(0.1, 5) / np.linalg.norm(v))


def test_inverse_relation_random(rng):
    for _ in range(20):
        pt, s = _random_pt(rng), rng.uniform(0.05, 2)
        W, P = D.delin_at(pt, s).entries, D.pi_delin_at(pt, s).entries
        assert np.abs(W @ P + np.eye(6)).max() < 1e-8


def test_inverse_relation_on_torus():
    for xi in (0.2, 1.0, 3.0):
        W = D.delin_identity([xi, 0, 0], 0.7).entries
        P = D.pi_delin_identity(xi, 0.7).entries
        assert np.abs(W @ P + np.eye(6)).max() < 1e-10


def test_delin_identity_skew_and_frame(rng):
    F = D.delin_identity(rng.standard_normal(3), 0.4)
    assert F.skew_error() < 1e-12
    assert F.frame == ("t", "x", "y", "t*", "x*", "y*")
    assert F.base_point["polar"] == "xi = Ad*_h lambda"


def test_delin_to_can_first_order(rng):
    pt = _random_pt(rng)
    diffs = [np.abs(D.delin_at(pt, s).entries - omega_can_at(pt).entries).max() for s in (1e-2, 1e-3)]
    assert 8 < diffs[0] / diffs[1] < 12


def test_b_tt_on_torus_is_one():
    for s in (0.01, 0.5, 2.0):
        assert D.delin_identity([1.3, 0, 0], s).entries[0, 3] == pytest.approx(1.0, abs=1e-14)


def test_b_tt_is_second_order_off_torus():
    # observed small-s law: B(t, t*) - 1 = -(eta1^2 + eta2^2) s^2 / 6 + O(s^3)
    for lam in ([1.0, 0.6, -0.8], [0.3, 1.0, 0.2], [-1.0, 0.5, 0.5]):
        s = 1e-3
        val = D.delin_identity(lam, s).entries[0, 3] - 1
        rho2 = lam[1] ** 2 + lam[2] ** 2
        assert val / s ** 2 == pytest.approx(-rho2 / 6, rel=1e-2)


def test_B_tends_to_identity_first_order():
    lam = [1.0, 0.6, -0.8]
    e = [np.abs(D.delin_identity(lam, s).entries[:3, 3:] - np.eye(3)).max() for s in (1e-2, 1e-3)]
    assert 9 < e[0] / e[1] < 11


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5))
def test_polar_decompose(a, b, c):
    xi = np.array([a, b, c])
    if np.linalg.norm(xi) < 1e-3:
        return
    dec = D.polar_decompose_kstar(xi)
    assert dec.lambda_chamber == pytest.approx(np.linalg.norm(xi))
    assert np.allclose(coadjoint(dec.h, [dec.lambda_chamber, 0, 0], basis_su_n(2)), xi, atol=1e-10)


def test_polar_antipode():
    dec = D.polar_decompose_kstar([-2.0, 0, 0])
    assert np.allclose(coadjoint(dec.h, [2.0, 0, 0], basis_su_n(2)), [-2.0, 0, 0])


@pytest.mark.parametrize("bad", [[0, 0, 0], [1, 2]])
def test_rejects_bad_lambda(bad):
    with pytest.raises(ValueError):
        D.delin_identity(bad, 1.0)


def test_rejects_bad_s_and_xi():
    with pytest.raises(ValueError):
        D.pi_delin_identity(-1.0, 1.0)
    with pytest.raises(ValueError):
        D.delin_identity([1, 0, 0], 0.0)


@pytest.mark.parametrize("xi,s", [(0.5, 0.2), (2.0, 1.0), (5.0, 2.0)])
def test_beta_coeffs(xi, s):
    beta = D.beta_coeffs(xi, s)
    assert beta[0, 0] == pytest.approx(1.0, abs=1e-7)
    assert abs(beta[1, 0]) < 1e-7 and abs(beta[2, 0]) < 1e-7
    assert beta[1, 1] == pytest.approx(1 + D.gamma(xi, s) * D.pi_xy_identity(xi, s), abs=1e-7)


def test_radial_formulas_match_fd(rng):
    from plgroups.grp import e_s, e_s_dual
    lam, s = rng.standard_normal(3), 0.8
    fd = D.theta_fd(e_s, lam, lam, s, richardson=True)
    assert np.allclose(fd, D.theta_des_radial(lam, s), atol=1e-7)
    fd = D.theta_fd(e_s_dual, lam, lam, s, richardson=True)
    assert np.allclose(fd, D.theta_des_dual_radial(lam, s), atol=1e-7)


def test_omega_s_matches_C_block(rng):
    lam, s = rng.standard_normal(3), 0.6
    Om = D.omega_s_at(lam, s)
    assert Om.skew_error() < 1e-6
    assert np.allclose(Om.entries, D.delin_identity(lam, s).entries[3:, 3:], atol=1e-6)


def test_coefficient_system_with_true_poisson():
    xi, s = 1.2, 0.7
    P = D.pi_delin_identity(xi, s).entries
    assert D.coefficient_system_residual(P[:3, :3], [xi, 0, 0], s) < 1e-8


def test_coefficient_system_detects_wrong_candidate():
    xi, s = 1.2, 0.7
    assert D.coefficient_system_residual(np.zeros((3, 3)), [xi, 0, 0], s) > 1e-3


def test_scalars_consistent():
    sc = D.delin_scalars([0.4, -0.3, 1.1], 0.9)
    assert sc.Delta == pytest.approx(np.linalg.norm([0.4, -0.3, 1.1]))
    assert sc.a * sc.a_dual != 0
