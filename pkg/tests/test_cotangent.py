import numpy as np
import pytest

from plgroups import cotangent as C
from plgroups.liealg import basis_su_n, random_su_n


def _pt(rng, n=2):
    return C.CotangentPoint(random_su_n(n, rng), rng.standard_normal(n * n - 1))


def test_omega_can_blocks(rng):
    pt = _pt(rng)
    W = C.omega_can_at(pt)
    assert W.frame == ("t", "x", "y", "t*", "x*", "y*")
    assert W.skew_error() == 0
    assert np.allclose(W.entries[:3, 3:], np.eye(3)) and np.allclose(W.entries[3:, 3:], 0)


def test_moment_maps_at_identity():
    pt = C.CotangentPoint(np.eye(2, dtype=complex), np.array([1.0, 2.0, 3.0]))
    assert np.allclose(C.mu_l(pt), pt.xi)
    assert np.allclose(C.mu_r(pt), -pt.xi)


def test_mu_l_equivariant(rng):
    from plgroups.liealg import coadjoint
    pt = _pt(rng, 3)
    k1, k2 = random_su_n(3, rng), random_su_n(3, rng)
    B = basis_su_n(3)
    moved = C.act(k1, k2, pt)
    assert np.allclose(C.mu_l(moved), coadjoint(k1, C.mu_l(pt), B))
    assert np.allclose(C.mu_r(moved), coadjoint(k2, C.mu_r(pt), B))


def test_act_composes(rng):
    pt = _pt(rng)
    a1, a2, b1, b2 = (random_su_n(2, rng) for _ in range(4))
    lhs = C.act(a1, b1, C.act(a2, b2, pt))
    rhs = C.act(a1 @ a2, b1 @ b2, pt)
    assert np.allclose(lhs.k, rhs.k) and np.allclose(lhs.xi, rhs.xi)


def test_inf_vf_matches_flow(rng):
    from scipy.linalg import expm
    from plgroups.liealg import from_coords, to_coords
    B = basis_su_n(2)
    pt = _pt(rng)
    X, Y = rng.standard_normal(3), rng.standard_normal(3)
    h = 1e-6
    fwd = C.act(expm(h * from_coords(X, B)), expm(h * from_coords(Y, B)), pt)
    bwd = C.act(expm(-h * from_coords(X, B)), expm(-h * from_coords(Y, B)), pt)
    kdir = to_coords(pt.k.conj().T @ (fwd.k - bwd.k) / (2 * h), B)
    v = C.inf_vf(X, Y, pt)
    assert np.allclose(v.k_dir, kdir, atol=1e-8)
    assert np.allclose(v.v_dir, (fwd.xi - bwd.xi) / (2 * h), atol=1e-8)


def test_frame_conversions_inverse(rng):
    pt = _pt(rng)
    X = rng.standard_normal(3)
    assert np.allclose(C.left_to_right(pt, C.right_to_left(pt, X)), X)


def test_psi_l_is_dual_es(rng):
    from plgroups.grp import e_s_dual
    pt = _pt(rng)
    assert np.allclose(C.psi_l(pt, 0.5), e_s_dual(C.mu_l(pt), 0.5))
