"""T*K = K x k* in the left trivialization.

Tangent vectors at ``(k, xi)`` are pairs ``(X, eta)``: ``X`` holds the
coefficients of ``sum X_a e_a^L`` and ``eta`` the vertical k* part. Frames
are ordered (B left directions, B* vertical directions).
"""
from collections import namedtuple

import numpy as np

from .grp import e_s_dual, tau
from .liealg import Ad_matrix, ad_star, basis_su_n, bracket_form, coadjoint
from .poisson import FramedSkewMatrix

CotangentPoint = namedtuple("CotangentPoint", "k xi")
TangentAtPoint = namedtuple("TangentAtPoint", "k_dir v_dir")


def _basis(pt):
    return basis_su_n(pt.k.shape[0])


def frame_labels(basis):
    names = basis.names()
    return tuple(names) + tuple(nm + "*" for nm in names)


def omega_can_at(pt):
    """Canonical 2-form at ``pt``.

    ``omega((X, eta), (Y, zeta)) = <xi, [X, Y]> - <eta, Y> + <zeta, X>``, so
    the matrix is ``[[C0, I], [-I, 0]]`` with ``C0[a, b] = <xi, [a, b]>``.
    """
    basis = _basis(pt)
    m = basis.dim
    W = np.zeros((2 * m, 2 * m))
    W[:m, :m] = bracket_form(pt.xi, basis)
    W[:m, m:] = np.eye(m)
    W[m:, :m] = -np.eye(m)
    return FramedSkewMatrix(W, frame_labels(basis), {"k": pt.k, "xi": pt.xi})


def mu_l(pt):
    return coadjoint(pt.k, pt.xi, _basis(pt))


def mu_r(pt):
    return -np.asarray(pt.xi, dtype=float)


def psi_l(pt, s):
    """AN-valued moment map of the left action on the delinearized T*K."""
    return e_s_dual(mu_l(pt), s)


def act(k1, k2, pt):
    """``(k1 k k2^-1, Ad*_{k2} xi)``."""
    return CotangentPoint(k1 @ pt.k @ tau(k2), coadjoint(k2, pt.xi, _basis(pt)))


def inf_vf(X, Y, pt):
    """Generator of ``(X, Y)`` in k + k for the K x K action, in the left frame.

    The K part is ``Ad_{k^-1} X - Y`` (left coordinates of ``X^R - Y^L``) and
    the vertical part is ``ad*_Y xi``.
    """
    basis = _basis(pt)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    kdir = Ad_matrix(tau(pt.k), basis) @ X - Y
    return TangentAtPoint(kdir, ad_star(Y, pt.xi, basis))


def right_to_left(pt, X_right):
    return Ad_matrix(tau(pt.k), _basis(pt)) @ np.asarray(X_right, dtype=float)


def left_to_right(pt, X_left):
    return Ad_matrix(pt.k, _basis(pt)) @ np.asarray(X_left, dtype=float)


def d_mu_l(pt, X_right, eta):
    """Differential of ``mu_l`` on the tangent vector ``(X^R_k, eta)``."""
    basis = _basis(pt)
    lam = coadjoint(pt.k, pt.xi, basis)
    return ad_star(X_right, lam, basis) + coadjoint(pt.k, eta, basis)


def tangent_vector(t):
    """Flatten a TangentAtPoint into frame coordinates."""
    return np.concatenate([t.k_dir, t.v_dir])
