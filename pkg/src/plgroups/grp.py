"""Group level maps on SL(n, C) = K AN: Iwasawa factors, dressing actions,
``f(b) = b tau(b)`` and the equivariant diffeomorphism ``E_s``.
"""
from collections import namedtuple

import numpy as np

from . import _kernels
from .liealg import basis_su_n, phi, to_coords

SU2ANCoords = namedtuple("SU2ANCoords", "a u v")

_J_CACHE = {}


def _antidiag(n):
    if n not in _J_CACHE:
        _J_CACHE[n] = np.eye(n)[::-1]
    return _J_CACHE[n]


def tau(g):
    """Conjugate transpose."""
    return np.conj(np.swapaxes(g, -1, -2))


def _check_det_one(g, tol=1e-9):
    g = np.asarray(g, dtype=complex)
    if g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise ValueError("expected a square matrix, got shape %s" % (g.shape,))
    d = np.linalg.det(g)
    if not np.isfinite(d) or abs(d - 1) > tol * max(1.0, np.linalg.norm(g) ** g.shape[0]):
        raise ValueError("expected det(g) = 1, got %r" % (d,))
    return g


def _normalise_an(b, pivot=None):
    # Zero the lower part, make the diagonal real and impose det 1. With a
    # pivot index, det 1 fixes that (least accurate) diagonal entry; otherwise
    # the whole diagonal is rescaled.
    d = np.real(np.diagonal(b)).copy()
    b = np.triu(b)
    n = b.shape[0]
    if pivot is None:
        d = d / np.prod(d) ** (1.0 / n)
    else:
        d[pivot] = 1.0 / np.prod(np.delete(d, pivot))
    b[np.arange(n), np.arange(n)] = d
    return b


def iwasawa_KAN(g):
    """Factor ``g = k b`` with ``k`` in SU(n) and ``b`` in AN.

    QR with the phases of the R-diagonal moved into Q.
    """
    g = _check_det_one(g)
    q, r = np.linalg.qr(g)
    ph = np.diagonal(r) / np.abs(np.diagonal(r))
    k = q * ph
    b = np.conj(ph)[:, None] * r
    return k, _normalise_an(b)


def iwasawa_ANK(g):
    """Factor ``g = b k`` with ``b`` in AN and ``k`` in SU(n).

    ``b`` is the reverse Cholesky factor of ``g g^dagger``.
    """
    g = _check_det_one(g)
    b = f_inv(g @ tau(g), check=False)
    k = an_inverse(b) @ g
    return b, k


def an_inverse(b):
    """Inverse of an upper triangular matrix via back substitution."""
    n = b.shape[0]
    return np.linalg.solve(b, np.eye(n, dtype=complex))


def dress_left(k, b):
    """Left dressing ``b^k``: the AN factor of ``k b`` in the AN K decomposition."""
    return iwasawa_ANK(k @ b)[0]


def dress_right(k, b):
    """Right dressing ``k^b``: the K factor of ``k b`` in the AN K decomposition."""
    return iwasawa_ANK(k @ b)[1]


def dress_left_kan(k, q):
    """Dressing action of K on AN read in the K AN decomposition.

    Returns the AN factor ``q'`` of ``q k^-1 = k' q'``. This is the dressing
    action whose orbits are the symplectic leaves of ``pi_an`` with the left
    Maurer-Cartan form; ``e_s_dual`` intertwines it with the coadjoint action.
    """
    return iwasawa_KAN(q @ tau(k))[1]


def f_map(b):
    """``b tau(b)``."""
    return b @ tau(b)


def _check_posdef(p):
    p = np.asarray(p, dtype=complex)
    if np.abs(p - tau(p)).max() > 1e-9 * max(1.0, np.abs(p).max()):
        raise ValueError("matrix is not Hermitian")
    return p


def f_inv(p, check=True):
    """Unique AN element ``b`` with ``b tau(b) = p`` (reverse Cholesky)."""
    if check:
        p = _check_posdef(p)
    J = _antidiag(p.shape[0])
    try:
        L = np.linalg.cholesky(J @ p @ J)
    except np.linalg.LinAlgError:
        raise ValueError("matrix is not positive definite") from None
    # Cholesky of J p J produces b[0, 0] last
    return _normalise_an(J @ L @ J, pivot=0)


def f_dual_map(b):
    """``tau(b) b``."""
    return tau(b) @ b


def f_dual_inv(p, check=True):
    """Unique AN element ``q`` with ``tau(q) q = p`` (Cholesky)."""
    if check:
        p = _check_posdef(p)
    try:
        L = np.linalg.cholesky(p)
    except np.linalg.LinAlgError:
        raise ValueError("matrix is not positive definite") from None
    return _normalise_an(tau(L), pivot=-1)


def herm_exp(H):
    w, V = np.linalg.eigh(H)
    return (V * np.exp(w)) @ tau(V)


def herm_log(P):
    w, V = np.linalg.eigh(P)
    if w.min() <= 0:
        raise ValueError("matrix is not positive definite")
    return (V * np.log(w)) @ tau(V)


def _check_s(s):
    if not s > 0:
        raise ValueError("s must be positive, got %r" % (s,))


def _basis_for(lam, n):
    lam = np.asarray(lam, dtype=float)
    if n is None:
        n = int(round(np.sqrt(lam.size + 1)))
    if lam.size != n * n - 1:
        raise ValueError("lambda has %d coordinates, expected %d" % (lam.size, n * n - 1))
    return lam, basis_su_n(n)


def e_s(lam, s, n=None):
    """``E_s(lam) = f^-1(exp(2 s i phi(lam)))``.

    Equivariant for the coadjoint action and ``dress_left``.
    """
    _check_s(s)
    lam, basis = _basis_for(lam, n)
    return f_inv(herm_exp(2j * s * phi(lam, basis)), check=False)


def e_s_inv(b, s):
    _check_s(s)
    basis = basis_su_n(b.shape[0])
    X = -1j * herm_log(f_map(b)) / (2 * s)
    return to_coords(X, basis)


def e_s_dual(lam, s, n=None):
    """``f_dual^-1(exp(2 s i phi(lam)))``, where ``f_dual(q) = tau(q) q``.

    Equals ``e_s(-lam, s)^-1``. Equivariant for the coadjoint action and
    ``dress_left_kan``; this is the map whose composition with ``mu_L`` is
    the AN-valued moment map of the delinearized cotangent bundle.
    """
    _check_s(s)
    lam, basis = _basis_for(lam, n)
    return f_dual_inv(herm_exp(2j * s * phi(lam, basis)), check=False)


def e_s_dual_inv(q, s):
    _check_s(s)
    basis = basis_su_n(q.shape[0])
    X = -1j * herm_log(f_dual_map(q)) / (2 * s)
    return to_coords(X, basis)


def an_from_coords(a, u, v):
    """``[[a, u + i v], [0, 1/a]]``."""
    return np.array([[a, u + 1j * v], [0, 1.0 / a]], dtype=complex)


def an_coords(b):
    return SU2ANCoords(b[0, 0].real, b[0, 1].real, b[0, 1].imag)


def es_su2_closed(xi, eta1, eta2, s):
    """Closed form of ``e_s`` on su(2)* in the coordinates (a, u, v)."""
    _check_s(s)
    a, u, v = _kernels.es_su2(np.array([[xi, eta1, eta2]], dtype=float), np.array([float(s)]))
    return SU2ANCoords(a[0], u[0], v[0])


def es_dual_su2_closed(xi, eta1, eta2, s):
    """Closed form of ``e_s_dual`` on su(2)* in the coordinates (a, u, v)."""
    _check_s(s)
    a, u, v = _kernels.es_dual_su2(np.array([[xi, eta1, eta2]], dtype=float), np.array([float(s)]))
    return SU2ANCoords(a[0], u[0], v[0])


def random_an(n, rng, scale=1.0):
    d = np.exp(scale * rng.uniform(-1, 1, n))
    d = d / np.prod(d) ** (1.0 / n)
    b = np.triu(scale * (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))), 1)
    b[np.arange(n), np.arange(n)] = d
    return b


def random_sl(n, rng, scale=1.0):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    g = g * scale
    return g / np.linalg.det(g) ** (1.0 / n)
