"""Poisson-Lie bivectors of K = SU(n) and of its dual AN, as pairing matrices.

Elements of the double g = sl(n, C) are given real coordinates
``(c, d)`` with ``c_a = <Z, e_a*>_s`` (the su(n) part) and
``d_a = <Z, e_a>_s`` (the an part). A bivector ``(1/2) sum M_ij f_i ^ f_j``
is stored as the skew matrix ``M``.
"""
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .liealg import Ad_matrix, basis_su_n, dual_basis_an, pairing_s, proj_an, random_su_n
from .grp import an_inverse, tau


@dataclass
class FramedSkewMatrix:
    """Skew matrix of a bivector or 2-form together with its frame labels."""
    entries: np.ndarray
    frame: tuple
    base_point: dict = field(default_factory=dict)

    def __post_init__(self):
        self.entries = np.asarray(self.entries, dtype=float)
        if self.entries.shape != (len(self.frame), len(self.frame)):
            raise ValueError("frame has %d labels for a %s matrix"
                             % (len(self.frame), self.entries.shape))

    def __array__(self, dtype=None, copy=None):
        return self.entries if dtype is None else self.entries.astype(dtype)

    def skew_error(self):
        return float(np.abs(self.entries + self.entries.T).max())


def _labels(basis, dual=False):
    names = basis.names()
    return tuple(nm + "*" for nm in names) if dual else tuple(names)


def r_matrix_double(basis, s):
    """``(1/2) sum_b b ^ b*`` as a ``2m x 2m`` skew matrix in the (B, B*) frame."""
    dual_basis_an(basis, s)          # validates s
    m = basis.dim
    M = np.zeros((2 * m, 2 * m))
    M[:m, m:] = 0.5 * np.eye(m)
    M[m:, :m] = -0.5 * np.eye(m)
    return M


def double_coords(Z, basis, s):
    """Coordinates of ``Z`` in sl(n, C) in the frame (B, B*)."""
    duals = dual_basis_an(basis, s)
    return np.concatenate([pairing_s(Z, duals, s), pairing_s(Z, basis.elements, s)])


def Ad_double(g, basis, s):
    """Matrix of ``Ad_g`` on the double in the frame (B, B*)."""
    duals = dual_basis_an(basis, s)
    frame = np.concatenate([basis.elements, duals])
    gi = np.linalg.inv(g)
    return np.array([double_coords(g @ F @ gi, basis, s) for F in frame]).T


def pi_k(k, s, tol=1e-10):
    """Left-trivialized ``pi_{K,s}(k)`` from the r-matrix of the double.

    Returns the matrix of ``r_G - Ad_{k^-1} r_G`` restricted to su(n); the
    components involving an must vanish.
    """
    n = k.shape[0]
    basis = basis_su_n(n)
    m = basis.dim
    r = r_matrix_double(basis, s)
    A = Ad_double(tau(k), basis, s)
    P = r - A @ r @ A.T
    leak = np.abs(P[m:, :]).max()
    if leak > tol * max(1.0, np.abs(P).max()):
        raise RuntimeError("pi_k is not tangent to K (an-components %.3g)" % leak)
    return FramedSkewMatrix(P[:m, :m], _labels(basis), {"k": k, "s": s})


def pi_k_from_r(k, r):
    """``r - Ad_{k^-1} r`` for ``r`` a skew matrix on su(n) coordinates."""
    basis = basis_su_n(k.shape[0])
    A = Ad_matrix(tau(k), basis)
    return r - A @ r @ A.T


def r_matrix_k(basis, s, samples=20, seed=0, tol=1e-9):
    """r-matrix of K with ``pi_{K,s} = r^L - r^R``, as a skew matrix.

    ``s x ^ y`` for su(2) and ``s sum_{i<j} x_ij ^ y_ij`` in general; the
    candidate is checked against ``pi_k`` at random points.
    """
    m = basis.dim
    r = np.zeros((m, m))
    for a, (sym, i, j) in enumerate(basis.labels):
        if sym == "x":
            r[a, a + 1] = s
            r[a + 1, a] = -s
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        k = random_su_n(basis.n, rng)
        err = np.abs(pi_k_from_r(k, r) - pi_k(k, s).entries).max()
        if err > tol:
            raise NotImplementedError("r-matrix candidate fails validation (%.3g)" % err)
    return r


def pi_an(p, s):
    """``(L_{p^-1})_* pi_{AN,s}`` paired against ``<., e_a>_s``.

    ``Pi[c, d] = (1/2) sum_b (<Pr_an(Ad_{p^-1} b), c> <Ad_{p^-1} b*, d> - (c <-> d))``.
    """
    n = p.shape[0]
    basis = basis_su_n(n)
    duals = dual_basis_an(basis, s)
    pi_ = an_inverse(p)
    first = proj_an(pi_ @ basis.elements @ p)
    second = pi_ @ duals @ p
    F = pairing_s(first[:, None], basis.elements[None], s)     # [b, c]
    G = pairing_s(second[:, None], basis.elements[None], s)    # [b, d]
    M = 0.5 * (F.T @ G - G.T @ F)
    return FramedSkewMatrix(M, _labels(basis), {"p": p, "s": s})


def pi_an_su2_closed(coords, s):
    """Closed form of ``pi_an`` on SU(2)* in the frame (t, x, y)."""
    a, u, v = coords
    M = _kernels.pi_an_su2(a, u, v, s)[0]
    return FramedSkewMatrix(M, ("t", "x", "y"), {"p": tuple(coords), "s": s})
