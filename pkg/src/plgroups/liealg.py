"""Explicit bases, pairings and projections for su(n), sl(n, C) and an.

Elements of su(n) and su(n)* are handled as real coordinate vectors in the
orthonormal basis ``B`` (and its dual). Elements of sl(n, C) are plain
complex ``n x n`` arrays.
"""
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class Basis:
    """Ordered orthonormal basis of su(n) under ``-killing``.

    Attributes
    ----------
    n : int
    elements : ndarray, shape (m, n, n)
        Torus elements first, then ``x_ij, y_ij`` for ``i < j`` in
        lexicographic order. ``m = n**2 - 1``.
    labels : tuple of (str, int, int)
    structure_constants : ndarray, shape (m, m, m)
        ``[e_a, e_b] = sum_c c[a, b, c] e_c``.
    """
    n: int
    elements: np.ndarray
    labels: tuple
    structure_constants: np.ndarray = field(repr=False)

    @property
    def dim(self):
        return len(self.elements)

    def names(self):
        out = []
        for sym, i, j in self.labels:
            if self.n == 2:
                out.append(sym)
            elif sym == "t":
                out.append("t%d" % i)
            else:
                out.append("%s%d%d" % (sym, i, j))
        return out


def killing(X, Y):
    """Killing form ``2n tr(XY)`` of sl(n, C)."""
    X = np.asarray(X)
    Y = np.asarray(Y)
    if X.shape[-2:] != Y.shape[-2:]:
        raise ValueError("dimension mismatch: %s vs %s" % (X.shape, Y.shape))
    n = X.shape[-1]
    return 2 * n * np.sum(X * np.swapaxes(Y, -1, -2), axis=(-2, -1))


def pairing_s(Z, W, s):
    """Manin pairing ``<Z, W>_s = -(1/s) Im killing(Z, W)``."""
    if s <= 0:
        raise ValueError("s must be positive, got %r" % (s,))
    return -np.imag(killing(Z, W)) / s


def bracket(X, Y):
    return X @ Y - Y @ X


@lru_cache(maxsize=None)
def basis_su_n(n):
    """The orthonormal basis of su(n) used throughout the package.

    For ``n = 2`` the order is ``(t, x, y)`` with
    ``t = i/(2 sqrt 2) diag(1, -1)``.
    """
    n = int(n)
    if n < 2:
        raise ValueError("n must be >= 2, got %d" % n)
    c = 1.0 / (2.0 * np.sqrt(n))

    # torus: Gram-Schmidt on i(E_ii - E_{i+1,i+1}) under -killing
    torus = []
    for i in range(n - 1):
        h = np.zeros((n, n), dtype=complex)
        h[i, i] = 1j
        h[i + 1, i + 1] = -1j
        for t in torus:
            h = h + killing(t, h).real * t
        h = h / np.sqrt(-killing(h, h).real)
        torus.append(h)

    elements = list(torus)
    labels = [("t", i + 1, i + 1) for i in range(n - 1)]
    for i in range(n):
        for j in range(i + 1, n):
            x = np.zeros((n, n), dtype=complex)
            x[i, j], x[j, i] = c, -c
            y = np.zeros((n, n), dtype=complex)
            y[i, j] = y[j, i] = 1j * c
            elements += [x, y]
            labels += [("x", i + 1, j + 1), ("y", i + 1, j + 1)]
    elements = np.array(elements)
    for E in elements:
        E.setflags(write=False)

    m = len(elements)
    br = np.einsum("aij,bjk->abik", elements, elements)
    br = br - br.transpose(1, 0, 2, 3)
    # coordinates of [e_a, e_b] against e_c under -killing
    c_abc = -2 * n * np.einsum("abij,cji->abc", br, elements).real
    c_abc.setflags(write=False)
    assert c_abc.shape == (m, m, m)
    return Basis(n, elements, tuple(labels), c_abc)


def _an_chart(n):
    """Real chart of an: traceless real diagonal, then (Re, Im) above it."""
    gens = []
    for i in range(n - 1):
        h = np.zeros((n, n), dtype=complex)
        h[i, i], h[i + 1, i + 1] = 1, -1
        gens.append(h)
    for i in range(n):
        for j in range(i + 1, n):
            e = np.zeros((n, n), dtype=complex)
            e[i, j] = 1
            gens += [e, 1j * e]
    return np.array(gens)


@lru_cache(maxsize=64)
def _dual_basis_cached(n, s):
    basis = basis_su_n(n)
    chart = _an_chart(n)
    # M[i, j] = <b_i, chart_j>_s ; want duals = chart^T C with M C = I
    M = pairing_s(basis.elements[:, None], chart[None, :], s)
    C = np.linalg.solve(M, np.eye(basis.dim))
    duals = np.einsum("ja,jkl->akl", C, chart)
    duals.setflags(write=False)
    return duals


def dual_basis_an(basis, s):
    """Elements ``b*`` of an with ``<b_i, b*_j>_s = delta_ij``.

    Returns an array of shape ``(m, n, n)``.
    """
    if s <= 0:
        raise ValueError("s must be positive, got %r" % (s,))
    return _dual_basis_cached(basis.n, float(s))


def proj_an(Z):
    """an-component of ``Z`` in the decomposition sl(n, C) = su(n) + an."""
    Z = np.asarray(Z)
    out = np.triu(Z + np.conj(np.swapaxes(Z, -1, -2)), 1)
    d = np.real(np.diagonal(Z, axis1=-2, axis2=-1))
    idx = np.arange(Z.shape[-1])
    out = out.astype(complex)
    out[..., idx, idx] = d
    return out


def proj_k(Z):
    """su(n)-component of ``Z``; ``proj_k(Z) + proj_an(Z) == Z``."""
    return np.asarray(Z) - proj_an(Z)


def to_coords(X, basis):
    """Coordinates of an element of su(n) in ``basis`` (real vector)."""
    n = basis.n
    return -2 * n * np.einsum("aij,...ji->...a", basis.elements, X).real


def from_coords(c, basis):
    return np.einsum("...a,aij->...ij", np.asarray(c, dtype=float), basis.elements)


def phi(lam, basis):
    """su(n)* -> su(n) induced by the invariant inner product."""
    return from_coords(lam, basis)


def phi_inv(X, basis):
    return to_coords(X, basis)


def ad_star(X, lam, basis):
    """Coadjoint action of ``X`` (coordinates or matrix) on ``lam``.

    Corresponds to ``[X, phi(lam)]`` under ``phi``.
    """
    X = np.asarray(X)
    if X.ndim == 1:
        X = from_coords(X, basis)
    return to_coords(bracket(X, phi(lam, basis)), basis)


def ad_matrix(X, basis):
    """Matrix of ``ad_X`` on coordinates, ``X`` given as coordinates."""
    return np.einsum("a,abc->cb", np.asarray(X, dtype=float), basis.structure_constants)


def Ad_matrix(k, basis):
    """Matrix of ``Ad_k`` on su(n) coordinates; also the coadjoint action.

    Column ``b`` holds the coordinates of ``k e_b k^-1``.
    """
    conj = k @ basis.elements @ np.conj(k.T)
    return to_coords(conj, basis).T


def coadjoint(k, lam, basis):
    """``Ad*_k lam``, computed by conjugating ``phi(lam)``."""
    X = phi(lam, basis)
    return to_coords(k @ X @ np.conj(k.T), basis)


def bracket_form(lam, basis):
    """``C0[a, b] = <lam, [e_a, e_b]>``."""
    return np.einsum("abc,c->ab", basis.structure_constants, np.asarray(lam, dtype=float))


def random_su_n(n, rng):
    """Haar-distributed element of SU(n)."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    q = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
    return q / np.linalg.det(q) ** (1.0 / n)
