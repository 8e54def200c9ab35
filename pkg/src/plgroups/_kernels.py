"""Batched closed-form SU(2) kernels.

Each kernel has a numba loop version and a vectorised numpy version. The
numba versions are used when numba imports and ``PLGROUPS_DISABLE_NUMBA`` is
unset (or ``0``); both are always importable as ``<name>_numpy`` and
``<name>_numba`` so they can be compared.

Inputs are ``lam`` of shape ``(N, 3)`` in the order (xi, eta1, eta2) and
``s`` of shape ``(N,)``.
"""
import math
import os

import numpy as np

SQRT2 = math.sqrt(2.0)
SERIES_CUTOFF = 1e-4

try:
    if os.environ.get("PLGROUPS_DISABLE_NUMBA", "0") not in ("", "0"):
        raise ImportError("disabled by PLGROUPS_DISABLE_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]):
            return args[0]
        return lambda f: f


# ---------------------------------------------------------------- numpy ---

def _sinhc_np(x):
    x = np.asarray(x, dtype=float)
    small = np.abs(x) < SERIES_CUTOFF
    xs = np.where(small, 1.0, x)
    return np.where(small, 1.0 + x * x / 6.0, np.sinh(xs) / xs)


def _pm_np(xi, D):
    # (D + xi, D - xi) with the cancelling one recovered from D^2 - xi^2
    rho2 = np.maximum(D * D - xi * xi, 0.0)
    pos = xi >= 0
    big = D + np.abs(xi)
    small = rho2 / np.where(big > 0, big, 1.0)
    return np.where(pos, big, small), np.where(pos, small, big)


def _cosh_plus_np(xi, D, sig, sign):
    # cosh(sig) + sign xi sinh(sig) / D = (e^sig (D + sign xi) + e^-sig (D - sign xi)) / (2 D)
    p, m = _pm_np(xi, D)
    if sign < 0:
        p, m = m, p
    Dz = np.where(D > 0, D, 1.0)
    return np.where(D > 0, (np.exp(sig) * p + np.exp(-sig) * m) / (2 * Dz), 1.0)


def _radial_np(lam, s):
    lam = np.asarray(lam, dtype=float)
    s = np.asarray(s, dtype=float)
    D = np.sqrt(np.sum(lam * lam, axis=-1))
    sig = s * D / SQRT2
    S = s / SQRT2 * _sinhc_np(sig)           # sinh(sig) / D
    return lam[..., 0], lam[..., 1], lam[..., 2], D, sig, S


def es_su2_numpy(lam, s):
    xi, e1, e2, D, sig, S = _radial_np(lam, s)
    a = _cosh_plus_np(xi, D, sig, 1.0) ** -0.5
    return a, -a * e2 * S, a * e1 * S


def es_dual_su2_numpy(lam, s):
    xi, e1, e2, D, sig, S = _radial_np(lam, s)
    a = _cosh_plus_np(xi, D, sig, -1.0) ** 0.5
    return a, -e2 * S / a, e1 * S / a


def pi_an_su2_numpy(a, u, v, s):
    a = np.asarray(a, dtype=float)
    out = np.zeros(a.shape + (3, 3))
    xt = u / (a * s)
    yt = v / (a * s)
    xy = (u * u + v * v - a * a + a ** -2) / (2 * s * a * a)
    out[..., 1, 0], out[..., 0, 1] = xt, -xt
    out[..., 2, 0], out[..., 0, 2] = yt, -yt
    out[..., 1, 2], out[..., 2, 1] = xy, -xy
    return out


def _orbit_generators_np(lam):
    # rows: X_t, X_x, X_y with ad*_{X_b} lam = Pr_perp(b*)
    xi, e1, e2 = lam[..., 0], lam[..., 1], lam[..., 2]
    D2 = np.sum(lam * lam, axis=-1)
    z = np.zeros_like(xi)
    X = np.stack([np.stack([z, e2, -e1], -1),
                  np.stack([-e2, z, xi], -1),
                  np.stack([e1, -xi, z], -1)], -2)
    return X * (SQRT2 / D2)[..., None, None]


def delin_identity_numpy(lam, s):
    """6x6 matrices of the delinearized form at ``(e, lam)``."""
    lam = np.asarray(lam, dtype=float)
    s = np.asarray(s, dtype=float)
    xi, e1, e2, D, sig, S = _radial_np(lam, s)
    a, u, v = es_dual_su2_numpy(lam, s)
    Pi = pi_an_su2_numpy(a, u, v, s)
    ch = np.cosh(sig)
    p, m = _pm_np(xi, D)
    eps = (np.exp(sig) * m - np.exp(-sig) * p) / 2     # D sinh(sig) - xi cosh(sig)
    R = np.stack([-eps, e1 * ch, e2 * ch], -1) / (a * a)[..., None]
    X = _orbit_generators_np(lam)
    D2 = (D * D)[..., None, None]
    XR = np.einsum("...bc,...c->...b", X, R)
    B = np.einsum("...ac,...bc->...ab", Pi, X) + R[..., :, None] * lam[..., None, :] / D2
    C = (np.einsum("...ac,...cd,...bd->...ab", X, Pi, X)
         + (XR[..., :, None] * lam[..., None, :] - lam[..., :, None] * XR[..., None, :]) / D2
         - X)
    out = np.zeros(lam.shape[:-1] + (6, 6))
    out[..., :3, :3] = Pi
    out[..., :3, 3:] = B
    out[..., 3:, :3] = -np.swapaxes(B, -1, -2)
    out[..., 3:, 3:] = C
    return out


# ---------------------------------------------------------------- numba ---

@njit(cache=True)
def _sinhc(x):
    if abs(x) < SERIES_CUTOFF:
        return 1.0 + x * x / 6.0
    return math.sinh(x) / x


@njit(cache=True)
def _radial(xi, e1, e2, s):
    D = math.sqrt(xi * xi + e1 * e1 + e2 * e2)
    sig = s * D / SQRT2
    S = s / SQRT2 * _sinhc(sig)
    return D, sig, S


@njit(cache=True)
def _pm(xi, D):
    rho2 = max(D * D - xi * xi, 0.0)
    big = D + abs(xi)
    small = rho2 / big if big > 0 else 0.0
    if xi >= 0:
        return big, small
    return small, big


@njit(cache=True)
def _cosh_plus(xi, D, sig, sign):
    if D == 0.0:
        return 1.0
    p, m = _pm(xi, D)
    if sign < 0:
        p, m = m, p
    return (math.exp(sig) * p + math.exp(-sig) * m) / (2 * D)


@njit(cache=True)
def es_su2_numba(lam, s):
    N = lam.shape[0]
    a = np.empty(N)
    u = np.empty(N)
    v = np.empty(N)
    for i in range(N):
        xi, e1, e2 = lam[i, 0], lam[i, 1], lam[i, 2]
        D, sig, S = _radial(xi, e1, e2, s[i])
        ai = _cosh_plus(xi, D, sig, 1.0) ** -0.5
        a[i] = ai
        u[i] = -ai * e2 * S
        v[i] = ai * e1 * S
    return a, u, v


@njit(cache=True)
def es_dual_su2_numba(lam, s):
    N = lam.shape[0]
    a = np.empty(N)
    u = np.empty(N)
    v = np.empty(N)
    for i in range(N):
        xi, e1, e2 = lam[i, 0], lam[i, 1], lam[i, 2]
        D, sig, S = _radial(xi, e1, e2, s[i])
        ai = math.sqrt(_cosh_plus(xi, D, sig, -1.0))
        a[i] = ai
        u[i] = -e2 * S / ai
        v[i] = e1 * S / ai
    return a, u, v


@njit(cache=True)
def _pi_an_one(a, u, v, s, out):
    xt = u / (a * s)
    yt = v / (a * s)
    xy = (u * u + v * v - a * a + 1.0 / (a * a)) / (2 * s * a * a)
    for i in range(3):
        for j in range(3):
            out[i, j] = 0.0
    out[1, 0] = xt
    out[0, 1] = -xt
    out[2, 0] = yt
    out[0, 2] = -yt
    out[1, 2] = xy
    out[2, 1] = -xy


@njit(cache=True)
def pi_an_su2_numba(a, u, v, s):
    N = a.shape[0]
    out = np.empty((N, 3, 3))
    for i in range(N):
        _pi_an_one(a[i], u[i], v[i], s[i], out[i])
    return out


@njit(cache=True)
def delin_identity_numba(lam, s):
    N = lam.shape[0]
    out = np.zeros((N, 6, 6))
    Pi = np.empty((3, 3))
    X = np.empty((3, 3))
    R = np.empty(3)
    XR = np.empty(3)
    for n in range(N):
        xi, e1, e2 = lam[n, 0], lam[n, 1], lam[n, 2]
        D, sig, S = _radial(xi, e1, e2, s[n])
        D2 = D * D
        a = math.sqrt(_cosh_plus(xi, D, sig, -1.0))
        u = -e2 * S / a
        v = e1 * S / a
        _pi_an_one(a, u, v, s[n], Pi)
        ch = math.cosh(sig)
        p, m = _pm(xi, D)
        eps = (math.exp(sig) * m - math.exp(-sig) * p) / 2
        R[0] = -eps / (a * a)
        R[1] = e1 * ch / (a * a)
        R[2] = e2 * ch / (a * a)
        c = SQRT2 / D2
        X[0, 0], X[0, 1], X[0, 2] = 0.0, c * e2, -c * e1
        X[1, 0], X[1, 1], X[1, 2] = -c * e2, 0.0, c * xi
        X[2, 0], X[2, 1], X[2, 2] = c * e1, -c * xi, 0.0
        for i in range(3):
            XR[i] = X[i, 0] * R[0] + X[i, 1] * R[1] + X[i, 2] * R[2]
        for i in range(3):
            for j in range(3):
                out[n, i, j] = Pi[i, j]
                b = R[i] * lam[n, j] / D2
                for k in range(3):
                    b += Pi[i, k] * X[j, k]
                out[n, i, 3 + j] = b
                out[n, 3 + j, i] = -b
                cc = (XR[i] * lam[n, j] - lam[n, i] * XR[j]) / D2 - X[i, j]
                for k in range(3):
                    for m in range(3):
                        cc += X[i, k] * Pi[k, m] * X[j, m]
                out[n, 3 + i, 3 + j] = cc
    return out


# ------------------------------------------------------------- dispatch ---

def _prep(lam, s):
    lam = np.ascontiguousarray(np.atleast_2d(np.asarray(lam, dtype=float)))
    s = np.ascontiguousarray(np.broadcast_to(np.asarray(s, dtype=float), lam.shape[:1]))
    return lam, s


def es_su2(lam, s):
    lam, s = _prep(lam, s)
    if HAVE_NUMBA:
        return es_su2_numba(lam, s)
    return es_su2_numpy(lam, s)


def es_dual_su2(lam, s):
    lam, s = _prep(lam, s)
    if HAVE_NUMBA:
        return es_dual_su2_numba(lam, s)
    return es_dual_su2_numpy(lam, s)


def pi_an_su2(a, u, v, s):
    a, u, v = (np.ascontiguousarray(np.atleast_1d(np.asarray(t, dtype=float))) for t in (a, u, v))
    s = np.ascontiguousarray(np.broadcast_to(np.asarray(s, dtype=float), a.shape))
    if HAVE_NUMBA:
        return pi_an_su2_numba(a, u, v, s)
    return pi_an_su2_numpy(a, u, v, s)


def delin_identity(lam, s):
    lam, s = _prep(lam, s)
    if HAVE_NUMBA:
        return delin_identity_numba(lam, s)
    return delin_identity_numpy(lam, s)
