"""The delinearized symplectic structure D(omega_can) on T*SU(2).

Matrices are in the frame (t, x, y, t*, x*, y*): left-invariant K directions
followed by vertical directions. ``W`` denotes a 2-form matrix and ``P`` the
Poisson matrix, related by ``W P = -I``.

The AN-valued moment map of the left action is ``e_s_dual o mu_L`` (see
``grp.e_s_dual``); the blocks of the 2-form at ``(e, lam)`` are

* ``A = Pi(p)`` with ``p = e_s_dual(lam)`` (pairings of left generators),
* ``B[a, b] = <Theta^L dE(b*), a>_s``,
* ``C = Omega^s(a*, b*)``,

where ``Omega^s`` is fixed by the codimension-one uniqueness argument.
"""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from . import _kernels
from .cotangent import frame_labels
from .grp import an_inverse, e_s_dual, es_dual_su2_closed, es_su2_closed, tau
from .liealg import Ad_matrix, ad_star, basis_su_n, bracket_form, pairing_s, phi
from .poisson import FramedSkewMatrix, pi_an, r_matrix_k

SQRT2 = np.sqrt(2.0)
FD_STEP = 1e-5
CONVENTION = {
    "polar": "xi = Ad*_h lambda",
    "right_generator": "(-X, ad*_X xi)",
    "moment_map": "e_s_dual o mu_L",
}


def _su2():
    return basis_su_n(2)


def _lam(lam):
    lam = np.asarray(lam, dtype=float)
    if lam.shape != (3,):
        raise ValueError("expected (xi, eta1, eta2), got shape %s" % (lam.shape,))
    if not np.any(lam):
        raise ValueError("lambda = 0: the coadjoint orbit is not of codimension one")
    return lam


def _check_s(s):
    if not s > 0:
        raise ValueError("s must be positive, got %r" % (s,))


def gamma(xi, s):
    """``(1 - e^{s sqrt2 xi}) / (2s)``."""
    return -np.expm1(s * SQRT2 * xi) / (2 * s)


def pi_xy_identity(xi, s):
    """``-1/gamma - sqrt2/xi``, evaluated without cancellation for small ``s xi``."""
    x = s * SQRT2 * xi
    if abs(x) < _kernels.SERIES_CUTOFF:
        g = -x / 2 + x * x / 12              # x / expm1(x) - 1
    else:
        g = x / np.expm1(x) - 1
    return SQRT2 / xi * g


@dataclass(frozen=True)
class DelinScalars:
    xi: float
    eta1: float
    eta2: float
    s: float
    Delta: float
    a: float
    u: float
    v: float
    gamma: float
    epsilon: float
    delta_small: float
    a_dual: float
    u_dual: float
    v_dual: float
    epsilon_dual: float
    delta_dual: float


def delin_scalars(lam, s):
    lam = _lam(lam)
    _check_s(s)
    xi, e1, e2 = lam
    D = float(np.linalg.norm(lam))
    sig = s * D / SQRT2
    a, u, v = es_su2_closed(xi, e1, e2, s)
    ad, ud, vd = es_dual_su2_closed(xi, e1, e2, s)
    return DelinScalars(
        xi, e1, e2, s, D, a, u, v,
        gamma=gamma(D, s),
        epsilon=np.sinh(sig) * D + np.cosh(sig) * xi,
        delta_small=u * u + v * v - a * a + a ** -2,
        a_dual=ad, u_dual=ud, v_dual=vd,
        epsilon_dual=np.sinh(sig) * D - np.cosh(sig) * xi,
        delta_dual=ud * ud + vd * vd - ad * ad + ad ** -2,
    )


@dataclass(frozen=True)
class DecompKStar:
    h: np.ndarray
    lambda_chamber: float


def polar_decompose_kstar(xi):
    """``h`` in SU(2) and ``|xi| > 0`` with ``xi = Ad*_h (|xi| t*)``.

    ``h`` is the rotation about ``t x xi`` taking ``t`` to ``xi / |xi|``;
    for ``xi`` on the negative t axis ``h = exp(pi sqrt2 x)``.
    """
    xi = _lam(xi)
    basis = _su2()
    norm = float(np.linalg.norm(xi))
    target = xi / norm
    axis = np.cross([1.0, 0.0, 0.0], target)
    sin_a = np.linalg.norm(axis)
    cos_a = target[0]
    if sin_a < 1e-14:
        if cos_a > 0:
            return DecompKStar(np.eye(2, dtype=complex), norm)
        return DecompKStar(expm(np.pi * SQRT2 * basis.elements[1]), norm)
    angle = np.arctan2(sin_a, cos_a)
    # exp(theta sqrt2 phi(n)) rotates su(2) by theta about the unit vector n
    h = expm(angle * SQRT2 * phi(axis / sin_a, basis))
    return DecompKStar(h, norm)


def _frame():
    return frame_labels(_su2())


def pi_delin_identity(xi, s):
    """Poisson matrix at ``(e, xi t*)``, ``xi > 0``."""
    if not xi > 0:
        raise ValueError("xi must be positive, got %r" % (xi,))
    _check_s(s)
    P = np.zeros((6, 6))
    P[1, 2] = pi_xy_identity(xi, s)
    P[2, 1] = -P[1, 2]
    P[:3, 3:] = np.eye(3)
    P[3:, :3] = -np.eye(3)
    P[4, 5] = -xi / SQRT2
    P[5, 4] = xi / SQRT2
    return FramedSkewMatrix(P, _frame(), {"lambda": (xi, 0.0, 0.0), "s": s})


def pi_delin_at(pt, s):
    """Poisson matrix at an arbitrary point ``(k, xi)``, ``xi != 0``."""
    xi = _lam(pt.xi)
    _check_s(s)
    basis = _su2()
    dec = polar_decompose_kstar(xi)
    H = Ad_matrix(dec.h, basis)
    Kinv = Ad_matrix(tau(pt.k), basis)
    r = r_matrix_k(basis, s, samples=0)
    P0 = pi_delin_identity(dec.lambda_chamber, s).entries
    P = np.zeros((6, 6))
    P[:3, :3] = H @ P0[:3, :3] @ H.T + H @ r @ H.T - Kinv @ r @ Kinv.T
    P[:3, 3:] = np.eye(3)
    P[3:, :3] = -np.eye(3)
    P[3:, 3:] = -bracket_form(xi, basis)
    meta = {"k": pt.k, "xi": xi, "s": s, "h": dec.h}
    meta.update(CONVENTION)
    return FramedSkewMatrix(P, _frame(), meta)


def delin_identity(lam, s):
    """2-form matrix ``[[A, B], [-B^T, C]]`` at ``(e, lam)``."""
    lam = _lam(lam)
    _check_s(s)
    W = _kernels.delin_identity(lam, s)[0]
    meta = {"lambda": lam, "s": s}
    meta.update(CONVENTION)
    return FramedSkewMatrix(W, _frame(), meta)


def delin_at(pt, s):
    """2-form matrix at ``(k, nu)`` by right invariance from ``(e, Ad*_k nu)``."""
    nu = _lam(pt.xi)
    basis = _su2()
    A = Ad_matrix(pt.k, basis)
    W0 = delin_identity(A @ nu, s).entries
    J = np.zeros((6, 6))
    J[:3, :3] = A
    J[3:, 3:] = A
    meta = {"k": pt.k, "xi": nu, "s": s}
    meta.update(CONVENTION)
    return FramedSkewMatrix(J.T @ W0 @ J, _frame(), meta)


def orbit_generators(lam):
    """Rows ``X_t, X_x, X_y`` with ``ad*_{X_b} lam`` the orbit part of ``b*``."""
    return _kernels._orbit_generators_np(_lam(lam))


def theta_des_radial(lam, s):
    """``Theta^L dE_s(lam)`` on the radial direction, for ``e_s``.

    ``a^2 (eps t* + eta1 x* + eta2 y*)`` in (t*, x*, y*) coordinates.
    """
    sc = delin_scalars(lam, s)
    return sc.a ** 2 * np.array([sc.epsilon, sc.eta1, sc.eta2])


def theta_des_dual_radial(lam, s):
    """``Theta^L dE(lam)`` on the radial direction, for ``e_s_dual``.

    ``a^-2 (-eps' t* + cosh(sigma) (eta1 x* + eta2 y*))`` with
    ``eps' = Delta sinh(sigma) - xi cosh(sigma)`` and ``a, sigma`` those of
    ``e_s_dual``.
    """
    sc = delin_scalars(lam, s)
    ch = np.cosh(s * sc.Delta / SQRT2)
    return np.array([-sc.epsilon_dual, sc.eta1 * ch, sc.eta2 * ch]) / sc.a_dual ** 2


def _central(f, x, d, h, richardson):
    D1 = (f(x + h * d) - f(x - h * d)) / (2 * h)
    if not richardson:
        return D1
    h2 = h / 2
    D2 = (f(x + h2 * d) - f(x - h2 * d)) / (2 * h2)
    return (4 * D2 - D1) / 3


def theta_fd(emap, lam, direction, s, h=FD_STEP, richardson=False):
    """``<Theta^L dE_lam(direction), e_a>_s`` for all ``a`` by central differences."""
    lam = np.asarray(lam, dtype=float)
    direction = np.asarray(direction, dtype=float)
    p = emap(lam, s)
    dp = _central(lambda x: emap(x, s), lam, direction, h, richardson)
    basis = basis_su_n(p.shape[0])
    return pairing_s(an_inverse(p) @ dp, basis.elements, s)


def beta_fd(lam, s, h=FD_STEP, emap=e_s_dual, richardson=False):
    """``beta[a, b] = <Theta^L dE(b*), a>_s`` by central differences."""
    lam = np.asarray(lam, dtype=float)
    m = lam.size
    return np.array([theta_fd(emap, lam, np.eye(m)[b], s, h, richardson) for b in range(m)]).T


def beta_closed(xi, s):
    g = gamma(xi, s)
    return np.diag([1.0, 1 + g * pi_xy_identity(xi, s), 1 + g * pi_xy_identity(xi, s)])


def beta_coeffs(xi, s, h=FD_STEP, tol=1e-7, richardson=True):
    """The matrix ``beta`` at ``(e, xi t*)`` by finite differences.

    Checked against ``beta_tt = 1``, ``beta_xx = beta_yy = 1 + gamma pi_xy``
    and zero elsewhere.
    """
    if not xi > 0:
        raise ValueError("xi must be positive, got %r" % (xi,))
    beta = beta_fd(np.array([xi, 0.0, 0.0]), s, h, richardson=richardson)
    err = np.abs(beta - beta_closed(xi, s)).max()
    if err > tol:
        raise RuntimeError("beta relations violated by %.3g" % err)
    return beta


def omega_s_at(lam, s, h=FD_STEP):
    """``Omega^s`` at ``lam`` in the frame (t*, x*, y*), by finite differences.

    Tangent vectors ``zeta`` split as ``ad*_X lam`` plus a radial part; the
    defining relation ``Omega(ad*_X lam, zeta) = <Theta^L dE(zeta), X> - <zeta, X>``
    fixes every pairing except radial with radial, which vanishes.
    """
    lam = _lam(lam)
    beta = beta_fd(lam, s, h)
    X = orbit_generators(lam)
    I = np.eye(3)
    ad = np.array([ad_star(b, lam, _su2()) for b in I])     # ad[a] = ad*_{e_a} lam

    def om(cX, z):
        return cX @ beta @ z - z @ cX

    Om = np.zeros((3, 3))
    for i in range(3):
        radial_i = I[i] - X[i] @ ad
        for j in range(3):
            Om[i, j] = om(X[i], I[j]) - om(X[j], radial_i)
    return FramedSkewMatrix(Om, tuple(nm + "*" for nm in _su2().names()), {"lambda": lam, "s": s})


def coefficient_system_residual(P_kk, lam, s, beta=None, h=FD_STEP):
    """Residual of the moment-map system for candidate K x K coefficients.

    For each ``a`` the covector ``psi_a = (Pi(p)[a], beta[a])`` must satisfy
    ``P psi_a = (e_a, 0)`` where ``P = [[P_kk, I], [-I, -C0(lam)]]``. Works
    for any n; ``beta`` defaults to finite differences through ``e_s_dual``.
    """
    lam = np.asarray(lam, dtype=float)
    n = int(round(np.sqrt(lam.size + 1)))
    basis = basis_su_n(n)
    m = basis.dim
    if beta is None:
        beta = beta_fd(lam, s, h)
    Pi = pi_an(e_s_dual(lam, s), s).entries
    P = np.zeros((2 * m, 2 * m))
    P[:m, :m] = P_kk
    P[:m, m:] = np.eye(m)
    P[m:, :m] = -np.eye(m)
    P[m:, m:] = -bracket_form(lam, basis)
    psi = np.hstack([Pi, beta])                 # row a is psi_a
    target = np.hstack([np.eye(m), np.zeros((m, m))])
    return float(np.abs(psi @ P.T - target).max())
