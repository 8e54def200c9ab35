"""Finite-difference verification: pullbacks, exterior derivatives, moment-map
and Jacobi residuals, s -> 0 sweeps, and the residual suites.

Charts around ``pt0 = (k0, xi0)`` are ``(u, w) -> (k0 exp(sum u_a e_a), xi0 + w)``.
"""
from dataclasses import asdict, dataclass, field
import hashlib

import numpy as np

from . import delin, grp, poisson
from .cotangent import (CotangentPoint, inf_vf, mu_l, mu_r, omega_can_at, psi_l,
                        tangent_vector)
from .liealg import (Ad_matrix, ad_matrix, basis_su_n, coadjoint, from_coords, pairing_s,
                     random_su_n)

FD_STEP = 1e-5
XI_RANGE = (0.1, 5.0)
S_RANGE = (0.05, 2.0)
SWEEP_GRID = (1e-1, 1e-2, 1e-3, 1e-4)
SLOPE_WINDOW = (0.9, 1.5)


@dataclass
class ResidualReport:
    name: str
    max_residual: float
    num_samples: int
    tolerance: float
    passed: bool = field(init=False)
    samples: list = field(default_factory=list)

    def __post_init__(self):
        self.max_residual = float(self.max_residual)
        self.passed = bool(self.max_residual < self.tolerance)

    def to_dict(self):
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d

    def line(self):
        return "%-28s %s  max=%.3e  tol=%.1e  n=%d" % (
            self.name, "PASS" if self.passed else "FAIL",
            self.max_residual, self.tolerance, self.num_samples)


@dataclass
class SweepTable:
    s_values: list
    values: list
    slope: float

    def __post_init__(self):
        s = np.asarray(self.s_values, dtype=float)
        if np.any(s <= 0) or np.any(np.diff(s) >= 0):
            raise ValueError("s grid must be positive and strictly decreasing")

    def to_dict(self):
        return asdict(self)


def digest(*arrays):
    h = hashlib.sha1()
    for a in arrays:
        h.update(np.ascontiguousarray(np.asarray(a, dtype=complex)).tobytes())
    return h.hexdigest()[:12]


# ------------------------------------------------------------ FD basics ---

def fd_jacobian(fun, x0, h=FD_STEP, richardson=False):
    """Central-difference Jacobian; columns are partial derivatives."""
    x0 = np.asarray(x0, dtype=float)
    cols = []
    for i in range(x0.size):
        e = np.zeros_like(x0)
        e[i] = 1.0
        d1 = (np.asarray(fun(x0 + h * e)) - np.asarray(fun(x0 - h * e))) / (2 * h)
        if richardson:
            d2 = (np.asarray(fun(x0 + h / 2 * e)) - np.asarray(fun(x0 - h / 2 * e))) / h
            d1 = (4 * d2 - d1) / 3
        cols.append(d1)
    return np.stack(cols, axis=-1)


def fd_pullback_two_form(form_field, mapping, point, h=FD_STEP):
    """``J^T form(mapping(point)) J`` with ``J`` the FD Jacobian of ``mapping``."""
    J = fd_jacobian(mapping, point, h)
    J = J.reshape(-1, np.asarray(point).size)
    W = np.asarray(form_field(mapping(np.asarray(point, dtype=float))))
    return J.T @ W @ J


def fd_exterior_derivative(form_field, point, h=FD_STEP, richardson=False):
    """``d omega(e_i, e_j, e_k) = d_i w_jk + d_j w_ki + d_k w_ij``."""
    dW = fd_jacobian(lambda x: np.asarray(form_field(x)), point, h, richardson)   # [j, k, i]
    dW = np.moveaxis(dW, -1, 0)                                                  # [i, j, k]
    return dW + dW.transpose(1, 2, 0) + dW.transpose(2, 0, 1)


def jacobi_residual(poisson_field, point, h=FD_STEP, richardson=False):
    """Max over coordinate triples of the cyclic sum ``{x_i, {x_j, x_k}} + ...``."""
    point = np.asarray(point, dtype=float)
    P = np.asarray(poisson_field(point))
    dP = np.moveaxis(fd_jacobian(lambda x: np.asarray(poisson_field(x)), point, h, richardson), -1, 0)
    T = np.einsum("il,ljk->ijk", P, dP)             # {x_i, {x_j, x_k}}
    J = T + T.transpose(1, 2, 0) + T.transpose(2, 0, 1)
    return float(np.abs(J).max())


# --------------------------------------------------------------- charts ---

def dexp_left(U, basis, terms=30):
    """Left-trivialized differential of exp at ``U``: ``(1 - e^{-ad U}) / ad U``."""
    A = -ad_matrix(U, basis)
    out = np.eye(basis.dim)
    term = np.eye(basis.dim)
    for j in range(1, terms):
        term = term @ A / (j + 1)
        out = out + term
    return out


def _expm_su(U, basis):
    from scipy.linalg import expm
    return expm(from_coords(U, basis))


def chart_point(pt0, z):
    basis = basis_su_n(pt0.k.shape[0])
    m = basis.dim
    z = np.asarray(z, dtype=float)
    return CotangentPoint(pt0.k @ _expm_su(z[:m], basis), np.asarray(pt0.xi) + z[m:])


def chart_form(form_at, pt0):
    """Express a frame-valued 2-form field in chart coordinates around ``pt0``."""
    basis = basis_su_n(pt0.k.shape[0])
    m = basis.dim

    def field_(z):
        J = np.eye(2 * m)
        J[:m, :m] = dexp_left(z[:m], basis)
        W = np.asarray(form_at(chart_point(pt0, z)))
        return J.T @ W @ J
    return field_


def _frame_derivative(fun, pt0, h=FD_STEP, richardson=False):
    m = basis_su_n(pt0.k.shape[0]).dim
    return fd_jacobian(lambda z: fun(chart_point(pt0, z)), np.zeros(2 * m), h, richardson)


# ---------------------------------------------------- moment-map checks ---

def moment_residual_pl(pt, X, s, h=FD_STEP, richardson=False):
    """``|D(omega)(X_M, .) - psi_l^* <Theta^L, X>_s|`` at ``pt`` (SU(2))."""
    X = np.asarray(X, dtype=float)
    if not np.any(X):
        return 0.0
    basis = basis_su_n(2)
    v = tangent_vector(inf_vf(X, np.zeros(3), pt))
    W = delin.delin_at(pt, s).entries
    lhs = v @ W
    p = psi_l(pt, s)
    pinv = grp.an_inverse(p)
    Xm = from_coords(X, basis)
    dpsi = _frame_derivative(lambda q: psi_l(q, s), pt, h, richardson)     # [i, j, dir]
    rhs = np.array([pairing_s(pinv @ dpsi[..., j], Xm, s) for j in range(6)])
    return float(np.abs(lhs - rhs).max())


def moment_residual_classical(pt, X, which, s=None, h=FD_STEP):
    """Classical moment-map residual ``|omega(X_M, .) - d<mu, X>|``.

    ``which`` is one of ``muL-on-omega_can``, ``muR-on-omega_can``,
    ``muR-on-delin``.
    """
    X = np.asarray(X, dtype=float)
    if not np.any(X):
        return 0.0
    zero = np.zeros_like(X)
    if which == "muL-on-omega_can":
        v, W, mu = inf_vf(X, zero, pt), omega_can_at(pt).entries, mu_l
    elif which == "muR-on-omega_can":
        v, W, mu = inf_vf(zero, X, pt), omega_can_at(pt).entries, mu_r
    elif which == "muR-on-delin":
        v, W, mu = inf_vf(zero, X, pt), delin.delin_at(pt, s).entries, mu_r
    else:
        raise ValueError("unknown moment map %r" % (which,))
    lhs = tangent_vector(v) @ W
    rhs = _frame_derivative(lambda q: mu(q) @ X, pt, h)
    return float(np.abs(lhs - rhs).max())


def delin_minus_can_residual(pt, s, h=FD_STEP):
    """``|delin_at - omega_can_at - mu_L^* Omega^s|`` with FD throughout."""
    lhs = delin.delin_at(pt, s).entries - omega_can_at(pt).entries
    m = 3
    rhs = fd_pullback_two_form(lambda lam: delin.omega_s_at(lam, s, h).entries,
                               lambda z: mu_l(chart_point(pt, z)), np.zeros(2 * m), h)
    return float(np.abs(lhs - rhs).max())


def right_invariance_residual(pt, k2, s, h=FD_STEP):
    """Pullback of ``delin_at`` along the right action of ``k2`` versus ``delin_at``.

    In the charts around ``pt`` and its image the action reads
    ``(u, w) -> (Ad_{k2} u, Ad*_{k2} w)``; the map is still differentiated
    numerically.
    """
    basis = basis_su_n(2)
    image = CotangentPoint(pt.k @ grp.tau(k2), coadjoint(k2, pt.xi, basis))
    A = Ad_matrix(k2, basis)

    def to_image_chart(z):
        q = chart_point(pt, z)
        return np.concatenate([A @ z[:3], coadjoint(k2, q.xi, basis) - image.xi])

    field_ = chart_form(lambda q: delin.delin_at(q, s), image)
    pulled = fd_pullback_two_form(field_, to_image_chart, np.zeros(6), h)
    return float(np.abs(pulled - delin.delin_at(pt, s).entries).max())


def dressing_moment_residual(p, s, h=FD_STEP):
    """``Pi(p)[X, Y]`` against ``<Theta^L(Y_AN), X>_s`` for the dressing field of ``dress_left_kan``."""
    n = p.shape[0]
    basis = basis_su_n(n)
    Pi = poisson.pi_an(p, s).entries
    pinv = grp.an_inverse(p)
    worst = 0.0
    for b in range(basis.dim):
        def curve(t, b=b):
            k = _expm_su(t[0] * np.eye(basis.dim)[b], basis)
            return grp.dress_left_kan(k, p)
        dp = fd_jacobian(curve, np.zeros(1), h)[..., 0]
        col = pairing_s(pinv @ dp, basis.elements, s)
        worst = max(worst, float(np.abs(col - Pi[:, b]).max()))
    return worst


# ------------------------------------------------------- Poisson fields ---

def an_chart_poisson(s):
    """``pi_an`` on SU(2)* in the chart ``(a, u, v)``."""
    basis = basis_su_n(2)

    def field_(x):
        a, u, v = x
        p = grp.an_from_coords(a, u, v)
        pinv = grp.an_inverse(p)
        dps = [np.array([[1, 0], [0, -1 / a ** 2]], dtype=complex),
               np.array([[0, 1], [0, 0]], dtype=complex),
               np.array([[0, 1j], [0, 0]], dtype=complex)]
        M = np.array([pairing_s(pinv @ dp, basis.elements, s) for dp in dps]).T   # M[c, i]
        Pi = poisson.pi_an(p, s).entries
        Minv = np.linalg.inv(M)
        return Minv @ Pi @ Minv.T
    return field_


def delin_chart_poisson(pt0, s):
    """Poisson matrix of ``D(omega_can)`` in the chart around ``pt0``."""
    form = chart_form(lambda q: delin.delin_at(q, s), pt0)
    return lambda z: -np.linalg.inv(form(z))


# --------------------------------------------------------------- sweeps ---

def fit_slope(s_values, values):
    """Least-squares slope of ``log|value|`` against ``log s``."""
    y = np.abs(np.asarray(values, dtype=float))
    if not np.all(np.isfinite(y)) or np.any(y == 0):
        raise ValueError("log-log slope needs finite nonzero values")
    return float(np.polyfit(np.log(s_values), np.log(y), 1)[0])


def limit_sweep(selector, grid=SWEEP_GRID):
    grid = [float(g) for g in grid]
    SweepTable(grid, [], 0.0)          # validates the grid
    values = [float(selector(s)) for s in grid]
    return SweepTable(grid, values, fit_slope(grid, values))


def selector_pi_xy(xi=1.0):
    return lambda s: delin.pi_delin_identity(xi, s).entries[1, 2]


def selector_b_tt(lam=(1.0, 0.6, -0.8)):
    lam = np.asarray(lam, dtype=float)
    return lambda s: delin.delin_identity(lam, s).entries[0, 3] - 1.0


def selector_delin_vs_can(pt):
    return lambda s: np.abs(delin.delin_at(pt, s).entries - omega_can_at(pt).entries).max()


# --------------------------------------------------------------- suites ---

def random_xi(rng, dim=3, lo=XI_RANGE[0], hi=XI_RANGE[1]):
    v = rng.standard_normal(dim)
    return v * rng.uniform(lo, hi) / np.linalg.norm(v)


def random_s(rng):
    return rng.uniform(*S_RANGE)


def random_point(rng, n=2):
    basis = basis_su_n(n)
    return CotangentPoint(random_su_n(n, rng), random_xi(rng, basis.dim))


def _report(name, residuals, tol, inputs=None):
    samples = []
    if inputs is not None:
        samples = [(digest(*inp), float(r)) for inp, r in zip(inputs, residuals)]
    return ResidualReport(name, max(residuals) if residuals else 0.0, len(residuals), tol, samples)


def suite_es_closed(rng, count=500, tol=1e-10, **kw):
    res, inp = [], []
    for _ in range(count):
        lam, s = random_xi(rng), random_s(rng)
        c = grp.es_su2_closed(*lam, s)
        res.append(np.abs(grp.e_s(lam, s) - grp.an_from_coords(*c)).max())
        inp.append((lam, [s]))
    return [_report("es_closed", res, tol, inp)]


def suite_pi_an_closed(rng, count=500, tol=1e-11, **kw):
    res, inp = [], []
    for _ in range(count):
        s = random_s(rng)
        a, u, v = np.exp(rng.uniform(-1.5, 1.5)), *rng.uniform(-2, 2, 2)
        p = grp.an_from_coords(a, u, v)
        res.append(np.abs(poisson.pi_an(p, s).entries
                          - poisson.pi_an_su2_closed((a, u, v), s).entries).max())
        inp.append(([a, u, v, s],))
    return [_report("pi_an_closed", res, tol, inp)]


def suite_inverse(rng, count=100, tol=1e-8, **kw):
    res, inp = [], []
    for _ in range(count):
        pt, s = random_point(rng), random_s(rng)
        W = delin.delin_at(pt, s).entries
        P = delin.pi_delin_at(pt, s).entries
        res.append(np.abs(W @ P + np.eye(6)).max())
        inp.append((pt.k, pt.xi, [s]))
    sub = []
    for _ in range(count):
        xi, s = rng.uniform(*XI_RANGE), random_s(rng)
        W = delin.delin_identity([xi, 0, 0], s).entries
        p_, q_ = W[1, 2], W[1, 4]
        P_ = delin.pi_delin_identity(xi, s).entries[1, 2]
        g = delin.gamma(xi, s)
        sub.append(max(abs(p_ * P_ + q_ - 1), abs(p_ + g), abs(q_ + np.sqrt(2) * g / xi) / max(1, abs(q_))))
    return [_report("inverse_relation", res, tol, inp),
            _report("inverse_subidentity", sub, tol)]


def suite_moment_pl(rng, count=50, tol=1e-6, h=FD_STEP, **kw):
    res, inp = [], []
    for _ in range(count):
        pt, s, X = random_point(rng), random_s(rng), rng.standard_normal(3)
        res.append(moment_residual_pl(pt, X, s, h))
        inp.append((pt.k, pt.xi, X, [s]))
    return [_report("moment_pl", res, tol, inp)]


def suite_moment_r(rng, count=50, tol=1e-6, h=FD_STEP, **kw):
    res, inp = [], []
    for _ in range(count):
        pt, s, X = random_point(rng), random_s(rng), rng.standard_normal(3)
        res.append(moment_residual_classical(pt, X, "muR-on-delin", s, h))
        inp.append((pt.k, pt.xi, X, [s]))
    return [_report("moment_r_delin", res, tol, inp)]


def suite_moment_can(rng, count=50, tol=1e-6, h=FD_STEP, **kw):
    out = []
    for which in ("muL-on-omega_can", "muR-on-omega_can"):
        res = [moment_residual_classical(random_point(rng), rng.standard_normal(3), which, None, h)
               for _ in range(count)]
        out.append(_report(which, res, tol))
    return out


def suite_equivariance(rng, count=200, tol=1e-9, **kw):
    res = []
    for n in (2, 3):
        basis = basis_su_n(n)
        for _ in range(count):
            lam, s, k = random_xi(rng, basis.dim), rng.uniform(0.05, 2.0), random_su_n(n, rng)
            lhs = grp.e_s(coadjoint(k, lam, basis), s)
            rhs = grp.dress_left(k, grp.e_s(lam, s))
            res.append(np.abs(lhs - rhs).max())
    return [_report("es_equivariance", res, tol)]


def _slope_report(name, table):
    lo, hi = SLOPE_WINDOW
    mid, half = (lo + hi) / 2, (hi - lo) / 2
    rep = ResidualReport(name, abs(table.slope - mid), len(table.s_values), half + 1e-12,
                         [("slope", table.slope)] + list(zip(table.s_values, table.values)))
    return rep


def suite_limits(rng=None, grid=SWEEP_GRID, **kw):
    return [_slope_report("limit_b_tt", limit_sweep(selector_b_tt(), grid)),
            _slope_report("limit_pi_xy", limit_sweep(selector_pi_xy(), grid))]


def suite_closedness(rng, count=20, tol=1e-5, h=FD_STEP, **kw):
    d_res, j_an, j_del = [], [], []
    for _ in range(count):
        pt, s = random_point(rng), random_s(rng)
        form = chart_form(lambda q: delin.delin_at(q, s), pt)
        d_res.append(np.abs(fd_exterior_derivative(form, np.zeros(6), h)).max())
        j_del.append(jacobi_residual(delin_chart_poisson(pt, s), np.zeros(6), h))
        a, u, v = np.exp(rng.uniform(-1, 1)), *rng.uniform(-1.5, 1.5, 2)
        j_an.append(jacobi_residual(an_chart_poisson(random_s(rng)), [a, u, v], h))
    return [_report("closed_delin", d_res, tol),
            _report("jacobi_pi_an", j_an, tol),
            _report("jacobi_delin", j_del, tol)]


def suite_iwasawa(rng, count=500, tol_recompose=1e-11, tol_constraint=1e-12, **kw):
    rec, con = [], []
    for n in (2, 3, 4):
        I = np.eye(n)
        for _ in range(count):
            g = grp.random_sl(n, rng)
            k, b = grp.iwasawa_KAN(g)
            b2, k2 = grp.iwasawa_ANK(g)
            rec.append(max(np.abs(k @ b - g).max(), np.abs(b2 @ k2 - g).max()))
            c = 0.0
            for kk, bb in ((k, b), (k2, b2)):
                d = np.diagonal(bb)
                c = max(c, np.abs(grp.tau(kk) @ kk - I).max(), abs(np.linalg.det(kk) - 1),
                        np.abs(np.tril(bb, -1)).max(), np.abs(d.imag).max(),
                        abs(np.prod(d.real) - 1), max(0.0, -d.real.min()))
            con.append(c)
    return [_report("iwasawa_recompose", rec, tol_recompose),
            _report("iwasawa_constraints", con, tol_constraint)]


def suite_beta(rng, count=50, tol=1e-7, h=FD_STEP, **kw):
    res, inp = [], []
    for _ in range(count):
        xi, s = rng.uniform(*XI_RANGE), random_s(rng)
        beta = delin.beta_fd(np.array([xi, 0.0, 0.0]), s, h, richardson=True)
        res.append(np.abs(beta - delin.beta_closed(xi, s)).max())
        inp.append(([xi, s],))
    return [_report("beta_system", res, tol, inp)]


def suite_delin_identity(rng, count=20, tol=1e-6, h=FD_STEP, **kw):
    res = [delin_minus_can_residual(random_point(rng), random_s(rng), h) for _ in range(count)]
    return [_report("delin_minus_can", res, tol)]


def suite_right_invariance(rng, count=20, tol=1e-6, h=FD_STEP, **kw):
    res = [right_invariance_residual(random_point(rng), random_su_n(2, rng), random_s(rng), h)
           for _ in range(count)]
    return [_report("right_invariance", res, tol)]


def suite_dressing(rng, count=50, tol=1e-6, h=FD_STEP, **kw):
    res = []
    for _ in range(count):
        n = int(rng.integers(2, 4))
        basis = basis_su_n(n)
        s = random_s(rng)
        res.append(dressing_moment_residual(grp.e_s_dual(random_xi(rng, basis.dim), s), s, h))
    return [_report("dressing_moment", res, tol)]


# acceptance criteria 1-10 in order, then supporting suites
SUITES = {
    "es_closed": suite_es_closed,
    "pi_an_closed": suite_pi_an_closed,
    "inverse": suite_inverse,
    "moment_pl": suite_moment_pl,
    "moment_r": suite_moment_r,
    "equivariance": suite_equivariance,
    "limits": suite_limits,
    "closedness": suite_closedness,
    "iwasawa": suite_iwasawa,
    "beta": suite_beta,
    "moment_can": suite_moment_can,
    "delin_identity": suite_delin_identity,
    "right_invariance": suite_right_invariance,
    "dressing": suite_dressing,
}
ACCEPTANCE = list(SUITES)[:10]


def run_suite(name, seed=0, h=FD_STEP, tol=None):
    """Run one suite (or ``all``); returns a list of ResidualReport."""
    names = list(SUITES) if name == "all" else [name]
    out = []
    for nm in names:
        if nm not in SUITES:
            raise KeyError("unknown suite %r" % (nm,))
        rng = np.random.default_rng(seed)
        kw = {"h": h}
        if tol is not None:
            kw["tol"] = tol
        out.extend(SUITES[nm](rng, **kw))
    return out
