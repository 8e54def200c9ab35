import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from plgroups import grp
from plgroups.liealg import Ad_matrix, basis_su_n, coadjoint, random_su_n

SQRT2 = np.sqrt(2.0)


def _is_an(b, tol=1e-12):
    d = np.diag(b)
    return (np.allclose(np.tril(b, -1), 0, atol=tol) and np.all(d.real > 0)
            and np.allclose(d.imag, 0, atol=tol) and abs(np.prod(d) - 1) < 1e-10)


def test_iwasawa_identity():
    k, b = grp.iwasawa_KAN(np.eye(2, dtype=complex))
    assert np.allclose(k, np.eye(2)) and np.allclose(b, np.eye(2))
    b, k = grp.iwasawa_ANK(np.eye(2, dtype=complex))
    assert np.allclose(k, np.eye(2)) and np.allclose(b, np.eye(2))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_iwasawa_roundtrip(n, rng):
    for _ in range(20):
        g = grp.random_sl(n, rng)
        k, b = grp.iwasawa_KAN(g)
        assert np.abs(k @ b - g).max() < 1e-11
        assert _is_an(b) and np.allclose(k @ k.conj().T, np.eye(n), atol=1e-12)
        b2, k2 = grp.iwasawa_ANK(g)
        assert np.abs(b2 @ k2 - g).max() < 1e-11
        assert _is_an(b2)
        # idempotent
        k3, b3 = grp.iwasawa_KAN(k @ b)
        assert np.abs(k3 - k).max() < 1e-12 and np.abs(b3 - b).max() < 1e-12


def test_iwasawa_rejects_det():
    with pytest.raises(ValueError):
        grp.iwasawa_KAN(2 * np.eye(2))
    with pytest.raises(ValueError):
        grp.iwasawa_ANK(np.ones((2, 3)))


@pytest.mark.parametrize("n", [2, 3])
def test_f_roundtrip(n, rng):
    b = grp.random_an(n, rng)
    assert np.allclose(grp.f_inv(grp.f_map(b)), b, atol=1e-12)
    assert np.allclose(grp.f_dual_inv(grp.f_dual_map(b)), b, atol=1e-12)


def test_f_inv_rejects_non_positive():
    with pytest.raises(ValueError):
        grp.f_inv(np.diag([-1.0, -1.0]).astype(complex))


def test_es_example_value():
    # e_s(t*) is diagonal with a = exp(-s / (2 sqrt2))
    b = grp.e_s(np.array([1.0, 0, 0]), 0.5)
    assert np.isclose(b[0, 0].real, np.exp(-0.5 / (2 * SQRT2)), rtol=1e-14)
    assert grp.es_su2_closed(1.0, 0, 0, 0.5).a == pytest.approx(np.exp(-0.5 / (2 * SQRT2)), rel=1e-14)


def test_es_zero_is_identity():
    assert np.allclose(grp.e_s(np.zeros(3), 1.0), np.eye(2))
    assert grp.es_su2_closed(0.0, 0.0, 0.0, 1.0) == (1.0, 0.0, 0.0)


@given(arrays(float, 3, elements=st.floats(-8, 8)), st.floats(0.05, 2.0))
def test_es_closed_matches_generic(lam, s):
    c = grp.es_su2_closed(*lam, s)
    assert np.abs(grp.e_s(lam, s) - grp.an_from_coords(*c)).max() < 1e-10 * max(1, c.a ** -1)


@given(arrays(float, 3, elements=st.floats(-8, 8)), st.floats(0.05, 2.0))
def test_es_dual_closed_matches_generic(lam, s):
    c = grp.es_dual_su2_closed(*lam, s)
    assert np.abs(grp.e_s_dual(lam, s) - grp.an_from_coords(*c)).max() < 1e-10 * max(1, c.a)


@pytest.mark.parametrize("n", [2, 3])
def test_es_inverse_and_dual_relation(n, rng):
    m = n * n - 1
    for _ in range(10):
        lam, s = rng.uniform(-3, 3, m), rng.uniform(0.05, 2)
        assert np.allclose(grp.e_s_inv(grp.e_s(lam, s), s), lam, atol=1e-9)
        assert np.allclose(grp.e_s_dual_inv(grp.e_s_dual(lam, s), s), lam, atol=1e-9)
        assert np.allclose(grp.e_s_dual(lam, s), np.linalg.inv(grp.e_s(-lam, s)), atol=1e-10)


@pytest.mark.parametrize("n", [2, 3])
def test_es_equivariance(n, rng):
    B = basis_su_n(n)
    for _ in range(10):
        k, lam, s = random_su_n(n, rng), rng.uniform(-3, 3, B.dim), rng.uniform(0.05, 2)
        lhs = grp.e_s(coadjoint(k, lam, B), s)
        assert np.abs(lhs - grp.dress_left(k, grp.e_s(lam, s))).max() < 1e-9
        lhs = grp.e_s_dual(coadjoint(k, lam, B), s)
        assert np.abs(lhs - grp.dress_left_kan(k, grp.e_s_dual(lam, s))).max() < 1e-9


def test_es_small_s_linear(rng):
    # b b^dag = exp(2 s i phi) forces e_s(lam) = I + s pr_an(i phi(lam)) + O(s^2)
    from plgroups.liealg import phi, proj_an
    lam = rng.standard_normal(3)
    B = basis_su_n(2)
    lin = proj_an(1j * phi(lam, B))
    errs = [np.abs(grp.e_s(lam, s) - np.eye(2) - s * lin).max() for s in (1e-1, 1e-2, 1e-3, 1e-4)]
    slope = np.polyfit(np.log([1e-1, 1e-2, 1e-3, 1e-4]), np.log(errs), 1)[0]
    assert slope >= 1.9


def test_dress_right_is_unitary(rng):
    k, b = random_su_n(3, rng), grp.random_an(3, rng)
    kb = grp.dress_right(k, b)
    assert np.allclose(kb @ kb.conj().T, np.eye(3))
    assert np.allclose(grp.dress_left(k, b) @ kb, k @ b)


def test_e_s_rejects_bad_input():
    with pytest.raises(ValueError):
        grp.e_s(np.ones(3), -1.0)
    with pytest.raises(ValueError):
        grp.e_s(np.ones(4), 1.0)


def test_herm_exp_log_inverse(rng):
    A = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    H = A + A.conj().T
    assert np.allclose(grp.herm_log(grp.herm_exp(H)), H)
