import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from plgroups import liealg as L

SQRT2 = np.sqrt(2.0)
finite = st.floats(-5, 5, allow_nan=False)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_basis_orthonormal(n):
    B = L.basis_su_n(n)
    assert B.dim == n * n - 1
    G = -L.killing(B.elements[:, None], B.elements[None])
    assert np.allclose(G, np.eye(B.dim), atol=1e-14)
    # anti-Hermitian and traceless
    assert np.allclose(B.elements + np.conj(np.swapaxes(B.elements, 1, 2)), 0)
    assert np.allclose(np.trace(B.elements, axis1=1, axis2=2), 0)


def test_su2_order_and_brackets():
    B = L.basis_su_n(2)
    assert B.names() == ["t", "x", "y"]
    t, x, y = B.elements
    assert np.allclose(L.bracket(x, y), t / SQRT2)
    assert np.allclose(L.bracket(t, x), y / SQRT2)
    assert np.allclose(L.bracket(y, t), x / SQRT2)


@pytest.mark.parametrize("n", [2, 3])
def test_structure_constants_totally_skew(n):
    c = L.basis_su_n(n).structure_constants
    assert np.allclose(c, -c.transpose(1, 0, 2))
    assert np.allclose(c, -c.transpose(0, 2, 1))


def test_killing_broadcast_and_shape_error():
    B = L.basis_su_n(2)
    assert L.killing(B.elements, B.elements).shape == (3,)
    with pytest.raises(ValueError):
        L.killing(np.eye(2), np.eye(3))


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("s", [0.1, 1.0, 2.0])
def test_dual_basis_pairs_to_delta(n, s):
    B = L.basis_su_n(n)
    D = L.dual_basis_an(B, s)
    G = L.pairing_s(B.elements[:, None], D[None], s)
    assert np.allclose(G, np.eye(B.dim), atol=1e-12)
    # an is isotropic, upper triangular with real diagonal
    assert np.allclose(L.pairing_s(D[:, None], D[None], s), 0, atol=1e-12)
    assert np.allclose(np.tril(D, -1), 0)


def test_dual_basis_rejects_bad_s():
    with pytest.raises(ValueError):
        L.dual_basis_an(L.basis_su_n(2), 0.0)


@given(arrays(float, (2, 3, 3), elements=finite))
def test_projections_split(parts):
    Z = parts[0] + 1j * parts[1]
    Z = Z - np.trace(Z) / 3 * np.eye(3)
    K, A = L.proj_k(Z), L.proj_an(Z)
    assert np.allclose(K + A, Z)
    assert np.allclose(K, -K.conj().T)
    assert np.allclose(np.tril(A, -1), 0)
    assert np.allclose(np.imag(np.diag(A)), 0)


@given(arrays(float, 8, elements=finite))
def test_coords_roundtrip(c):
    B = L.basis_su_n(3)
    assert np.allclose(L.to_coords(L.from_coords(c, B), B), c)
    assert np.allclose(L.phi_inv(L.phi(c, B), B), c)


def test_ad_star_is_bracket(rng):
    B = L.basis_su_n(3)
    X, lam = rng.standard_normal(8), rng.standard_normal(8)
    lhs = L.phi(L.ad_star(X, lam, B), B)
    assert np.allclose(lhs, L.bracket(L.from_coords(X, B), L.phi(lam, B)))


@pytest.mark.parametrize("n", [2, 3])
def test_Ad_matrix_orthogonal_homomorphism(n, rng):
    B = L.basis_su_n(n)
    k1, k2 = L.random_su_n(n, rng), L.random_su_n(n, rng)
    A1, A2 = L.Ad_matrix(k1, B), L.Ad_matrix(k2, B)
    assert np.allclose(A1 @ A1.T, np.eye(B.dim))
    assert np.allclose(L.Ad_matrix(k1 @ k2, B), A1 @ A2)


def test_bracket_form_skew(rng):
    B = L.basis_su_n(3)
    C = L.bracket_form(rng.standard_normal(8), B)
    assert np.allclose(C, -C.T)
