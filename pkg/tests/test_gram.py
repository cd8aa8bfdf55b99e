import numpy as np
import pytest

from postselect.errors import NotPSD
from postselect.gram import vectors_with_gram


def random_psd(rng, n):
    a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return a.conj().T @ a


def test_identity_gram_gives_orthonormal_vectors():
    x = vectors_with_gram(np.eye(3))
    assert x.shape == (3, 3)
    assert np.allclose(x.conj().T @ x, np.eye(3), atol=1e-12)


def test_rank_one_gram_gives_equal_unit_vectors():
    x = vectors_with_gram(np.array([[1.0, 1.0], [1.0, 1.0]]))
    g = x.conj().T @ x
    assert np.allclose(g, [[1.0, 1.0], [1.0, 1.0]], atol=1e-10)
    assert np.allclose(x[:, 0], x[:, 1], atol=1e-10)


def test_round_trip_random_psd():
    rng = np.random.default_rng(21)
    for _ in range(50):
        n = int(rng.integers(1, 7))
        q = random_psd(rng, n)
        x = vectors_with_gram(q)
        err = np.max(np.abs(x.conj().T @ x - q))
        assert err <= 1e-8 * max(np.max(np.abs(q)), 1.0)


def test_contraction_residual_gram():
    rng = np.random.default_rng(22)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    l = a / np.linalg.norm(a, ord=2)
    q = np.eye(4) - l.conj().T @ l
    x = vectors_with_gram(q)
    assert np.max(np.abs(x.conj().T @ x - q)) <= 1e-8


def test_unitary_residual_gram_is_accepted():
    # I - U*U is zero up to rounding; tiny negative eigenvalues must
    # clamp instead of raising.
    rng = np.random.default_rng(23)
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    u, _ = np.linalg.qr(a)
    q = np.eye(3) - u.conj().T @ u
    x = vectors_with_gram(q)
    assert np.max(np.abs(x.conj().T @ x)) <= 1e-7


def test_planted_negative_eigenvalue_rejected():
    rng = np.random.default_rng(24)
    a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    v, _ = np.linalg.qr(a)
    q = v @ np.diag([1.0, 0.5, 0.2, -0.1]) @ v.conj().T
    with pytest.raises(NotPSD):
        vectors_with_gram(q)


def test_non_hermitian_rejected():
    with pytest.raises(Exception):
        vectors_with_gram(np.array([[1.0, 1.0], [0.0, 1.0]]))
