"""Linear algebra kernels checked against numpy as an independent oracle."""

import numpy as np
import pytest

from symcone import SingularMatrixError, mat_inverse, solve_linear, sym_eig


def test_solve_identity_returns_rhs():
    b = np.array([3.0, -1.0, 0.5])
    assert np.array_equal(solve_linear(np.eye(3), b), b)


def test_solve_matches_numpy_on_random_systems():
    rng = np.random.default_rng(1)
    for n in (2, 3, 5, 8, 12):
        for _ in range(20):
            a = rng.standard_normal((n, n)) + n * np.eye(n)
            b = rng.standard_normal(n)
            x = solve_linear(a, b)
            np.testing.assert_allclose(x, np.linalg.solve(a, b), rtol=1e-9, atol=1e-12)
            assert np.abs(a @ x - b).max() <= 1e-10 * (1.0 + np.abs(b).max())


def test_solve_requires_pivoting():
    a = np.array([[0.0, 1.0], [1.0, 0.0]])
    b = np.array([2.0, 5.0])
    np.testing.assert_allclose(solve_linear(a, b), [5.0, 2.0])


def test_singular_matrix_raises():
    with pytest.raises(SingularMatrixError):
        solve_linear(np.zeros((2, 2)), np.ones(2))
    with pytest.raises(SingularMatrixError):
        solve_linear(np.array([[1.0, 2.0], [2.0, 4.0]]), np.ones(2))
    with pytest.raises(SingularMatrixError):
        mat_inverse(np.array([[1.0, 1.0], [1.0, 1.0 + 1e-15]]))


def test_inverse_matches_numpy():
    rng = np.random.default_rng(2)
    for n in (2, 4, 7):
        a = rng.standard_normal((n, n)) + n * np.eye(n)
        inv = mat_inverse(a)
        np.testing.assert_allclose(inv, np.linalg.inv(a), rtol=1e-9, atol=1e-12)
        assert np.abs(a @ inv - np.eye(n)).max() < 1e-10


def test_eig_diagonal_matrix():
    w, v = sym_eig(np.diag([2.0, 1.0]))
    np.testing.assert_allclose(w, [1.0, 2.0])
    assert np.abs(np.abs(v) - np.eye(2)[:, ::-1]).max() < 1e-12


def test_eig_exchange_matrix():
    # characteristic polynomial t^2 - 1 gives eigenvalues -1 and 1
    w, v = sym_eig(np.array([[0.0, 1.0], [1.0, 0.0]]))
    np.testing.assert_allclose(w, [-1.0, 1.0], atol=1e-14)
    np.testing.assert_allclose(v @ np.diag(w) @ v.T, [[0, 1], [1, 0]], atol=1e-14)


def test_eig_matches_numpy_and_reconstructs():
    rng = np.random.default_rng(3)
    for n in (1, 2, 3, 4, 6, 10, 16):
        for _ in range(10):
            a = rng.standard_normal((n, n))
            a = a + a.T
            w, v = sym_eig(a)
            np.testing.assert_allclose(w, np.sort(np.linalg.eigvalsh(a)),
                                       rtol=1e-10, atol=1e-10)
            scale = max(1.0, np.abs(a).max())
            assert np.abs(v @ np.diag(w) @ v.T - a).max() <= 1e-10 * scale
            assert np.abs(v.T @ v - np.eye(n)).max() < 1e-12
            # off-diagonal mass of the rotated matrix is at the requested floor
            d = v.T @ a @ v
            off = d - np.diag(np.diag(d))
            assert np.abs(off).max() <= 1e-11 * scale


def test_eig_rejects_asymmetric_and_nonsquare():
    with pytest.raises(ValueError):
        sym_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        sym_eig(np.ones((2, 3)))
    with pytest.raises(ValueError):
        solve_linear(np.ones((2, 3)), np.ones(2))
