import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from statcurv.linalg import (
    RankDeficiencyError,
    ZeroVectorError,
    jacobi_eigh,
    orthogonal_complement_frame,
    orthonormalize,
    sym_eig_max,
)


def test_orthonormalize_basic():
    rng = np.random.default_rng(0)
    V = rng.standard_normal((4, 7))
    Q = orthonormalize(V)
    assert Q.shape == (4, 7)
    assert np.abs(Q @ Q.T - np.eye(4)).max() < 1e-12
    # same span: projectors agree
    P1 = Q.T @ Q
    P2 = V.T @ np.linalg.solve(V @ V.T, V)
    assert np.abs(P1 - P2).max() < 1e-10


def test_orthonormalize_idempotent_on_frames():
    rng = np.random.default_rng(1)
    Q = orthonormalize(rng.standard_normal((3, 5)))
    Q2 = orthonormalize(Q)
    assert np.abs(Q2 - Q).max() < 1e-13


def test_orthonormalize_scale_invariance():
    # badly scaled but well conditioned input must not be rejected
    rng = np.random.default_rng(2)
    V = rng.standard_normal((6, 9))
    V *= np.logspace(-8, 8, 6)[:, None]
    Q = orthonormalize(V)
    assert np.abs(Q @ Q.T - np.eye(6)).max() < 1e-11


def test_orthonormalize_rejects_dependent_input():
    V = np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0]])
    with pytest.raises(RankDeficiencyError):
        orthonormalize(V)
    with pytest.raises(RankDeficiencyError):
        orthonormalize(np.array([[0.0, 0.0], [1.0, 0.0]]))
    with pytest.raises(ValueError):
        orthonormalize(np.zeros(3))  # not 2-d


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 6), st.integers(0, 10**6))
def test_orthonormalize_property(k, seed):
    rng = np.random.default_rng(seed)
    V = rng.standard_normal((k, k + 2))
    Q = orthonormalize(V)
    assert np.abs(Q @ Q.T - np.eye(k)).max() < 1e-12
    # every input vector lies in the span of the output
    resid = V - (V @ Q.T) @ Q
    assert np.abs(resid).max() < 1e-9 * (1.0 + np.abs(V).max())


def test_jacobi_matches_lapack():
    rng = np.random.default_rng(3)
    for d in (1, 2, 3, 5, 8, 12):
        A = rng.standard_normal((d, d))
        A = A + A.T
        w, V = jacobi_eigh(A)
        assert np.all(np.diff(w) >= -1e-12)
        assert np.abs(w - np.linalg.eigvalsh(A)).max() < 1e-10
        assert np.abs(V @ np.diag(w) @ V.T - A).max() < 1e-10
        assert np.abs(V.T @ V - np.eye(d)).max() < 1e-12


def test_jacobi_zero_and_diagonal():
    w, V = jacobi_eigh(np.zeros((3, 3)))
    assert np.all(w == 0.0) and np.abs(V - np.eye(3)).max() == 0.0
    w, _ = jacobi_eigh(np.diag([3.0, -1.0, 2.0]))
    assert np.abs(w - np.array([-1.0, 2.0, 3.0])).max() == 0.0


def test_jacobi_rejects_asymmetric():
    with pytest.raises(ValueError):
        jacobi_eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(ValueError):
        jacobi_eigh(np.zeros((2, 3)))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.integers(0, 10**6))
def test_sym_eig_max_is_rayleigh_max(d, seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((d, d))
    A = A + A.T
    val, vec = sym_eig_max(A)
    assert abs(float(vec @ A @ vec) - val) < 1e-9 * (1.0 + abs(val))
    U = rng.standard_normal((200, d))
    U /= np.linalg.norm(U, axis=1, keepdims=True)
    assert np.einsum("si,ij,sj->s", U, A, U).max() <= val + 1e-9


def test_complement_frame():
    rng = np.random.default_rng(4)
    for u in (np.array([1.0, 0.0, 0.0]), np.array([-1.0, 0.0, 0.0]),
              rng.standard_normal(5), rng.standard_normal(2)):
        B = orthogonal_complement_frame(u)
        d = u.shape[0]
        assert B.shape == (d - 1, d)
        assert np.abs(B @ B.T - np.eye(d - 1)).max() < 1e-12
        assert np.abs(B @ u).max() < 1e-12 * (1.0 + np.linalg.norm(u))


def test_complement_frame_rejects_zero():
    with pytest.raises(ZeroVectorError):
        orthogonal_complement_frame(np.zeros(4))
