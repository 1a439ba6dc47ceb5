"""Small dense real linear algebra shared by the other modules.

Everything here operates on plain numpy arrays at dimensions of a few
dozen at most.  Orthonormalization and the symmetric eigensolver are
written out explicitly (modified Gram-Schmidt, cyclic Jacobi) -- at these
sizes they are exact enough and keep the numerical behaviour fully under
our control.
"""

from __future__ import annotations

import numpy as np

from .tolerances import DEFAULT_TOLERANCES


class RankDeficiencyError(ValueError):
    """Input vectors are (numerically) linearly dependent."""


class ZeroVectorError(ValueError):
    """A unit vector was expected but a (near-)zero vector was given."""


def orthonormalize(vectors, tol: float = DEFAULT_TOLERANCES.gram_rank) -> np.ndarray:
    """Orthonormalize a list/array of row vectors by modified Gram-Schmidt.

    One re-orthogonalization pass is applied, which is enough for
    orthogonality at the 1e-12 level in these dimensions.  Returns the
    frame as rows of an array; raises RankDeficiencyError when the Gram
    determinant of the input falls below ``tol``.
    """
    V = np.array(vectors, dtype=float)
    if V.ndim != 2:
        raise ValueError("expected a 2-d array of row vectors")
    gram = V @ V.T
    norms2 = np.diag(gram).copy()
    if len(V) == 0 or norms2.min(initial=1.0) <= 0.0:
        raise RankDeficiencyError("zero vector in input")
    # scale-invariant check: Gram determinant of the normalized vectors
    scale = np.sqrt(norms2)
    if np.linalg.det(gram / np.outer(scale, scale)) < tol:
        raise RankDeficiencyError("input vectors are numerically rank deficient")
    Q = np.empty_like(V)
    for i in range(len(V)):
        v = V[i].copy()
        for _ in range(2):  # MGS + one re-orthogonalization pass
            for j in range(i):
                v -= (v @ Q[j]) * Q[j]
        nrm = np.sqrt(v @ v)
        if nrm < tol:
            raise RankDeficiencyError("vector %d collapsed during orthonormalization" % i)
        Q[i] = v / nrm
    return Q


def jacobi_eigh(M: np.ndarray, tol: float = 1e-13, max_sweeps: int = 100):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns (eigenvalues ascending, eigenvectors as columns).
    """
    A = np.array(M, dtype=float)
    d = A.shape[0]
    if A.shape != (d, d):
        raise ValueError("square matrix expected")
    if not np.allclose(A, A.T, atol=1e-10 * (1.0 + np.abs(A).max(initial=0.0))):
        raise ValueError("symmetric matrix expected")
    A = 0.5 * (A + A.T)
    V = np.eye(d)
    if d == 1:
        return A.diagonal().copy(), V
    norm = np.abs(A).max()
    if norm == 0.0:
        return np.zeros(d), V
    for _ in range(max_sweeps):
        off = 0.0
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = A[p, q]
                off = max(off, abs(apq))
                if abs(apq) <= tol * norm:
                    continue
                theta = 0.5 * (A[q, q] - A[p, p]) / apq
                t = np.sign(theta) / (abs(theta) + np.hypot(1.0, theta))
                if theta == 0.0:
                    t = 1.0
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                arp, arq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * arp - s * arq
                A[q, :] = s * arp + c * arq
                acp, acq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * acp - s * acq
                A[:, q] = s * acp + c * acq
                vcp, vcq = V[:, p].copy(), V[:, q].copy()
                V[:, p] = c * vcp - s * vcq
                V[:, q] = s * vcp + c * vcq
        if off <= tol * norm:
            break
    w = A.diagonal().copy()
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def sym_eig_max(M: np.ndarray):
    """Largest eigenvalue and a unit eigenvector of a symmetric matrix."""
    w, V = jacobi_eigh(M)
    return float(w[-1]), V[:, -1].copy()


def orthogonal_complement_frame(u: np.ndarray) -> np.ndarray:
    """Deterministic orthonormal frame of the hyperplane orthogonal to u.

    Built from the Householder reflection taking +/-e_0 to u, so the
    result is a smooth-ish, reproducible function of u.  Rows are the
    d-1 frame vectors.
    """
    u = np.asarray(u, dtype=float)
    nrm = np.sqrt(u @ u)
    if nrm < 1e-12:
        raise ZeroVectorError("cannot build a complement frame for the zero vector")
    u = u / nrm
    d = u.shape[0]
    s = -1.0 if u[0] >= 0.0 else 1.0
    w = u.copy()
    w[0] -= s * 1.0  # sign chosen so |w|^2 = 2(1 + |u_0|) >= 2 never cancels
    # Reflect through w = u - s e_0; column 0 of H is s*u, the rest span u-perp.
    w2 = w @ w
    if w2 < 1e-30:
        H = np.eye(d)
    else:
        H = np.eye(d) - 2.0 * np.outer(w, w) / w2
    return H[:, 1:].T.copy()
