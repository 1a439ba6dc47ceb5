"""Constrained quadratic optimization tools behind the inequality proofs.

Covers the trace-constrained quadratic extremum problems, restricted
Hessian definiteness checks, the reduced quartic-free polynomials Q and
Q-hat in the components of the averaged second fundamental form, and an
audit of the published closed-form critical point of the quadratic form
P_k (which violates its own trace constraint -- see system16_solutions).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import jacobi_eigh, orthogonal_complement_frame


class IndefiniteRestrictedHessianError(ValueError):
    """Restricted Hessian does not have the sign required by the mode."""


class SingularKKTError(np.linalg.LinAlgError):
    pass


@dataclass(frozen=True)
class ConstrainedQP:
    """Extremize x^T A x subject to sum(x) = alpha."""

    A: np.ndarray
    alpha: float

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("A must be square")
        if not np.allclose(A, A.T, atol=1e-12 * (1.0 + np.abs(A).max(initial=0.0))):
            raise ValueError("A must be symmetric")
        object.__setattr__(self, "A", A)

    @property
    def m(self) -> int:
        return self.A.shape[0]


@dataclass(frozen=True)
class QPResult:
    optimizer: np.ndarray
    multiplier: float
    value: float
    restricted_hessian_eigs: np.ndarray


def pk_form_matrix(m: int) -> np.ndarray:
    """Symmetric matrix A with x^T A x = P_m(x) (the quadratic form below)."""
    if m < 2:
        raise ValueError("need m >= 2")
    A = np.full((m, m), -2.0)
    np.fill_diagonal(A, float(m))
    A[m - 1, m - 1] = (m - 1) / 2.0
    return A


def eval_Pk(diag: np.ndarray) -> float:
    """Quadratic form m sum_{i<m} x_i^2 + ((m-1)/2) x_m^2 - 4 sum_{i<j} x_i x_j."""
    x = np.asarray(diag, dtype=float)
    m = x.shape[0]
    if m < 2:
        raise ValueError("need m >= 2")
    s = float(x.sum())
    sq = float(x @ x)
    cross = 0.5 * (s * s - sq)  # sum_{i<j} x_i x_j
    return float(m * (sq - x[-1] ** 2) + 0.5 * (m - 1) * x[-1] ** 2 - 4.0 * cross)


def pk_hessian(m: int) -> np.ndarray:
    """True Hessian of the quadratic form P_m (twice its matrix)."""
    return 2.0 * pk_form_matrix(m)


def pk_hessian_printed(m: int) -> np.ndarray:
    """The Hessian variant with diagonal 2(m+2) that circulates in print.

    Differs from the true Hessian of P_m by +4 on the first m-1 diagonal
    entries; both are positive semidefinite on the trace-zero hyperplane,
    so the definiteness conclusion is unaffected.  Kept as a named object
    so the published form can be checked verbatim.
    """
    H = np.full((m, m), -4.0)
    np.fill_diagonal(H, 2.0 * (m + 2))
    H[m - 1, m - 1] = float(m - 1)
    return H


def chen_product_form_matrix(m: int) -> np.ndarray:
    """Symmetric matrix of the bilinear form x_1 * sum_{i>=2} x_i."""
    if m < 2:
        raise ValueError("need m >= 2")
    A = np.zeros((m, m))
    A[0, 1:] = 0.5
    A[1:, 0] = 0.5
    return A


def restricted_hessian_check(A: np.ndarray, constraint_normal: np.ndarray, mode: str = "psd"):
    """Definiteness of a symmetric matrix restricted to a hyperplane.

    Projects A onto the tangent space of {x : normal . x = const} and
    tests the requested sign condition.  Returns (holds, eigenvalues).
    """
    A = np.asarray(A, dtype=float)
    normal = np.asarray(constraint_normal, dtype=float)
    if float(normal @ normal) < 1e-24:
        raise ValueError("constraint normal must be nonzero")
    B = orthogonal_complement_frame(normal)
    R = B @ A @ B.T
    eigs, _ = jacobi_eigh(R)
    tol = 1e-12 * (1.0 + np.abs(eigs).max(initial=0.0))
    if mode == "psd":
        holds = bool(eigs.min(initial=0.0) >= -tol)
    elif mode == "nsd":
        holds = bool(eigs.max(initial=0.0) <= tol)
    else:
        raise ValueError("mode must be 'psd' or 'nsd'")
    return holds, eigs


def solve_constrained_qp(problem: ConstrainedQP, mode: str = "min") -> QPResult:
    """Solve extremize x^T A x subject to sum(x) = alpha via KKT.

    The stationarity system with an explicit Lagrange multiplier,

        [ 2A   -1 ] [x ]   [  0   ]
        [ 1^T   0 ] [mu] = [alpha ],

    is solved directly; the Hessian restricted to the constraint tangent
    space must be PSD (min) or NSD (max), otherwise the stationary point
    is not the requested extremum and an error is raised.
    """
    if mode not in ("min", "max"):
        raise ValueError("mode must be 'min' or 'max'")
    m = problem.m
    H = 2.0 * problem.A
    ones = np.ones(m)
    holds, eigs = restricted_hessian_check(H, ones, "psd" if mode == "min" else "nsd")
    if not holds:
        raise IndefiniteRestrictedHessianError(
            "restricted Hessian is not %s definite for mode=%s"
            % ("positive semi" if mode == "min" else "negative semi", mode)
        )
    K = np.zeros((m + 1, m + 1))
    K[:m, :m] = H
    K[:m, m] = -1.0
    K[m, :m] = 1.0
    rhs = np.zeros(m + 1)
    rhs[m] = problem.alpha
    try:
        sol = np.linalg.solve(K, rhs)
    except np.linalg.LinAlgError:
        # Degenerate stationary set (e.g. the rank-2 product form): fall
        # back to the minimum-norm stationary point, provided the system
        # is consistent.
        sol, *_ = np.linalg.lstsq(K, rhs, rcond=None)
        if np.abs(K @ sol - rhs).max() > 1e-9 * (1.0 + abs(problem.alpha)):
            raise SingularKKTError("inconsistent KKT system") from None
    x = sol[:m]
    mu = float(sol[m])
    value = float(x @ problem.A @ x)
    return QPResult(optimizer=x, multiplier=mu, value=value, restricted_hessian_eigs=eigs)


def sample_feasible_minimum(problem: ConstrainedQP, samples: int = 10**6, seed: int = 0) -> float:
    """Monte Carlo lower-bound oracle: min of x^T A x over random feasible x.

    Feasible points are drawn by projecting standard Gaussians onto the
    affine slice {sum(x) = alpha}.
    """
    m = problem.m
    rng = np.random.default_rng(seed)
    best = np.inf
    chunk = 200_000
    remaining = samples
    while remaining > 0:
        k = min(chunk, remaining)
        Z = rng.standard_normal((k, m))
        Z += (problem.alpha - Z.sum(axis=1))[:, None] / m
        vals = np.einsum("si,ij,sj->s", Z, problem.A, Z)
        best = min(best, float(vals.min()))
        remaining -= k
    return best


def _q_components(h0: np.ndarray):
    """Shared index bookkeeping for Q / Q-hat on a (..., p, m, m) array."""
    h0 = np.asarray(h0, dtype=float)
    m = h0.shape[-1]
    if m < 2 or h0.shape[-2] != m:
        raise ValueError("expected (..., p, m, m) with m >= 2")
    diag = np.einsum("...kii->...ki", h0)
    block = h0[..., : m - 1, : m - 1]
    block_sq = np.sum(block * block, axis=(-1, -2))
    block_diag_sq = np.sum(diag[..., : m - 1] ** 2, axis=-1)
    off_upper = 0.5 * (block_sq - block_diag_sq)  # sum_{i<j<=m-1} (h_ij)^2
    last_col = np.sum(h0[..., : m - 1, m - 1] ** 2, axis=-1)  # sum_{i<m} (h_im)^2
    tr = np.sum(diag, axis=-1)
    diag_sq = np.sum(diag * diag, axis=-1)
    diag_cross = 0.5 * (tr * tr - diag_sq)  # sum_{i<j} h_ii h_jj
    corner = diag[..., m - 1] ** 2
    total_sq = np.sum(h0 * h0, axis=(-1, -2))
    return m, off_upper, last_col, block_diag_sq, diag_cross, corner, total_sq, tr, block_sq


def eval_Q(h0: np.ndarray) -> float:
    """Reduced trace-free polynomial behind the first Casorati bound.

    For a (p, m, m) symmetric array (components of the averaged second
    fundamental form with the extremal hyperplane fixed as the span of
    the first m-1 frame vectors):

      Q = sum_k [ 2(m+2) sum_{i<j<=m-1}(h_ij)^2 + (m+3) sum_{i<m}(h_im)^2
                  + m sum_{i<m}(h_ii)^2 - 4 sum_{i<j} h_ii h_jj
                  + ((m-1)/2)(h_mm)^2 ].
    """
    m, off, col, dsq, dcross, corner, _, _, _ = _q_components(h0)
    q = 2.0 * (m + 2) * off + (m + 3) * col + m * dsq - 4.0 * dcross + 0.5 * (m - 1) * corner
    return float(np.sum(q, axis=-1)) if q.ndim else float(q)


def eval_Q_batch(h0s: np.ndarray) -> np.ndarray:
    """Vectorized eval_Q over a leading batch axis: (N, p, m, m) -> (N,)."""
    m, off, col, dsq, dcross, corner, _, _, _ = _q_components(h0s)
    q = 2.0 * (m + 2) * off + (m + 3) * col + m * dsq - 4.0 * dcross + 0.5 * (m - 1) * corner
    return np.sum(q, axis=-1)


def eval_Qhat(h0: np.ndarray) -> float:
    """Reduced polynomial behind the hatted Casorati bound.

      Q-hat = sum_k [ 2m |h_k|_F^2 - ((m+1)/2) sum_{i,j<=m-1}(h_ij)^2
                      - 2 (tr h_k)^2 ].
    """
    m, _, _, _, _, _, total, tr, block_sq = _q_components(h0)
    q = 2.0 * m * total - 0.5 * (m + 1) * block_sq - 2.0 * tr * tr
    return float(np.sum(q, axis=-1)) if q.ndim else float(q)


def eval_Qhat_batch(h0s: np.ndarray) -> np.ndarray:
    m, _, _, _, _, _, total, tr, block_sq = _q_components(h0s)
    q = 2.0 * m * total - 0.5 * (m + 1) * block_sq - 2.0 * tr * tr
    return np.sum(q, axis=-1)


@dataclass(frozen=True)
class System16Report:
    """Audit of the published closed-form critical point of P_m."""

    m: int
    alpha: float
    claimed: np.ndarray
    kkt: np.ndarray
    discrepancy: float
    claimed_sum: float
    claimed_feasible: bool
    kkt_feasible: bool
    kkt_value: float


def system16_solutions(m: int, alpha: float) -> System16Report:
    """Compare the published critical point of P_m with the true KKT one.

    The closed form in circulation, x_i = alpha/(m+1) for i < m and
    x_m = 4 alpha/(m+3), does not satisfy the trace constraint
    sum(x) = alpha unless alpha = 0; this function quantifies the gap and
    returns the honest KKT solution alongside it.
    """
    if m < 2:
        raise ValueError("need m >= 2")
    claimed = np.full(m, alpha / (m + 1.0))
    claimed[m - 1] = 4.0 * alpha / (m + 3.0)
    res = solve_constrained_qp(ConstrainedQP(pk_form_matrix(m), alpha), mode="min")
    claimed_sum = float(claimed.sum())
    return System16Report(
        m=m,
        alpha=float(alpha),
        claimed=claimed,
        kkt=res.optimizer,
        discrepancy=float(np.abs(claimed - res.optimizer).max()),
        claimed_sum=claimed_sum,
        claimed_feasible=bool(abs(claimed_sum - alpha) <= 1e-12 * (1.0 + abs(alpha))),
        kkt_feasible=bool(abs(float(res.optimizer.sum()) - alpha) <= 1e-12 * (1.0 + abs(alpha))),
        kkt_value=res.value,
    )
