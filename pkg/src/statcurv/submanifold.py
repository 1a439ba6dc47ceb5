"""Pointwise model of a statistical submanifold and its curvature invariants.

A point is described entirely in an orthonormal tangent frame: the two
imbedding curvature tensors h and h* (components in an orthonormal
normal frame), the tangent-tangent block P of the ambient structure
tensor, and the tangent/normal split (T, lambda) of the structure
vector.  All curvature pairings of the ambient are expressible through
P and T, so no explicit embedding is ever needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .ambient import AmbientGeometry, WarpingProfile, tangential_curvature
from .linalg import jacobi_eigh, orthogonal_complement_frame


class InvalidPointDataError(ValueError):
    """Structural invariant of the point data violated."""


@dataclass(frozen=True)
class SubmanifoldPointData:
    """Pointwise data of an m-dimensional submanifold, p normal directions.

    h, hstar: (p, m, m) symmetric in the last two slots.
    P: (m, m) skew (P_ij = g(e_i, phi e_j)).
    T: (m,) tangent part of the structure vector; lam: (p,) its normal
    coefficients; together they must satisfy |T|^2 + |lam|^2 = 1.
    """

    m: int
    p: int
    geo: AmbientGeometry
    h: np.ndarray
    hstar: np.ndarray
    P: np.ndarray
    T: np.ndarray
    lam: np.ndarray

    def __post_init__(self):
        h = np.asarray(self.h, dtype=float)
        hstar = np.asarray(self.hstar, dtype=float)
        P = np.asarray(self.P, dtype=float)
        T = np.asarray(self.T, dtype=float)
        lam = np.asarray(self.lam, dtype=float)
        m, p = self.m, self.p
        if m < 2 or p < 1:
            raise InvalidPointDataError("need m >= 2 and p >= 1")
        if h.shape != (p, m, m) or hstar.shape != (p, m, m):
            raise InvalidPointDataError("h, hstar must have shape (p, m, m)")
        if P.shape != (m, m) or T.shape != (m,) or lam.shape != (p,):
            raise InvalidPointDataError("P, T or lambda has a wrong shape")
        scale = 1.0 + max(np.abs(h).max(initial=0.0), np.abs(hstar).max(initial=0.0))
        if np.abs(h - h.transpose(0, 2, 1)).max() > 1e-10 * scale:
            raise InvalidPointDataError("h must be symmetric in the tangent slots")
        if np.abs(hstar - hstar.transpose(0, 2, 1)).max() > 1e-10 * scale:
            raise InvalidPointDataError("hstar must be symmetric in the tangent slots")
        if np.abs(P + P.T).max() > 1e-10:
            raise InvalidPointDataError("P must be skew-symmetric")
        if abs(float(T @ T) + float(lam @ lam) - 1.0) > 1e-10:
            raise InvalidPointDataError("structure vector split must be unit: |T|^2 + |lambda|^2 = 1")
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "hstar", hstar)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "lam", lam)

    @property
    def h0(self) -> np.ndarray:
        return 0.5 * (self.h + self.hstar)

    def to_dict(self) -> dict:
        """JSON-compatible record (assumes the standard fiber structure J)."""
        pr = self.geo.profile
        return {
            "m": self.m,
            "p": self.p,
            "n": self.geo.n,
            "cbar": self.geo.cbar,
            "profile": {"kind": pr.kind, "z": pr.z, "f": pr.f, "fp": pr.fp, "fpp": pr.fpp},
            "h": self.h.tolist(),
            "hstar": self.hstar.tolist(),
            "P": self.P.tolist(),
            "T": self.T.tolist(),
            "lambda": self.lam.tolist(),
        }

    @staticmethod
    def from_dict(rec: dict) -> "SubmanifoldPointData":
        pr = rec["profile"]
        profile = WarpingProfile(z=pr["z"], f=pr["f"], fp=pr["fp"], fpp=pr["fpp"], kind=pr["kind"])
        geo = AmbientGeometry(n=rec["n"], cbar=rec["cbar"], profile=profile)
        return SubmanifoldPointData(
            m=rec["m"],
            p=rec["p"],
            geo=geo,
            h=np.array(rec["h"], dtype=float),
            hstar=np.array(rec["hstar"], dtype=float),
            P=np.array(rec["P"], dtype=float),
            T=np.array(rec["T"], dtype=float),
            lam=np.array(rec["lambda"], dtype=float),
        )


@dataclass
class CurvatureSummary:
    """Scalar/Casorati invariants at a point; delta family optional."""

    tau: float
    rho: float
    C: float
    Cstar: float
    C0_mid: float
    C0_avg: float
    H_norm2: float
    Hstar_norm2: float
    H0_norm2: float
    phi_norm2: float
    T_norm2: float
    delta: Optional[float] = None
    delta_star: Optional[float] = None
    delta_hat: Optional[float] = None
    delta_hat_star: Optional[float] = None
    delta_mid: Optional[float] = None
    delta_hat_mid: Optional[float] = None


def mean_curvatures(d: SubmanifoldPointData):
    """Mean curvature vectors (H, H*, H0) in the normal frame."""
    H = np.einsum("kii->k", d.h) / d.m
    Hstar = np.einsum("kii->k", d.hstar) / d.m
    return H, Hstar, 0.5 * (H + Hstar)


def _second_form_vector(A: np.ndarray, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return np.einsum("kij,i,j->k", A, X, Y)


def induced_curvature(d: SubmanifoldPointData, E, F, G, H) -> float:
    """Statistical curvature pairing g(S(E,F)G, H) of the submanifold.

    The curvature tensors of the two dual induced connections are
    obtained from the statistical Gauss equation; their average is the
    statistical curvature.  Vectors live in the tangent frame.
    """
    E, F, G, H = (np.asarray(X, dtype=float) for X in (E, F, G, H))
    co = d.geo.coefficients()
    amb = tangential_curvature(E, F, G, H, d.T, d.P, co)
    hEH = _second_form_vector(d.h, E, H)
    hFG = _second_form_vector(d.h, F, G)
    hEG = _second_form_vector(d.h, E, G)
    hFH = _second_form_vector(d.h, F, H)
    sEH = _second_form_vector(d.hstar, E, H)
    sFG = _second_form_vector(d.hstar, F, G)
    sEG = _second_form_vector(d.hstar, E, G)
    sFH = _second_form_vector(d.hstar, F, H)
    corr = 0.5 * (float(sEH @ hFG) - float(hEG @ sFH) + float(hEH @ sFG) - float(sEG @ hFH))
    return amb + corr


def _tau_closed(d: SubmanifoldPointData) -> float:
    m = d.m
    co = d.geo.coefficients()
    tr = np.einsum("kii->k", d.h)
    trs = np.einsum("kii->k", d.hstar)
    cross = float(np.einsum("kij,kij->", d.h, d.hstar))
    return 0.5 * (
        m * (m - 1) * co.alpha
        - 2.0 * (m - 1) * co.beta * float(d.T @ d.T)
        + 3.0 * co.gamma * float(np.sum(d.P * d.P))
        + float(tr @ trs)
        - cross
    )


def scalar_curvature(d: SubmanifoldPointData):
    """Scalar curvature by two routes: frame sum and closed form.

    Returns (tau_gauss, tau_closed).  tau_gauss sums the statistical
    sectional pairings over frame planes; tau_closed evaluates

      2 tau = m(m-1) alpha - 2(m-1) beta |T|^2 + 3 gamma |P|_F^2
              + sum_k tr(h_k) tr(h*_k) - sum_k <h_k, h*_k>_F.

    The two agree identically; both are returned for cross-checking.
    """
    m = d.m
    basis = np.eye(m)
    tau_gauss = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            tau_gauss += induced_curvature(d, basis[i], basis[j], basis[j], basis[i])
    return float(tau_gauss), _tau_closed(d)


def ricci(d: SubmanifoldPointData, E) -> float:
    """Ricci curvature of the unit tangent direction E."""
    E = np.asarray(E, dtype=float)
    if abs(float(E @ E) - 1.0) > 1e-10:
        raise ValueError("E must be a unit tangent vector")
    total = 0.0
    for b in orthogonal_complement_frame(E):
        total += induced_curvature(d, E, b, b, E)
    return float(total)


def casorati(d: SubmanifoldPointData) -> CurvatureSummary:
    """Casorati curvatures and norms (delta family left unset)."""
    m = d.m
    h0 = d.h0
    C = float(np.sum(d.h * d.h)) / m
    Cstar = float(np.sum(d.hstar * d.hstar)) / m
    C0_mid = float(np.sum(h0 * h0)) / m
    H, Hstar, H0 = mean_curvatures(d)
    tau_closed = _tau_closed(d)
    return CurvatureSummary(
        tau=tau_closed,
        rho=2.0 * tau_closed / (m * (m - 1)),
        C=C,
        Cstar=Cstar,
        C0_mid=C0_mid,
        C0_avg=0.5 * (C + Cstar),
        H_norm2=float(H @ H),
        Hstar_norm2=float(Hstar @ Hstar),
        H0_norm2=float(H0 @ H0),
        phi_norm2=float(np.sum(d.P * d.P)),
        T_norm2=float(d.T @ d.T),
    )


def restricted_casorati(hs: np.ndarray, u: np.ndarray) -> float:
    """Casorati curvature of the tensor restricted to the hyperplane u-perp.

    (1/(m-1)) sum_k |h_k restricted to u-perp|_F^2, evaluated frame-free
    through the projector I - u u^T.
    """
    u = np.asarray(u, dtype=float)
    m = u.shape[0]
    q = np.einsum("kij,i,j->k", hs, u, u)
    hu2 = np.einsum("kij,j->ki", hs, u)
    val = float(np.sum(hs * hs)) - 2.0 * float(np.sum(hu2 * hu2)) + float(q @ q)
    return val / (m - 1)


def _extremize_hyperplane(hs: np.ndarray, mode: str, random_starts: int = 64):
    """Extremize the restricted Casorati over hyperplane normals u.

    Multi-start projected gradient on the unit sphere.  The objective is
    a smooth quartic in u, so a modest number of informed + random starts
    finds the global extremum reliably at these dimensions.
    Returns (value, u).
    """
    if mode not in ("min", "max"):
        raise ValueError("mode must be 'min' or 'max'")
    p, m, _ = hs.shape
    sigma = np.sqrt(np.max(np.sum(hs * hs, axis=(1, 2))))
    if sigma == 0.0:
        u = np.zeros(m)
        u[-1] = 1.0
        return 0.0, u
    hn = hs / sigma
    M = np.einsum("kij,kjl->il", hn, hn)  # sum of squares
    const = float(np.sum(hn * hn))
    sign = 1.0 if mode == "min" else -1.0

    # Starts: coordinate axes, eigenvectors of the square sum, random.
    _, vecs = jacobi_eigh(M)
    rng = np.random.default_rng(0x5EED)
    U = np.concatenate(
        [np.eye(m), vecs.T, rng.standard_normal((random_starts, m))], axis=0
    )
    U /= np.linalg.norm(U, axis=1, keepdims=True)

    def value(Umat):
        q = np.einsum("kij,si,sj->sk", hn, Umat, Umat)
        quad = np.einsum("si,ij,sj->s", Umat, M, Umat)
        return sign * (-2.0 * quad + np.einsum("sk,sk->s", q, q))

    def descend(U, iters, gtol):
        f = value(U)
        step = np.full(U.shape[0], 0.1)
        for _ in range(iters):
            HU = np.einsum("kij,sj->ski", hn, U)
            q = np.einsum("ski,si->sk", HU, U)
            grad = sign * (-4.0 * U @ M + 4.0 * np.einsum("sk,ski->si", q, HU))
            grad -= np.einsum("si,si->s", grad, U)[:, None] * U
            if np.abs(grad).max() < gtol:
                break
            cand = U - step[:, None] * grad
            cand /= np.linalg.norm(cand, axis=1, keepdims=True)
            fc = value(cand)
            better = fc <= f
            U = np.where(better[:, None], cand, U)
            f = np.where(better, fc, f)
            step = np.where(better, step * 1.25, step * 0.4)
        return U, f

    def newton_polish(u):
        # Projected Newton on the sphere; quadratic convergence from the
        # coarse PGD point.  Returns (u, value, converged).
        for _ in range(40):
            hu = np.einsum("kij,j->ki", hn, u)
            q = hu @ u
            g = sign * (-4.0 * M @ u + 4.0 * q @ hu)
            rg = g - (g @ u) * u
            if np.abs(rg).max() < 1e-12:
                return u, float(value(u[None, :])[0]), True
            Hess = sign * (-4.0 * M + 8.0 * np.einsum("ki,kj->ij", hu, hu))
            Hess += sign * 4.0 * np.einsum("k,kij->ij", q, hn)
            Pu = np.eye(m) - np.outer(u, u)
            Hr = Pu @ Hess @ Pu - (g @ u) * Pu + np.outer(u, u)
            try:
                xi = np.linalg.solve(Hr, -rg)
            except np.linalg.LinAlgError:
                return u, float(value(u[None, :])[0]), False
            xi -= (xi @ u) * u
            cand = u + xi
            cand /= np.linalg.norm(cand)
            if value(cand[None, :])[0] > value(u[None, :])[0] + 1e-15:
                return u, float(value(u[None, :])[0]), False
            u = cand
        return u, float(value(u[None, :])[0]), False

    # Coarse pass over all starts, then polish the best few to full
    # precision (gradient below ~1e-12 on the sphere).
    U, f = descend(U, 35, 1e-5)
    keep = np.argsort(f)[:3]
    candidates = []
    for idx in keep:
        u, fv, ok = newton_polish(U[idx].copy())
        if not ok:
            Up, fp = descend(u[None, :], 400, 1e-10)
            u, fv = Up[0], float(fp[0])
        candidates.append((fv, u))
    fv, u = min(candidates, key=lambda t: t[0])
    raw = sign * fv  # -2 u'Mu + sum q^2 at the extremum, normalized scale
    val = sigma * sigma * (const + raw) / (m - 1)
    return float(val), u.copy()


def hyperplane_casorati(d: SubmanifoldPointData, tensor: str = "h", mode: str = "min"):
    """Extremal restricted Casorati curvature over tangent hyperplanes.

    tensor selects among 'h', 'hstar', 'h0'; mode is 'min' or 'max'.
    Returns (extremal value, unit normal of the extremal hyperplane).
    """
    if d.m < 2:
        raise ValueError("need m >= 2")
    try:
        hs = {"h": d.h, "hstar": d.hstar, "h0": d.h0}[tensor]
    except KeyError:
        raise ValueError("tensor must be one of 'h', 'hstar', 'h0'") from None
    return _extremize_hyperplane(np.asarray(hs, dtype=float), mode)


def normalized_deltas(d: SubmanifoldPointData) -> CurvatureSummary:
    """Full curvature summary including the normalized delta family.

    delta     = C/2 + ((m+1)/2m) inf_W C(W)
    delta_hat = 2C - ((2m-1)/2m) sup_W C(W)
    and likewise for h* and for h0 = (h+h*)/2.
    """
    summary = casorati(d)
    m = d.m
    lo = (m + 1.0) / (2.0 * m)
    hi = (2.0 * m - 1.0) / (2.0 * m)
    inf_h, _ = hyperplane_casorati(d, "h", "min")
    sup_h, _ = hyperplane_casorati(d, "h", "max")
    inf_s, _ = hyperplane_casorati(d, "hstar", "min")
    sup_s, _ = hyperplane_casorati(d, "hstar", "max")
    inf_0, _ = hyperplane_casorati(d, "h0", "min")
    sup_0, _ = hyperplane_casorati(d, "h0", "max")
    summary.delta = 0.5 * summary.C + lo * inf_h
    summary.delta_star = 0.5 * summary.Cstar + lo * inf_s
    summary.delta_hat = 2.0 * summary.C - hi * sup_h
    summary.delta_hat_star = 2.0 * summary.Cstar - hi * sup_s
    summary.delta_mid = 0.5 * summary.C0_mid + lo * inf_0
    summary.delta_hat_mid = 2.0 * summary.C0_mid - hi * sup_0
    return summary
