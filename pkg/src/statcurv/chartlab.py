"""Finite-difference laboratory for the warped-product dualistic structure.

Works in explicit coordinates (z, x_1, ..., x_2n) on the line-over-flat-
fiber chart with metric diag(1, f(z)^2, ..., f(z)^2).  The dual pair of
connections is assembled from a (constant-coefficient) dual pair on the
fiber, and both the metric-duality identity and the curvature closed
form are verified by central differences.  The fiber is flat here
(cbar = 0); curved fibers are exercised algebraically elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .ambient import AmbientGeometry, WarpingProfile, ambient_curvature


class StepOutOfRangeError(ValueError):
    """Finite-difference step outside the trusted window."""


def _check_step(step: float) -> None:
    if not (1e-7 <= step <= 1e-3):
        raise StepOutOfRangeError("step must lie in [1e-7, 1e-3], got %r" % (step,))


@dataclass(frozen=True)
class ChartPoint:
    z: float
    x: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.x, dtype=float)
        if x.ndim != 1 or x.shape[0] % 2 != 0 or x.shape[0] == 0:
            raise ValueError("fiber coordinates must form a nonempty even-length vector")
        if not (np.isfinite(self.z) and np.all(np.isfinite(x))):
            raise ValueError("coordinates must be finite")
        object.__setattr__(self, "x", x)

    @property
    def dim(self) -> int:
        return 1 + self.x.shape[0]


@dataclass(frozen=True)
class ConnectionCoefficients:
    """Christoffel-type arrays gamma[k, i, j] = coefficient of d_k in D_i d_j."""

    gamma: np.ndarray
    gamma_star: np.ndarray

    def __post_init__(self):
        g, gs = np.asarray(self.gamma, float), np.asarray(self.gamma_star, float)
        if g.shape != gs.shape or g.ndim != 3 or len({*g.shape}) != 1:
            raise ValueError("expected two (d, d, d) arrays of equal shape")
        for arr in (g, gs):
            if np.abs(arr - arr.transpose(0, 2, 1)).max() > 1e-12:
                raise ValueError("connection must be torsion-free (symmetric lower indices)")
        object.__setattr__(self, "gamma", g)
        object.__setattr__(self, "gamma_star", gs)


def warped_metric(p: ChartPoint, profile: WarpingProfile) -> np.ndarray:
    """Coordinate matrix diag(1, f^2, ..., f^2) of the warped metric at p."""
    prof = profile.evaluate(p.z) if profile.kind != "custom" else profile
    d = p.dim
    g = np.eye(d) * prof.f**2
    g[0, 0] = 1.0
    return g


def _flat_base(two_n: int):
    z = np.zeros((two_n, two_n, two_n))
    return z, z.copy()


def dual_connections(p: ChartPoint, profile: WarpingProfile, base=None) -> ConnectionCoefficients:
    """Assemble the dual connection pair of the warped product at p.

    base is an optional pair (fiber gamma, fiber gamma_star) of constant
    coordinate coefficients of a dual structure on the flat fiber; the
    default is the flat self-dual pair.  The warped structure adds the
    mixed terms (f'/f on fiber directions against the line) and the
    fiber-fiber correction -f f' in the line component; the same metric
    corrections apply to both members of the pair.
    """
    two_n = p.x.shape[0]
    if base is None:
        base = _flat_base(two_n)
    bg, bgs = (np.asarray(b, dtype=float) for b in base)
    prof = profile.evaluate(p.z) if profile.kind != "custom" else profile
    f, fp = prof.f, prof.fp
    d = p.dim

    def assemble(fiber_gamma):
        G = np.zeros((d, d, d))
        ratio = fp / f
        for u in range(1, d):
            G[u, 0, u] = ratio
            G[u, u, 0] = ratio
            G[0, u, u] = -f * fp
        G[1:, 1:, 1:] = fiber_gamma
        return G

    return ConnectionCoefficients(gamma=assemble(bg), gamma_star=assemble(bgs))


def duality_residual(profile: WarpingProfile, base, p: ChartPoint, step: float = 1e-5) -> float:
    """Max residual of E g(F,G) = g(D_E F, G) + g(F, D*_E G) at p.

    E, F, G range over the coordinate basis fields; the left side is a
    central difference of the metric entry, the right side is evaluated
    from the assembled coefficients and the metric at p.
    """
    _check_step(step)
    if profile.kind == "custom":
        raise ValueError("finite differencing needs a builtin profile kind")
    d = p.dim
    conn = dual_connections(p, profile, base)
    g = warped_metric(p, profile)

    def metric_at(shifted_coords):
        q = ChartPoint(z=shifted_coords[0], x=shifted_coords[1:])
        return warped_metric(q, profile)

    coords = np.concatenate([[p.z], p.x])
    worst = 0.0
    for a in range(d):
        plus = coords.copy()
        minus = coords.copy()
        plus[a] += step
        minus[a] -= step
        dg = (metric_at(plus) - metric_at(minus)) / (2.0 * step)
        # g(D_a d_i, d_j) + g(d_i, D*_a d_j) with all pairings through g at p
        lhs = dg
        rhs = np.einsum("ki,kj->ij", conn.gamma[:, a, :], g) + np.einsum(
            "kj,ik->ij", conn.gamma_star[:, a, :], g
        )
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def _curvature_coordinates(profile: WarpingProfile, base, p: ChartPoint, step: float, use_star: bool):
    """Coordinate curvature R^l_{ijk} of D (or D*) by central differences."""
    d = p.dim
    coords = np.concatenate([[p.z], p.x])

    def gammas_at(c):
        q = ChartPoint(z=c[0], x=c[1:])
        conn = dual_connections(q, profile, base)
        return conn.gamma_star if use_star else conn.gamma

    G0 = gammas_at(coords)
    dG = np.zeros((d, d, d, d))  # dG[a] = partial_a gamma
    for a in range(d):
        plus = coords.copy()
        minus = coords.copy()
        plus[a] += step
        minus[a] -= step
        dG[a] = (gammas_at(plus) - gammas_at(minus)) / (2.0 * step)
    # R^l_{ijk}: curvature of the connection, R(d_i, d_j) d_k
    R = np.einsum("iljk->lijk", dG) - np.einsum("jlik->lijk", dG)
    R += np.einsum("lia,ajk->lijk", G0, G0) - np.einsum("lja,aik->lijk", G0, G0)
    return R


def chart_curvature_check(
    profile: WarpingProfile, p: ChartPoint, step: float = 1e-5, base=None, use_star: bool = False
) -> float:
    """Max deviation of finite-difference curvature from the closed form.

    Computes the curvature of the assembled connection in coordinates,
    lowers an index with the warped metric, rescales to the orthonormal
    frame (line direction unit, fiber directions divided by f), and
    compares against the algebraic curvature of the flat-fiber ambient
    (cbar = 0) on the same frame.
    """
    _check_step(step)
    if profile.kind == "custom":
        raise ValueError("finite differencing needs a builtin profile kind")
    d = p.dim
    n = p.x.shape[0] // 2
    R = _curvature_coordinates(profile, base, p, step, use_star)
    g = warped_metric(p, profile)
    Rlow = np.einsum("lijk,lm->ijkm", R, g)  # g(R(d_i,d_j) d_k, d_m)
    prof = profile.evaluate(p.z) if profile.kind != "custom" else profile
    scale = np.full(d, prof.f)
    scale[0] = 1.0
    geo = AmbientGeometry(n=n, cbar=0.0, profile=prof)
    eye = np.eye(d)
    worst = 0.0
    for i in range(d):
        for j in range(d):
            for k in range(d):
                for l in range(d):
                    num = Rlow[i, j, k, l] / (scale[i] * scale[j] * scale[k] * scale[l])
                    closed = ambient_curvature(eye[i], eye[j], eye[k], eye[l], geo)
                    worst = max(worst, abs(num - closed))
    return worst
