"""Pointwise model of the ambient warped product line-over-Kaehler space.

The ambient is the real line warped over a 2n-dimensional space of
constant holomorphic sectional curvature ``cbar``; the warping function
enters only through the triple (f, f', f'') at the working base
coordinate.  All frames are orthonormal with respect to the warped
metric, so metric pairings reduce to Euclidean dot products throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import orthogonal_complement_frame, sym_eig_max


class NonpositiveWarpingError(ValueError):
    """The warping function must stay positive."""


class DimensionMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class WarpingProfile:
    """Value and first two derivatives of the warping function at ``z``."""

    z: float
    f: float
    fp: float
    fpp: float
    kind: str = "custom"

    def __post_init__(self):
        if not self.f > 0.0:
            raise NonpositiveWarpingError("warping function must be positive, got f=%r" % (self.f,))

    @staticmethod
    def exp(z: float) -> "WarpingProfile":
        e = math.exp(z)
        return WarpingProfile(z, e, e, e, kind="exp")

    @staticmethod
    def cosh(z: float) -> "WarpingProfile":
        return WarpingProfile(z, math.cosh(z), math.sinh(z), math.cosh(z), kind="cosh")

    @staticmethod
    def linear(z: float, slope: float = 0.5, intercept: float = 1.0) -> "WarpingProfile":
        return WarpingProfile(z, intercept + slope * z, slope, 0.0, kind="linear")

    @staticmethod
    def const(z: float = 0.0, value: float = 1.0) -> "WarpingProfile":
        return WarpingProfile(z, value, 0.0, 0.0, kind="const")

    @staticmethod
    def of_kind(kind: str, z: float) -> "WarpingProfile":
        try:
            builder = {
                "exp": WarpingProfile.exp,
                "cosh": WarpingProfile.cosh,
                "linear": WarpingProfile.linear,
                "const": WarpingProfile.const,
            }[kind]
        except KeyError:
            raise ValueError("unknown builtin profile kind %r" % kind) from None
        return builder(z)

    def evaluate(self, z: float) -> "WarpingProfile":
        """Re-evaluate a builtin profile at another base coordinate."""
        if self.kind == "custom":
            raise ValueError("custom profiles carry data at a single point only")
        if self.kind == "linear":
            # keep the line through the stored data
            intercept = self.f - self.fp * self.z
            return WarpingProfile.linear(z, slope=self.fp, intercept=intercept)
        if self.kind == "const":
            return WarpingProfile.const(z, value=self.f)
        return WarpingProfile.of_kind(self.kind, z)


@dataclass(frozen=True)
class CurvatureCoefficients:
    alpha: float
    beta: float
    gamma: float


def coefficients(profile: WarpingProfile, cbar: float) -> CurvatureCoefficients:
    """Curvature coefficients of the warped ambient at the profile point.

    alpha = cbar/(4 f^2) - (f'/f)^2,  beta = alpha + f''/f,
    gamma = cbar/(4 f^2).
    """
    f, fp, fpp = profile.f, profile.fp, profile.fpp
    gamma = cbar / (4.0 * f * f)
    alpha = gamma - (fp / f) ** 2
    beta = alpha + fpp / f
    return CurvatureCoefficients(alpha, beta, gamma)


def standard_complex_structure(n: int) -> np.ndarray:
    """The block structure J x_i = y_i, J y_i = -x_i on R^{2n}."""
    J = np.zeros((2 * n, 2 * n))
    J[n:, :n] = np.eye(n)
    J[:n, n:] = -np.eye(n)
    return J


@dataclass(frozen=True)
class AmbientGeometry:
    """Ambient data at a point: dimensions, cbar, profile and J.

    Coordinate 0 of the (2n+1)-dimensional ambient frame is the line
    direction (the structure vector); the remaining 2n coordinates are an
    orthonormal fiber frame in which J is expressed.
    """

    n: int
    cbar: float
    profile: WarpingProfile
    J: np.ndarray = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("fiber complex dimension must be >= 1")
        J = self.J
        if J is None:
            J = standard_complex_structure(self.n)
        J = np.asarray(J, dtype=float)
        if J.shape != (2 * self.n, 2 * self.n):
            raise DimensionMismatchError("J must be 2n x 2n")
        if not np.allclose(J @ J, -np.eye(2 * self.n), atol=1e-12):
            raise ValueError("J^2 must equal -I")
        if not np.allclose(J, -J.T, atol=1e-12):
            raise ValueError("J must be skew-symmetric in the orthonormal fiber frame")
        object.__setattr__(self, "J", J)

    @property
    def dim(self) -> int:
        return 2 * self.n + 1

    @property
    def phi(self) -> np.ndarray:
        """Structure tensor on the full ambient: 0 on the line, J on the fiber."""
        M = np.zeros((self.dim, self.dim))
        M[1:, 1:] = self.J
        return M

    def coefficients(self) -> CurvatureCoefficients:
        return coefficients(self.profile, self.cbar)


def space_form_curvature(E, F, G, H, geo: AmbientGeometry) -> float:
    """Curvature pairing of the constant-holomorphic-curvature fiber.

    (cbar/4) { g(F,G)g(E,H) - g(E,G)g(F,H)
               + g(JF,G)g(JE,H) - g(JE,G)g(JF,H) + 2 g(E,JF) g(JG,H) }
    for fiber vectors in the orthonormal frame.
    """
    E, F, G, H = (np.asarray(X, dtype=float) for X in (E, F, G, H))
    d = 2 * geo.n
    for X in (E, F, G, H):
        if X.shape != (d,):
            raise DimensionMismatchError("fiber vectors of dimension %d expected" % d)
    J = geo.J
    JE, JF, JG = J @ E, J @ F, J @ G
    val = (
        (F @ G) * (E @ H)
        - (E @ G) * (F @ H)
        + (JF @ G) * (JE @ H)
        - (JE @ G) * (JF @ H)
        + 2.0 * (E @ JF) * (JG @ H)
    )
    return float(geo.cbar / 4.0 * val)


def ambient_curvature(E, F, G, H, geo: AmbientGeometry) -> float:
    """Statistical curvature pairing of the full warped ambient.

    Evaluates
      alpha [ g(E,H)g(F,G) - g(E,G)g(F,H) ]
      + beta [ g(E,G)eta(F)eta(H) - g(F,G)eta(E)eta(H)
               + g(F,H)eta(E)eta(G) - g(E,H)eta(F)eta(G) ]
      + gamma [ g(E,phiG)g(phiF,H) - g(F,phiG)g(phiE,H)
                + 2 g(E,phiF)g(phiG,H) ]
    with eta(X) the component along the line direction.
    """
    E, F, G, H = (np.asarray(X, dtype=float) for X in (E, F, G, H))
    d = geo.dim
    for X in (E, F, G, H):
        if X.shape != (d,):
            raise DimensionMismatchError("ambient vectors of dimension %d expected" % d)
    co = geo.coefficients()
    phi = geo.phi
    pE, pF, pG = phi @ E, phi @ F, phi @ G
    eE, eF, eG, eH = E[0], F[0], G[0], H[0]
    t_alpha = (E @ H) * (F @ G) - (E @ G) * (F @ H)
    t_beta = (E @ G) * eF * eH - (F @ G) * eE * eH + (F @ H) * eE * eG - (E @ H) * eF * eG
    t_gamma = (E @ pG) * (pF @ H) - (F @ pG) * (pE @ H) + 2.0 * (E @ pF) * (pG @ H)
    return float(co.alpha * t_alpha + co.beta * t_beta + co.gamma * t_gamma)


def tangential_curvature(E, F, G, H, T, P, co: CurvatureCoefficients) -> float:
    """Ambient curvature pairing evaluated from tangential data only.

    E, F, G, H are expressed in an orthonormal tangent frame of a
    submanifold; T holds the frame components of the structure vector's
    tangent part and P the tangent-tangent block of the structure tensor
    (P_ij = g(e_i, phi e_j), skew).  Then eta(X) = X.T, g(X, phi Y) =
    X^T P Y, and the curvature formula needs nothing else.
    """
    E, F, G, H = (np.asarray(X, dtype=float) for X in (E, F, G, H))
    T = np.asarray(T, dtype=float)
    P = np.asarray(P, dtype=float)
    eE, eF, eG, eH = E @ T, F @ T, G @ T, H @ T
    t_alpha = (E @ H) * (F @ G) - (E @ G) * (F @ H)
    t_beta = (E @ G) * eF * eH - (F @ G) * eE * eH + (F @ H) * eE * eG - (E @ H) * eF * eG
    # g(X, phi G) = X^T P G ; g(phi F, H) = H^T P F
    t_gamma = (E @ P @ G) * (H @ P @ F) - (F @ P @ G) * (H @ P @ E) + 2.0 * (E @ P @ F) * (H @ P @ G)
    return float(co.alpha * t_alpha + co.beta * t_beta + co.gamma * t_gamma)


def sectional_form_matrix(E, data) -> np.ndarray:
    """Symmetric matrix of ambient sectional pairings on planes through E.

    Over an orthonormal frame {b_i} of the tangent hyperplane orthogonal
    to E, entry (i, j) is the symmetrized ambient curvature pairing
    (1/2)[S(E,b_i,b_j,E) + S(E,b_j,b_i,E)] evaluated from the tangential
    data of ``data``.  Its largest eigenvalue is the maximum ambient
    sectional value over tangent 2-planes containing E.
    """
    E = np.asarray(E, dtype=float)
    m = data.m
    if m < 2:
        raise ValueError("need tangent dimension >= 2")
    if E.shape != (m,):
        raise DimensionMismatchError("E must live in the tangent frame")
    co = data.geo.coefficients()
    B = orthogonal_complement_frame(E)
    M = np.empty((m - 1, m - 1))
    for i in range(m - 1):
        for j in range(i, m - 1):
            v = 0.5 * (
                tangential_curvature(E, B[i], B[j], E, data.T, data.P, co)
                + tangential_curvature(E, B[j], B[i], E, data.T, data.P, co)
            )
            M[i, j] = M[j, i] = v
    return M


def max_tangent_sectional(E, data) -> float:
    """Largest ambient sectional pairing over tangent 2-planes through E."""
    val, _ = sym_eig_max(sectional_form_matrix(E, data))
    return val
