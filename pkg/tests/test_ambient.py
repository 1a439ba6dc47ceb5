import math

import numpy as np
import pytest

from statcurv.ambient import (
    AmbientGeometry,
    DimensionMismatchError,
    NonpositiveWarpingError,
    WarpingProfile,
    ambient_curvature,
    coefficients,
    max_tangent_sectional,
    sectional_form_matrix,
    space_form_curvature,
    standard_complex_structure,
    tangential_curvature,
)
from statcurv.linalg import orthonormalize
from statcurv.scengen import Scenario, generate


def test_profile_builders():
    p = WarpingProfile.exp(0.3)
    e = math.exp(0.3)
    assert (p.f, p.fp, p.fpp) == (e, e, e)
    p = WarpingProfile.cosh(-0.2)
    assert (p.f, p.fp, p.fpp) == (math.cosh(0.2), math.sinh(-0.2), math.cosh(0.2))
    p = WarpingProfile.linear(2.0, slope=0.5, intercept=1.0)
    assert (p.f, p.fp, p.fpp) == (2.0, 0.5, 0.0)
    p = WarpingProfile.const(1.0, value=3.0)
    assert (p.f, p.fp, p.fpp) == (3.0, 0.0, 0.0)


def test_profile_positivity_and_kinds():
    with pytest.raises(NonpositiveWarpingError):
        WarpingProfile(0.0, -1.0, 0.0, 0.0)
    with pytest.raises(NonpositiveWarpingError):
        WarpingProfile.linear(-3.0)  # 1 + 0.5 z <= 0
    with pytest.raises(ValueError):
        WarpingProfile.of_kind("spline", 0.0)


def test_profile_evaluate():
    p = WarpingProfile.linear(1.0, slope=0.25, intercept=2.0)
    q = p.evaluate(3.0)
    assert q.f == 2.0 + 0.25 * 3.0 and q.fp == 0.25 and q.fpp == 0.0
    c = WarpingProfile.const(0.0, value=2.5).evaluate(7.0)
    assert c.f == 2.5
    custom = WarpingProfile(0.0, 1.0, 0.2, 0.1)
    with pytest.raises(ValueError):
        custom.evaluate(1.0)


def test_coefficients_exp():
    # f = f' = f'' = e^z: gamma = cbar e^{-2z}/4, alpha = gamma - 1, beta = alpha + 1
    z, cbar = 0.4, -4.0
    co = coefficients(WarpingProfile.exp(z), cbar)
    g = cbar / (4.0 * math.exp(2 * z))
    assert abs(co.gamma - g) < 1e-15
    assert abs(co.alpha - (g - 1.0)) < 1e-15
    assert abs(co.beta - co.alpha - 1.0) < 1e-15


def test_standard_complex_structure():
    for n in (1, 2, 4):
        J = standard_complex_structure(n)
        assert np.abs(J @ J + np.eye(2 * n)).max() == 0.0
        assert np.abs(J + J.T).max() == 0.0


def test_geometry_validation():
    prof = WarpingProfile.const()
    with pytest.raises(ValueError):
        AmbientGeometry(n=0, cbar=0.0, profile=prof)
    with pytest.raises(DimensionMismatchError):
        AmbientGeometry(n=2, cbar=0.0, profile=prof, J=np.eye(2))
    with pytest.raises(ValueError):
        AmbientGeometry(n=1, cbar=0.0, profile=prof, J=np.eye(2))  # J^2 != -I
    geo = AmbientGeometry(n=2, cbar=1.0, profile=prof)
    assert geo.dim == 5
    assert np.abs(geo.phi[1:, 1:] - geo.J).max() == 0.0
    assert np.all(geo.phi[0, :] == 0.0) and np.all(geo.phi[:, 0] == 0.0)


def test_space_form_holomorphic_sections():
    rng = np.random.default_rng(0)
    for cbar in (-4.0, 1.0, 4.0):
        geo = AmbientGeometry(n=3, cbar=cbar, profile=WarpingProfile.const())
        E = rng.standard_normal(6)
        E /= np.linalg.norm(E)
        JE = geo.J @ E
        assert abs(space_form_curvature(E, JE, JE, E, geo) - cbar) < 1e-12
        # totally real planes see cbar/4
        F = rng.standard_normal(6)
        F -= (F @ E) * E + (F @ JE) * JE
        F /= np.linalg.norm(F)
        assert abs(space_form_curvature(E, F, F, E, geo) - cbar / 4.0) < 1e-12


def test_ambient_reduces_to_space_form_on_fiber():
    # constant warping, fiber vectors: the warped formula must coincide
    # with the constant-holomorphic-curvature tensor
    rng = np.random.default_rng(1)
    geo = AmbientGeometry(n=2, cbar=4.0, profile=WarpingProfile.const())
    for _ in range(20):
        vecs = rng.standard_normal((4, 4))
        ext = [np.concatenate([[0.0], v]) for v in vecs]
        a = ambient_curvature(*ext, geo)
        b = space_form_curvature(*vecs, geo)
        assert abs(a - b) < 1e-12


def test_ambient_antisymmetry_first_pair():
    rng = np.random.default_rng(2)
    geo = AmbientGeometry(n=2, cbar=-4.0, profile=WarpingProfile.exp(0.3))
    for _ in range(20):
        E, F, G, H = rng.standard_normal((4, 5))
        v = ambient_curvature(E, F, G, H, geo)
        assert abs(v + ambient_curvature(F, E, G, H, geo)) < 1e-12 * (1 + abs(v))


def test_ambient_mixed_plane_value():
    # plane containing the line direction: sectional value alpha - beta = -f''/f
    geo = AmbientGeometry(n=1, cbar=0.0, profile=WarpingProfile.cosh(0.5))
    e0 = np.array([1.0, 0.0, 0.0])
    e1 = np.array([0.0, 1.0, 0.0])
    v = ambient_curvature(e1, e0, e0, e1, geo)
    co = geo.coefficients()
    assert abs(v - (co.alpha - co.beta)) < 1e-14
    assert abs(v + geo.profile.fpp / geo.profile.f) < 1e-14


def test_ambient_dimension_check():
    geo = AmbientGeometry(n=1, cbar=0.0, profile=WarpingProfile.const())
    with pytest.raises(DimensionMismatchError):
        ambient_curvature(np.ones(2), np.ones(2), np.ones(2), np.ones(2), geo)
    with pytest.raises(DimensionMismatchError):
        space_form_curvature(np.ones(3), np.ones(3), np.ones(3), np.ones(3), geo)


def test_tangential_matches_ambient_on_embedded_frame():
    # express random tangent vectors of an explicit frame both ways
    rng = np.random.default_rng(3)
    n, m = 3, 4
    D = 2 * n + 1
    geo = AmbientGeometry(n=n, cbar=4.0, profile=WarpingProfile.exp(-0.2))
    U = orthonormalize(rng.standard_normal((m, D)))
    P = U @ geo.phi @ U.T
    T = U[:, 0].copy()
    co = geo.coefficients()
    for _ in range(20):
        E, F, G, H = rng.standard_normal((4, m))
        a = tangential_curvature(E, F, G, H, T, P, co)
        b = ambient_curvature(E @ U, F @ U, G @ U, H @ U, geo)
        assert abs(a - b) < 1e-11 * (1.0 + abs(b))


def test_sectional_form_matrix_and_max():
    sc = Scenario(seed=9, m=4, p=3, n=3, profile_kind="cosh", z=0.1,
                  cbar=-4.0, klass="generic")
    d = generate(sc)
    rng = np.random.default_rng(4)
    E = rng.standard_normal(4)
    E /= np.linalg.norm(E)
    M = sectional_form_matrix(E, d)
    assert M.shape == (3, 3)
    assert np.abs(M - M.T).max() < 1e-14
    top = max_tangent_sectional(E, d)
    co = d.geo.coefficients()
    # no sampled plane through E may beat the eigenvalue route
    from statcurv.linalg import orthogonal_complement_frame

    B = orthogonal_complement_frame(E)
    for _ in range(200):
        w = rng.standard_normal(3)
        b = w @ B
        b /= np.linalg.norm(b)
        val = tangential_curvature(E, b, b, E, d.T, d.P, co)
        assert val <= top + 1e-10


def test_sectional_form_matrix_errors():
    sc = Scenario(seed=9, m=4, p=3, n=3, klass="generic")
    d = generate(sc)
    with pytest.raises(DimensionMismatchError):
        sectional_form_matrix(np.ones(5), d)
