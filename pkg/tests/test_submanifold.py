import numpy as np
import pytest

from statcurv.ambient import AmbientGeometry, WarpingProfile
from statcurv.linalg import orthogonal_complement_frame
from statcurv.scengen import Scenario, generate
from statcurv.submanifold import (
    InvalidPointDataError,
    SubmanifoldPointData,
    casorati,
    hyperplane_casorati,
    induced_curvature,
    mean_curvatures,
    normalized_deltas,
    restricted_casorati,
    ricci,
    scalar_curvature,
)


def _geo(n=2, cbar=4.0):
    return AmbientGeometry(n=n, cbar=cbar, profile=WarpingProfile.exp(0.1))


def _simple_point(m=3, p=2):
    rng = np.random.default_rng(0)
    h = rng.standard_normal((p, m, m))
    h = 0.5 * (h + h.transpose(0, 2, 1))
    hs = rng.standard_normal((p, m, m))
    hs = 0.5 * (hs + hs.transpose(0, 2, 1))
    P = np.zeros((m, m))
    P[0, 1], P[1, 0] = 0.5, -0.5
    T = np.zeros(m)
    lam = np.zeros(p)
    lam[0] = 1.0
    return SubmanifoldPointData(m=m, p=p, geo=_geo(), h=h, hstar=hs, P=P, T=T, lam=lam)


def test_validation_errors():
    d = _simple_point()
    bad_h = d.h.copy()
    bad_h[0, 0, 1] += 1.0
    with pytest.raises(InvalidPointDataError):
        SubmanifoldPointData(m=d.m, p=d.p, geo=d.geo, h=bad_h, hstar=d.hstar,
                             P=d.P, T=d.T, lam=d.lam)
    with pytest.raises(InvalidPointDataError):
        SubmanifoldPointData(m=d.m, p=d.p, geo=d.geo, h=d.h, hstar=d.hstar,
                             P=np.eye(d.m), T=d.T, lam=d.lam)
    with pytest.raises(InvalidPointDataError):
        SubmanifoldPointData(m=d.m, p=d.p, geo=d.geo, h=d.h, hstar=d.hstar,
                             P=d.P, T=d.T, lam=2.0 * d.lam)
    with pytest.raises(InvalidPointDataError):
        SubmanifoldPointData(m=d.m, p=d.p, geo=d.geo, h=d.h[:, :2, :2],
                             hstar=d.hstar, P=d.P, T=d.T, lam=d.lam)
    with pytest.raises(InvalidPointDataError):
        SubmanifoldPointData(m=1, p=1, geo=d.geo, h=np.zeros((1, 1, 1)),
                             hstar=np.zeros((1, 1, 1)), P=np.zeros((1, 1)),
                             T=np.zeros(1), lam=np.ones(1))


def test_serialization_round_trip():
    d = generate(Scenario(seed=5, m=4, p=3, n=3, profile_kind="cosh", z=0.3,
                          cbar=-4.0, klass="generic"))
    rec = d.to_dict()
    back = SubmanifoldPointData.from_dict(rec)
    assert np.abs(back.h - d.h).max() == 0.0
    assert np.abs(back.hstar - d.hstar).max() == 0.0
    assert np.abs(back.P - d.P).max() == 0.0
    assert back.geo.cbar == d.geo.cbar
    assert back.geo.profile.kind == d.geo.profile.kind


def test_h0_property():
    d = _simple_point()
    assert np.abs(d.h0 - 0.5 * (d.h + d.hstar)).max() == 0.0


def test_mean_curvatures():
    d = _simple_point()
    H, Hs, H0 = mean_curvatures(d)
    assert np.abs(H - np.einsum("kii->k", d.h) / d.m).max() < 1e-15
    assert np.abs(H0 - 0.5 * (H + Hs)).max() < 1e-15


def test_induced_curvature_antisymmetry_and_bilinearity():
    d = _simple_point()
    rng = np.random.default_rng(1)
    E, F, G, H = rng.standard_normal((4, d.m))
    v = induced_curvature(d, E, F, G, H)
    assert abs(v + induced_curvature(d, F, E, G, H)) < 1e-12 * (1 + abs(v))
    w = induced_curvature(d, 2.0 * E, F, G, H)
    assert abs(w - 2.0 * v) < 1e-12 * (1 + abs(v))


def test_scalar_curvature_two_routes():
    combos = [(3, 2, "exp", -4.0), (4, 3, "cosh", 0.0), (2, 5, "linear", 4.0),
              (5, 2, "const", 4.0), (3, 4, "exp", 0.0), (4, 1, "cosh", -4.0)]
    for seed, (m, p, kind, cbar) in enumerate(combos):
        sc = Scenario(seed=seed, m=m, p=p, n=(m + p - 1) // 2,
                      profile_kind=kind, z=0.2, cbar=cbar, klass="generic")
        d = generate(sc)
        tg, tc = scalar_curvature(d)
        assert abs(tg - tc) < 1e-10 * (1.0 + abs(tg))


def test_ricci_trace_identity():
    sc = Scenario(seed=3, m=4, p=3, n=3, profile_kind="cosh", z=0.2,
                  cbar=-4.0, klass="generic")
    d = generate(sc)
    tg, _ = scalar_curvature(d)
    total = sum(ricci(d, np.eye(4)[i]) for i in range(4))
    assert abs(total - 2.0 * tg) < 1e-10 * (1.0 + abs(tg))


def test_ricci_requires_unit_vector():
    d = _simple_point()
    with pytest.raises(ValueError):
        ricci(d, np.array([1.0, 1.0, 0.0]))


def test_casorati_summary_norms():
    d = _simple_point()
    s = casorati(d)
    assert abs(s.C - np.sum(d.h * d.h) / d.m) < 1e-14
    assert abs(s.Cstar - np.sum(d.hstar * d.hstar) / d.m) < 1e-14
    assert abs(s.C0_avg - 0.5 * (s.C + s.Cstar)) < 1e-14
    assert abs(s.T_norm2 - float(d.T @ d.T)) < 1e-15
    assert s.delta is None  # the delta family is not computed here


def test_restricted_casorati_matches_projection():
    rng = np.random.default_rng(2)
    p, m = 2, 4
    hs = rng.standard_normal((p, m, m))
    hs = hs + hs.transpose(0, 2, 1)
    u = rng.standard_normal(m)
    u /= np.linalg.norm(u)
    B = orthogonal_complement_frame(u)
    direct = sum(np.sum((B @ hk @ B.T) ** 2) for hk in hs) / (m - 1)
    assert abs(restricted_casorati(hs, u) - direct) < 1e-12 * (1.0 + direct)


def test_hyperplane_extrema_m2_diagonal():
    # single normal direction, h = diag(a, 0): the restricted curvature over
    # lines is (u-perp component)^4-free and ranges over [0, a^2]
    a = 1.7
    hs = np.zeros((1, 2, 2))
    hs[0, 0, 0] = a
    lo, ulo = hyperplane_casorati_from_raw(hs, "min")
    hi, uhi = hyperplane_casorati_from_raw(hs, "max")
    assert abs(lo) < 1e-12
    assert abs(hi - a * a) < 1e-10
    assert abs(abs(ulo[0]) - 1.0) < 1e-6  # removing e_1 kills the tensor
    assert abs(abs(uhi[1]) - 1.0) < 1e-6


def hyperplane_casorati_from_raw(hs, mode):
    from statcurv.submanifold import _extremize_hyperplane

    return _extremize_hyperplane(hs, mode)


def test_hyperplane_extrema_bracket_samples():
    rng = np.random.default_rng(3)
    for _ in range(10):
        m = int(rng.integers(2, 6))
        p = int(rng.integers(1, 4))
        hs = rng.standard_normal((p, m, m))
        hs = hs + hs.transpose(0, 2, 1)
        lo, _ = hyperplane_casorati_from_raw(hs, "min")
        hi, _ = hyperplane_casorati_from_raw(hs, "max")
        U = rng.standard_normal((2000, m))
        U /= np.linalg.norm(U, axis=1, keepdims=True)
        vals = np.array([restricted_casorati(hs, u) for u in U[:50]])
        assert lo <= vals.min() + 1e-9
        assert hi >= vals.max() - 1e-9


def test_hyperplane_zero_tensor_fast_path():
    val, u = hyperplane_casorati_from_raw(np.zeros((2, 3, 3)), "min")
    assert val == 0.0 and abs(np.linalg.norm(u) - 1.0) < 1e-15


def test_hyperplane_casorati_selectors():
    d = _simple_point()
    v_h, _ = hyperplane_casorati(d, "h", "min")
    v_0, _ = hyperplane_casorati(d, "h0", "min")
    assert np.isfinite(v_h) and np.isfinite(v_0)
    with pytest.raises(ValueError):
        hyperplane_casorati(d, "h1", "min")
    with pytest.raises(ValueError):
        hyperplane_casorati(d, "h", "sup")


def test_normalized_deltas_consistency():
    d = _simple_point()
    s = normalized_deltas(d)
    m = d.m
    lo = (m + 1.0) / (2.0 * m)
    hi = (2.0 * m - 1.0) / (2.0 * m)
    inf_h, _ = hyperplane_casorati(d, "h", "min")
    sup_h, _ = hyperplane_casorati(d, "h", "max")
    assert abs(s.delta - (0.5 * s.C + lo * inf_h)) < 1e-10
    assert abs(s.delta_hat - (2.0 * s.C - hi * sup_h)) < 1e-10
    assert s.delta_mid is not None and s.delta_hat_mid is not None
