import numpy as np
import pytest

from statcurv.ambient import WarpingProfile
from statcurv.chartlab import (
    ChartPoint,
    ConnectionCoefficients,
    StepOutOfRangeError,
    chart_curvature_check,
    dual_connections,
    duality_residual,
    warped_metric,
)

PROFILES = ("exp", "cosh", "linear", "const")


def test_chart_point_validation():
    with pytest.raises(ValueError):
        ChartPoint(z=0.0, x=np.zeros(3))  # odd fiber dimension
    with pytest.raises(ValueError):
        ChartPoint(z=0.0, x=np.zeros(0))
    with pytest.raises(ValueError):
        ChartPoint(z=np.inf, x=np.zeros(2))
    p = ChartPoint(z=0.5, x=np.array([1.0, 2.0]))
    assert p.dim == 3


def test_step_window():
    p = ChartPoint(z=0.0, x=np.zeros(2))
    prof = WarpingProfile.exp(0.0)
    for bad in (1e-8, 1e-2, 0.0):
        with pytest.raises(StepOutOfRangeError):
            duality_residual(prof, None, p, bad)
        with pytest.raises(StepOutOfRangeError):
            chart_curvature_check(prof, p, bad)


def test_warped_metric():
    p = ChartPoint(z=0.3, x=np.zeros(4))
    g = warped_metric(p, WarpingProfile.exp(0.0))
    f = np.exp(0.3)
    assert g[0, 0] == 1.0
    assert np.abs(np.diag(g)[1:] - f * f).max() < 1e-14
    assert np.abs(g - np.diag(np.diag(g))).max() == 0.0


def test_connection_coefficients_torsion_check():
    bad = np.zeros((2, 2, 2))
    bad[0, 0, 1] = 1.0  # not symmetric in the lower indices
    with pytest.raises(ValueError):
        ConnectionCoefficients(gamma=bad, gamma_star=np.zeros((2, 2, 2)))


def test_dual_connections_structure():
    p = ChartPoint(z=0.2, x=np.zeros(2))
    prof = WarpingProfile.cosh(0.0)
    conn = dual_connections(p, prof)
    f, fp = np.cosh(0.2), np.sinh(0.2)
    assert abs(conn.gamma[1, 0, 1] - fp / f) < 1e-15
    assert abs(conn.gamma[0, 1, 1] + f * fp) < 1e-15
    # flat fiber default is self-dual
    assert np.abs(conn.gamma - conn.gamma_star).max() == 0.0


@pytest.mark.parametrize("kind", PROFILES)
def test_duality_residual_small(kind):
    for z in np.linspace(-1.0, 1.0, 5):
        p = ChartPoint(z=float(z), x=np.array([0.3, -0.7]))
        assert duality_residual(WarpingProfile.of_kind(kind, 0.0), None, p, 1e-5) < 1e-6


def test_duality_with_nontrivial_fiber_pair():
    # a totally symmetric cubic array gives a flat-metric dual pair
    rng = np.random.default_rng(0)
    A = rng.standard_normal((2, 2, 2))
    sym = np.zeros_like(A)
    import itertools

    for perm in itertools.permutations(range(3)):
        sym += np.transpose(A, perm)
    sym /= 6.0
    base = (sym, -sym)
    p = ChartPoint(z=0.1, x=np.zeros(2))
    assert duality_residual(WarpingProfile.exp(0.0), base, p, 1e-5) < 1e-6


@pytest.mark.parametrize("kind", PROFILES)
def test_curvature_closed_form(kind):
    for z in np.linspace(-0.8, 0.8, 4):
        p = ChartPoint(z=float(z), x=np.zeros(2))
        prof = WarpingProfile.of_kind(kind, 0.0)
        assert chart_curvature_check(prof, p, 1e-5) < 1e-5
        # the dual connection has the same curvature closed form here
        assert chart_curvature_check(prof, p, 1e-5, use_star=True) < 1e-5


def test_halving_ratio_second_order():
    # central differences: truncation error drops ~4x when the step halves
    p = ChartPoint(z=0.4, x=np.zeros(2))
    prof = WarpingProfile.exp(0.0)
    big = chart_curvature_check(prof, p, 8e-4)
    small = chart_curvature_check(prof, p, 4e-4)
    assert 3.0 <= big / small <= 5.0


def test_custom_profile_rejected():
    custom = WarpingProfile(0.0, 1.0, 0.3, 0.1)
    p = ChartPoint(z=0.0, x=np.zeros(2))
    with pytest.raises(ValueError):
        duality_residual(custom, None, p, 1e-5)
    with pytest.raises(ValueError):
        chart_curvature_check(custom, p, 1e-5)
