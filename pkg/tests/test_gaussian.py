import math

import numpy as np
import pytest
from scipy import optimize, stats

from trimdist.core import TrimParams, normal
from trimdist.errors import InvalidInput, UnsupportedCase
from trimdist.gaussian import Regime, classify, gaussian_trimmed_distance, location_critical_point, scale_delta
from trimdist.trimming import trimmed_distance

PHI = stats.norm.cdf


def test_regimes():
    assert classify(1.0, 1.0, 0.1) is Regime.LOCATION_SHIFT
    assert classify(0.0, 0.5, 0.1) is Regime.SCALE_BELOW_ONE
    assert classify(0.0, 1.0, 0.1) is Regime.SCALE_IN_BAND
    assert classify(0.0, 1 / 0.9, 0.1) is Regime.SCALE_IN_BAND
    assert classify(0.0, 1.2, 0.1) is Regime.SCALE_ABOVE_BAND
    with pytest.raises(UnsupportedCase):
        gaussian_trimmed_distance(1.0, 2.0, 0.1)
    with pytest.raises(InvalidInput):
        gaussian_trimmed_distance(0.0, 0.0, 0.1)
    with pytest.raises(InvalidInput):
        gaussian_trimmed_distance(0.0, 1.0, 1.0)


def test_zero_band():
    assert gaussian_trimmed_distance(0, 1, 0.1)[0] == 0.0
    d, case = gaussian_trimmed_distance(0, 1.05, 0.1)
    assert d == 0.0 and case.regime is Regime.SCALE_IN_BAND


def test_location_value_matches_direct_maximization():
    # sup_t Phi(mu + Phi^{-1}(t)) - t/(1-alpha), maximized numerically
    for mu in (0.5, 1.0, 2.0):
        for alpha in (0.0, 0.05, 0.25):
            lip = 1 / (1 - alpha)
            res = optimize.minimize_scalar(
                lambda x: -(PHI(mu + x) - lip * PHI(x)), bounds=(-10, 10), method="bounded",
                options={"xatol": 1e-12},
            )
            d, case = gaussian_trimmed_distance(mu, 1.0, alpha)
            assert d == pytest.approx(-res.fun, abs=1e-10)
            assert case.t_a == pytest.approx(PHI(res.x), abs=1e-6)


def test_alpha_zero_is_classical_ks():
    for mu in (0.3, 1.0, 3.0):
        d, _ = gaussian_trimmed_distance(mu, 1.0, 0.0)
        assert d == pytest.approx(PHI(mu / 2) - PHI(-mu / 2), abs=1e-15)


def test_symmetry_in_mu():
    for mu in (0.2, 1.0, 2.5):
        for alpha in (0.05, 0.3):
            d1, c1 = gaussian_trimmed_distance(mu, 1.0, alpha)
            d2, c2 = gaussian_trimmed_distance(-mu, 1.0, alpha)
            assert d1 == d2
            assert c2.t_a == pytest.approx(1 - c1.t_a, abs=1e-15)


def test_monotonicity():
    alphas = np.linspace(0, 0.9, 19)
    for mu in (0.5, 2.0):
        ds = [gaussian_trimmed_distance(mu, 1.0, a)[0] for a in alphas]
        assert all(a >= b for a, b in zip(ds, ds[1:]))
    for sigma in (0.4, 2.0):
        ds = [gaussian_trimmed_distance(0.0, sigma, a)[0] for a in alphas]
        assert all(a >= b - 1e-15 for a, b in zip(ds, ds[1:]))
    mus = np.linspace(0.1, 4, 30)
    ds = [gaussian_trimmed_distance(m, 1.0, 0.1)[0] for m in mus]
    assert all(a <= b for a, b in zip(ds, ds[1:]))


def test_delta_is_nonnegative_and_consistent():
    for sigma, alpha in [(0.5, 0.1), (0.9, 0.3), (1.5, 0.1), (3.0, 0.5)]:
        d, case = gaussian_trimmed_distance(0.0, sigma, alpha)
        assert case.delta >= 0
        assert case.delta**2 == pytest.approx(8 * abs(sigma**2 - 1) * abs(math.log(sigma * (1 - alpha))))
        assert case.delta == scale_delta(sigma, alpha)
        assert 0 < case.t_a < 0.5 < case.t_b < 1


def test_boundary_continuity():
    for alpha in (0.05, 0.1, 0.25):
        edge = 1 / (1 - alpha)
        assert gaussian_trimmed_distance(0.0, edge + 1e-6, alpha)[0] <= 1e-3
        assert gaussian_trimmed_distance(0.0, 1 - 1e-6, alpha)[0] <= 1e-3


def test_critical_point_is_where_density_ratio_hits_lip():
    for mu, alpha in [(1.0, 0.1), (2.0, 0.3), (-1.5, 0.2)]:
        t0 = location_critical_point(mu, alpha)
        x = stats.norm.ppf(t0)
        ratio = stats.norm.pdf(mu + x) / stats.norm.pdf(x)
        assert ratio == pytest.approx(1 / (1 - alpha), rel=1e-9)


def test_scale_value_from_critical_points():
    # recompute the distance from the optimal-trimming structure: the
    # extremes sit at t_a and t_b, where the density ratio crosses L
    for sigma, alpha in [(0.5, 0.1), (0.8, 0.25), (1.5, 0.05), (2.5, 0.1)]:
        lip = 1 / (1 - alpha)
        d, case = gaussian_trimmed_distance(0.0, sigma, alpha)
        for t in (case.t_a, case.t_b):
            x = stats.norm.ppf(t)
            ratio = sigma * stats.norm.pdf(sigma * x) / stats.norm.pdf(x)
            assert ratio == pytest.approx(lip, rel=1e-9)
        # G(t) = Phi(sigma Phi^{-1}(t)) - L t ; for sigma<1 the distance is G(t_a)
        def G(t):
            return PHI(sigma * stats.norm.ppf(t)) - lip * t

        if sigma < 1:
            assert d == pytest.approx(G(case.t_a), abs=1e-12)
        else:
            assert d == pytest.approx(0.5 * (G(case.t_b) - G(case.t_a)), abs=1e-12)


@pytest.mark.parametrize(
    "mu,sigma,alpha",
    [(1.0, 1.0, 0.1), (-0.5, 1.0, 0.25), (0.0, 0.5, 0.05), (0.0, 2.5, 0.25), (0.0, 1.05, 0.1)],
)
def test_pipeline_agreement(mu, sigma, alpha):
    d, _ = gaussian_trimmed_distance(mu, sigma, alpha)
    res = trimmed_distance(normal(0, 1), normal(mu, sigma), TrimParams(alpha), 100_000)
    assert res.distance == pytest.approx(d, abs=1e-4)
