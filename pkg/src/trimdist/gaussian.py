"""Closed-form trimmed distances from N(0, 1) to trimmings of N(mu, sigma^2).

Only two families have closed forms: pure location shifts (sigma = 1) and
pure scale changes (mu = 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from scipy.special import ndtr as _ndtr

from trimdist.errors import InvalidInput, UnsupportedCase


def norm_cdf(x: float) -> float:
    return float(_ndtr(x))


class Regime(str, Enum):
    LOCATION_SHIFT = "LocationShift"
    SCALE_BELOW_ONE = "ScaleBelowOne"
    SCALE_IN_BAND = "ScaleInBand"
    SCALE_ABOVE_BAND = "ScaleAboveBand"


@dataclass(frozen=True)
class GaussianCase:
    mu: float
    sigma: float
    alpha: float
    regime: Regime
    t_a: Optional[float] = None
    t_b: Optional[float] = None
    delta: Optional[float] = None


def _validate(mu, sigma, alpha):
    mu, sigma, alpha = float(mu), float(sigma), float(alpha)
    if not all(math.isfinite(v) for v in (mu, sigma, alpha)):
        raise InvalidInput("mu, sigma and alpha must be finite")
    if sigma <= 0:
        raise InvalidInput(f"sigma must be positive, got {sigma}")
    if not 0.0 <= alpha < 1.0:
        raise InvalidInput(f"alpha must lie in [0, 1), got {alpha}")
    return mu, sigma, alpha


def classify(mu: float, sigma: float, alpha: float) -> Regime:
    mu, sigma, alpha = _validate(mu, sigma, alpha)
    if mu != 0.0:
        if sigma != 1.0:
            raise UnsupportedCase("closed forms exist only for sigma = 1 or mu = 0")
        return Regime.LOCATION_SHIFT
    if sigma < 1.0:
        return Regime.SCALE_BELOW_ONE
    if sigma <= 1.0 / (1.0 - alpha):
        return Regime.SCALE_IN_BAND
    return Regime.SCALE_ABOVE_BAND


def scale_delta(sigma: float, alpha: float) -> float:
    """``Delta >= 0`` with ``Delta^2 = 8 |sigma^2 - 1| |log(sigma (1 - alpha))|``."""
    return math.sqrt(8.0 * abs(sigma * sigma - 1.0) * abs(math.log(sigma * (1.0 - alpha))))


def location_critical_point(mu: float, alpha: float) -> float:
    """Point where ``Gamma(t) - t/(1-alpha)`` switches monotonicity for ``sigma = 1``.

    For ``mu > 0`` it is the maximum of ``G``; for ``mu < 0`` the minimum.
    """
    m = abs(mu)
    t0 = norm_cdf(-m / 2.0 + math.log1p(-alpha) / m)
    return t0 if mu > 0 else 1.0 - t0


def gaussian_trimmed_distance(mu: float, sigma: float, alpha: float) -> tuple[float, GaussianCase]:
    """Trimmed Kolmogorov distance between N(0,1) and the alpha-trimmings of N(mu, sigma^2)."""
    mu, sigma, alpha = _validate(mu, sigma, alpha)
    regime = classify(mu, sigma, alpha)
    lip = 1.0 / (1.0 - alpha)
    log1a = math.log1p(-alpha)

    if regime is Regime.LOCATION_SHIFT:
        m = abs(mu)
        d = norm_cdf(m / 2.0 + log1a / m) - lip * norm_cdf(-m / 2.0 + log1a / m)
        t0 = location_critical_point(mu, alpha)
        return max(d, 0.0), GaussianCase(mu, sigma, alpha, regime, t0, t0, None)

    if regime is Regime.SCALE_IN_BAND:
        return 0.0, GaussianCase(mu, sigma, alpha, regime)

    delta = scale_delta(sigma, alpha)
    gap = abs(1.0 - sigma * sigma)
    xb = delta / (2.0 * gap)
    t_a, t_b = norm_cdf(-xb), norm_cdf(xb)
    if regime is Regime.SCALE_BELOW_ONE:
        d = norm_cdf(-sigma * xb) - lip * norm_cdf(-xb)
    else:
        d = norm_cdf(sigma * xb) - (norm_cdf(xb) - alpha / 2.0) * lip
    return max(d, 0.0), GaussianCase(mu, sigma, alpha, regime, t_a, t_b, delta)
