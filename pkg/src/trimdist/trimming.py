"""Trimmed Kolmogorov distance between a reference law and the trimmings of another.

The distance reduces to approximating ``Gamma = F0 o F^{-1}`` in sup norm by
functions ``h`` with ``h(0) = 0``, ``h(1) = 1``, nondecreasing and
``1/(1-alpha)``-Lipschitz.  Subtracting ``t/(1-alpha)`` turns this into a best
nonincreasing approximation with values in ``[-alpha/(1-alpha), 0]``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Optional

import numpy as np

from trimdist import _kernels
from trimdist.core import (
    DEFAULT_GRID,
    DistributionSpec,
    GridFunction,
    Interp,
    Kind,
    TrimParams,
    compose_gamma,
    sup_norm_distance,
)
from trimdist.envelopes import BoxBounds, clamp_box, ubhaya_envelopes
from trimdist.errors import InvalidInput, NotAttained

log = logging.getLogger(__name__)

# absolute slack when comparing a computed distance with a threshold
DISTANCE_SLACK = 1e-12
ALPHA_CEILING = 1.0 - 1e-9


@dataclass(frozen=True)
class TrimResult:
    distance: float
    h_tilde: GridFunction
    h_opt: GridFunction
    g_fun: GridFunction
    params: TrimParams
    gamma: GridFunction
    grid_size: Optional[int] = None


def trim_gamma(gamma: GridFunction, params: TrimParams, grid_size: Optional[int] = None) -> TrimResult:
    """Solve the trimming problem for a given nondecreasing ``gamma``."""
    lip = params.lip
    g_fun = gamma.plus_linear(-lip)
    env = ubhaya_envelopes(g_fun)
    h_tilde = clamp_box(env.mid, BoxBounds(-params.alpha * lip, 0.0))
    h_opt = h_tilde.plus_linear(lip)
    return TrimResult(
        distance=sup_norm_distance(h_tilde, g_fun),
        h_tilde=h_tilde,
        h_opt=h_opt,
        g_fun=g_fun,
        params=params,
        gamma=gamma,
        grid_size=grid_size,
    )


def trimmed_distance(
    f0: DistributionSpec,
    f: DistributionSpec,
    params: TrimParams,
    grid_size: int = DEFAULT_GRID,
) -> TrimResult:
    """Minimal Kolmogorov distance from ``f0`` to the ``alpha``-trimmings of ``f``.

    Exact when ``f`` is empirical; for analytic ``f`` the error is bounded by
    the oscillation of ``Gamma`` over one grid cell.  ``grid_size`` in the
    result is the number of nodes actually used.
    """
    if not isinstance(params, TrimParams):
        params = TrimParams(params)
    gamma = compose_gamma(f0, f, grid_size)
    return trim_gamma(gamma, params, grid_size=len(gamma.nodes))


def mixture_cdf(f0: DistributionSpec, q: DistributionSpec, alpha: float) -> DistributionSpec:
    """The contaminated law ``(1 - alpha) F0 + alpha Q``."""
    alpha = float(alpha)
    if not (0.0 <= alpha < 1.0):
        raise InvalidInput(f"mixture weight must lie in [0, 1), got {alpha!r}")
    lo = min(f0.support[0], q.support[0])
    hi = max(f0.support[1], q.support[1])

    def cdf(x):
        x = np.asarray(x, dtype=float)
        return (1.0 - alpha) * f0.cdf(x) + alpha * q.cdf(x)

    def cdf_left(x):
        x = np.asarray(x, dtype=float)
        return (1.0 - alpha) * f0.left_cdf(x) + alpha * q.left_cdf(x)

    def quantile(t):
        t = np.asarray(t, dtype=float)
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        with np.errstate(invalid="ignore"):
            a = np.minimum(f0.quantile(t), q.quantile(t))
            b = np.maximum(f0.quantile(t), q.quantile(t))
        out = np.empty_like(t)
        edge0 = t <= 0.0
        edge1 = t >= 1.0
        out[edge0] = lo
        out[edge1] = hi
        inner = ~(edge0 | edge1)
        a, b, ti = a[inner], b[inner], t[inner]
        # the mixture quantile is bracketed by the component quantiles
        for _ in range(200):
            mid = 0.5 * (a + b)
            done = (mid == a) | (mid == b)
            if np.all(done):
                break
            below = cdf(mid) < ti
            a = np.where(below, mid, a)
            b = np.where(below, b, mid)
        out[inner] = b
        return out[0] if scalar else out

    continuous = f0.continuous and q.continuous

    def covers(d):
        return d.strictly_increasing and d.support[0] <= lo and d.support[1] >= hi

    strictly = continuous and (alpha == 0.0 and f0.strictly_increasing or covers(f0) or covers(q))
    return DistributionSpec(
        Kind.ANALYTIC,
        cdf,
        quantile,
        continuous=continuous,
        strictly_increasing=bool(strictly),
        support=(lo, hi),
        label=f"mixture({f0.label},{q.label},{alpha})",
        cdf_left=None if continuous else cdf_left,
    )


def _common_grid(nodes: np.ndarray) -> int:
    dens = [Fraction(float(x)).limit_denominator(10**9).denominator for x in nodes]
    return reduce(math.lcm, dens, 1)


def oracle_distance(gamma: GridFunction, params: TrimParams, tol: float = 1e-12) -> float:
    """Brute-force check for an empirical ``gamma``.

    Only node values and one-sided limits are used, which is exact for the
    functions built from samples.  The nodes must lie on a uniform grid ``i/m``.  Minimizes
    ``max_p max(lo_p - h(x_p), h(x_{p+1}) - hi_{p+1})`` over grid values
    ``h_0 = 0 <= h_1 <= ... <= h_m = 1`` with increments at most ``L/m``,
    where ``hi`` is gamma at a node and ``lo`` its right limit (equal for a
    step); grid points that are not nodes are unconstrained.  Bisection on
    the error level with a forward interval reachability pass.
    """
    if not isinstance(params, TrimParams):
        params = TrimParams(params)
    if gamma.interp is Interp.LINEAR:
        raise InvalidInput("the oracle needs an empirical gamma (STEP_LEFT or JUMP_LINEAR)")
    m = _common_grid(gamma.nodes)
    idx = np.rint(gamma.nodes * m).astype(np.int64)
    if m > 10**7 or not np.allclose(idx / m, gamma.nodes, rtol=0, atol=1e-14):
        raise InvalidInput("the oracle needs nodes on a uniform grid i/m")
    hi_req = np.full(m + 1, np.inf)
    lo_req = np.full(m + 1, -np.inf)
    hi_req[idx[1:]] = gamma.left_limits[1:]
    lo_req[idx[:-1]] = gamma.right_limits[:-1]
    step = params.lip / m

    def feasible(eps: float) -> bool:
        lower = lo_req - eps
        upper = hi_req + eps
        lower[m] = 1.0
        upper[0] = 0.0
        upper[m] = min(upper[m], 1.0)
        return bool(_kernels.reachable(lower, upper, step, 1e-13))

    lo, hi = 0.0, 1.0
    if feasible(lo):
        return 0.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class AlphaSearch:
    alpha_hat: float
    iterations: int


def search_contamination_level(
    f0: DistributionSpec,
    f: DistributionSpec,
    threshold: float = 0.0,
    grid_size: int = DEFAULT_GRID,
    tol: float = 1e-6,
) -> AlphaSearch:
    """Bisection for the smallest alpha whose trimmed distance is within ``threshold``."""
    threshold = float(threshold)
    if not threshold >= 0:
        raise InvalidInput("threshold must be >= 0")
    gamma = compose_gamma(f0, f, grid_size)

    def ok(alpha: float) -> bool:
        return trim_gamma(gamma, TrimParams(alpha)).distance <= threshold + DISTANCE_SLACK

    if ok(0.0):
        return AlphaSearch(0.0, 1)
    if not ok(ALPHA_CEILING):
        raise NotAttained(
            f"trimmed distance stays above {threshold} for every alpha below {ALPHA_CEILING}"
        )
    lo, hi, it = 0.0, ALPHA_CEILING, 2
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        it += 1
        if ok(mid):
            hi = mid
        else:
            lo = mid
    log.debug("alpha search converged to [%g, %g] in %d probes", lo, hi, it)
    return AlphaSearch(hi, it)


def min_contamination_level(
    f0: DistributionSpec,
    f: DistributionSpec,
    threshold: float = 0.0,
    grid_size: int = DEFAULT_GRID,
) -> float:
    """Estimated minimal contamination level ``inf{alpha: d(alpha) <= threshold}``.

    Relies on the distance being nonincreasing in ``alpha``.  Raises
    :class:`NotAttained` if the threshold is missed even near ``alpha = 1``.
    """
    return search_contamination_level(f0, f, threshold, grid_size).alpha_hat
