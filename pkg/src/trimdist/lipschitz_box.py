"""Best uniform approximation of a nondecreasing ``f: [0,1] -> [0,1]`` by
``L``-Lipschitz functions pinned at ``h(0) = 0`` and ``h(1) = 1``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from trimdist import _kernels
from trimdist.core import GridFunction, Interp, sup_norm_distance
from trimdist.envelopes import BoxBounds, gamma_envelopes, pasch_hausdorff
from trimdist.errors import InvalidInput
from trimdist.monotone_box import OptimizerSets, rep1_expressions

__all__ = ["BoxLipResult", "OptimizerSets", "best_lipschitz_box", "minvalue", "optimizer_sets"]


@dataclass(frozen=True)
class BoxLipResult:
    approximant: GridFunction
    distance: float
    gamma_mid: GridFunction
    formula_distance: float


def _check(f: GridFunction, lip: float) -> float:
    lip = float(lip)
    if not (lip >= 1.0 and math.isfinite(lip)):
        raise InvalidInput(f"Lipschitz bound must be finite and >= 1 for pinned endpoints, got {lip!r}")
    if not f.is_nondecreasing():
        raise InvalidInput("f must be nondecreasing")
    lo = min(f.left_limits.min(), f.right_limits.min())
    hi = max(f.left_limits.max(), f.right_limits.max())
    if lo < 0.0 or hi > 1.0:
        raise InvalidInput("f must take values in [0, 1]")
    return lip


def max_increase_excess(f: GridFunction, lip: float) -> float:
    """``sup_{y <= x} f(x) - f(y) - L (x - y)`` over the candidate points."""
    ts, vs = f.interleaved()
    w = vs - lip * ts
    run_min, _ = _kernels.prefix_min(w, w)
    return float(np.max(w - run_min))


def minvalue(f: GridFunction, lip: float) -> float:
    """Closed form of the optimal error from the Lipschitz envelopes:
    ``max(f_{L,2}(0), 1 - f_{L,1}(1), excess / 2)``."""
    env = pasch_hausdorff(f, lip)
    return max(
        float(env.upper.values[0]),
        1.0 - float(env.lower.values[-1]),
        0.5 * max_increase_excess(f, lip),
    )


def best_lipschitz_box(f: GridFunction, lip: float) -> BoxLipResult:
    """Clamp the Lipschitz midpoint between the lines ``1 - L(1 - x)`` and ``L x``.

    ``distance`` is the sup distance of that approximant to ``f``;
    ``formula_distance`` evaluates the envelope closed form independently.
    """
    lip = _check(f, lip)
    env = pasch_hausdorff(f, lip)
    t = f.nodes
    vals = np.minimum(np.maximum(env.mid.values, 1.0 - lip * (1.0 - t)), lip * t)
    approx = GridFunction(t, vals)
    g1, g2 = gamma_envelopes(f, lip)
    gamma_mid = GridFunction(t, 0.5 * (g1.values + g2.values))
    return BoxLipResult(approx, sup_norm_distance(f, approx), gamma_mid, minvalue(f, lip))


def optimizer_sets(f: GridFunction, lip: float, tol: float | None = None) -> OptimizerSets:
    """Optimizer sets of the pinned Lipschitz problem for continuous ``f``.

    Works through ``G(x) = f(x) - L x`` and the box ``[1 - L, 0]``.  The
    ``discrepancy`` field is the largest gap among the envelope form, the
    pair form, the closed form and the direct distance.
    """
    lip = _check(f, lip)
    if f.interp is not Interp.LINEAR:
        raise InvalidInput("optimizer sets need a continuous (LINEAR) function")
    res = rep1_expressions(f.plus_linear(-lip), BoxBounds(1.0 - lip, 0.0), tol)
    direct = best_lipschitz_box(f, lip)
    values = [res.expr_envelope, res.expr_pairs, direct.formula_distance, direct.distance]
    discrepancy = max(values) - min(values)
    s = res.sets
    return OptimizerSets(s.t1, s.t2, s.t3, s.tol, direct.distance, discrepancy)
