"""Lipschitz (Pasch-Hausdorff) and monotone (Ubhaya) envelopes on [0, 1].

All envelopes are computed exactly at the candidate points of the input, i.e.
at every node with both one-sided limits.  The inner objectives
``y -> f(y) +/- L|x - y|`` and ``y -> G(y)`` are piecewise linear between
candidates, so prefix/suffix extrema over the candidate sequence are exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from trimdist import _kernels
from trimdist.core import GridFunction, Interp
from trimdist.errors import InvalidInput


@dataclass(frozen=True)
class LipEnvelopes:
    lower: GridFunction
    upper: GridFunction
    mid: GridFunction
    lip: float


@dataclass(frozen=True)
class MonotoneEnvelopes:
    upper_env: GridFunction
    lower_env: GridFunction
    mid: GridFunction


@dataclass(frozen=True)
class BoxBounds:
    """Closed interval ``[a, b]``; either end may be infinite."""

    a: float = -math.inf
    b: float = math.inf

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if math.isnan(a) or math.isnan(b) or a > b:
            raise InvalidInput(f"invalid box [{self.a}, {self.b}]")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


def _check_lip(lip: float) -> float:
    lip = float(lip)
    if not lip >= 0 or not math.isfinite(lip):
        raise InvalidInput(f"Lipschitz constant must be finite and >= 0, got {lip!r}")
    return lip


def gamma_envelopes(f: GridFunction, lip: float) -> tuple[GridFunction, GridFunction]:
    """Running extrema of ``f(y) - L y``.

    ``gamma1(x) = inf_{y <= x} (f(y) - L y)`` and
    ``gamma2(x) = sup_{y >= x} (f(y) - L y)``, both nonincreasing.  For a
    nondecreasing ``f`` adding ``L x`` back gives the Lipschitz envelopes.
    """
    lip = _check_lip(lip)
    if not f.is_nondecreasing():
        raise InvalidInput("gamma envelopes require a nondecreasing function")
    shift = lip * f.nodes
    left = f.left_limits - shift
    right = f.right_limits - shift
    _, g1 = _kernels.prefix_min(left, right)
    g2, _ = _kernels.suffix_max(left, right)
    # for nondecreasing f both are continuous; the chosen sides are the exact values
    return GridFunction(f.nodes, g1), GridFunction(f.nodes, g2)


def _inf_sup_convolution(f: GridFunction, lip: float) -> tuple[np.ndarray, np.ndarray]:
    shift = lip * f.nodes
    lo_l, lo_r = f.left_limits - shift, f.right_limits - shift
    hi_l, hi_r = f.left_limits + shift, f.right_limits + shift
    _, pre_min = _kernels.prefix_min(lo_l, lo_r)
    suf_min, _ = _kernels.suffix_min(hi_l, hi_r)
    _, pre_max = _kernels.prefix_max(hi_l, hi_r)
    suf_max, _ = _kernels.suffix_max(lo_l, lo_r)
    lower = np.minimum(pre_min + shift, suf_min - shift)
    upper = np.maximum(pre_max - shift, suf_max + shift)
    return lower, upper


def pasch_hausdorff(f: GridFunction, lip: float) -> LipEnvelopes:
    """Largest ``L``-Lipschitz minorant, smallest majorant, and their average.

    Nondecreasing inputs go through :func:`gamma_envelopes`; anything else
    through the two-sided inf/sup-convolution.
    """
    lip = _check_lip(lip)
    if f.is_nondecreasing():
        g1, g2 = gamma_envelopes(f, lip)
        shift = lip * f.nodes
        lower = g1.values + shift
        upper = g2.values + shift
    else:
        lower, upper = _inf_sup_convolution(f, lip)
    mid = 0.5 * (lower + upper)
    return LipEnvelopes(
        GridFunction(f.nodes, lower),
        GridFunction(f.nodes, upper),
        GridFunction(f.nodes, mid),
        lip,
    )


def ubhaya_envelopes(g: GridFunction) -> MonotoneEnvelopes:
    """``U(x) = sup_{y >= x} g(y)``, ``L(x) = inf_{y <= x} g(y)`` and their mean."""
    left, right = g.left_limits, g.right_limits
    u_l, u_r = _kernels.suffix_max(left, right)
    l_l, l_r = _kernels.prefix_min(left, right)
    step = g.interp is Interp.STEP_LEFT
    upper = GridFunction.from_limits(g.nodes, u_l, u_r, step_like=step)
    lower = GridFunction.from_limits(g.nodes, l_l, l_r, step_like=step)
    mid = GridFunction.from_limits(g.nodes, 0.5 * (u_l + l_l), 0.5 * (u_r + l_r), step_like=step)
    return MonotoneEnvelopes(upper, lower, mid)


def clamp_box(g: GridFunction, box: BoxBounds) -> GridFunction:
    """Pointwise ``max(min(g, b), a)``."""
    return g.map_limits(lambda v: np.maximum(np.minimum(v, box.b), box.a))
