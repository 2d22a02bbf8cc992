"""Best uniform approximation by nonincreasing functions with values in [A, B].

The optimum is the Ubhaya midpoint ``(U + L) / 2`` clamped to the box.  For
continuous inputs the optimal value also has two closed expressions, one over
the envelope gap and one over pairs of points, together with the sets of
points/pairs where it is attained.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from trimdist import _kernels
from trimdist.core import GridFunction, Interp, sup_norm_distance
from trimdist.envelopes import BoxBounds, clamp_box, ubhaya_envelopes
from trimdist.errors import DegenerateCase, InvalidInput

# hard cap on enumerated near-optimal pairs; beyond this the instance is flat
MAX_PAIRS = 20_000_000


@dataclass(frozen=True)
class OptimizerSets:
    """Points and pairs where the approximation error is attained.

    ``t1`` maximizes the upper-clamp term, ``t2`` the lower-clamp term and
    ``t3`` holds ``(y, x)`` pairs, ``y <= x``, of the oscillation term.
    Members are within ``tol`` of ``distance``.
    """

    t1: list[float]
    t2: list[float]
    t3: list[tuple[float, float]]
    tol: float
    distance: float
    discrepancy: float = 0.0


@dataclass(frozen=True)
class Rep1Result:
    expr_envelope: float
    expr_pairs: float
    sets: OptimizerSets
    distance: float


@dataclass(frozen=True)
class _Refined:
    nodes: np.ndarray
    g: np.ndarray
    upper: np.ndarray
    lower: np.ndarray

    @property
    def mid(self) -> np.ndarray:
        return 0.5 * (self.upper + self.lower)


def best_monotone_box(g: GridFunction, box: BoxBounds) -> tuple[GridFunction, float]:
    """Clamped Ubhaya midpoint and its sup distance to ``g``.

    The returned approximant is exact at the candidate points and linear in
    between; that chord is itself nonincreasing with values in the box and
    attains the same (optimal) distance.
    """
    env = ubhaya_envelopes(g)
    approx = clamp_box(env.mid, box)
    return approx, sup_norm_distance(g, approx)


def _envelopes(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    upper, _ = _kernels.suffix_max(values, values)
    lower, _ = _kernels.prefix_min(values, values)
    return upper, lower


def _insert(nodes, values, new_x):
    new_x = np.setdiff1d(np.unique(new_x), nodes)
    new_x = new_x[(new_x > 0) & (new_x < 1)]
    if new_x.size == 0:
        return nodes, values
    new_v = np.interp(new_x, nodes, values)
    all_x = np.concatenate([nodes, new_x])
    order = np.argsort(all_x, kind="stable")
    return all_x[order], np.concatenate([values, new_v])[order]


def _crossings(nodes, level_fn, level):
    a, b = level_fn[:-1] - level, level_fn[1:] - level
    hit = (a * b) < 0
    frac = a[hit] / (a[hit] - b[hit])
    return nodes[:-1][hit] + frac * (nodes[1:][hit] - nodes[:-1][hit])


def _refine(g: GridFunction, box: BoxBounds) -> _Refined:
    """Insert the kinks of U and L and the points where the midpoint crosses
    A or B, so that every quantity is linear between refined nodes."""
    if g.interp is not Interp.LINEAR:
        raise InvalidInput("the closed-form expressions need a continuous (LINEAR) function")
    t, v = np.asarray(g.nodes), np.asarray(g.values)
    upper, lower = _envelopes(v)
    a, b = v[:-1], v[1:]
    h = np.diff(t)
    dec = a > b
    kinks = []
    for level in (upper[1:], lower[:-1]):
        hit = dec & (b < level) & (level < a)
        kinks.append(t[:-1][hit] + (a[hit] - level[hit]) / (a[hit] - b[hit]) * h[hit])
    t, v = _insert(t, v, np.concatenate(kinks))
    upper, lower = _envelopes(v)
    mid = 0.5 * (upper + lower)
    cross = [_crossings(t, mid, lvl) for lvl in (box.a, box.b) if math.isfinite(lvl)]
    if cross:
        t, v = _insert(t, v, np.concatenate(cross))
        upper, lower = _envelopes(v)
    return _Refined(t, v, upper, lower)


def _max_or_none(arr: np.ndarray):
    return float(np.max(arr)) if arr.size else None


def _terms(r: _Refined, box: BoxBounds):
    mid = r.mid
    in1 = mid >= box.b
    in2 = mid <= box.a
    in3 = (mid >= box.a) & (mid <= box.b)
    t1 = _max_or_none(r.g[in1] - box.b)
    t2 = _max_or_none(box.a - r.g[in2])
    env = _max_or_none(0.5 * (r.upper[in3] - r.lower[in3]))
    pair, _, _ = _kernels.constrained_pair_max(r.g, 2 * box.a, 2 * box.b)
    pair = 0.5 * pair if math.isfinite(pair) else None
    return t1, t2, env, pair


def _combine(*terms) -> float:
    present = [x for x in terms if x is not None]
    if not present:
        raise DegenerateCase("every optimizer set is empty")
    return max(present)


def _collect_indices(r: _Refined, box: BoxBounds, distance: float, tol: float):
    """Indices into the refined grid of near-optimal points and ``(y, x)`` pairs."""
    mid = r.mid
    target = distance - tol
    i1 = np.flatnonzero((mid >= box.b) & (r.g - box.b >= target))
    i2 = np.flatnonzero((mid <= box.a) & (box.a - r.g >= target))
    # a pair (y, x) needs g(x) - L(x) >= 2 target and U(y) - g(y) >= 2 target
    xs = np.flatnonzero(r.g - r.lower >= 2 * target)
    ys = np.flatnonzero(r.upper - r.g >= 2 * target)
    iy_all, ix_all = [], []
    if xs.size and ys.size:
        if xs.size * ys.size > MAX_PAIRS:
            raise DegenerateCase(
                f"{xs.size * ys.size} near-optimal pairs; the instance is too flat to enumerate"
            )
        gx = r.g[xs]
        chunk = max(1, MAX_PAIRS // max(xs.size, 1) // 8)
        for start in range(0, ys.size, chunk):
            yb = ys[start:start + chunk]
            gy = r.g[yb][:, None]
            s = gy + gx[None, :]
            ok = (
                (yb[:, None] <= xs[None, :])
                & (s >= 2 * box.a)
                & (s <= 2 * box.b)
                & (gx[None, :] - gy >= 2 * target)
            )
            iy, ix = np.nonzero(ok)
            iy_all.append(yb[iy])
            ix_all.append(xs[ix])
    if iy_all:
        pair_y, pair_x = np.concatenate(iy_all), np.concatenate(ix_all)
    else:
        pair_y = pair_x = np.zeros(0, dtype=np.intp)
    return i1, i2, pair_y, pair_x


def _collect_sets(r: _Refined, box: BoxBounds, distance: float, tol: float):
    i1, i2, py, px = _collect_indices(r, box, distance, tol)
    pairs = sorted(zip(r.nodes[py].tolist(), r.nodes[px].tolist()))
    return r.nodes[i1].tolist(), r.nodes[i2].tolist(), pairs


def default_tol(distance: float, g_values) -> float:
    scale = max(abs(distance), float(np.ptp(g_values)), np.finfo(float).tiny)
    return 1e-8 * scale


def rep1_expressions(g: GridFunction, box: BoxBounds, tol: float | None = None) -> Rep1Result:
    """Envelope-gap and pair forms of the optimal error, plus optimizer sets.

    ``expr_envelope`` maximizes ``G - B`` over ``{Gbar >= B}``, ``A - G`` over
    ``{Gbar <= A}`` and half the gap ``U - L`` over ``{A <= Gbar <= B}``;
    ``expr_pairs`` replaces the last term by half of ``G(x) - G(y)`` over pairs
    ``y <= x`` whose mean lies in ``[A, B]``.  Empty sets are skipped.
    """
    r = _refine(g, box)
    t1, t2, env, pair = _terms(r, box)
    expr_envelope = _combine(t1, t2, env)
    expr_pairs = _combine(t1, t2, pair)
    _, distance = best_monotone_box(g, box)
    if tol is None:
        tol = default_tol(distance, r.g)
    if not tol > 0:
        raise InvalidInput("tol must be positive")
    s1, s2, s3 = _collect_sets(r, box, distance, tol)
    discrepancy = max(abs(expr_envelope - distance), abs(expr_pairs - distance))
    sets = OptimizerSets(s1, s2, s3, tol, distance, discrepancy)
    return Rep1Result(expr_envelope, expr_pairs, sets, distance)
