"""Directional derivatives of the best-approximation error.

For a perturbation ``G + J/r`` the error of the box-constrained monotone
approximation moves, to first order, by ``D(J)/r`` with

    D(J) = max( max_{T1} J,  max_{T2} (-J),  1/2 max_{(y,x) in T3} (J(x) - J(y)) )

where ``T1, T2, T3`` are the optimizer sets of the unperturbed problem.  The
formula needs every optimizer to sit strictly inside its regime; we refuse
otherwise instead of guessing a one-sided value.
"""

from __future__ import annotations

import math

import numpy as np

from trimdist.core import GridFunction, Interp
from trimdist.envelopes import BoxBounds
from trimdist.errors import BoundaryDegenerate, DegenerateCase, InvalidInput
from trimdist.lipschitz_box import _check as _check_lip_input
from trimdist.monotone_box import (
    _collect_indices,
    _refine,
    best_monotone_box,
    default_tol,
)


def _require_linear(*funcs: GridFunction) -> None:
    for fn in funcs:
        if fn.interp is not Interp.LINEAR:
            raise InvalidInput("directional derivatives need continuous (LINEAR) functions")


def directional_derivative_monotone(
    g: GridFunction, j: GridFunction, box: BoxBounds, tol: float | None = None
) -> float:
    """Limit of ``r (dist(g + j/r) - dist(g))`` as ``r -> inf``."""
    _require_linear(g, j)
    r = _refine(g, box)
    _, distance = best_monotone_box(g, box)
    if tol is None:
        tol = default_tol(distance, r.g)
    if not tol > 0:
        raise InvalidInput("tol must be positive")
    i1, i2, py, px = _collect_indices(r, box, distance, tol)
    mid = r.mid

    if np.any(np.abs(mid[i1] - box.b) <= tol):
        raise BoundaryDegenerate("an upper-clamp optimizer sits on the upper bound")
    if np.any(np.abs(mid[i2] - box.a) <= tol):
        raise BoundaryDegenerate("a lower-clamp optimizer sits on the lower bound")
    if py.size:
        pair_mid = 0.5 * (r.g[py] + r.g[px])
        if np.any(np.abs(pair_mid - box.a) <= tol) or np.any(np.abs(pair_mid - box.b) <= tol):
            raise BoundaryDegenerate("an oscillation pair has its mean on a bound")

    jv = np.asarray(j(r.nodes))
    terms = []
    if i1.size:
        terms.append(float(np.max(jv[i1])))
    if i2.size:
        terms.append(float(np.max(-jv[i2])))
    if py.size:
        terms.append(0.5 * float(np.max(jv[px] - jv[py])))
    if not terms:
        raise DegenerateCase("every optimizer set is empty")
    return max(terms)


def directional_derivative_lipschitz(
    f: GridFunction, j: GridFunction, lip: float, tol: float | None = None
) -> float:
    """Same limit for the pinned ``L``-Lipschitz approximation of nondecreasing ``f``.

    Subtracting ``L x`` from ``f`` turns the problem into the monotone one on
    the box ``[1 - L, 0]``; the shift cancels in perturbation differences.
    """
    lip = _check_lip_input(f, lip)
    _require_linear(f, j)
    return directional_derivative_monotone(
        f.plus_linear(-lip), j, BoxBounds(1.0 - lip, 0.0), tol
    )


def add_scaled(g: GridFunction, j: GridFunction, c: float) -> GridFunction:
    """``g + c j`` on the union of both node sets (both continuous)."""
    _require_linear(g, j)
    nodes = np.union1d(g.nodes, j.nodes)
    return GridFunction(nodes, g(nodes) + c * j(nodes))


def finite_difference_monotone(g: GridFunction, j: GridFunction, box: BoxBounds, r: float) -> float:
    """``r (dist(g + j/r) - dist(g))``, a validation aid for the limit formula."""
    if not (r > 0 and math.isfinite(r)):
        raise InvalidInput("r must be positive and finite")
    _, d0 = best_monotone_box(g, box)
    _, d1 = best_monotone_box(add_scaled(g, j, 1.0 / r), box)
    return r * (d1 - d0)


def finite_difference_lipschitz(f: GridFunction, j: GridFunction, lip: float, r: float) -> float:
    """Finite-difference counterpart of :func:`directional_derivative_lipschitz`.

    The perturbed ``f + j/r`` need not stay nondecreasing, so the difference
    is taken on the equivalent monotone problem.
    """
    lip = float(lip)
    return finite_difference_monotone(
        f.plus_linear(-lip), j, BoxBounds(1.0 - lip, 0.0), r
    )
