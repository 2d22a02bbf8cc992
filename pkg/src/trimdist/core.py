"""Functions on [0, 1], distributions on the line, and sup-norm primitives.

A :class:`GridFunction` is piecewise linear between its nodes and may jump at
a node.  It is left-continuous: the value at ``t_i`` equals the left limit
(the value at ``0`` is its own).  Three flavours are distinguished:

``LINEAR``
    continuous, linear interpolation of ``values``.
``STEP_LEFT``
    constant ``values[i]`` on ``(t_{i-1}, t_i]``, ``values[0]`` at ``0``.
``JUMP_LINEAR``
    general case: ``values`` are left limits, ``right`` the right limits,
    linear from ``right[i]`` to ``values[i+1]``.  Arises as ``Gamma - L*t`` for
    a step ``Gamma``.

Everything downstream works on the two limit arrays, which makes sup norms and
prefix/suffix extrema exact for all three flavours.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np
from scipy import special

from trimdist.errors import InvalidInput, UnsupportedDistribution

DEFAULT_GRID = 100_000


class Interp(str, enum.Enum):
    LINEAR = "linear"
    STEP_LEFT = "step_left"
    JUMP_LINEAR = "jump_linear"


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=float)
    out.flags.writeable = False
    return out


@dataclass(frozen=True, eq=False)
class GridFunction:
    """A real function on [0, 1] given on a finite node set."""

    nodes: np.ndarray
    values: np.ndarray
    interp: Interp = Interp.LINEAR
    right: Optional[np.ndarray] = None

    def __post_init__(self):
        nodes = _frozen(self.nodes)
        values = _frozen(self.values)
        interp = Interp(self.interp)
        if nodes.ndim != 1 or values.shape != nodes.shape:
            raise InvalidInput("nodes and values must be 1-D arrays of equal length")
        if len(nodes) < 2:
            raise InvalidInput("a grid function needs at least two nodes")
        if nodes[0] != 0.0 or nodes[-1] != 1.0:
            raise InvalidInput("nodes must start at 0 and end at 1")
        if not np.all(np.diff(nodes) > 0):
            raise InvalidInput("nodes must be strictly increasing")
        if not np.all(np.isfinite(values)):
            raise InvalidInput("values must be finite")
        right = None
        if interp is Interp.JUMP_LINEAR:
            if self.right is None:
                raise InvalidInput("JUMP_LINEAR needs right limits")
            right = np.array(self.right, dtype=float)
            if right.shape != nodes.shape or not np.all(np.isfinite(right)):
                raise InvalidInput("right limits must be finite and match nodes")
            right[-1] = values[-1]
            right.flags.writeable = False
        elif self.right is not None:
            raise InvalidInput("right limits are only meaningful for JUMP_LINEAR")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "interp", interp)
        object.__setattr__(self, "right", right)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_limits(cls, nodes, left, right, step_like: bool = False) -> "GridFunction":
        """Build the simplest representation for the given one-sided limits.

        With ``step_like`` the caller asserts the function is a left-continuous
        step on ``nodes`` (``right[i] == left[i+1]``), and ``left`` is used as
        the step values.
        """
        left = np.asarray(left, dtype=float)
        right = np.asarray(right, dtype=float)
        if step_like:
            return cls(nodes, left, Interp.STEP_LEFT)
        if np.array_equal(left[:-1], right[:-1]):
            return cls(nodes, left, Interp.LINEAR)
        return cls(nodes, left, Interp.JUMP_LINEAR, right)

    @classmethod
    def identity(cls) -> "GridFunction":
        return cls(np.array([0.0, 1.0]), np.array([0.0, 1.0]))

    # -- limits -----------------------------------------------------------------

    @property
    def left_limits(self) -> np.ndarray:
        return self.values

    @cached_property
    def right_limits(self) -> np.ndarray:
        if self.interp is Interp.LINEAR:
            return self.values
        if self.interp is Interp.STEP_LEFT:
            out = np.append(self.values[1:], self.values[-1])
            out.flags.writeable = False
            return out
        return self.right

    def interleaved(self) -> tuple[np.ndarray, np.ndarray]:
        """Candidate points ``(t, value)`` with both one-sided limits per node."""
        ts = np.repeat(self.nodes, 2)
        vs = np.empty(2 * len(self.nodes))
        vs[0::2] = self.left_limits
        vs[1::2] = self.right_limits
        return ts, vs

    @property
    def has_jumps(self) -> bool:
        return not np.array_equal(self.left_limits[:-1], self.right_limits[:-1])

    # -- evaluation -------------------------------------------------------------

    def limits_at(self, x) -> tuple[np.ndarray, np.ndarray]:
        """Left and right limits at arbitrary points of [0, 1]."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if np.any((x < 0) | (x > 1)):
            raise InvalidInput("evaluation points must lie in [0, 1]")
        nodes = self.nodes
        idx = np.searchsorted(nodes, x, side="left")
        idx_c = np.minimum(idx, len(nodes) - 1)
        at_node = nodes[idx_c] == x
        k = np.clip(idx - 1, 0, len(nodes) - 2)
        r0 = self.right_limits[k]
        l1 = self.left_limits[k + 1]
        frac = (x - nodes[k]) / (nodes[k + 1] - nodes[k])
        inner = r0 + (l1 - r0) * frac
        left = np.where(at_node, self.left_limits[idx_c], inner)
        right = np.where(at_node, self.right_limits[idx_c], inner)
        return left, right

    def __call__(self, x):
        scalar = np.ndim(x) == 0
        left, _ = self.limits_at(x)
        return float(left[0]) if scalar else left

    def on_nodes(self, nodes) -> "GridFunction":
        """Same function on a node superset (exact for every flavour)."""
        nodes = np.asarray(nodes, dtype=float)
        if self.interp is Interp.STEP_LEFT:
            left, _ = self.limits_at(nodes)
            return GridFunction(nodes, left, Interp.STEP_LEFT)
        left, right = self.limits_at(nodes)
        return GridFunction.from_limits(nodes, left, right)

    # -- algebra ----------------------------------------------------------------

    def plus_linear(self, slope: float, intercept: float = 0.0) -> "GridFunction":
        """``self + intercept + slope * t``."""
        line = intercept + slope * self.nodes
        if self.interp is Interp.LINEAR or (slope == 0.0 and self.interp is Interp.STEP_LEFT):
            return GridFunction(self.nodes, self.values + line, self.interp)
        return GridFunction(
            self.nodes,
            self.left_limits + line,
            Interp.JUMP_LINEAR,
            self.right_limits + line,
        )

    def map_limits(self, fn: Callable[[np.ndarray], np.ndarray]) -> "GridFunction":
        """Apply a monotone pointwise map to both limit arrays."""
        if self.interp is Interp.STEP_LEFT:
            return GridFunction(self.nodes, fn(self.values), Interp.STEP_LEFT)
        return GridFunction.from_limits(
            self.nodes, fn(self.left_limits), fn(self.right_limits)
        )

    # -- shape checks -----------------------------------------------------------

    def is_nondecreasing(self) -> bool:
        return bool(np.all(np.diff(self.interleaved()[1]) >= 0))

    def is_nonincreasing(self) -> bool:
        return bool(np.all(np.diff(self.interleaved()[1]) <= 0))

    def lipschitz_seminorm(self) -> float:
        if self.has_jumps:
            return math.inf
        slopes = np.diff(self.values) / np.diff(self.nodes)
        return float(np.max(np.abs(slopes)))

    def __repr__(self) -> str:
        return f"GridFunction(m={len(self.nodes) - 1}, interp={self.interp.value})"


def sup_norm_distance(f: GridFunction, g: GridFunction) -> float:
    """Exact ``sup |f - g|`` over [0, 1].

    ``f - g`` is linear between consecutive union nodes, so its extreme values
    are among the one-sided limits at those nodes.
    """
    nodes = np.union1d(f.nodes, g.nodes)
    fl, fr = f.limits_at(nodes)
    gl, gr = g.limits_at(nodes)
    return float(max(np.max(np.abs(fl - gl)), np.max(np.abs(fr - gr))))


# -- distributions ----------------------------------------------------------------


class Kind(str, enum.Enum):
    ANALYTIC = "analytic"
    EMPIRICAL = "empirical"


@dataclass(frozen=True, eq=False)
class DistributionSpec:
    """A distribution on the real line.

    ``strictly_increasing`` refers to the cdf on the interior of ``support``;
    Gamma composition requires it for analytic inputs.  ``cdf_left`` gives
    ``P(X < x)`` and is only needed when the law has atoms.
    """

    kind: Kind
    cdf: Callable[[np.ndarray], np.ndarray]
    quantile: Callable[[np.ndarray], np.ndarray]
    sample: Optional[np.ndarray] = None
    continuous: bool = True
    strictly_increasing: bool = False
    support: tuple[float, float] = (-math.inf, math.inf)
    label: str = field(default="")
    cdf_left: Optional[Callable[[np.ndarray], np.ndarray]] = None

    def left_cdf(self, x):
        return (self.cdf_left or self.cdf)(x)

    @property
    def n(self) -> Optional[int]:
        return None if self.sample is None else len(self.sample)


def empirical_cdf(sample) -> DistributionSpec:
    """Empirical distribution of ``sample``.

    The cdf is the right-continuous step ``#{x_i <= x} / n``; the quantile is
    the left-continuous inverse, ``quantile(t) = x_(ceil(n t))``.
    """
    xs = np.asarray(sample, dtype=float).ravel()
    if xs.size == 0:
        raise InvalidInput("empty sample")
    if not np.all(np.isfinite(xs)):
        raise InvalidInput("sample contains NaN or infinite values")
    xs = np.sort(xs)
    xs.flags.writeable = False
    n = xs.size
    levels = np.arange(1, n + 1) / n

    def cdf(x):
        return np.searchsorted(xs, np.asarray(x, dtype=float), side="right") / n

    def cdf_left(x):
        return np.searchsorted(xs, np.asarray(x, dtype=float), side="left") / n

    def quantile(t):
        t = np.asarray(t, dtype=float)
        # smallest k with k/n >= t, computed on the same floats the cdf returns
        k = np.searchsorted(levels, t, side="left")
        out = xs[np.minimum(k, n - 1)]
        return np.where(t <= 0, -np.inf, out)

    return DistributionSpec(
        Kind.EMPIRICAL,
        cdf,
        quantile,
        sample=xs,
        continuous=False,
        strictly_increasing=False,
        support=(float(xs[0]), float(xs[-1])),
        label=f"empirical(n={n})",
        cdf_left=cdf_left,
    )


def normal(mu: float = 0.0, sigma: float = 1.0) -> DistributionSpec:
    if not sigma > 0 or not math.isfinite(mu) or not math.isfinite(sigma):
        raise InvalidInput("normal needs finite mu and sigma > 0")

    def cdf(x):
        return special.ndtr((np.asarray(x, dtype=float) - mu) / sigma)

    def quantile(t):
        return mu + sigma * special.ndtri(np.asarray(t, dtype=float))

    return DistributionSpec(
        Kind.ANALYTIC, cdf, quantile, strictly_increasing=True, label=f"normal({mu},{sigma})"
    )


def uniform(a: float = 0.0, b: float = 1.0) -> DistributionSpec:
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise InvalidInput("uniform needs finite a < b")

    def cdf(x):
        return np.clip((np.asarray(x, dtype=float) - a) / (b - a), 0.0, 1.0)

    def quantile(t):
        return a + (b - a) * np.clip(np.asarray(t, dtype=float), 0.0, 1.0)

    return DistributionSpec(
        Kind.ANALYTIC,
        cdf,
        quantile,
        strictly_increasing=True,
        support=(a, b),
        label=f"uniform({a},{b})",
    )


@dataclass(frozen=True)
class TrimParams:
    """Trimming level ``alpha`` and the induced Lipschitz bound ``1/(1-alpha)``."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not (0.0 <= a < 1.0):
            raise InvalidInput(f"alpha must lie in [0, 1), got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    @property
    def lip(self) -> float:
        return 1.0 / (1.0 - self.alpha)


def compose_gamma(f0: DistributionSpec, f: DistributionSpec, grid_size: int = DEFAULT_GRID) -> GridFunction:
    """``Gamma = F0 o F^{-1}`` on [0, 1].

    Empirical ``f`` with ``n`` points gives an exact function.  For continuous
    ``F0`` it is the left-continuous step with ``Gamma(i/n) = F0(x_(i))``.
    When ``F0`` has atoms, each distinct sample value ``u`` with cumulative
    count ``k`` becomes one node ``k/n`` with value ``F0(u)`` and the cell
    before it runs linearly up from ``F0(u-)``; tied interior nodes carry no
    constraint and are dropped.  Either way the sup distance to a continuous
    ``h`` equals the Kolmogorov distance of the induced trimming.  Analytic
    ``f`` is sampled on a uniform grid and interpolated linearly, with the
    endpoint values taken as one-sided limits.
    """
    if int(grid_size) != grid_size or grid_size < 2:
        raise InvalidInput("grid_size must be an integer >= 2")
    if f.kind is Kind.EMPIRICAL:
        n = len(f.sample)
        if f0.continuous:
            nodes = np.arange(n + 1) / n
            vals = np.empty(n + 1)
            vals[0] = 0.0
            vals[1:] = f0.cdf(f.sample)
            vals = np.maximum.accumulate(np.clip(vals, 0.0, 1.0))
            return GridFunction(nodes, vals, Interp.STEP_LEFT)
        uniq, counts = np.unique(f.sample, return_counts=True)
        nodes = np.concatenate(([0.0], np.cumsum(counts) / n))
        left = np.concatenate(([0.0], np.clip(f0.cdf(uniq), 0.0, 1.0)))
        right = np.empty_like(left)
        right[:-1] = np.clip(f0.left_cdf(uniq), 0.0, 1.0)
        right[-1] = left[-1]
        left = np.maximum.accumulate(left)
        right = np.maximum(right, left)
        return GridFunction(nodes, left, Interp.JUMP_LINEAR, right)
    if not (f.continuous and f.strictly_increasing):
        raise UnsupportedDistribution(
            f"{f.label or 'distribution'} must be continuous and strictly increasing on its support"
        )
    nodes = np.linspace(0.0, 1.0, int(grid_size))
    with np.errstate(invalid="ignore"):
        xs = f.quantile(nodes)
    xs[0] = f.support[0]
    xs[-1] = f.support[1]
    vals = np.asarray(f0.cdf(xs), dtype=float)
    if not math.isfinite(f.support[0]):
        vals[0] = 0.0
    if not math.isfinite(f.support[1]):
        vals[-1] = 1.0
    vals = np.maximum.accumulate(np.clip(vals, 0.0, 1.0))
    return GridFunction(nodes, vals, Interp.LINEAR)
