"""Trimmed Kolmogorov distances and the uniform approximation problems behind them."""

from trimdist._kernels import BACKEND
from trimdist.core import (
    DEFAULT_GRID,
    DistributionSpec,
    GridFunction,
    Interp,
    Kind,
    TrimParams,
    compose_gamma,
    empirical_cdf,
    normal,
    sup_norm_distance,
    uniform,
)
from trimdist.diff import directional_derivative_lipschitz, directional_derivative_monotone
from trimdist.envelopes import BoxBounds, clamp_box, gamma_envelopes, pasch_hausdorff, ubhaya_envelopes
from trimdist.errors import (
    BoundaryDegenerate,
    DegenerateCase,
    InvalidInput,
    NotAttained,
    TrimDistError,
    UnsupportedCase,
    UnsupportedDistribution,
)
from trimdist.gaussian import GaussianCase, Regime, gaussian_trimmed_distance
from trimdist.lipschitz_box import BoxLipResult, best_lipschitz_box, minvalue, optimizer_sets
from trimdist.monotone_box import OptimizerSets, best_monotone_box, rep1_expressions
from trimdist.trimming import (
    TrimResult,
    min_contamination_level,
    mixture_cdf,
    oracle_distance,
    trimmed_distance,
)

__version__ = "0.1.0"
