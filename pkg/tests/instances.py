"""Instance generators that lean on the code under test to filter cases."""

import numpy as np

from oracles import random_function
from trimdist.diff import directional_derivative_monotone
from trimdist.envelopes import BoxBounds
from trimdist.errors import BoundaryDegenerate, DegenerateCase


def random_derivative_instance(rng):
    """Random continuous g, box and direction j on independent node sets."""
    g = random_function(rng, int(rng.integers(5, 40)), smooth=bool(rng.integers(2)))
    lo, hi = g.values.min(), g.values.max()
    a, b = sorted(rng.uniform(lo - 0.3, hi + 0.3, 2))
    box = [BoxBounds(), BoxBounds(a, b), BoxBounds(a, np.inf), BoxBounds(-np.inf, b)][rng.integers(4)]
    j = random_function(rng, int(rng.integers(2, 30)))
    return g, box, j


def nondegenerate_derivative_instances(rng, count):
    """Instances where the derivative formula applies, with its value."""
    out = []
    while len(out) < count:
        g, box, j = random_derivative_instance(rng)
        try:
            d = directional_derivative_monotone(g, j, box)
        except (BoundaryDegenerate, DegenerateCase):
            continue
        out.append((g, box, j, d))
    return out
