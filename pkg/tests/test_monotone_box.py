import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import (
    dp_monotone_box,
    lp_monotone_box,
    random_function,
    random_nondecreasing,
    random_nonincreasing_box,
)
from trimdist.core import GridFunction, Interp, sup_norm_distance
from trimdist.envelopes import BoxBounds
from trimdist.errors import InvalidInput
from trimdist.lipschitz_box import best_lipschitz_box
from trimdist.monotone_box import best_monotone_box, rep1_expressions


def random_box(rng, g):
    lo, hi = g.values.min(), g.values.max()
    kind = rng.integers(4)
    if kind == 0:
        return BoxBounds()
    a, b = sorted(rng.uniform(lo - 0.2, hi + 0.2, 2))
    if kind == 1:
        return BoxBounds(a, np.inf)
    if kind == 2:
        return BoxBounds(-np.inf, b)
    return BoxBounds(a, b)


def test_feasible_input_is_returned():
    g = GridFunction([0.0, 0.5, 1.0], [0.1, 0.0, -0.2])
    approx, d = best_monotone_box(g, BoxBounds(-0.3, 0.2))
    assert d == 0.0
    np.testing.assert_array_equal(approx.values, g.values)
    res = rep1_expressions(g, BoxBounds(-0.3, 0.2))
    assert res.expr_envelope == res.expr_pairs == res.distance == 0.0


def test_identity_unconstrained():
    approx, d = best_monotone_box(GridFunction.identity(), BoxBounds())
    np.testing.assert_array_equal(approx.values, [0.5, 0.5])
    assert d == 0.5
    res = rep1_expressions(GridFunction.identity(), BoxBounds())
    assert res.sets.t1 == [] and res.sets.t2 == []
    assert res.expr_pairs == 0.5
    assert res.sets.t3 == [(0.0, 1.0)]


def test_rep1_needs_continuity():
    g = GridFunction([0.0, 0.5, 1.0], [0.0, 1.0, 0.0], Interp.STEP_LEFT)
    with pytest.raises(InvalidInput):
        rep1_expressions(g, BoxBounds())


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31), m=st.integers(1, 40), kind=st.sampled_from(list(Interp)))
def test_distance_matches_lp(seed, m, kind):
    rng = np.random.default_rng(seed)
    g = random_function(rng, m)
    if kind is not Interp.LINEAR:
        g = random_nondecreasing(rng, m, kind, unit=False).plus_linear(-rng.uniform(0, 4))
    box = random_box(rng, g)
    approx, d = best_monotone_box(g, box)
    assert d == pytest.approx(lp_monotone_box(g, box.a, box.b), abs=1e-9)
    # the approximant itself is feasible
    assert approx.is_nonincreasing()
    assert np.all(approx.left_limits >= box.a) and np.all(approx.left_limits <= box.b)


def test_distance_matches_quantized_dp(rng):
    for _ in range(20):
        g = random_function(rng, 30, smooth=True)
        box = BoxBounds(-0.3, 0.2)
        _, d = best_monotone_box(g, box)
        ref, step = dp_monotone_box(g, box.a, box.b)
        # the optimum lies within half a quantization step of the level grid
        assert ref - step / 2 - 1e-12 <= d <= ref + 1e-12


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**31), m=st.integers(1, 60), smooth=st.booleans())
def test_rep1_forms_agree(seed, m, smooth):
    rng = np.random.default_rng(seed)
    g = random_function(rng, m, smooth)
    box = random_box(rng, g)
    res = rep1_expressions(g, box)
    assert res.expr_envelope == pytest.approx(res.distance, abs=1e-10)
    assert res.expr_pairs == pytest.approx(res.distance, abs=1e-10)


def test_optimizer_set_members_attain_distance(rng):
    for _ in range(50):
        g = random_function(rng, 40, smooth=bool(rng.integers(2)))
        box = random_box(rng, g)
        res = rep1_expressions(g, box)
        s = res.sets
        d = res.distance
        for x in s.t1:
            assert g(x) - box.b >= d - s.tol - 1e-12
        for x in s.t2:
            assert box.a - g(x) >= d - s.tol - 1e-12
        for y, x in s.t3:
            assert y <= x
            assert 0.5 * (g(x) - g(y)) >= d - s.tol - 1e-12
            assert box.a - 1e-12 <= 0.5 * (g(x) + g(y)) <= box.b + 1e-12
        assert s.t1 == sorted(s.t1) and s.t3 == sorted(s.t3)


def test_optimizers_are_local_extrema(rng):
    for _ in range(50):
        g = random_function(rng, 40)
        box = random_box(rng, g)
        res = rep1_expressions(g, box)
        tol = res.sets.tol
        nodes, vals = g.nodes, g.values

        def neighbours(x):
            k = np.searchsorted(nodes, x)
            idx = [i for i in (k - 1, k, k + 1) if 0 <= i < len(nodes)]
            return vals[idx]

        for x in res.sets.t1:
            assert g(x) >= neighbours(x).max() - 2 * tol - 1e-12
        for x in res.sets.t2:
            assert g(x) <= neighbours(x).min() + 2 * tol + 1e-12
        for y, x in res.sets.t3:
            assert g(x) >= neighbours(x).max() - 4 * tol - 1e-12
            assert g(y) <= neighbours(y).min() + 4 * tol + 1e-12


def test_random_competitors_never_win(rng):
    for _ in range(20):
        g = random_function(rng, 30)
        box = random_box(rng, g)
        approx, d = best_monotone_box(g, box)
        nodes = np.union1d(g.nodes, approx.nodes)
        for _ in range(200):
            h = random_nonincreasing_box(rng, nodes, box.a, box.b)
            lam = rng.uniform() ** 4
            mix = GridFunction(nodes, lam * h.values + (1 - lam) * approx.on_nodes(nodes).values)
            assert sup_norm_distance(mix, g) >= d - 1e-12


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31), m=st.integers(1, 40), kind=st.sampled_from(list(Interp)))
def test_reduction_reproduces_lipschitz_box(seed, m, kind):
    rng = np.random.default_rng(seed)
    f = random_nondecreasing(rng, m, kind)
    lip = rng.uniform(1, 4)
    approx, d = best_monotone_box(f.plus_linear(-lip), BoxBounds(1 - lip, 0))
    res = best_lipschitz_box(f, lip)
    assert d == pytest.approx(res.distance, abs=1e-12)
    back = approx.plus_linear(lip)
    assert sup_norm_distance(back, res.approximant) <= 1e-12
