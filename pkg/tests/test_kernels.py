import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from trimdist import _kernels, _pykernels

try:
    from trimdist import _ckernels
except ImportError:  # pragma: no cover - extension not built
    _ckernels = None

BACKENDS = [pytest.param(_pykernels, id="python")]
if _ckernels is not None:
    BACKENDS.append(pytest.param(_ckernels, id="cython"))

floats = st.floats(-1e6, 1e6, allow_nan=False)


def interleave(a, b):
    out = np.empty(2 * a.size)
    out[0::2], out[1::2] = a, b
    return out


@pytest.mark.parametrize("mod", BACKENDS)
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_scans_match_numpy(mod, data):
    n = data.draw(st.integers(1, 40))
    left = data.draw(arrays(float, n, elements=floats))
    right = data.draw(arrays(float, n, elements=floats))
    seq = interleave(left, right)
    pre = np.minimum.accumulate(seq)
    suf = np.maximum.accumulate(seq[::-1])[::-1]
    at_l, at_r = mod.prefix_min(left, right)
    from_l, from_r = mod.suffix_max(left, right)
    np.testing.assert_array_equal(at_l, pre[0::2])
    np.testing.assert_array_equal(at_r, pre[1::2])
    np.testing.assert_array_equal(from_l, suf[0::2])
    np.testing.assert_array_equal(from_r, suf[1::2])


def brute_pair(values, lo, hi):
    best = (-np.inf, -1, -1)
    for i, j in itertools.combinations_with_replacement(range(values.size), 2):
        s = values[i] + values[j]
        if lo <= s <= hi and values[j] - values[i] > best[0]:
            best = (values[j] - values[i], i, j)
    return best


@pytest.mark.parametrize("mod", BACKENDS)
@settings(max_examples=200, deadline=None)
@given(
    values=arrays(float, st.integers(1, 25), elements=st.integers(-6, 6).map(float)),
    lo=st.integers(-10, 10).map(float),
    width=st.integers(0, 10).map(float),
)
def test_constrained_pair_max(mod, values, lo, width):
    hi = lo + width
    best, i, j = mod.constrained_pair_max(values, lo, hi)
    ref = brute_pair(values, lo, hi)
    assert best == ref[0]
    if i >= 0:
        assert i <= j
        assert lo <= values[i] + values[j] <= hi
        assert values[j] - values[i] == best


@pytest.mark.parametrize("mod", BACKENDS)
def test_constrained_pair_max_infinite_bounds(mod, rng):
    v = rng.normal(size=300)
    best, _, _ = mod.constrained_pair_max(v, -np.inf, np.inf)
    ref = np.max(v - np.minimum.accumulate(v))
    assert best == pytest.approx(ref, abs=0)


def brute_reachable(lower, upper, step):
    # interval propagation written out plainly
    lo = hi = upper[0]
    if lo < lower[0]:
        return False
    for k in range(1, lower.size):
        lo, hi = max(lo, lower[k]), min(hi + step, upper[k])
        if lo > hi:
            return False
    return True


@pytest.mark.parametrize("mod", BACKENDS)
def test_reachable_matches_plain_loop(mod, rng):
    for _ in range(300):
        n = rng.integers(2, 30)
        mid = np.cumsum(rng.uniform(0, 0.2, n))
        mid[0] = 0.0
        w = rng.uniform(0, 0.15)
        lower, upper = mid - w, mid + w
        upper[0] = 0.0
        step = rng.uniform(0.05, 0.3)
        assert bool(mod.reachable(lower, upper, step, 0.0)) == brute_reachable(lower, upper, step)


@pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
def test_backends_agree_on_large_inputs(rng):
    left, right = rng.normal(size=10_000), rng.normal(size=10_000)
    for name in ("prefix_min", "suffix_max"):
        for a, b in zip(getattr(_ckernels, name)(left, right), getattr(_pykernels, name)(left, right)):
            np.testing.assert_array_equal(a, b)
    v = rng.normal(size=5000)
    assert _ckernels.constrained_pair_max(v, -0.5, 0.7) == _pykernels.constrained_pair_max(v, -0.5, 0.7)


def test_selected_backend_exposes_derived_scans():
    left = np.array([3.0, 1.0, 2.0])
    right = np.array([0.0, 4.0, 2.0])
    _, pre_max = _kernels.prefix_max(left, right)
    suf_min, _ = _kernels.suffix_min(left, right)
    np.testing.assert_array_equal(pre_max, [3.0, 4.0, 4.0])
    np.testing.assert_array_equal(suf_min, [0.0, 1.0, 2.0])
    assert _kernels.BACKEND in ("cython", "python")
