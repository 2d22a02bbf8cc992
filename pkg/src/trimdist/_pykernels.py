"""Pure-Python/numpy implementations of the hot kernels.

These mirror ``_ckernels.pyx`` one for one and are used whenever the compiled
extension is unavailable (or ``TRIMDIST_PURE_PYTHON=1`` is set).

All scans work on the *interleaved limit sequence* of a function given on
nodes ``t_0 < ... < t_m``::

    left[0], right[0], left[1], right[1], ..., left[m], right[m]

where ``left[i]`` is the value at ``t_i`` (also its left limit) and
``right[i]`` the right limit.  Between ``right[i]`` and ``left[i+1]`` the
function is linear, so extrema over any interval occur in this sequence.
"""

from bisect import bisect_left

import numpy as np


def _interleave(left, right):
    out = np.empty(2 * len(left))
    out[0::2] = left
    out[1::2] = right
    return out


def prefix_min(left, right):
    """Running minimum over the limit sequence.

    Returns ``(at_left, at_right)``: ``at_left[i]`` is the minimum up to and
    including ``left[i]``, ``at_right[i]`` up to and including ``right[i]``.
    """
    acc = np.minimum.accumulate(_interleave(left, right))
    return acc[0::2].copy(), acc[1::2].copy()


def suffix_max(left, right):
    """Running maximum from the right over the limit sequence.

    ``from_left[i]`` is the maximum of ``left[i], right[i], left[i+1], ...``;
    ``from_right[i]`` omits ``left[i]``.
    """
    seq = _interleave(left, right)
    acc = np.maximum.accumulate(seq[::-1])[::-1]
    return acc[0::2].copy(), acc[1::2].copy()


class _Fenwick:
    __slots__ = ("size", "tree", "log")

    def __init__(self, size):
        self.size = size
        self.tree = [0] * (size + 1)
        self.log = 1 << (size.bit_length() - 1) if size else 0

    def add(self, pos):
        pos += 1
        while pos <= self.size:
            self.tree[pos] += 1
            pos += pos & -pos

    def count_below(self, pos):
        # number of inserted ranks < pos
        total = 0
        while pos > 0:
            total += self.tree[pos]
            pos -= pos & -pos
        return total

    def kth(self, k):
        # 0-based rank of the k-th inserted element (k >= 1)
        pos = 0
        step = self.log
        while step:
            nxt = pos + step
            if nxt <= self.size and self.tree[nxt] < k:
                pos = nxt
                k -= self.tree[nxt]
            step >>= 1
        return pos


def constrained_pair_max(values, lo, hi):
    """Maximize ``values[j] - values[i]`` over ``i <= j`` with
    ``lo <= values[i] + values[j] <= hi``.

    Returns ``(best, i, j)``; ``best`` is ``-inf`` and the indices ``-1`` when
    no pair is admissible.  O(m log m): for each ``j`` the best partner is the
    smallest earlier value that is at least ``lo - values[j]``, found by a
    successor query on a Fenwick tree over value ranks.
    """
    vals = np.asarray(values, dtype=float)
    m = len(vals)
    order = np.unique(vals)
    ranks = np.searchsorted(order, vals)
    first_index = [-1] * len(order)
    sorted_vals = order.tolist()
    tree = _Fenwick(len(order))
    inserted = 0
    best, bi, bj = -np.inf, -1, -1
    vlist = vals.tolist()
    rlist = ranks.tolist()
    for j in range(m):
        r = rlist[j]
        if first_index[r] < 0:
            first_index[r] = j
            tree.add(r)
            inserted += 1
        v = vlist[j]
        start = bisect_left(sorted_vals, lo - v)
        below = tree.count_below(start)
        if below == inserted:
            continue
        cand = tree.kth(below + 1)
        w = sorted_vals[cand]
        if w + v > hi:
            continue
        gap = v - w
        if gap > best:
            best, bi, bj = gap, first_index[cand], j
    return best, bi, bj


def reachable(lower, upper, step, slack):
    """Forward reachability for a path ``h_0, ..., h_n`` with
    ``lower[k] <= h_k <= upper[k]`` and ``0 <= h_k - h_{k-1} <= step``.

    ``h_0`` is pinned to ``upper[0]``.  ``slack`` absorbs rounding in the
    accumulated upper bound.  Returns True when a path exists.
    """
    lo_list = np.asarray(lower, dtype=float).tolist()
    hi_list = np.asarray(upper, dtype=float).tolist()
    a = b = hi_list[0]
    if lo_list[0] > a + slack:
        return False
    for k in range(1, len(lo_list)):
        lk = lo_list[k]
        if lk > a:
            a = lk
        b = b + step
        hk = hi_list[k]
        if hk < b:
            b = hk
        if a > b + slack:
            return False
    return True
