# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels.  Same contracts as ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free
from libc.math cimport INFINITY

cnp.import_array()


def prefix_min(const double[::1] left, const double[::1] right):
    cdef Py_ssize_t n = left.shape[0], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] at_left = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] at_right = np.empty(n)
    cdef double[::1] al = at_left, ar = at_right
    cdef double acc = INFINITY
    for i in range(n):
        if left[i] < acc:
            acc = left[i]
        al[i] = acc
        if right[i] < acc:
            acc = right[i]
        ar[i] = acc
    return at_left, at_right


def suffix_max(const double[::1] left, const double[::1] right):
    cdef Py_ssize_t n = left.shape[0], i
    cdef cnp.ndarray[cnp.float64_t, ndim=1] from_left = np.empty(n)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] from_right = np.empty(n)
    cdef double[::1] fl = from_left, fr = from_right
    cdef double acc = -INFINITY
    for i in range(n - 1, -1, -1):
        if right[i] > acc:
            acc = right[i]
        fr[i] = acc
        if left[i] > acc:
            acc = left[i]
        fl[i] = acc
    return from_left, from_right


cdef inline Py_ssize_t _lower_bound(const double[::1] arr, Py_ssize_t n, double x) nogil:
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if arr[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


def constrained_pair_max(values, double lo, double hi):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] vals_arr = np.ascontiguousarray(values, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] order_arr = np.unique(vals_arr)
    cdef cnp.ndarray[cnp.intp_t, ndim=1] ranks_arr = np.searchsorted(order_arr, vals_arr)
    cdef const double[::1] vals = vals_arr
    cdef const double[::1] order = order_arr
    cdef cnp.intp_t[::1] ranks = ranks_arr
    cdef Py_ssize_t m = vals.shape[0], size = order.shape[0]
    cdef Py_ssize_t j, r, start, pos, nxt, step, log_size, below, k, cand, inserted = 0
    cdef double v, w, gap, best = -INFINITY
    cdef Py_ssize_t bi = -1, bj = -1
    cdef Py_ssize_t *tree = <Py_ssize_t *> malloc((size + 1) * sizeof(Py_ssize_t))
    cdef Py_ssize_t *first = <Py_ssize_t *> malloc((size + 1) * sizeof(Py_ssize_t))
    if tree == NULL or first == NULL:
        free(tree)
        free(first)
        raise MemoryError()
    try:
        for j in range(size + 1):
            tree[j] = 0
            first[j] = -1
        log_size = 1
        while log_size * 2 <= size:
            log_size *= 2
        for j in range(m):
            r = ranks[j]
            if first[r] < 0:
                first[r] = j
                pos = r + 1
                while pos <= size:
                    tree[pos] += 1
                    pos += pos & -pos
                inserted += 1
            v = vals[j]
            start = _lower_bound(order, size, lo - v)
            below = 0
            pos = start
            while pos > 0:
                below += tree[pos]
                pos -= pos & -pos
            if below == inserted:
                continue
            k = below + 1
            pos = 0
            step = log_size
            while step:
                nxt = pos + step
                if nxt <= size and tree[nxt] < k:
                    pos = nxt
                    k -= tree[nxt]
                step >>= 1
            cand = pos
            w = order[cand]
            if w + v > hi:
                continue
            gap = v - w
            if gap > best:
                best = gap
                bi = first[cand]
                bj = j
    finally:
        free(tree)
        free(first)
    return best, bi, bj


def reachable(lower, upper, double step, double slack):
    cdef const double[::1] lo = np.ascontiguousarray(lower, dtype=np.float64)
    cdef const double[::1] hi = np.ascontiguousarray(upper, dtype=np.float64)
    cdef Py_ssize_t n = lo.shape[0], k
    cdef double a = hi[0], b = hi[0]
    if lo[0] > a + slack:
        return False
    for k in range(1, n):
        if lo[k] > a:
            a = lo[k]
        b = b + step
        if hi[k] < b:
            b = hi[k]
        if a > b + slack:
            return False
    return True
