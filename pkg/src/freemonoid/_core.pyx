# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: union-find quotient labeling and mixed-radix Cayley
arithmetic.  Must stay observably identical to ``_core_py``."""

import numpy as np

ACCELERATED = True


cdef inline long _find(long[::1] parent, long i) noexcept nogil:
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return i


def uf_find(long[::1] parent, long i):
    """Root of ``i``, with path halving."""
    return _find(parent, i)


def uf_unite_pairs(long[::1] parent, const long[::1] a, const long[::1] b):
    """Merge classes of a[t] and b[t] for every t; returns number of merges."""
    cdef Py_ssize_t t, n = a.shape[0]
    cdef long rx, ry, merges = 0
    for t in range(n):
        rx = _find(parent, a[t])
        ry = _find(parent, b[t])
        if rx == ry:
            continue
        # min-root attachment: roots are always class minima
        if rx < ry:
            parent[ry] = rx
        else:
            parent[rx] = ry
        merges += 1
    return merges


def uf_canonical(long[::1] parent):
    """Flatten the forest and label classes by ascending minimum element."""
    cdef Py_ssize_t i, n = parent.shape[0]
    cdef long k = 0
    for i in range(n):
        parent[i] = _find(parent, i)
    labels_arr = np.empty(n, dtype=np.int64)
    cdef long[::1] labels = labels_arr
    for i in range(n):
        if parent[i] == i:
            labels[i] = k
            k += 1
        else:
            labels[i] = labels[parent[i]]  # root < i, already labeled
    reps_arr = np.empty(k, dtype=np.int64)
    cdef long[::1] reps = reps_arr
    k = 0
    for i in range(n):
        if parent[i] == i:
            reps[k] = i
            k += 1
    return labels_arr, reps_arr


def mixed_mult(const long[::1] flat, const long[::1] offsets, const long[::1] radices,
               const long[::1] strides, const long[::1] a, const long[::1] b):
    """Componentwise product of mixed-radix element indices (1-D, same length)."""
    cdef Py_ssize_t t, f, n = a.shape[0], nf = radices.shape[0]
    cdef long r, s, da, db, acc
    out_arr = np.zeros(n, dtype=np.int64)
    cdef long[::1] out = out_arr
    for t in range(n):
        acc = 0
        for f in range(nf):
            r = radices[f]
            s = strides[f]
            da = (a[t] // s) % r
            db = (b[t] // s) % r
            acc += flat[offsets[f] + da * r + db] * s
        out[t] = acc
    return out_arr


def mixed_inv(const long[::1] inv_flat, const long[::1] inv_offsets, const long[::1] radices,
              const long[::1] strides, const long[::1] a):
    """Componentwise inverse of mixed-radix element indices."""
    cdef Py_ssize_t t, f, n = a.shape[0], nf = radices.shape[0]
    cdef long r, s, acc
    out_arr = np.zeros(n, dtype=np.int64)
    cdef long[::1] out = out_arr
    for t in range(n):
        acc = 0
        for f in range(nf):
            r = radices[f]
            s = strides[f]
            acc += inv_flat[inv_offsets[f] + (a[t] // s) % r] * s
        out[t] = acc
    return out_arr
