"""Pure-Python twins of the compiled kernels in ``_core.pyx``.

Same signatures, same observable behaviour; selected by ``coreops`` when the
extension is unavailable or ``FREEMONOID_PURE`` is set.  Union-find uses
min-root attachment so the root of every class is its smallest element.
"""

from __future__ import annotations

import numpy as np

ACCELERATED = False


def uf_find(parent: np.ndarray, i: int) -> int:
    """Root of ``i``, with path halving."""
    while parent[i] != i:
        parent[i] = parent[parent[i]]
        i = parent[i]
    return int(i)


def uf_unite_pairs(parent: np.ndarray, a: np.ndarray, b: np.ndarray) -> int:
    """Merge classes of a[t] and b[t] for every t; returns number of merges."""
    merges = 0
    for x, y in zip(a.tolist(), b.tolist()):
        rx = uf_find(parent, x)
        ry = uf_find(parent, y)
        if rx == ry:
            continue
        if rx < ry:
            parent[ry] = rx
        else:
            parent[rx] = ry
        merges += 1
    return merges


def uf_canonical(parent: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Flatten the forest and label classes by ascending minimum element.

    Returns ``(labels, reps)``: labels[i] is the class index of element i,
    reps[c] is the smallest element of class c.
    """
    n = len(parent)
    for i in range(n):
        parent[i] = uf_find(parent, i)
    labels = np.empty(n, dtype=np.int64)
    reps = []
    for i in range(n):
        if parent[i] == i:
            labels[i] = len(reps)
            reps.append(i)
        else:
            labels[i] = labels[parent[i]]
    return labels, np.asarray(reps, dtype=np.int64)


def mixed_mult(
    flat: np.ndarray,
    offsets: np.ndarray,
    radices: np.ndarray,
    strides: np.ndarray,
    a: np.ndarray,
    b: np.ndarray,
) -> np.ndarray:
    """Componentwise product of mixed-radix element indices.

    ``flat`` concatenates the factor multiplication tables row-major;
    factor f occupies flat[offsets[f] : offsets[f] + radices[f]**2].
    Digit 0 (factor 0) is the most significant.
    """
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
    for f in range(len(radices)):
        r = int(radices[f])
        s = int(strides[f])
        da = (a // s) % r
        db = (b // s) % r
        out += flat[int(offsets[f]) + da * r + db] * s
    return out


def mixed_inv(
    inv_flat: np.ndarray,
    inv_offsets: np.ndarray,
    radices: np.ndarray,
    strides: np.ndarray,
    a: np.ndarray,
) -> np.ndarray:
    """Componentwise inverse of mixed-radix element indices."""
    out = np.zeros(np.shape(a), dtype=np.int64)
    for f in range(len(radices)):
        r = int(radices[f])
        s = int(strides[f])
        da = (a // s) % r
        out += inv_flat[int(inv_offsets[f]) + da] * s
    return out
