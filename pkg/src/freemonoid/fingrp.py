"""Finite groups backend: tensor = direct product, unit = trivial group.

Objects are factor lists of Cayley-table groups; an element is a mixed-radix
index over factor orders (factor 0 most significant), and products of large
tensor powers are never materialized as single tables — arithmetic goes
through the factor tables (`coreops.mixed_mult`).

Quotients respect group structure: a coequalizer identifies f(a) with g(a)
by dividing out the normal closure of the difference set {f(a)·g(a)⁻¹}.
Closure runs in two phases: conjugation closure of the difference set under
per-slot generators, then union-find coset labeling, skipping generators
already merged into the identity class (so at most log₂|N| full passes).

Every point is the trivial one (groups have one global point), so the free
monoid chain on a group stabilizes at its abelianization by stage 2.
"""

from __future__ import annotations

import itertools
import re

import numpy as np

from . import coreops, engine, kernel
from .kernel import (Backend, Capabilities, CapabilityError, Morphism, Object,
                     ValidationError)


class TableGroup:
    """Group given by a Cayley table with the identity at index 0."""

    __slots__ = ("table", "inv", "order", "_key", "_gens")

    def __init__(self, table):
        t = np.ascontiguousarray(table, dtype=np.int64)
        n = t.shape[0] if t.ndim == 2 else 0
        if t.shape != (n, n) or n == 0:
            raise ValidationError("Cayley table must be square and nonempty")
        if t.min() < 0 or t.max() >= n:
            raise ValidationError("Cayley table entry out of range")
        idx = np.arange(n, dtype=np.int64)
        if not (np.array_equal(t[0], idx) and np.array_equal(t[:, 0], idx)):
            raise ValidationError("element 0 must be a two-sided identity")
        if not (np.all(np.sort(t, axis=1) == idx)
                and np.all(np.sort(t, axis=0) == idx[:, None])):
            raise ValidationError("Cayley table rows/columns must be permutations")
        inv = np.argmin(t, axis=1).astype(np.int64)  # position of 0 per row
        if np.any(t[idx, inv] != 0) or np.any(t[inv, idx] != 0):
            raise ValidationError("table admits no two-sided inverses")
        if n <= 64 and not np.array_equal(t[t], t[:, t.ravel()].reshape(n, n, n)):
            raise ValidationError("Cayley table is not associative")
        self.table = t
        self.table.flags.writeable = False
        self.inv = inv
        self.order = n
        self._key = t.tobytes()
        self._gens = None

    @property
    def key(self):
        return self._key

    @property
    def gens(self) -> list[int]:
        """A small generating set, grown greedily over the element order."""
        if self._gens is None:
            gens: list[int] = []
            closure = {0}
            for x in range(1, self.order):
                if x in closure:
                    continue
                gens.append(x)
                frontier = list(closure) + [x]
                closure.add(x)
                while frontier:
                    a = frontier.pop()
                    for b in list(closure):
                        for c in (int(self.table[a, b]), int(self.table[b, a])):
                            if c not in closure:
                                closure.add(c)
                                frontier.append(c)
            self._gens = gens
        return self._gens


def element_orders(g: TableGroup) -> list[int]:
    """Multiset (sorted) of element orders; an abelian-group iso invariant."""
    out = []
    for i in range(g.order):
        k, acc = 1, i
        while acc != 0:
            acc = int(g.table[acc, i])
            k += 1
        out.append(k)
    return sorted(out)


class GrpObject(Object):
    __slots__ = ("backend", "factors", "size", "_key", "_meta")

    def __init__(self, backend: "FinGrpBackend", factors: tuple):
        self.backend = backend
        self.factors = factors
        size = 1
        for g in factors:
            size *= g.order
        self.size = size
        self._key = ("fingrp", tuple(g.key for g in factors))
        radices = np.asarray([g.order for g in factors], dtype=np.int64)
        strides = np.ones(len(factors), dtype=np.int64)
        for f in range(len(factors) - 2, -1, -1):
            strides[f] = strides[f + 1] * radices[f + 1]
        flat = (np.concatenate([g.table.ravel() for g in factors])
                if factors else np.zeros(0, dtype=np.int64))
        offsets = np.zeros(len(factors), dtype=np.int64)
        acc = 0
        for f, g in enumerate(factors):
            offsets[f] = acc
            acc += g.order ** 2
        inv_flat = (np.concatenate([g.inv for g in factors])
                    if factors else np.zeros(0, dtype=np.int64))
        inv_offsets = np.zeros(len(factors), dtype=np.int64)
        acc = 0
        for f, g in enumerate(factors):
            inv_offsets[f] = acc
            acc += g.order
        self._meta = (flat, offsets, radices, strides, inv_flat, inv_offsets)

    @property
    def key(self):
        return self._key

    def label(self, i: int) -> str:
        if not self.factors:
            return "()"
        digits = []
        for f in reversed(range(len(self.factors))):
            i, d = divmod(i, self.factors[f].order)
            digits.append(str(d))
        digits.reverse()
        return digits[0] if len(digits) == 1 else "(" + ",".join(digits) + ")"

    def mult(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        flat, offsets, radices, strides, _, _ = self._meta
        a = np.ascontiguousarray(a, dtype=np.int64)
        b = np.ascontiguousarray(b, dtype=np.int64)
        return coreops.mixed_mult(flat, offsets, radices, strides, a, b)

    def inv(self, a: np.ndarray) -> np.ndarray:
        _, _, radices, strides, inv_flat, inv_offsets = self._meta
        a = np.ascontiguousarray(a, dtype=np.int64)
        return coreops.mixed_inv(inv_flat, inv_offsets, radices, strides, a)

    def gen_elements(self) -> list[int]:
        """Per-factor generators lifted into mixed-radix element indices."""
        _, _, _, strides, _, _ = self._meta
        return [int(g * strides[f])
                for f, grp in enumerate(self.factors) for g in grp.gens]


class FinGrpBackend(Backend):
    name = "fingrp"
    caps = Capabilities(
        has_coproducts=False,
        enumerates_homs=True,
        tensor_preserves_plain_coequalizers=False,
    )

    def unit(self) -> GrpObject:
        return GrpObject(self, ())

    def from_group(self, g: TableGroup) -> GrpObject:
        return GrpObject(self, (g,))

    def tensor_obj(self, x: GrpObject, y: GrpObject) -> GrpObject:
        return GrpObject(self, x.factors + y.factors)

    def tensor_mor(self, f: Morphism, g: Morphism) -> Morphism:
        dom = self.tensor_obj(f.dom, g.dom)
        cod = self.tensor_obj(f.cod, g.cod)
        table = (f.table[:, None] * g.cod.size + g.table[None, :]).ravel()
        return Morphism(dom, cod, table)

    def split_indices(self, x: GrpObject, y: GrpObject, xy: GrpObject):
        idx = np.arange(xy.size, dtype=np.int64)
        return idx // y.size, idx % y.size

    def validate_mor(self, f: Morphism) -> None:
        if f.table.size and f.table[0] != 0:
            raise ValidationError("map does not preserve the identity")
        dom: GrpObject = f.dom  # type: ignore[assignment]
        cod: GrpObject = f.cod  # type: ignore[assignment]
        all_idx = np.arange(dom.size, dtype=np.int64)
        for s in dom.gen_elements():
            s_vec = np.full(dom.size, s, dtype=np.int64)
            lhs = f.table[dom.mult(s_vec, all_idx)]
            rhs = cod.mult(np.full(dom.size, f.table[s], dtype=np.int64),
                           f.table[all_idx])
            if not np.array_equal(lhs, rhs):
                raise ValidationError(
                    f"table is not a homomorphism (fails at generator {s})")

    def congruence_labels(self, x: GrpObject, table_pairs):
        diffs: set[int] = set()
        for ta, tb in table_pairs:
            diffs.update(x.mult(ta, x.inv(tb)).tolist())
        diffs.discard(0)
        size = x.size
        if not diffs:
            return np.arange(size, dtype=np.int64), size
        conj = x.gen_elements()
        conj_inv = [int(x.inv(np.asarray([c]))[0]) for c in conj]
        seen = np.zeros(size, dtype=bool)
        frontier = sorted(diffs)
        for v in frontier:
            seen[v] = True
        while frontier:
            arr = np.asarray(frontier, dtype=np.int64)
            nxt: list[int] = []
            for c, ci in zip(conj, conj_inv):
                cv = np.full(len(arr), c, dtype=np.int64)
                civ = np.full(len(arr), ci, dtype=np.int64)
                out = x.mult(x.mult(cv, arr), civ)
                for v in out.tolist():
                    if not seen[v]:
                        seen[v] = True
                        nxt.append(v)
            frontier = nxt
        normal_gens = np.nonzero(seen)[0]
        parent = np.arange(size, dtype=np.int64)
        all_idx = np.arange(size, dtype=np.int64)
        for s in normal_gens.tolist():
            if coreops.uf_find(parent, s) == coreops.uf_find(parent, 0):
                continue  # already inside the merged subgroup
            coreops.uf_unite_pairs(
                parent, all_idx, x.mult(all_idx, np.full(size, s, dtype=np.int64)))
        labels, reps = coreops.uf_canonical(parent)
        return labels, len(reps)

    def quotient(self, x: GrpObject, labels: np.ndarray, count: int) -> GrpObject:
        _, first = np.unique(labels, return_index=True)
        reps = first.astype(np.int64)
        grid_a = np.repeat(reps, count)
        grid_b = np.tile(reps, count)
        table = labels[x.mult(grid_a, grid_b)].reshape(count, count)
        return GrpObject(self, (TableGroup(table),))

    def hom_tables(self, x: GrpObject, y: GrpObject, budget: int) -> np.ndarray:
        if x.size == 1:
            return np.zeros((1, 1), dtype=np.int64)
        gens = x.gen_elements()
        count = y.size ** len(gens)
        if count > budget:
            raise CapabilityError(
                f"hom enumeration {y.size}^{len(gens)} exceeds budget {budget}")
        # express every element as (previous element) * (generator), BFS order
        order: list[int] = []
        expr: dict[int, tuple[int, int]] = {}
        frontier = [0]
        seen = {0}
        while frontier:
            nxt = []
            for a in frontier:
                for gi, s in enumerate(gens):
                    b = int(x.mult(np.asarray([a]), np.asarray([s]))[0])
                    if b not in seen:
                        seen.add(b)
                        expr[b] = (a, gi)
                        order.append(b)
                        nxt.append(b)
            frontier = nxt
        if len(seen) != x.size:
            raise ValidationError("generators do not generate the object")
        imgs = np.zeros((count, len(gens)), dtype=np.int64)
        idx = np.arange(count, dtype=np.int64)[:, None]
        strides = y.size ** np.arange(len(gens) - 1, -1, -1, dtype=np.int64)
        imgs[:] = (idx // strides) % y.size
        h = np.zeros((count, x.size), dtype=np.int64)
        for b in order:
            a, gi = expr[b]
            h[:, b] = y.mult(h[:, a], imgs[:, gi])
        keep = np.ones(count, dtype=bool)
        all_idx = np.arange(x.size, dtype=np.int64)
        for s in gens:
            sx = x.mult(np.full(x.size, s, dtype=np.int64), all_idx)
            lhs = h[:, sx]
            rhs = y.mult(np.repeat(h[:, s], x.size), h.ravel()).reshape(count, x.size)
            keep &= np.all(lhs == rhs, axis=1)
        return h[keep]


# --- group constructors and catalogue ---

def cyclic(n: int) -> TableGroup:
    idx = np.arange(n)
    return TableGroup((idx[:, None] + idx[None, :]) % n)


def dihedral(n: int) -> TableGroup:
    """Order 2n: index = flip*n + rotation; (f1,k1)(f2,k2) = (f1^f2, ±k1+k2)."""
    size = 2 * n
    t = np.zeros((size, size), dtype=np.int64)
    for f1 in (0, 1):
        for k1 in range(n):
            for f2 in (0, 1):
                for k2 in range(n):
                    k = (k2 + (k1 if f2 == 0 else -k1)) % n
                    t[f1 * n + k1, f2 * n + k2] = ((f1 ^ f2) * n + k)
    return TableGroup(t)


def _perm_table(perms) -> TableGroup:
    idx = {p: i for i, p in enumerate(perms)}
    size = len(perms)
    t = np.zeros((size, size), dtype=np.int64)
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            t[i, j] = idx[tuple(p[q[k]] for k in range(len(q)))]
    return TableGroup(t)


def symmetric(n: int) -> TableGroup:
    return _perm_table(sorted(itertools.permutations(range(n))))


def alternating(n: int) -> TableGroup:
    def even(p):
        inv = sum(1 for i in range(len(p)) for j in range(i + 1, len(p))
                  if p[i] > p[j])
        return inv % 2 == 0
    return _perm_table(sorted(p for p in itertools.permutations(range(n)) if even(p)))


def quaternion() -> TableGroup:
    """Q8 = {±1, ±i, ±j, ±k}, index = sign*4 + axis."""
    basis = {(0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3)}
    def umul(a, b):
        if a == 0: return 0, b
        if b == 0: return 0, a
        if a == b: return 1, 0
        table = {(1, 2): (0, 3), (2, 3): (0, 1), (3, 1): (0, 2),
                 (2, 1): (1, 3), (3, 2): (1, 1), (1, 3): (1, 2)}
        return table[(a, b)]
    t = np.zeros((8, 8), dtype=np.int64)
    for sa in (0, 1):
        for a in range(4):
            for sb in (0, 1):
                for b in range(4):
                    s, c = umul(a, b)
                    t[sa * 4 + a, sb * 4 + b] = ((sa ^ sb ^ s) * 4 + c)
    return TableGroup(t)


def direct_product(a: TableGroup, b: TableGroup) -> TableGroup:
    na, nb = a.order, b.order
    ia = np.arange(na * nb) // nb
    ib = np.arange(na * nb) % nb
    return TableGroup(a.table[np.ix_(ia, ia)] * nb + b.table[np.ix_(ib, ib)])


_NAMED = {"trivial": lambda: cyclic(1), "v4": lambda: direct_product(cyclic(2), cyclic(2)),
          "q8": quaternion}


def group_by_name(name: str) -> TableGroup:
    """Catalogue lookup: Zn, Dn (order 2n), Sn, An, V4, Q8, trivial, and
    x-separated direct products like Z4xZ2."""
    spec = name.strip().lower()
    if "x" in spec and spec not in _NAMED:
        parts = spec.split("x")
        out = group_by_name(parts[0])
        for p in parts[1:]:
            out = direct_product(out, group_by_name(p))
        return out
    if spec in _NAMED:
        return _NAMED[spec]()
    m = re.fullmatch(r"([zdsa])(\d+)", spec)
    if not m:
        raise ValidationError(f"unknown group name: {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if n < 1 or n > 12:
        raise ValidationError(f"group parameter out of range: {name!r}")
    if kind == "z":
        return cyclic(n)
    if kind == "d":
        return dihedral(n)
    if kind == "s":
        if n > 4:
            raise ValidationError("symmetric groups only up to S4")
        return symmetric(n)
    if n not in (3, 4):
        raise ValidationError("alternating groups only A3, A4")
    return alternating(n)


def pointed_group(backend: FinGrpBackend, g: TableGroup) -> engine.PointedObject:
    """Groups have a single global point: the trivial homomorphism."""
    obj = backend.from_group(g)
    point = Morphism(backend.unit(), obj, np.zeros(1, dtype=np.int64))
    return engine.PointedObject(obj, point)


def abelianize(group, stages: int = 4, max_order: int = 12, **kw) -> engine.ChainResult:
    """Free-monoid chain on a group; its stable object is the abelianization.

    `group` is a TableGroup or a catalogue name; orders above `max_order`
    are refused (tensor powers grow as order**stages).
    """
    g = group_by_name(group) if isinstance(group, str) else group
    if g.order > max_order:
        raise CapabilityError(
            f"group order {g.order} exceeds bound {max_order}")
    backend = FinGrpBackend()
    return engine.run_chain(pointed_group(backend, g), stages, **kw)
