"""Finite sets backend: tensor = cartesian product, unit = one-point set.

Objects keep a flat *factor list* (each factor an ordered tuple of atom
labels); an element is a mixed-radix index over the factor sizes with factor
0 most significant, so `X ⊗ Y` enumerates pairs row-major and tensor powers
of regroupings coincide on the nose.  Quotients collapse to a single factor
whose atoms are the labels of the minimum representatives.
"""

from __future__ import annotations

import numpy as np

from . import engine, kernel
from .kernel import (Backend, Capabilities, CapabilityError, Morphism, Object,
                     ValidationError)

_FORBIDDEN = set("(),")


class FinSetObject(Object):
    __slots__ = ("backend", "factors", "size", "_key")

    def __init__(self, backend: "FinSetBackend", factors: tuple):
        self.backend = backend
        self.factors = factors
        size = 1
        for f in factors:
            size *= len(f)
        self.size = size
        self._key = ("finset", factors)

    @property
    def key(self):
        return self._key

    def label(self, i: int) -> str:
        if not 0 <= i < self.size:
            raise IndexError(i)
        if not self.factors:
            return "()"
        parts = []
        for f in reversed(self.factors):
            i, d = divmod(i, len(f))
            parts.append(f[d])
        parts.reverse()
        if len(parts) == 1:
            return parts[0]
        return "(" + ",".join(parts) + ")"


class FinSetBackend(Backend):
    name = "finset"
    caps = Capabilities(
        has_coproducts=True,
        enumerates_homs=True,
        tensor_preserves_plain_coequalizers=True,
    )

    def unit(self) -> FinSetObject:
        return FinSetObject(self, ())

    def from_labels(self, labels) -> FinSetObject:
        """Atomic object from user-supplied labels (validated)."""
        labels = tuple(labels)
        seen = set()
        for lab in labels:
            if not isinstance(lab, str) or not lab:
                raise ValidationError(f"element label must be a nonempty string: {lab!r}")
            if _FORBIDDEN & set(lab):
                raise ValidationError(f"element label may not contain '(', ')' or ',': {lab!r}")
            if lab in seen:
                raise ValidationError(f"duplicate element label: {lab!r}")
            seen.add(lab)
        return FinSetObject(self, (labels,))

    def tensor_obj(self, x: FinSetObject, y: FinSetObject) -> FinSetObject:
        return FinSetObject(self, x.factors + y.factors)

    def tensor_mor(self, f: Morphism, g: Morphism) -> Morphism:
        dom = self.tensor_obj(f.dom, g.dom)
        cod = self.tensor_obj(f.cod, g.cod)
        table = (f.table[:, None] * g.cod.size + g.table[None, :]).ravel()
        return Morphism(dom, cod, table)

    def split_indices(self, x: Object, y: Object, xy: Object):
        idx = np.arange(xy.size, dtype=np.int64)
        return idx // y.size, idx % y.size

    def validate_mor(self, f: Morphism) -> None:
        pass  # every index table is a map of sets

    def quotient(self, x: FinSetObject, labels: np.ndarray, count: int) -> FinSetObject:
        _, first = np.unique(labels, return_index=True)
        atoms = tuple(x.label(int(i)) for i in first)
        return FinSetObject(self, (atoms,))

    def coproduct(self, x: FinSetObject, y: FinSetObject):
        if x.size == 0:
            return y, np.zeros(0, dtype=np.int64), np.arange(y.size, dtype=np.int64)
        if y.size == 0:
            return x, np.arange(x.size, dtype=np.int64), np.zeros(0, dtype=np.int64)
        lx, ly = x.labels(), y.labels()
        if set(lx) & set(ly):
            lx = ["l:" + s for s in lx]
            ly = ["r:" + s for s in ly]
        obj = FinSetObject(self, (tuple(lx + ly),))
        return obj, np.arange(x.size, dtype=np.int64), x.size + np.arange(y.size, dtype=np.int64)

    def hom_tables(self, x: Object, y: Object, budget: int) -> np.ndarray:
        if x.size == 0:
            return np.zeros((1, 0), dtype=np.int64)
        count = y.size ** x.size
        if count > budget:
            raise CapabilityError(
                f"hom enumeration {y.size}^{x.size} exceeds budget {budget}")
        idx = np.arange(count, dtype=np.int64)[:, None]
        strides = y.size ** np.arange(x.size - 1, -1, -1, dtype=np.int64)
        return (idx // strides) % y.size


def pointed_set(backend: FinSetBackend, letters) -> engine.PointedObject:
    """The pointed object I + X for a generating set X of letters.

    The unit atom "()" comes first, so stage quotients enumerate padded
    words before longer ones.
    """
    x = backend.from_labels(letters)
    cp = kernel.coproduct(backend.unit(), x)
    return engine.PointedObject(cp.obj, cp.inl)


def free_monoid_on_set(letters, stages: int = 5, **kw) -> engine.ChainResult:
    """Chain of word quotients for the free monoid on a finite alphabet."""
    backend = FinSetBackend()
    return engine.run_chain(pointed_set(backend, letters), stages, **kw)
