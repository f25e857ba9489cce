"""Spans-of-sets backend over a fixed vertex set.

An object is a set of "edges" anchored between vertices (a span A ← E → A);
tensor is composable concatenation (pullback over the middle anchor), and
the unit is the discrete span of identity loops.  Elements of a tensor are
the composable tuples of factor atoms, enumerated in lexicographic atom
order (ties — only possible for anchored empty tuples — break by source
vertex), which keeps regrouped tensor powers literally equal.

Free monoids here are free categories: stage n quotients the length-≤n
paths by unit-insertion, and the stable object is the morphism set.
"""

from __future__ import annotations

import numpy as np

from . import engine, kernel
from .kernel import (Backend, Capabilities, CapabilityError, Morphism, Object,
                     ValidationError)

_FORBIDDEN = set("(),")


class SpanObject(Object):
    __slots__ = ("backend", "factors", "elements", "index", "src_arr", "tgt_arr",
                 "size", "_key", "built_from", "by_src")

    def __init__(self, backend: "SpanBackend", factors: tuple, elements=None,
                 built_from=None):
        self.backend = backend
        self.factors = factors
        if elements is None:
            elements = _enumerate_elements(backend, factors)
        self.elements = elements
        self.size = len(elements)
        self.index = {(atoms, src): i for i, (atoms, src, _) in enumerate(elements)}
        self.src_arr = np.asarray([e[1] for e in elements], dtype=np.int64)
        self.tgt_arr = np.asarray([e[2] for e in elements], dtype=np.int64)
        self._key = ("span", backend.vertices, factors)
        self.built_from = built_from  # (left_ids, right_ids) when tensor-built
        self.by_src: dict = {}
        for i, (_, s, _) in enumerate(elements):
            self.by_src.setdefault(s, []).append(i)

    @property
    def key(self):
        return self._key

    def label(self, i: int) -> str:
        atoms, src, _ = self.elements[i]
        if not atoms:
            return f"id_{self.backend.vertices[src]}"
        names = [self.factors[f][a][0] for f, a in enumerate(atoms)]
        return names[0] if len(names) == 1 else "(" + ",".join(names) + ")"


def _enumerate_elements(backend, factors):
    if not factors:
        return tuple(((), v, v) for v in range(len(backend.vertices)))
    elts = [((a,), s, t) for a, (_, s, t) in enumerate(factors[0])]
    for fac in factors[1:]:
        by_src: dict = {}
        for a, (_, s, t) in enumerate(fac):
            by_src.setdefault(s, []).append((a, t))
        elts = [(atoms + (a,), src, t2)
                for atoms, src, t in elts for a, t2 in by_src.get(t, ())]
    elts.sort(key=lambda e: (e[0], e[1]))
    return tuple(elts)


class SpanBackend(Backend):
    name = "span"
    caps = Capabilities(
        has_coproducts=True,
        enumerates_homs=True,
        tensor_preserves_plain_coequalizers=True,
    )

    def __init__(self, vertices):
        vertices = tuple(vertices)
        if not vertices:
            raise ValidationError("span backend needs at least one vertex")
        if len(set(vertices)) != len(vertices) or not all(
                isinstance(v, str) and v for v in vertices):
            raise ValidationError("vertices must be distinct nonempty strings")
        self.vertices = vertices
        self._vidx = {v: i for i, v in enumerate(vertices)}
        self._tensor_cache: dict = {}

    @property
    def key(self):
        return ("span", self.vertices)

    def unit(self) -> SpanObject:
        return SpanObject(self, ())

    def from_edges(self, edges) -> SpanObject:
        """Atomic object from user-supplied [label, src, tgt] triples."""
        seen = set()
        out = []
        for e in edges:
            if not (isinstance(e, (list, tuple)) and len(e) == 3):
                raise ValidationError(f"edge must be [label, src, tgt]: {e!r}")
            lab, s, t = e
            if not isinstance(lab, str) or not lab or _FORBIDDEN & set(lab):
                raise ValidationError(f"bad edge label: {lab!r}")
            if lab in seen:
                raise ValidationError(f"duplicate edge label: {lab!r}")
            seen.add(lab)
            if s not in self._vidx or t not in self._vidx:
                raise ValidationError(f"edge {lab!r} uses unknown vertex")
            out.append((lab, self._vidx[s], self._vidx[t]))
        return SpanObject(self, (tuple(out),))

    def tensor_obj(self, x: SpanObject, y: SpanObject) -> SpanObject:
        cached = self._tensor_cache.get((x.key, y.key))
        if cached is not None:
            return cached
        combined = []
        for li, (la, ls, lt) in enumerate(x.elements):
            for ri in y.by_src.get(lt, ()):
                ra, _, rt = y.elements[ri]
                combined.append((la + ra, ls, rt, li, ri))
        combined.sort(key=lambda e: (e[0], e[1]))
        elements = tuple((a, s, t) for a, s, t, _, _ in combined)
        built = (np.asarray([c[3] for c in combined], dtype=np.int64),
                 np.asarray([c[4] for c in combined], dtype=np.int64))
        obj = SpanObject(self, x.factors + y.factors, elements, built)
        self._tensor_cache[(x.key, y.key)] = obj
        return obj

    def tensor_mor(self, f: Morphism, g: Morphism) -> Morphism:
        dom = self.tensor_obj(f.dom, g.dom)
        cod = self.tensor_obj(f.cod, g.cod)
        left_ids, right_ids = dom.built_from
        fl = f.table[left_ids]
        gr = g.table[right_ids]
        fe, ge = f.cod.elements, g.cod.elements
        cidx = cod.index
        table = np.fromiter(
            (cidx[(fe[a][0] + ge[b][0], fe[a][1])]
             for a, b in zip(fl.tolist(), gr.tolist())),
            dtype=np.int64, count=dom.size)
        return Morphism(dom, cod, table)

    def split_indices(self, x: SpanObject, y: SpanObject, xy: SpanObject):
        built = self.tensor_obj(x, y).built_from
        return built

    def validate_mor(self, f: Morphism) -> None:
        if not (np.array_equal(f.dom.src_arr, f.cod.src_arr[f.table])
                and np.array_equal(f.dom.tgt_arr, f.cod.tgt_arr[f.table])):
            raise ValidationError("table does not preserve edge anchors")

    def congruence_labels(self, x, table_pairs):
        labels, count = super().congruence_labels(x, table_pairs)
        # span maps preserve anchors, so classes must be anchor-homogeneous;
        # scatter one anchor per class and compare back to detect violations
        for arr in (x.src_arr, x.tgt_arr):
            per_class = np.zeros(count, dtype=np.int64)
            per_class[labels] = arr
            if not np.array_equal(per_class[labels], arr):
                raise ValidationError("quotient would merge differently anchored edges")
        return labels, count

    def quotient(self, x: SpanObject, labels: np.ndarray, count: int) -> SpanObject:
        _, first = np.unique(labels, return_index=True)
        edges = tuple((x.label(int(i)), int(x.src_arr[i]), int(x.tgt_arr[i]))
                      for i in first)
        return SpanObject(self, (edges,))

    def coproduct(self, x: SpanObject, y: SpanObject):
        if x.size == 0:
            return y, np.zeros(0, dtype=np.int64), np.arange(y.size, dtype=np.int64)
        if y.size == 0:
            return x, np.arange(x.size, dtype=np.int64), np.zeros(0, dtype=np.int64)
        lx, ly = x.labels(), y.labels()
        if set(lx) & set(ly):
            lx = ["l:" + s for s in lx]
            ly = ["r:" + s for s in ly]
        edges = tuple(zip(lx, x.src_arr.tolist(), x.tgt_arr.tolist())) + \
            tuple(zip(ly, y.src_arr.tolist(), y.tgt_arr.tolist()))
        obj = SpanObject(self, (edges,))
        return obj, np.arange(x.size, dtype=np.int64), x.size + np.arange(y.size, dtype=np.int64)

    def hom_tables(self, x: SpanObject, y: SpanObject, budget: int) -> np.ndarray:
        choices = []
        for i in range(x.size):
            ok = np.nonzero((y.src_arr == x.src_arr[i])
                            & (y.tgt_arr == x.tgt_arr[i]))[0]
            if ok.size == 0:
                return np.zeros((0, x.size), dtype=np.int64)
            choices.append(ok)
        count = 1
        for c in choices:
            count *= len(c)
            if count > budget:
                raise CapabilityError(f"hom enumeration exceeds budget {budget}")
        out = np.zeros((1, 0), dtype=np.int64)
        for c in choices:
            out = np.hstack([np.repeat(out, len(c), axis=0),
                             np.tile(c, len(out))[:, None]])
        return out


def pointed_graph(backend: SpanBackend, edges) -> engine.PointedObject:
    """The pointed object I + G: identity loops first, then the graph edges."""
    g = backend.from_edges(edges)
    cp = kernel.coproduct(backend.unit(), g)
    return engine.PointedObject(cp.obj, cp.inl)


def free_category(vertices, edges, stages: int = 5, **kw) -> engine.ChainResult:
    """Chain whose stable object is the morphism set of the free category."""
    backend = SpanBackend(vertices)
    return engine.run_chain(pointed_graph(backend, edges), stages, **kw)
