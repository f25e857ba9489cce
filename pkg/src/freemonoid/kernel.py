"""Finite-data category kernel.

Everything downstream (the chain engine, the three backends, the CLI) speaks
this small language: an Object is a finite, canonically enumerated carrier
owned by a backend; a Morphism is an index table between two carriers; a
RegularEpi is a surjection remembering parallel pairs it coequalizes.  The
generic operations here (compose, tensor, coequalizer, induce, cointersect,
pushout, coproduct) reduce every colimit to union-find on index tables, so a
backend only has to say what its objects and structure-preserving tables are.

Design rule: quotients and tensor powers are always *flat* — a tensor power
is represented with its factor list, never nested, so the canonical
associativity isomorphisms between regroupings are identity tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import coreops


class KernelError(Exception):
    """Base for everything raised by the kernel and backends."""


class ValidationError(KernelError):
    """Malformed input data, or a table that is not a morphism."""


class NotComposable(KernelError):
    pass


class NotParallel(KernelError):
    pass


class NotInduced(KernelError):
    """The map to factor does not merge everything the quotient merges."""


class NotInvertible(KernelError):
    pass


class CapabilityError(KernelError):
    """Operation not offered by this backend (or over its stated budget)."""


@dataclass(frozen=True)
class Capabilities:
    has_coproducts: bool
    enumerates_homs: bool
    # whether tensoring with a fixed object preserves plain coequalizers of
    # index tables; gates the comparison-chain mode
    tensor_preserves_plain_coequalizers: bool


class Backend:
    """Concrete-category plug-in.  Subclasses own object layout and validation."""

    name: str = "?"
    caps: Capabilities

    @property
    def key(self):
        return (self.name,)

    # --- objects ---
    def unit(self) -> "Object":
        raise NotImplementedError

    def tensor_obj(self, x: "Object", y: "Object") -> "Object":
        raise NotImplementedError

    # --- morphism structure ---
    def validate_mor(self, f: "Morphism") -> None:
        """Raise ValidationError unless f's table is structure-preserving."""
        raise NotImplementedError

    def tensor_mor(self, f: "Morphism", g: "Morphism") -> "Morphism":
        raise NotImplementedError

    def split_indices(self, x: "Object", y: "Object", xy: "Object"):
        """For each element of x⊗y, the indices of its two components.

        Returns (left, right): int64 arrays of length xy.size.
        """
        raise NotImplementedError

    # --- colimits ---
    def congruence_labels(self, x: "Object", table_pairs) -> tuple[np.ndarray, int]:
        """Finest structure-respecting congruence merging a[t] ~ b[t].

        Default: plain union-find on elements (right for sets and spans).
        Backends whose quotients must respect extra structure override this
        (groups close the merges under the group operations).
        Returns (labels, class_count) with classes ordered by min element.
        """
        parent = np.arange(x.size, dtype=np.int64)
        for ta, tb in table_pairs:
            coreops.uf_unite_pairs(parent, ta, tb)
        labels, reps = coreops.uf_canonical(parent)
        return labels, len(reps)

    def quotient(self, x: "Object", labels: np.ndarray, class_count: int) -> "Object":
        """Object of equivalence classes for a min-rep canonical labeling."""
        raise NotImplementedError

    def coproduct(self, x: "Object", y: "Object"):
        raise CapabilityError(f"{self.name}: no coproducts")

    # --- enumeration ---
    def hom_tables(self, x: "Object", y: "Object", budget: int) -> np.ndarray:
        raise CapabilityError(f"{self.name}: cannot enumerate homs")


class Object:
    """Finite carrier with a canonical element order.  Backends subclass this.

    Subclass contract: `backend`, `size`, `label(i)`, and a hashable
    structural `key` (two objects are equal iff their keys are).
    """

    backend: Backend
    size: int

    @property
    def key(self):
        raise NotImplementedError

    def label(self, i: int) -> str:
        raise NotImplementedError

    def labels(self) -> list[str]:
        return [self.label(i) for i in range(self.size)]

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Object):
            return NotImplemented
        return self.backend.key == other.backend.key and self.key == other.key

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.backend.key, self.key))

    def __repr__(self):
        return f"<{type(self).__name__} size={self.size}>"


def _as_table(table, n: int, m: int) -> np.ndarray:
    t = np.ascontiguousarray(table, dtype=np.int64)
    if t.shape != (n,):
        raise ValidationError(f"table has shape {t.shape}, domain has size {n}")
    if n and (t.min() < 0 or t.max() >= m):
        raise ValidationError("table entry out of codomain range")
    t.flags.writeable = False
    return t


@dataclass(frozen=True, eq=False)
class Morphism:
    """Index table: element i of dom goes to element table[i] of cod."""

    dom: Object
    cod: Object
    table: np.ndarray

    def __post_init__(self):
        if self.dom.backend.key != self.cod.backend.key:
            raise NotComposable("dom and cod live in different backends")
        object.__setattr__(self, "table", _as_table(self.table, self.dom.size, self.cod.size))

    def __repr__(self):
        return f"<Morphism {self.dom.size}->{self.cod.size}>"


def morphism(dom: Object, cod: Object, table) -> Morphism:
    """Public constructor: builds the arrow and backend-validates it."""
    f = Morphism(dom, cod, table)
    dom.backend.validate_mor(f)
    return f


def identity(x: Object) -> Morphism:
    return Morphism(x, x, np.arange(x.size, dtype=np.int64))


def compose(g: Morphism, f: Morphism) -> Morphism:
    """g after f."""
    if f.cod != g.dom:
        raise NotComposable(
            f"codomain (size {f.cod.size}) != domain (size {g.dom.size})")
    return Morphism(f.dom, g.cod, g.table[f.table])


def equal_mor(f: Morphism, g: Morphism) -> bool:
    if f.dom != g.dom or f.cod != g.cod:
        raise NotParallel("equal_mor needs parallel arrows")
    return bool(np.array_equal(f.table, g.table))

def is_parallel(f: Morphism, g: Morphism) -> bool:
    return f.dom == g.dom and f.cod == g.cod


def is_surjective(f: Morphism) -> bool:
    if f.cod.size == 0:
        return True
    return bool(np.all(np.bincount(f.table, minlength=f.cod.size) > 0))


def is_iso(f: Morphism) -> bool:
    if f.dom.size != f.cod.size:
        return False
    return bool(np.all(np.bincount(f.table, minlength=f.cod.size) == 1))


def inverse(f: Morphism) -> Morphism:
    if not is_iso(f):
        raise NotInvertible("not an isomorphism")
    inv = np.empty(f.cod.size, dtype=np.int64)
    inv[f.table] = np.arange(f.dom.size, dtype=np.int64)
    return Morphism(f.cod, f.dom, inv)


# --- tensor ---

def tensor_obj(x: Object, y: Object) -> Object:
    if x.backend.key != y.backend.key:
        raise NotComposable("tensor across backends")
    return x.backend.tensor_obj(x, y)


def tensor_mor(f: Morphism, g: Morphism) -> Morphism:
    if f.dom.backend.key != g.dom.backend.key:
        raise NotComposable("tensor across backends")
    return f.dom.backend.tensor_mor(f, g)


def power_obj(base: Object, n: int) -> Object:
    """n-fold tensor power; n = 0 is the unit."""
    if n < 0:
        raise ValidationError("negative tensor power")
    out = base.backend.unit()
    for _ in range(n):
        out = tensor_obj(out, base)
    return out


def power_mor(f: Morphism, n: int) -> Morphism:
    out = identity(f.dom.backend.unit())
    for _ in range(n):
        out = tensor_mor(out, f)
    return out


def power_iso(m: int, n: int, base: Object) -> Morphism:
    """Canonical iso base^m ⊗ base^n → base^(m+n).

    Flat representation makes the two sides literally equal, so the table is
    the identity; the construction still *checks* that they are equal.
    """
    dom = tensor_obj(power_obj(base, m), power_obj(base, n))
    cod = power_obj(base, m + n)
    if dom != cod:
        raise KernelError("tensor powers failed to flatten; backend bug")
    return Morphism(dom, cod, np.arange(dom.size, dtype=np.int64))


# --- quotients ---

@dataclass(frozen=True, eq=False)
class RegularEpi:
    """Surjection remembering parallel pairs it coequalizes.

    `witnesses` is a tuple of (u, v) pairs into dom(arrow); the arrow merges
    u(t) with v(t) for every t, and the quotient it presents is exactly the
    one generated by those merges (checked where it matters, in `induce`).
    """

    arrow: Morphism
    witnesses: tuple

    def __post_init__(self):
        if not is_surjective(self.arrow):
            raise ValidationError("regular epi arrow must be surjective")
        for u, v in self.witnesses:
            if not is_parallel(u, v) or u.cod != self.arrow.dom:
                raise ValidationError("witness pair does not target the epi domain")
            if not np.array_equal(self.arrow.table[u.table], self.arrow.table[v.table]):
                raise ValidationError("epi does not coequalize its own witness pair")

    @property
    def dom(self):
        return self.arrow.dom

    @property
    def cod(self):
        return self.arrow.cod


def identity_epi(x: Object) -> RegularEpi:
    return RegularEpi(identity(x), ())


def joint_coequalizer(pairs: Sequence[tuple[Morphism, Morphism]]) -> RegularEpi:
    """Finest quotient merging f(t) ~ g(t) for every pair and every t.

    All pairs must share a codomain, which becomes the epi's domain.
    """
    if not pairs:
        raise ValidationError("joint_coequalizer needs at least one pair")
    x = pairs[0][0].cod
    for u, v in pairs:
        if not is_parallel(u, v):
            raise NotParallel("coequalizer needs parallel arrows")
        if u.cod != x:
            raise NotParallel("pairs do not share a codomain")
    labels, count = x.backend.congruence_labels(
        x, [(u.table, v.table) for u, v in pairs])
    q = x.backend.quotient(x, labels, count)
    return RegularEpi(Morphism(x, q, labels), tuple(pairs))


def coequalizer(f: Morphism, g: Morphism) -> RegularEpi:
    return joint_coequalizer([(f, g)])


def induce(q: RegularEpi, h: Morphism) -> Morphism:
    """Unique u with u ∘ q = h, if h merges everything q merges.

    Raises NotInduced (with the first offending pair, by label) otherwise.
    The result is backend-validated: factoring through a quotient must again
    be structure-preserving, and a failure there is a backend bug.
    """
    if h.dom != q.dom:
        raise NotComposable("induce: map does not start at the epi domain")
    qt = q.arrow.table
    u = np.zeros(q.cod.size, dtype=np.int64)
    u[qt] = h.table
    bad = np.nonzero(u[qt] != h.table)[0]
    if bad.size:
        i = int(bad[0])
        cls = int(qt[i])
        j = int(np.nonzero(qt == cls)[0][0])
        raise NotInduced(
            f"{q.dom.label(j)!r} and {q.dom.label(i)!r} are identified by the "
            f"quotient but map to {h.cod.label(int(h.table[j]))!r} != "
            f"{h.cod.label(int(h.table[i]))!r}")
    out = Morphism(q.cod, h.cod, u)
    out.dom.backend.validate_mor(out)
    return out


def cointersect(epis: Sequence[RegularEpi]) -> RegularEpi:
    """Joint smallest quotient refined by every given epi on a shared domain.

    Computed as the joint coequalizer of the union of the witness pairs; the
    result factors through each input (each input's witnesses are included).
    """
    if not epis:
        raise ValidationError("cointersect needs at least one epi")
    x = epis[0].dom
    pairs: list = []
    for e in epis:
        if e.dom != x:
            raise NotParallel("cointersection needs a shared domain")
        pairs.extend(e.witnesses)
    if not pairs:
        # all inputs were identity-like epis with no witnesses
        trivial = (identity(x), identity(x))
        pairs = [trivial]
    return joint_coequalizer(pairs)


def pushout(q1: RegularEpi, q2: RegularEpi) -> tuple[RegularEpi, Morphism, Morphism]:
    """Pushout of two regular epis out of one object.

    Returns (joint, leg1, leg2): joint = the cointersection B → P, and the
    legs cod(q1) → P, cod(q2) → P induced by it; leg_i ∘ q_i = joint.
    """
    joint = cointersect([q1, q2])
    leg1 = induce(q1, joint.arrow)
    leg2 = induce(q2, joint.arrow)
    return joint, leg1, leg2


# --- coproducts ---

@dataclass(frozen=True, eq=False)
class Coproduct:
    obj: Object
    inl: Morphism
    inr: Morphism


def coproduct(x: Object, y: Object) -> Coproduct:
    if x.backend.key != y.backend.key:
        raise NotComposable("coproduct across backends")
    obj, tl, tr = x.backend.coproduct(x, y)
    return Coproduct(obj, Morphism(x, obj, tl), Morphism(y, obj, tr))


def copair(cp: Coproduct, f: Morphism, g: Morphism) -> Morphism:
    """The map out of a coproduct matching f on the left leg, g on the right."""
    if f.dom != cp.inl.dom or g.dom != cp.inr.dom:
        raise NotComposable("copair legs do not match the coproduct summands")
    if f.cod != g.cod:
        raise NotComposable("copair legs need one codomain")
    table = np.zeros(cp.obj.size, dtype=np.int64)
    table[cp.inl.table] = f.table
    table[cp.inr.table] = g.table
    out = Morphism(cp.obj, f.cod, table)
    out.dom.backend.validate_mor(out)
    return out
