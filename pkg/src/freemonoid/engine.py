"""Free-monoid chain engine.

Given a pointed object (Y, y : I → Y) in a backend's monoidal category, the
free monoid on Y-relative-to-y is approximated by a chain of stage quotients:

* stage n starts from the tensor power Y^n;
* for each inner slot k = 0..n-2, the two ways of inserting the point into
  neighbouring slots give a parallel pair Y^(n-1) ⇉ Y^n, whose coequalizer
  identifies "the point in slot k" with "the point in slot k+1";
* the stage epi q_n : Y^n → Z_n is the cointersection of those per-slot
  coequalizers, and the connecting map j_n : Z_(n-1) → Z_n is induced by
  composing q_n with any point insertion (the result is slot-independent,
  which `connecting` verifies).

Once two consecutive connecting maps are isomorphisms the chain has
stabilized and its colimit is reached at the last non-iso index.  Stage
multiplications Z_m ⊗ Z_n → Z_(m+n) are induced from the concatenation isos
of tensor powers; they make the truncated chain a graded monoid, support an
exactness-style comparison mode (`dubuc_chain`), and give the universal map
to any finite monoid the backend can express.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from . import kernel
from .kernel import (CapabilityError, KernelError, Morphism, Object,
                     RegularEpi, ValidationError)

MODES = ("reflexive", "dubuc")
HOM_BUDGET = 1_000_000


def _pmap(fn: Callable, items, pool=None) -> list:
    """Deterministic map: results in input order whether or not pooled."""
    if pool is None:
        return [fn(i) for i in items]
    return list(pool.map(fn, items))


@dataclass(frozen=True, eq=False)
class PointedObject:
    """An object together with a chosen global point y : I → Y."""

    carrier: Object
    point: Morphism

    def __post_init__(self):
        if self.point.dom != self.carrier.backend.unit():
            raise ValidationError("point must start at the unit object")
        if self.point.cod != self.carrier:
            raise ValidationError("point must land in the carrier")

    @property
    def backend(self):
        return self.carrier.backend


@dataclass(eq=False)
class StageQuotient:
    """q_n : Y^n → Z_n plus the per-slot coequalizers it intersects."""

    n: int
    epi: RegularEpi
    per_slot: tuple

    @property
    def obj(self) -> Object:
        return self.epi.cod


@dataclass(eq=False)
class ChainResult:
    pointed: PointedObject
    mode: str
    requested: int
    stages: list = field(default_factory=list)
    connecting: list = field(default_factory=list)  # [None, j_1, j_2, ...]
    stabilized_at: Optional[int] = None

    @property
    def top(self) -> int:
        """Largest computed stage index."""
        return len(self.stages) - 1

    def stage_obj(self, n: int) -> Object:
        return self.stages[n].obj

    def sizes(self) -> list[int]:
        return [s.obj.size for s in self.stages]


def insertion(pointed: PointedObject, n: int, j: int) -> Morphism:
    """Y^(n-1) → Y^n putting the point into slot j (0-based)."""
    if n < 1 or not 0 <= j <= n - 1:
        raise ValidationError(f"insertion slot {j} out of range for stage {n}")
    y = pointed.carrier
    left = kernel.identity(kernel.power_obj(y, j))
    right = kernel.identity(kernel.power_obj(y, n - 1 - j))
    return kernel.tensor_mor(kernel.tensor_mor(left, pointed.point), right)


def stage(pointed: PointedObject, n: int, mode: str = "reflexive",
          pool=None) -> StageQuotient:
    """Stage quotient q_n as a cointersection of per-slot coequalizers.

    In `dubuc` mode the per-slot coequalizers are combined by iterated
    binary pushouts instead of one joint pass — same quotient, different
    assembly, kept as an independent cross-check.
    """
    y = pointed.carrier
    if n <= 1:
        return StageQuotient(n, kernel.identity_epi(kernel.power_obj(y, n)), ())

    def one_slot(k: int) -> RegularEpi:
        return kernel.coequalizer(insertion(pointed, n, k),
                                  insertion(pointed, n, k + 1))

    per_slot = tuple(_pmap(one_slot, range(n - 1), pool))
    if mode == "dubuc":
        acc = per_slot[0]
        for e in per_slot[1:]:
            acc, _, _ = kernel.pushout(acc, e)
        epi = acc
    else:
        epi = kernel.cointersect(per_slot)
    return StageQuotient(n, epi, per_slot)


def connecting(pointed: PointedObject, prev: StageQuotient,
               cur: StageQuotient, slots=None) -> Morphism:
    """j_n : Z_(n-1) → Z_n with j_n ∘ q_(n-1) = q_n ∘ (point into a slot).

    By default every slot is tried and the results are required to agree;
    a disagreement would mean the stage quotients are wrong, so it raises.
    """
    n = cur.n
    if prev.n != n - 1:
        raise ValidationError("connecting needs consecutive stages")
    if slots is None:
        slots = range(n)
    out = None
    for j in slots:
        step = kernel.compose(cur.epi.arrow, insertion(pointed, n, j))
        cand = kernel.induce(prev.epi, step)
        if out is None:
            out = cand
        elif not kernel.equal_mor(out, cand):
            raise KernelError(
                f"connecting map at stage {n} depends on the insertion slot")
    return out


def _advance(chain: ChainResult, pool=None) -> None:
    n = chain.top + 1
    cur = stage(chain.pointed, n, chain.mode, pool)
    if n == 0:
        chain.stages.append(cur)
        chain.connecting.append(None)
        return
    slots = [n - 1] if chain.mode == "dubuc" else None
    j = connecting(chain.pointed, chain.stages[n - 1], cur, slots)
    chain.stages.append(cur)
    chain.connecting.append(j)
    last_noniso = 0
    for t in range(1, chain.top + 1):
        if not kernel.is_iso(chain.connecting[t]):
            last_noniso = t
    if chain.top - last_noniso >= 2:
        chain.stabilized_at = last_noniso


def run_chain(pointed: PointedObject, stages_max: int = 5,
              mode: str = "reflexive", pool=None, probe: bool = True) -> ChainResult:
    """Compute stage quotients and connecting maps up to `stages_max`.

    Stops early once stabilization is certified (two consecutive iso
    connecting maps).  If the last requested connecting map is an iso but
    certification is one stage short, one extra probe stage is computed so
    a genuinely stable chain is reported as such.
    """
    if mode not in MODES:
        raise ValidationError(f"unknown mode {mode!r}")
    if mode == "dubuc" and not pointed.backend.caps.tensor_preserves_plain_coequalizers:
        raise CapabilityError(
            f"{pointed.backend.name}: comparison mode needs tensoring to "
            "preserve plain coequalizers")
    if stages_max < 0:
        raise ValidationError("stage bound must be >= 0")
    chain = ChainResult(pointed, mode, stages_max)
    _advance(chain, pool)  # stage 0
    while chain.top < stages_max and chain.stabilized_at is None:
        _advance(chain, pool)
    if (probe and chain.stabilized_at is None and chain.top >= 1
            and kernel.is_iso(chain.connecting[chain.top])):
        _advance(chain, pool)
    return chain


def dubuc_chain(pointed: PointedObject, stages_max: int = 5, pool=None,
                probe: bool = True) -> ChainResult:
    """`run_chain` in comparison mode (plain-coequalizer assembly)."""
    return run_chain(pointed, stages_max, "dubuc", pool, probe)


def extend_chain(chain: ChainResult, target: int, pool=None) -> ChainResult:
    """Grow an existing chain in place to stage `target` (no early stop)."""
    while chain.top < target:
        _advance(chain, pool)
    return chain


def chains_agree(a: ChainResult, b: ChainResult) -> bool:
    """Bit-identical agreement of stage objects, epis, and connecting maps."""
    if a.top != b.top:
        return False
    for n in range(a.top + 1):
        if a.stage_obj(n) != b.stage_obj(n):
            return False
        if not np.array_equal(a.stages[n].epi.arrow.table,
                              b.stages[n].epi.arrow.table):
            return False
        if n and not np.array_equal(a.connecting[n].table, b.connecting[n].table):
            return False
    return True


# --- graded multiplication ---

def stage_mult(chain: ChainResult, m: int, n: int) -> Morphism:
    """μ_(m,n) : Z_m ⊗ Z_n → Z_(m+n), induced by tensor-power concatenation.

    Well-definedness (the concatenation epi's fibers land in single classes
    of q_(m+n)) is exactly what `induce` verifies; a failure raises.
    """
    if m < 0 or n < 0 or m + n > chain.top:
        raise ValidationError(f"stage_mult({m},{n}) beyond computed chain")
    y = chain.pointed.carrier
    qm, qn = chain.stages[m].epi, chain.stages[n].epi
    arrow = kernel.tensor_mor(qm.arrow, qn.arrow)
    id_m = kernel.identity(kernel.power_obj(y, m))
    id_n = kernel.identity(kernel.power_obj(y, n))
    wit = [(kernel.tensor_mor(u, id_n), kernel.tensor_mor(v, id_n))
           for u, v in qm.witnesses]
    wit += [(kernel.tensor_mor(id_m, u), kernel.tensor_mor(id_m, v))
            for u, v in qn.witnesses]
    tens = RegularEpi(arrow, tuple(wit))
    concat = kernel.power_iso(m, n, y)
    return kernel.induce(tens, kernel.compose(chain.stages[m + n].epi.arrow, concat))


@dataclass(eq=False)
class MonoidTruncation:
    """Chain stages with all multiplications μ_(m,n), m+n ≤ bound."""

    chain: ChainResult
    bound: int
    mult: dict
    unit_arrow: Morphism

    @property
    def pointed(self):
        return self.chain.pointed


def truncation(chain: ChainResult, pool=None) -> MonoidTruncation:
    bound = chain.top
    pairs = [(m, n) for m in range(bound + 1) for n in range(bound + 1 - m)]
    mults = _pmap(lambda mn: stage_mult(chain, *mn), pairs, pool)
    unit_arrow = kernel.compose(chain.stages[1].epi.arrow, chain.pointed.point) \
        if bound >= 1 else kernel.identity(chain.pointed.backend.unit())
    return MonoidTruncation(chain, bound, dict(zip(pairs, mults)), unit_arrow)


@dataclass(eq=False)
class LawReport:
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def note(self, ok: bool, what: str) -> None:
        self.checked += 1
        if not ok:
            self.failures.append(what)


def monoid_laws(trunc: MonoidTruncation) -> LawReport:
    """Exactly verify the graded monoid laws on the truncation.

    Checks, for all indices within the bound: μ_(0,n) and μ_(n,0) are
    identities; both naturality squares against the connecting maps;
    associativity; and the unit squares μ(j_1 ⊗ id) = j = μ(id ⊗ j_1).
    """
    chain, N = trunc.chain, trunc.bound
    rep = LawReport()
    ident = kernel.identity
    for n in range(N + 1):
        rep.note(kernel.is_iso(trunc.mult[(0, n)])
                 and kernel.equal_mor(trunc.mult[(0, n)], ident(chain.stage_obj(n))),
                 f"unit-iso (0,{n})")
        rep.note(kernel.equal_mor(trunc.mult[(n, 0)], ident(chain.stage_obj(n))),
                 f"unit-iso ({n},0)")
    for m in range(N + 1):
        for n in range(N - m):
            jn1 = chain.connecting[m + n + 1]
            lhs = kernel.compose(trunc.mult[(m, n + 1)],
                                 kernel.tensor_mor(ident(chain.stage_obj(m)),
                                                   chain.connecting[n + 1]))
            rhs = kernel.compose(jn1, trunc.mult[(m, n)])
            rep.note(kernel.equal_mor(lhs, rhs), f"naturality-right ({m},{n})")
            lhs = kernel.compose(trunc.mult[(m + 1, n)],
                                 kernel.tensor_mor(chain.connecting[m + 1],
                                                   ident(chain.stage_obj(n))))
            rhs = kernel.compose(jn1, trunc.mult[(m, n)])
            rep.note(kernel.equal_mor(lhs, rhs), f"naturality-left ({m},{n})")
    for m in range(N + 1):
        for n in range(N + 1 - m):
            for p in range(N + 1 - m - n):
                lhs = kernel.compose(trunc.mult[(m + n, p)],
                                     kernel.tensor_mor(trunc.mult[(m, n)],
                                                       ident(chain.stage_obj(p))))
                rhs = kernel.compose(trunc.mult[(m, n + p)],
                                     kernel.tensor_mor(ident(chain.stage_obj(m)),
                                                       trunc.mult[(n, p)]))
                rep.note(kernel.equal_mor(lhs, rhs), f"assoc ({m},{n},{p})")
    for n in range(N):
        j1 = chain.connecting[1]
        lhs = kernel.compose(trunc.mult[(1, n)],
                             kernel.tensor_mor(j1, ident(chain.stage_obj(n))))
        rep.note(kernel.equal_mor(lhs, chain.connecting[n + 1]),
                 f"unit-square-left ({n})")
        rhs = kernel.compose(trunc.mult[(n, 1)],
                             kernel.tensor_mor(ident(chain.stage_obj(n)), j1))
        rep.note(kernel.equal_mor(rhs, chain.connecting[n + 1]),
                 f"unit-square-right ({n})")
    return rep


# --- monoids, universal maps, actions ---

@dataclass(eq=False)
class MonoidObject:
    carrier: Object
    mult: Morphism       # M ⊗ M → M
    unit_arrow: Morphism  # I → M


def monoid(carrier: Object, mult: Morphism, unit_arrow: Morphism) -> MonoidObject:
    """Validated monoid: checks associativity and both unit laws exactly."""
    ident = kernel.identity(carrier)
    if mult.dom != kernel.tensor_obj(carrier, carrier) or mult.cod != carrier:
        raise ValidationError("multiplication must map M⊗M to M")
    if unit_arrow.dom != carrier.backend.unit() or unit_arrow.cod != carrier:
        raise ValidationError("unit must map I to M")
    lhs = kernel.compose(mult, kernel.tensor_mor(mult, ident))
    rhs = kernel.compose(mult, kernel.tensor_mor(ident, mult))
    if not kernel.equal_mor(lhs, rhs):
        raise ValidationError("multiplication is not associative")
    if not kernel.equal_mor(kernel.compose(mult, kernel.tensor_mor(unit_arrow, ident)), ident):
        raise ValidationError("left unit law fails")
    if not kernel.equal_mor(kernel.compose(mult, kernel.tensor_mor(ident, unit_arrow)), ident):
        raise ValidationError("right unit law fails")
    return MonoidObject(carrier, mult, unit_arrow)


def stable_monoid(trunc: MonoidTruncation, pool=None) -> MonoidObject:
    """The colimit monoid once the chain has stabilized.

    Carrier is the stage object at the stabilization index s; the product is
    μ_(s,s) transported back along the (iso) connecting maps Z_s → Z_2s.
    Extends the chain to stage 2s if needed.
    """
    chain = trunc.chain
    s = chain.stabilized_at
    if s is None:
        raise ValidationError("chain did not stabilize within computed stages")
    extend_chain(chain, 2 * s, pool)
    carrier = chain.stage_obj(s)
    up = kernel.identity(carrier)
    for t in range(s + 1, 2 * s + 1):
        up = kernel.compose(chain.connecting[t], up)
    down = kernel.inverse(up)
    mult = kernel.compose(down, stage_mult(chain, s, s))
    unit_arrow = kernel.identity(chain.pointed.backend.unit())
    for t in range(1, s + 1):
        unit_arrow = kernel.compose(chain.connecting[t], unit_arrow)
    return monoid(carrier, mult, unit_arrow)


@dataclass(eq=False)
class UniversalReport:
    stage_maps: list
    squares_checked: int
    unique: Optional[bool]  # None when uniqueness scan not requested/possible


def universal_map(trunc: MonoidTruncation, target: MonoidObject, f: Morphism,
                  uniqueness: bool = True, budget: int = HOM_BUDGET) -> UniversalReport:
    """Stage maps g_n : Z_n → target induced by a pointed map f : Y → M.

    g_n is induced from the n-fold product of f's images (left-nested target
    multiplication); compatibility with connecting maps and all
    multiplication squares is verified exactly.  With `uniqueness` on and an
    enumerating backend, each stage is confirmed to admit exactly one map
    satisfying those constraints, by exhaustive scan over all candidate
    tables (vectorized; gated by `budget`).
    """
    chain, N = trunc.chain, trunc.bound
    y = chain.pointed
    m_obj = target.carrier
    if f.dom != y.carrier or f.cod != m_obj:
        raise ValidationError("universal_map needs f : Y → M")
    if not kernel.equal_mor(kernel.compose(f, y.point), target.unit_arrow):
        raise ValidationError("f does not respect the point (f∘y ≠ unit)")

    nested = [target.unit_arrow, kernel.identity(m_obj)]
    while len(nested) <= N:
        nested.append(kernel.compose(
            target.mult, kernel.tensor_mor(nested[-1], kernel.identity(m_obj))))
    gs = []
    for n in range(N + 1):
        f_n = kernel.compose(nested[n], kernel.power_mor(f, n))
        gs.append(kernel.induce(chain.stages[n].epi, f_n))

    squares = 0
    for n in range(1, N + 1):
        if not kernel.equal_mor(kernel.compose(gs[n], chain.connecting[n]), gs[n - 1]):
            raise KernelError(f"universal stage maps break at connecting map {n}")
        squares += 1
    for (m, n), mu in sorted(trunc.mult.items()):
        lhs = kernel.compose(gs[m + n], mu)
        rhs = kernel.compose(target.mult, kernel.tensor_mor(gs[m], gs[n]))
        if not kernel.equal_mor(lhs, rhs):
            raise KernelError(f"universal stage maps break the ({m},{n}) square")
        squares += 1

    unique: Optional[bool] = None
    if uniqueness and chain.pointed.backend.caps.enumerates_homs:
        unique = True
        for n in range(1, N + 1):
            cands = chain.pointed.backend.hom_tables(chain.stage_obj(n), m_obj, budget)
            keep = np.ones(len(cands), dtype=bool)
            if n == 1:
                keep &= np.all(cands == f.table[None, :], axis=1)
            keep &= np.all(cands[:, chain.connecting[n].table]
                           == gs[n - 1].table[None, :], axis=1)
            for m in range(1, n):
                mu = trunc.mult[(m, n - m)]
                rhs = kernel.compose(
                    target.mult, kernel.tensor_mor(gs[m], gs[n - m])).table
                keep &= np.all(cands[:, mu.table] == rhs[None, :], axis=1)
            found = cands[keep]
            if len(found) != 1 or not np.array_equal(found[0], gs[n].table):
                unique = False
                break
    return UniversalReport(gs, squares, unique)


@dataclass(eq=False)
class ActionObject:
    carrier: Object
    act: Morphism  # α : Y ⊗ A → A


def action(pointed: PointedObject, carrier: Object, act: Morphism) -> ActionObject:
    """Validated pointed action: α ∘ (y ⊗ id) must be the identity on A."""
    y = pointed.carrier
    if act.dom != kernel.tensor_obj(y, carrier) or act.cod != carrier:
        raise ValidationError("action must map Y⊗A to A")
    unit_leg = kernel.compose(act, kernel.tensor_mor(pointed.point,
                                                     kernel.identity(carrier)))
    if not kernel.equal_mor(unit_leg, kernel.identity(carrier)):
        raise ValidationError("action does not restrict to the identity on the point")
    return ActionObject(carrier, act)


def alg_free_condition(pointed: PointedObject, act: ActionObject) -> bool:
    """Componentwise test that the two point-insertion legs act identically.

    Compares α∘(Y⊗α)∘((y⊗Y)⊗A) with α∘(Y⊗α)∘((Y⊗y)⊗A) on the Y-component;
    the square-component legs of the two composites are the same arrow by
    construction, so the generator component decides the outcome.
    """
    y_obj = pointed.carrier
    a_id = kernel.identity(act.carrier)
    two_step = kernel.compose(act.act, kernel.tensor_mor(kernel.identity(y_obj), act.act))
    left_ins = kernel.tensor_mor(pointed.point, kernel.identity(y_obj))   # Y → Y²
    right_ins = kernel.tensor_mor(kernel.identity(y_obj), pointed.point)
    c1 = kernel.compose(two_step, kernel.tensor_mor(left_ins, a_id))
    c2 = kernel.compose(two_step, kernel.tensor_mor(right_ins, a_id))
    return kernel.equal_mor(c1, c2)
