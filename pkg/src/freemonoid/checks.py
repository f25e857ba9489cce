"""Seeded property suites and instance generators.

Each `*_check` builds one random instance and asserts the claim it names,
raising AssertionError with context on failure; `run_suite` wraps a check
into a counted report.  The generators are deterministic in the seed and are
shared by the CLI (`--checks`), the law tests, and the acceptance suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from . import engine, kernel
from .fingrp import FinGrpBackend, group_by_name, pointed_group
from .finset import FinSetBackend, pointed_set
from .kernel import Morphism, RegularEpi
from .span import SpanBackend, pointed_graph


# --- random raw material ---

def random_finset_obj(be: FinSetBackend, rng: random.Random, prefix: str,
                      lo: int = 1, hi: int = 6):
    return be.from_labels([f"{prefix}{i}" for i in range(rng.randint(lo, hi))])


def random_map(rng: random.Random, dom, cod) -> Morphism:
    if cod.size == 0:
        raise ValueError("empty codomain")
    return Morphism(dom, cod, [rng.randrange(cod.size) for _ in range(dom.size)])


def random_graph(rng: random.Random, max_v: int = 6, max_e: int = 8,
                 acyclic: bool = False):
    nv = rng.randint(1, max_v)
    vertices = [f"v{i}" for i in range(nv)]
    ne = rng.randint(1, max_e)
    edges = []
    for i in range(ne):
        if acyclic and nv >= 2:
            s, t = sorted(rng.sample(range(nv), 2))
        elif acyclic:
            break  # single vertex admits no acyclic edge
        else:
            s, t = rng.randrange(nv), rng.randrange(nv)
        edges.append([f"e{i}", vertices[s], vertices[t]])
    return vertices, edges


def random_span_obj(be: SpanBackend, rng: random.Random, prefix: str,
                    lo: int = 1, hi: int = 6):
    nv = len(be.vertices)
    edges = [(f"{prefix}{i}", be.vertices[rng.randrange(nv)],
              be.vertices[rng.randrange(nv)]) for i in range(rng.randint(lo, hi))]
    return be.from_edges(edges)


def random_span_map(rng: random.Random, dom, cod) -> Morphism:
    table = []
    for i in range(dom.size):
        ok = np.nonzero((cod.src_arr == dom.src_arr[i])
                        & (cod.tgt_arr == dom.tgt_arr[i]))[0]
        if ok.size == 0:
            raise ValueError("no anchor-compatible target")
        table.append(int(ok[rng.randrange(ok.size)]))
    return Morphism(dom, cod, table)


def _span_obj_like(be: SpanBackend, rng: random.Random, cod, prefix: str,
                   lo: int = 1, hi: int = 5):
    """Object whose edges reuse anchors present in `cod` (maps always exist)."""
    edges = []
    for i in range(rng.randint(lo, hi)):
        j = rng.randrange(cod.size)
        edges.append((f"{prefix}{i}", be.vertices[int(cod.src_arr[j])],
                      be.vertices[int(cod.tgt_arr[j])]))
    return be.from_edges(edges)


# --- lemma suites ---

def lemma1_check(kind: str, rng: random.Random) -> None:
    """Tensoring (either side) preserves pushouts of regular epis.

    Builds two coequalizer epis out of one object, their pushout square,
    tensors the whole square with a random object, and verifies the result
    is again a pushout: the tensored legs coequalize the tensored witnesses,
    and the comparison from the recomputed pushout is an isomorphism.
    """
    if kind == "finset":
        be = FinSetBackend()
        b = random_finset_obj(be, rng, "b", 2, 6)
        w1 = random_finset_obj(be, rng, "w", 1, 5)
        w2 = random_finset_obj(be, rng, "u", 1, 5)
        c = random_finset_obj(be, rng, "c", 1, 4)
        rmap = random_map
    elif kind == "span":
        be = SpanBackend([f"a{i}" for i in range(rng.randint(2, 4))])
        b = random_span_obj(be, rng, "b", 2, 6)
        w1 = _span_obj_like(be, rng, b, "w")
        w2 = _span_obj_like(be, rng, b, "u")
        c = random_span_obj(be, rng, "c", 1, 4)
        rmap = random_span_map
    else:
        raise ValueError(kind)
    q1 = kernel.coequalizer(rmap(rng, w1, b), rmap(rng, w1, b))
    q2 = kernel.coequalizer(rmap(rng, w2, b), rmap(rng, w2, b))
    _, leg1, leg2 = kernel.pushout(q1, q2)
    on_left = rng.random() < 0.5

    def t(f: Morphism) -> Morphism:
        cid = kernel.identity(c)
        return kernel.tensor_mor(cid, f) if on_left else kernel.tensor_mor(f, cid)

    tq1 = RegularEpi(t(q1.arrow), tuple((t(u), t(v)) for u, v in q1.witnesses))
    tq2 = RegularEpi(t(q2.arrow), tuple((t(u), t(v)) for u, v in q2.witnesses))
    cocone = kernel.compose(t(leg1), tq1.arrow)
    assert kernel.equal_mor(cocone, kernel.compose(t(leg2), tq2.arrow)), \
        "tensored square does not commute"
    joint = kernel.cointersect([tq1, tq2])
    cmp_map = kernel.induce(joint, cocone)
    assert kernel.is_iso(cmp_map), "tensored square is not a pushout"


def lemma2_check(rng: random.Random) -> None:
    """Tensoring two reflexive coequalizer rows gives the grid coequalizer.

    Rows are made reflexive by construction (domain = codomain + extra part,
    maps restricting to the identity).  Verifies: the tensored pair is again
    reflexive; the tensor of the two row coequalizers coequalizes it and the
    comparison map is an iso; and the same object is the cointersection of
    the two one-sided tensored epis.
    """
    be = FinSetBackend()

    def reflexive_row(prefix):
        base = random_finset_obj(be, rng, prefix, 2, 5)
        extra = random_finset_obj(be, rng, prefix + "x", 1, 3)
        cp = kernel.coproduct(base, extra)
        r1 = kernel.copair(cp, kernel.identity(base), random_map(rng, extra, base))
        r2 = kernel.copair(cp, kernel.identity(base), random_map(rng, extra, base))
        return cp.obj, base, r1, r2, cp.inl, kernel.coequalizer(r1, r2)

    a1, a2, h1, h2, s, h = reflexive_row("a")
    b1, b2, k1, k2, t, k = reflexive_row("b")

    pair1 = kernel.tensor_mor(h1, k1)
    pair2 = kernel.tensor_mor(h2, k2)
    section = kernel.tensor_mor(s, t)
    ident = kernel.identity(kernel.tensor_obj(a2, b2))
    assert kernel.equal_mor(kernel.compose(pair1, section), ident)
    assert kernel.equal_mor(kernel.compose(pair2, section), ident)

    hk = kernel.tensor_mor(h.arrow, k.arrow)
    assert kernel.equal_mor(kernel.compose(hk, pair1), kernel.compose(hk, pair2)), \
        "tensored row maps not coequalized"
    grid = kernel.coequalizer(pair1, pair2)
    assert kernel.is_iso(kernel.induce(grid, hk)), \
        "tensor of coequalizers is not the grid coequalizer"

    ida2, idb2 = kernel.identity(a2), kernel.identity(b2)
    left = RegularEpi(kernel.tensor_mor(h.arrow, idb2),
                      tuple((kernel.tensor_mor(u, idb2), kernel.tensor_mor(v, idb2))
                            for u, v in h.witnesses))
    right = RegularEpi(kernel.tensor_mor(ida2, k.arrow),
                       tuple((kernel.tensor_mor(ida2, u), kernel.tensor_mor(ida2, v))
                             for u, v in k.witnesses))
    ci = kernel.cointersect([left, right])
    assert kernel.is_iso(kernel.induce(ci, hk)), \
        "tensor product is not the cointersection of the one-sided epis"


def proposition_check(rng: random.Random) -> None:
    """Coequalizer of the two diagonal legs = cointersection of coequalizers.

    Two reflexive pairs into one object; the grid object collects quadruples
    (x1, x2, x1', x2') with g_i(x_j) = g'_j(x_i') for all i, j; the diagonal
    legs pick the (1,1) and (2,2) corners.  Their coequalizer must be the
    cointersection of the two row coequalizers — same canonical labels.
    """
    be = FinSetBackend()
    a = random_finset_obj(be, rng, "a", 2, 5)

    def reflexive_pair(prefix):
        extra = random_finset_obj(be, rng, prefix, 1, 3)
        cp = kernel.coproduct(a, extra)
        g1 = kernel.copair(cp, kernel.identity(a), random_map(rng, extra, a))
        g2 = kernel.copair(cp, kernel.identity(a), random_map(rng, extra, a))
        return cp.obj, g1, g2

    w, g1, g2 = reflexive_pair("e")
    wp, gp1, gp2 = reflexive_pair("f")

    quads = [(x1, x2, y1, y2)
             for x1 in range(w.size) for x2 in range(w.size)
             for y1 in range(wp.size) for y2 in range(wp.size)
             if g1.table[x1] == gp1.table[y1] and g1.table[x2] == gp2.table[y1]
             and g2.table[x1] == gp1.table[y2] and g2.table[x2] == gp2.table[y2]]
    grid_obj = be.from_labels([f"p{i}" for i in range(len(quads))])
    diag1 = Morphism(grid_obj, a, [int(g1.table[x1]) for x1, _, _, _ in quads])
    diag2 = Morphism(grid_obj, a, [int(g2.table[x2]) for _, x2, _, _ in quads])

    left = kernel.coequalizer(diag1, diag2)
    right = kernel.cointersect([kernel.coequalizer(g1, g2),
                                kernel.coequalizer(gp1, gp2)])
    assert left.cod == right.cod and np.array_equal(left.arrow.table,
                                                    right.arrow.table), \
        "diagonal coequalizer differs from the cointersection"


@dataclass
class SuiteReport:
    name: str
    instances: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"name": self.name, "instances": self.instances,
                "failures": self.failures, "ok": self.ok}


def run_suite(name: str, check, count: int, seed: int) -> SuiteReport:
    """Run `check(rng)` on `count` per-instance seeds derived from `seed`."""
    rep = SuiteReport(name)
    for i in range(count):
        rng = random.Random((seed, name, i).__repr__())
        rep.instances += 1
        try:
            check(rng)
        except AssertionError as exc:
            rep.failures.append(f"instance {i}: {exc}")
    return rep


# --- universal-property instances ---

def codiscrete_monoid(be: SpanBackend) -> engine.MonoidObject:
    """One morphism between every ordered vertex pair; composition is forced."""
    nv = len(be.vertices)
    carrier = be.from_edges([(f"c{s}_{t}", vs, vt)
                             for s, vs in enumerate(be.vertices)
                             for t, vt in enumerate(be.vertices)])
    at = {(int(carrier.src_arr[i]), int(carrier.tgt_arr[i])): i
          for i in range(carrier.size)}
    sq = kernel.tensor_obj(carrier, carrier)
    mult = Morphism(sq, carrier, [at[(int(sq.src_arr[p]), int(sq.tgt_arr[p]))]
                                  for p in range(sq.size)])
    unit = Morphism(be.unit(), carrier, [at[(v, v)] for v in range(nv)])
    return engine.monoid(carrier, mult, unit)


def universal_for(trunc: engine.MonoidTruncation, rng: random.Random):
    """(target, f) for the universal property of an already-computed chain."""
    pointed = trunc.chain.pointed
    be = pointed.backend
    y = pointed.carrier
    if be.name == "finset":
        k = rng.randint(2, 12)
        table = rng.choice([_cyclic_add, _truncated_add, _chain_max])(k)
        target = finset_monoid(be, table)
        f_table = [rng.randrange(k) for _ in range(y.size)]
        f_table[int(pointed.point.table[0])] = 0
        return target, Morphism(y, target.carrier, f_table)
    if be.name == "span":
        target = codiscrete_monoid(be)
        at = {(int(target.carrier.src_arr[i]), int(target.carrier.tgt_arr[i])): i
              for i in range(target.carrier.size)}
        f_table = [at[(int(y.src_arr[i]), int(y.tgt_arr[i]))]
                   for i in range(y.size)]
        return target, Morphism(y, target.carrier, f_table)
    if be.name == "fingrp":
        ab = group_by_name(rng.choice(
            ["z2", "z3", "z4", "v4", "z5", "z6", "z7", "z8", "z4xz2"]))
        carrier = be.from_group(ab)
        mult = Morphism(kernel.tensor_obj(carrier, carrier), carrier,
                        ab.table.ravel())
        target = engine.monoid(mult.cod, mult, Morphism(be.unit(), carrier, [0]))
        homs = be.hom_tables(y, carrier, engine.HOM_BUDGET)
        return target, Morphism(y, carrier, homs[rng.randrange(len(homs))])
    raise ValueError(be.name)


def self_universal(trunc: engine.MonoidTruncation):
    """(stable monoid, canonical map): the chain mapping into its own colimit."""
    chain = trunc.chain
    s = chain.stabilized_at
    if s is None or s < 1:
        raise ValueError("needs a chain stabilized at stage >= 1")
    target = engine.stable_monoid(trunc)
    f = chain.stages[1].epi.arrow
    for t in range(2, s + 1):
        f = kernel.compose(chain.connecting[t], f)
    return target, f


def _cyclic_add(k):
    return [[(i + j) % k for j in range(k)] for i in range(k)]


def _truncated_add(k):
    return [[min(i + j, k - 1) for j in range(k)] for i in range(k)]


def _chain_max(k):
    return [[max(i, j) for j in range(k)] for i in range(k)]


def finset_monoid(be: FinSetBackend, table, prefix: str = "m") -> engine.MonoidObject:
    """Monoid in finite sets from a unital multiplication table (unit = 0)."""
    k = len(table)
    carrier = be.from_labels([f"{prefix}{i}" for i in range(k)])
    sq = kernel.tensor_obj(carrier, carrier)
    mult = Morphism(sq, carrier, [table[i][j] for i in range(k) for j in range(k)])
    unit = Morphism(be.unit(), carrier, [0])
    return engine.monoid(carrier, mult, unit)


def finset_universal_instance(rng: random.Random):
    """(truncation, monoid, pointed map) over a one-letter alphabet."""
    be = FinSetBackend()
    pointed = pointed_set(be, ["a"])
    chain = engine.run_chain(pointed, 4)
    trunc = engine.truncation(chain)
    k = rng.randint(2, 12)
    table = rng.choice([_cyclic_add, _truncated_add, _chain_max])(k)
    target = finset_monoid(be, table)
    f = Morphism(pointed.carrier, target.carrier, [0, rng.randrange(k)])
    return trunc, target, f


def span_universal_instance(rng: random.Random):
    """Target = stable free category on a seeded acyclic graph; f varies edges."""
    while True:
        vertices, edges = random_graph(rng, max_v=4, max_e=4, acyclic=True)
        be = SpanBackend(vertices)
        pointed = pointed_graph(be, edges)
        chain = engine.run_chain(pointed, 5)
        if chain.stabilized_at is None:
            continue
        trunc = engine.truncation(chain)
        target = engine.stable_monoid(trunc)
        if target.carrier.size <= 12:  # keep the uniqueness scan exhaustive
            break
    table = []
    for i in range(pointed.carrier.size):
        if i < len(vertices):  # identity loops must hit the unit classes
            table.append(int(target.unit_arrow.table[i]))
        else:
            ok = np.nonzero((target.carrier.src_arr == pointed.carrier.src_arr[i])
                            & (target.carrier.tgt_arr == pointed.carrier.tgt_arr[i]))[0]
            table.append(int(ok[rng.randrange(ok.size)]))
    f = Morphism(pointed.carrier, target.carrier, table)
    return trunc, target, f


def fingrp_universal_instance(rng: random.Random):
    """Source group from the small catalogue, target an abelian group."""
    be = FinGrpBackend()
    src = group_by_name(rng.choice(
        ["z2", "z3", "z4", "v4", "z5", "z6", "s3", "z8", "d4", "q8"]))
    pointed = pointed_group(be, src)
    chain = engine.run_chain(pointed, 4)
    trunc = engine.truncation(chain)
    ab = group_by_name(rng.choice(
        ["z2", "z3", "z4", "v4", "z5", "z6", "z7", "z8", "z4xz2", "z2xz2xz2"]))
    carrier = be.from_group(ab)
    mult = Morphism(kernel.tensor_obj(carrier, carrier), carrier, ab.table.ravel())
    unit = Morphism(be.unit(), carrier, [0])
    target = engine.monoid(carrier, mult, unit)
    homs = be.hom_tables(pointed.carrier, carrier, engine.HOM_BUDGET)
    f = Morphism(pointed.carrier, carrier, homs[rng.randrange(len(homs))])
    return trunc, target, f


def universal_instance(kind: str, rng: random.Random):
    return {"finset": finset_universal_instance,
            "span": span_universal_instance,
            "fingrp": fingrp_universal_instance}[kind](rng)


def universal_check(kind: str, rng: random.Random) -> None:
    trunc, target, f = universal_instance(kind, rng)
    rep = engine.universal_map(trunc, target, f, uniqueness=True)
    assert rep.unique is True, "universal stage maps are not unique"


# --- action instances ---

def action_for(pointed: engine.PointedObject, rng: random.Random) -> engine.ActionObject:
    """Seeded valid action of `pointed` on a fresh carrier (unit law forced)."""
    be = pointed.backend
    y = pointed.carrier
    if be.name == "finset":
        a = random_finset_obj(be, rng, "t", 1, 5)
        ya = kernel.tensor_obj(y, a)
        unit_elt = int(pointed.point.table[0])
        table = [(i % a.size) if i // a.size == unit_elt else rng.randrange(a.size)
                 for i in range(ya.size)]
        return engine.action(pointed, a, Morphism(ya, a, table))
    if be.name == "span":
        # complete carrier: an edge for every ordered vertex pair, so anchored
        # targets always exist
        a = be.from_edges([(f"t{s}_{t}", vs, vt)
                           for s, vs in enumerate(be.vertices)
                           for t, vt in enumerate(be.vertices)])
        ya = kernel.tensor_obj(y, a)
        left_ids, right_ids = ya.built_from
        forced = set(pointed.point.table.tolist())  # identity-loop elements
        table = []
        for p in range(ya.size):
            if int(left_ids[p]) in forced:  # unit law pins these rows
                table.append(int(right_ids[p]))
            else:
                ok = np.nonzero((a.src_arr == ya.src_arr[p])
                                & (a.tgt_arr == ya.tgt_arr[p]))[0]
                table.append(int(ok[rng.randrange(ok.size)]))
        return engine.action(pointed, a, Morphism(ya, a, table))
    if be.name == "fingrp":
        # act through a hom into an abelian carrier: α(g, a) = c(g)·a
        ab = group_by_name(rng.choice(["z2", "z3", "z4", "v4", "z6", "z8"]))
        a = be.from_group(ab)
        homs = be.hom_tables(y, a, engine.HOM_BUDGET)
        c = homs[rng.randrange(len(homs))]
        ya = kernel.tensor_obj(y, a)
        gi = np.arange(ya.size, dtype=np.int64) // a.size
        ai = np.arange(ya.size, dtype=np.int64) % a.size
        return engine.action(pointed, a, Morphism(ya, a, ab.table[c[gi], ai]))
    raise ValueError(be.name)


def finset_action_instance(rng: random.Random):
    be = FinSetBackend()
    pointed = pointed_set(be, [f"g{i}" for i in range(rng.randint(1, 3))])
    return pointed, action_for(pointed, rng)


def span_action_instance(rng: random.Random):
    vertices, edges = random_graph(rng, max_v=3, max_e=4)
    pointed = pointed_graph(SpanBackend(vertices), edges)
    return pointed, action_for(pointed, rng)


def fingrp_action_instance(rng: random.Random):
    g = group_by_name(rng.choice(["z2", "z4", "v4", "s3", "z6", "d4", "q8"]))
    pointed = pointed_group(FinGrpBackend(), g)
    return pointed, action_for(pointed, rng)


def action_instance(kind: str, rng: random.Random):
    return {"finset": finset_action_instance,
            "span": span_action_instance,
            "fingrp": fingrp_action_instance}[kind](rng)


def alg_free_check(kind: str, rng: random.Random) -> None:
    pointed, act = action_instance(kind, rng)
    assert engine.alg_free_condition(pointed, act) is True
