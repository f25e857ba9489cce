"""Stage chain over the anchored backend = path quotients (free categories)."""

import pytest

from freemonoid import engine, kernel, oracles
from freemonoid.span import SpanBackend, pointed_graph
from helpers import path_stage_labels

CHAIN_V = ["a", "b", "c"]
CHAIN_E = [("e", "a", "b"), ("f", "b", "c")]


def chain_for(vertices, edges, stages=5, **kw):
    return engine.run_chain(pointed_graph(SpanBackend(vertices), edges), stages, **kw)


def test_chain_graph_frozen_shape():
    chain = chain_for(CHAIN_V, CHAIN_E)
    assert chain.sizes() == [3, 5, 6, 6, 6]
    assert chain.stabilized_at == 2
    assert chain.top == 4  # early stop right after certification
    assert chain.stage_obj(2).labels() == [
        "(id_a,id_a)", "(id_a,e)", "(id_b,id_b)",
        "(id_b,f)", "(id_c,id_c)", "(e,f)",
    ]
    assert chain.connecting[3].table.tolist() == [0, 1, 3, 4, 5, 2]


def test_stage_labels_match_oracle_paths():
    for vertices, edges in (
        (CHAIN_V, CHAIN_E),
        (["a"], [("u", "a", "a"), ("v", "a", "a")]),
        (["x", "y"], [("p", "x", "y"), ("q", "x", "y")]),
    ):
        chain = chain_for(vertices, edges, 4)
        for n in range(chain.top + 1):
            paths = oracles.enumerate_paths(vertices, edges, n)
            assert chain.stage_obj(n).labels() == path_stage_labels(paths, n)


def test_edgeless_graph_is_stable_at_zero():
    chain = chain_for(["a", "b", "c"], [])
    assert chain.stabilized_at == 0
    assert chain.sizes() == [3, 3, 3]
    assert chain.stage_obj(0).labels() == ["id_a", "id_b", "id_c"]


def test_single_loop_never_stabilizes():
    chain = chain_for(["a"], [("l", "a", "a")], 4)
    assert chain.stage_obj(4).size == 5
    assert chain.stabilized_at is None
    assert chain.sizes() == [1, 2, 3, 4, 5]


def test_longest_path_four_needs_probe():
    v = ["a", "b", "c", "d", "e"]
    e = [("p", "a", "b"), ("q", "b", "c"), ("r", "c", "d"), ("s", "d", "e")]
    chain = chain_for(v, e, 5)
    assert oracles.longest_path_length(v, e) == 4
    assert chain.top == 6  # one probe stage past the request
    assert chain.stabilized_at == 4
    assert chain.sizes() == [5, 9, 12, 14, 15, 15, 15]


def test_longest_path_five_stays_open_at_default_bound():
    v = ["a", "b", "c", "d", "e", "f"]
    e = [("p", "a", "b"), ("q", "b", "c"), ("r", "c", "d"),
         ("s", "d", "e"), ("t", "e", "f")]
    chain = chain_for(v, e, 5)
    # the graph is acyclic but certification needs two isos past stage 5
    assert chain.stabilized_at is None
    assert chain.top == 5


def test_quotient_classes_are_padded_paths():
    chain = chain_for(CHAIN_V, CHAIN_E, 3)
    pointed = chain.pointed
    nv = len(CHAIN_V)
    for n in range(chain.top + 1):
        paths = oracles.enumerate_paths(CHAIN_V, CHAIN_E, n)
        pidx = {(s, p): j for j, (s, p, _) in enumerate(paths)}
        yn = kernel.power_obj(pointed.carrier, n)
        q = chain.stages[n].epi.arrow.table
        for e in range(yn.size):
            atoms, src, _ = yn.elements[e]
            labs = tuple(pointed.carrier.label(a) for a in atoms if a >= nv)
            assert q[e] == pidx[(CHAIN_V[src], labs)]


def test_mult_is_path_concatenation():
    chain = chain_for(CHAIN_V, CHAIN_E)
    trunc = engine.truncation(chain)
    paths = {n: oracles.enumerate_paths(CHAIN_V, CHAIN_E, n)
             for n in range(chain.top + 1)}
    pidx = {n: {(s, p): j for j, (s, p, _) in enumerate(ps)}
            for n, ps in paths.items()}
    for (m, n), mu in trunc.mult.items():
        if mu.dom.built_from is None:
            continue
        li, ri = mu.dom.built_from
        for p in range(mu.dom.size):
            sm, pm, _ = paths[m][int(li[p])]
            _, pn, _ = paths[n][int(ri[p])]
            assert mu.table[p] == pidx[m + n][(sm, pm + pn)]


def test_stable_monoid_is_category_composition():
    chain = chain_for(CHAIN_V, CHAIN_E)
    mon = engine.stable_monoid(engine.truncation(chain))
    assert mon.carrier.size == 6
    paths = oracles.enumerate_paths(CHAIN_V, CHAIN_E, 2)
    pidx = {(s, p): j for j, (s, p, _) in enumerate(paths)}
    li, ri = mon.mult.dom.built_from
    assert mon.mult.dom.size == 10  # composable pairs only
    for p in range(mon.mult.dom.size):
        sm, pm, _ = paths[int(li[p])]
        _, pn, _ = paths[int(ri[p])]
        assert mon.mult.table[p] == pidx[(sm, pm + pn)]


def test_monoid_laws_hold_on_loops():
    chain = chain_for(["a"], [("u", "a", "a"), ("v", "a", "a")], 3)
    rep = engine.monoid_laws(engine.truncation(chain))
    assert rep.ok and not rep.failures


def test_dubuc_mode_agrees_on_graphs():
    for vertices, edges in (
        (CHAIN_V, CHAIN_E),
        (["a"], [("u", "a", "a"), ("v", "a", "a")]),
        (["a", "b"], [("p", "a", "b"), ("q", "b", "a")]),
    ):
        a = chain_for(vertices, edges, 4)
        b = engine.dubuc_chain(pointed_graph(SpanBackend(vertices), edges), 4)
        assert engine.chains_agree(a, b)


def test_action_condition_on_graph():
    be = SpanBackend(["a", "b"])
    p = pointed_graph(be, [("e", "a", "b")])
    # one carrier edge per anchor pair, so acting = re-anchoring the composite
    a_obj = be.from_edges([("t0", "a", "b"), ("t1", "b", "b")])
    by_anchor = {(int(a_obj.src_arr[i]), int(a_obj.tgt_arr[i])): i
                 for i in range(a_obj.size)}
    yxa = kernel.tensor_obj(p.carrier, a_obj)
    table = [by_anchor[(int(yxa.src_arr[i]), int(yxa.tgt_arr[i]))]
             for i in range(yxa.size)]
    act = engine.action(p, a_obj, kernel.morphism(yxa, a_obj, table))
    assert engine.alg_free_condition(p, act)
