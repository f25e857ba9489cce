"""Backend-generic kernel: composition, tensors, quotients, colimits.

FinSet is the ambient category here; the span/group backends get their own
modules.  Random maps come from hypothesis, quotients are cross-checked
against the sweep-to-fixpoint oracle.
"""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from freemonoid import kernel, oracles
from freemonoid.finset import FinSetBackend
from freemonoid.kernel import (
    NotComposable,
    NotInduced,
    NotInvertible,
    NotParallel,
    RegularEpi,
    ValidationError,
)

BE = FinSetBackend()


def obj(n):
    return BE.from_labels([f"x{i}" for i in range(n)])


def mor(dom, cod, table):
    return kernel.morphism(obj(dom), obj(cod), table)


@st.composite
def maps(draw, max_dom=6, max_cod=6):
    n = draw(st.integers(1, max_dom))
    m = draw(st.integers(1, max_cod))
    table = draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    return mor(n, m, table)


@st.composite
def parallel_pairs(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(1, max_n))
    t1 = draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    t2 = draw(st.lists(st.integers(0, m - 1), min_size=n, max_size=n))
    d, c = obj(n), obj(m)
    return kernel.morphism(d, c, t1), kernel.morphism(d, c, t2)


# --- composition ---

def test_compose_tables():
    f = mor(3, 2, [0, 1, 1])
    g = kernel.morphism(f.cod, obj(4), [3, 0])
    assert kernel.compose(g, f).table.tolist() == [3, 0, 0]


def test_compose_requires_matching_objects():
    f = mor(3, 2, [0, 1, 1])
    g = mor(3, 2, [0, 0, 0])
    with pytest.raises(NotComposable):
        kernel.compose(g, f)


@given(maps())
def test_identity_laws(f):
    assert kernel.equal_mor(kernel.compose(f, kernel.identity(f.dom)), f)
    assert kernel.equal_mor(kernel.compose(kernel.identity(f.cod), f), f)


def test_morphism_validates_range():
    with pytest.raises(ValidationError):
        mor(2, 2, [0, 5])
    with pytest.raises(ValidationError):
        mor(3, 2, [0, 1])  # wrong length


# --- isos ---

def test_is_iso_and_inverse():
    f = mor(3, 3, [2, 0, 1])
    assert kernel.is_iso(f)
    assert kernel.compose(kernel.inverse(f), f).table.tolist() == [0, 1, 2]
    assert not kernel.is_iso(mor(3, 3, [0, 0, 1]))
    assert not kernel.is_iso(mor(2, 3, [0, 1]))
    with pytest.raises(NotInvertible):
        kernel.inverse(mor(3, 3, [0, 0, 1]))


# --- tensor ---

def test_tensor_obj_sizes():
    assert kernel.tensor_obj(obj(2), obj(3)).size == 6
    assert kernel.tensor_obj(obj(2), BE.unit()).size == 2
    assert kernel.power_obj(obj(3), 0).size == 1
    assert kernel.power_obj(obj(3), 4).size == 81


@given(maps(4, 4), maps(4, 4), maps(4, 4), maps(4, 4))
def test_tensor_interchange(f1, f2, g1, g2):
    # (g1 ∘ f1) ⊗ (g2 ∘ f2) == (g1 ⊗ g2) ∘ (f1 ⊗ f2), when composable
    g1 = kernel.morphism(f1.cod, g1.cod, np.resize(g1.table, f1.cod.size))
    g2 = kernel.morphism(f2.cod, g2.cod, np.resize(g2.table, f2.cod.size))
    lhs = kernel.tensor_mor(kernel.compose(g1, f1), kernel.compose(g2, f2))
    rhs = kernel.compose(kernel.tensor_mor(g1, g2), kernel.tensor_mor(f1, f2))
    assert kernel.equal_mor(lhs, rhs)


def test_power_iso_is_identity_table():
    base = obj(3)
    po = kernel.power_iso(2, 1, base)
    assert po.dom == kernel.tensor_obj(kernel.power_obj(base, 2), base)
    assert po.cod == kernel.power_obj(base, 3)
    assert po.table.tolist() == list(range(27))


# --- coequalizers ---

@given(parallel_pairs())
def test_coequalizer_matches_oracle(pair):
    f, g = pair
    q = kernel.coequalizer(f, g)
    expected = oracles.brute_coequalizer_classes(
        f.cod.size, [(f.table.tolist(), g.table.tolist())])
    assert q.arrow.table.tolist() == expected
    assert q.cod.size == len(set(expected))


@given(parallel_pairs(), parallel_pairs())
def test_cointersection_is_joint_quotient(p1, p2):
    f1, g1 = p1
    n = f1.cod.size
    # rebase the second pair onto the same codomain
    f2 = kernel.morphism(p2[0].dom, f1.cod, p2[0].table % n)
    g2 = kernel.morphism(p2[0].dom, f1.cod, p2[1].table % n)
    q1, q2 = kernel.coequalizer(f1, g1), kernel.coequalizer(f2, g2)
    joint = kernel.cointersect([q1, q2])
    expected = oracles.brute_coequalizer_classes(
        n, [(f1.table.tolist(), g1.table.tolist()),
            (f2.table.tolist(), g2.table.tolist())])
    assert joint.arrow.table.tolist() == expected
    # the joint quotient factors through each leg
    for q in (q1, q2):
        u = kernel.induce(q, joint.arrow)
        assert kernel.equal_mor(kernel.compose(u, q.arrow), joint.arrow)


def test_pushout_legs_commute():
    f = mor(4, 4, [1, 1, 2, 3])
    g = kernel.morphism(f.dom, f.cod, [0, 1, 2, 2])
    h = kernel.morphism(f.dom, f.cod, [0, 1, 3, 3])
    q1 = kernel.coequalizer(f, g)
    q2 = kernel.coequalizer(f, h)
    joint, l1, l2 = kernel.pushout(q1, q2)
    assert kernel.equal_mor(kernel.compose(l1, q1.arrow), joint.arrow)
    assert kernel.equal_mor(kernel.compose(l2, q2.arrow), joint.arrow)


def test_induce_rejects_non_factoring_map():
    f = mor(3, 3, [0, 0, 2])
    g = kernel.identity(f.dom)
    q = kernel.coequalizer(f, g)  # merges x0 with x1... nothing else
    h = kernel.morphism(f.dom, obj(3), [0, 1, 2])
    with pytest.raises(NotInduced, match="identified by the quotient"):
        kernel.induce(q, h)


def test_induce_unique_factorization():
    f = mor(4, 4, [1, 0, 2, 3])
    q = kernel.coequalizer(f, kernel.identity(f.dom))
    h = kernel.morphism(f.dom, obj(2), [0, 0, 1, 1])
    u = kernel.induce(q, h)
    assert kernel.equal_mor(kernel.compose(u, q.arrow), h)


def test_joint_coequalizer_needs_pairs():
    with pytest.raises(ValidationError):
        kernel.joint_coequalizer([])
    f = mor(2, 3, [0, 1])
    g = mor(2, 2, [0, 1])
    with pytest.raises(NotParallel):
        kernel.coequalizer(f, g)


def test_cointersect_identity_epis():
    x = obj(3)
    joint = kernel.cointersect([kernel.identity_epi(x), kernel.identity_epi(x)])
    assert joint.cod.size == 3


# --- regular-epi validation ---

def test_regular_epi_rejects_non_surjection():
    with pytest.raises(ValidationError, match="surjective"):
        RegularEpi(mor(2, 3, [0, 1]), ())


def test_regular_epi_rejects_bad_witness():
    x = obj(3)
    arrow = kernel.morphism(x, obj(2), [0, 0, 1])
    u = kernel.morphism(obj(1), x, [0])
    v = kernel.morphism(obj(1), x, [2])
    with pytest.raises(ValidationError, match="coequalize"):
        RegularEpi(arrow, ((u, v),))


# --- coproducts ---

def test_coproduct_copair_roundtrip():
    x, y = obj(2), obj(3)
    cp = kernel.coproduct(x, y)
    assert cp.obj.size == 5
    f = kernel.morphism(x, obj(2), [1, 0])
    g = kernel.morphism(y, obj(2), [0, 0, 1])
    h = kernel.copair(cp, f, g)
    assert kernel.equal_mor(kernel.compose(h, cp.inl), f)
    assert kernel.equal_mor(kernel.compose(h, cp.inr), g)


def test_copair_rejects_mismatched_legs():
    cp = kernel.coproduct(obj(2), obj(3))
    f = kernel.morphism(obj(2), obj(2), [0, 1])
    g = kernel.morphism(obj(3), obj(3), [0, 1, 2])
    with pytest.raises(NotComposable):
        kernel.copair(cp, f, g)
