from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hkmodular.blowup import (
    BlowupRing,
    equivalent,
    eval_top_blowup,
    grr_hilb2,
    oracle_compare,
    oracle_grid,
    pairings,
    pullback,
    pullback_c2,
    pullback_ch,
    relations,
)
from hkmodular.chern import ChernCharacter
from hkmodular.cohomology import TopClass
from hkmodular.errors import PreconditionError
from hkmodular.hilb2 import Hilb2Embedding, Hilb2Params, hilb2_chern, hplus_class, rigid_params

U = ((0, 1), (1, 0))
ints3 = st.lists(st.integers(-4, 4), min_size=3, max_size=3)


def test_exceptional_integrals():
    ring = BlowupRing(U)
    assert ring.e(4).evaluate() == 24
    assert eval_top_blowup(pullback_c2(ring) * pullback_c2(ring)) == 1656


def test_e_squared_against_mixed_pullbacks():
    # α = e + f, β = e + 2f in U: α·β = 3
    ring = BlowupRing(U)
    a, b = ring.s_h2((1, 1)), ring.s_h2((1, 2))
    c = ring.e(2) * ring.pull(1, a) * ring.pull(2, b)
    assert c.evaluate() == -3


def test_odd_powers_of_e_integrate_to_zero():
    ring = BlowupRing(U)
    a = ring.s_h2((1, 1))
    assert (ring.e() * ring.pull(1, a) * ring.pull(2, ring.s_point())).evaluate() == 0
    assert (ring.e(3) * ring.pull(1, a)).evaluate() == 0


def test_eval_needs_pure_top_degree():
    ring = BlowupRing(U)
    with pytest.raises(PreconditionError):
        eval_top_blowup(ring.e(4) + ring.e(2))


def test_pullback_of_hplus():
    p = Hilb2Params(2, 3, "+")
    emb = Hilb2Embedding.standard(3)
    ring = BlowupRing(emb.s_gram)
    h, _ = hplus_class(p, emb)
    expected = ring.sym_pull(ring.s_h2(emb.D)) - ring.e() / 2
    assert equivalent(pullback(ring, h), expected)


@given(ints3, ints3, ints3, ints3)
def test_pullback_doubles_top_integrals(a, b, c, d):
    emb = Hilb2Embedding.standard(3)
    m = emb.model()
    ring = BlowupRing(emb.s_gram)
    xs = [m.h2(v) for v in (a, b, c, d)]
    got = eval_top_blowup(pullback(ring, xs[0]) * pullback(ring, xs[1]) * pullback(ring, xs[2]) * pullback(ring, xs[3]))
    assert got == 2 * m.fujiki4(*xs)
    c2 = pullback_c2(ring)
    assert eval_top_blowup(c2 * pullback(ring, xs[0]) * pullback(ring, xs[1])) == 2 * 30 * m.q(xs[0], xs[1])
    assert eval_top_blowup(pullback(ring, TopClass(1))) == 2


@pytest.mark.parametrize("r0,m0,sign", [(2, 3, "+"), (2, 3, "-"), (3, 2, "+"), (3, 2, "-"), (4, 19, "-")])
def test_oracle_examples(r0, m0, sign):
    rep = oracle_compare(Hilb2Params(r0, m0, sign))
    assert rep.ok
    assert rep.pairings_checked > 0 and rep.relations_checked > 0


def test_relation_pairing_vanishes():
    ring = BlowupRing(U)
    rel = relations(ring, (1, 1), 1)["eta-alpha"]
    for beta in ((1, 0), (0, 1), (2, 3)):
        b = ring.sym_pull(ring.s_h2(beta))
        assert (rel * b).evaluate() == 0


def test_oracle_detects_a_wrong_closed_form():
    p = Hilb2Params(2, 3, "+")
    emb = Hilb2Embedding.standard(3)
    ch = hilb2_chern(p, emb)
    wrong = ChernCharacter(ch.ch0, ch.ch1, ch.ch2, ch.ch3, ch.ch4.value + Fraction(1, 2))
    assert not equivalent(grr_hilb2(p, emb), pullback_ch(wrong, emb))
    wrong3 = ChernCharacter(ch.ch0, ch.ch1, ch.ch2, ch.ch3 * 2, ch.ch4)
    assert not equivalent(grr_hilb2(p, emb), pullback_ch(wrong3, emb))


def test_grr_degree_zero_is_rank():
    p = Hilb2Params(3, 5, "+")
    grr = grr_hilb2(p)
    assert pairings(grr, 0) == pairings(pullback_ch(hilb2_chern(p), Hilb2Embedding.standard(5)), 0)


def test_oracle_grid_is_sorted_and_green():
    reps = oracle_grid(rigid_params(3, 8, r0_min=2))
    assert [(r.r0, r.m0, r.sign) for r in reps] == sorted((r.r0, r.m0, r.sign) for r in reps)
    assert all(r.ok for r in reps)


@pytest.mark.parametrize("r0,m0,sign", [(5, 4, "+"), (5, 9, "-")])
def test_oracle_covers_isotropic_h(r0, m0, sign):
    p = Hilb2Params(r0, m0, sign)
    assert hplus_class(p)[1] == 0
    assert oracle_compare(p).ok
