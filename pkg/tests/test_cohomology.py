import itertools
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hkmodular.cohomology import FujikiModel, H2Class, H4Class, TopClass, embed_class, todd_chi
from hkmodular.errors import PreconditionError

from conftest import small_fracs

h2_3 = st.lists(small_fracs, min_size=3, max_size=3).map(lambda v: H2Class(tuple(v)))


def test_todd_constant():
    assert todd_chi(828, 324) == 3


def test_todd_inconsistent_constants_rejected():
    with pytest.raises(PreconditionError):
        FujikiModel.from_gram([[2]], c2_sq=829)


def test_fujiki4_on_delta(k3sq):
    delta = k3sq.h2([0, 0, 1])
    assert k3sq.q(delta) == -2
    assert k3sq.fujiki4(delta, delta, delta, delta) == 12


def test_fujiki4_zero_argument(k3sq):
    a = k3sq.h2([1, 2, 3])
    assert k3sq.fujiki4(a, a, a, k3sq.zero(2)) == 0


def test_square_and_fourth_power():
    m = FujikiModel.from_gram([[22]])
    h = m.h2([1])
    hh = m.multiply(h, h)
    assert hh == H4Class(((1,),), 0)
    assert m.multiply(hh, hh) == TopClass(3 * 22**2)


def test_c2_integrals(k3sq):
    c2 = k3sq.c2()
    assert k3sq.integrate_top(c2, c2) == 828
    delta = k3sq.h2([0, 0, 1])
    assert k3sq.integrate_top(c2, delta, delta) == -60
    m = FujikiModel.from_gram([[22]])
    assert m.integrate_top(m.c2(), m.h2([1]), m.h2([1])) == 660


def test_integrate_top_requires_degree_8(k3sq):
    with pytest.raises(PreconditionError):
        k3sq.integrate_top(k3sq.c2(), k3sq.h2([1, 0, 0]))
    with pytest.raises(PreconditionError):
        k3sq.multiply(k3sq.c2(), k3sq.multiply(k3sq.c2(), k3sq.h2([1, 0, 0])))


@given(h2_3, h2_3, h2_3, h2_3)
def test_top_products_are_associative(a, b, c, d):
    m = FujikiModel.from_gram([[0, 1, 0], [1, 0, 0], [0, 0, -2]])
    expected = m.fujiki4(a, b, c, d)
    for perm in itertools.permutations((a, b, c, d)):
        assert m.product(*perm).value == expected
    assert m.multiply(m.multiply(a, b), m.multiply(c, d)).value == expected


@given(h2_3, h2_3, small_fracs)
def test_c2_pairs_through_any_bracketing(a, b, t):
    m = FujikiModel.from_gram([[0, 1, 0], [1, 0, 0], [0, 0, -2]])
    c2 = m.c2(t)
    expected = 30 * t * m.q(a, b)
    assert m.multiply(c2, m.multiply(a, b)).value == expected
    assert m.multiply(m.multiply(c2, a), b).value == expected
    assert m.multiply(b, m.multiply(a, c2)).value == expected


@given(h2_3, h2_3, h2_3)
def test_multiplication_is_commutative(a, b, c):
    m = FujikiModel.from_gram([[0, 1, 0], [1, 0, 0], [0, 0, -2]])
    ab = m.multiply(a, b)
    assert ab == m.multiply(b, a)
    assert m.multiply(ab, c) == m.multiply(c, ab)


def test_exp_pieces(k3sq):
    line = k3sq.h2([1, 1, 0])
    pieces = k3sq.exp(line)
    assert pieces[1] == line
    assert pieces[4].value == Fraction(3 * 2**2, 24)


def test_embed_preserves_integrals():
    src = FujikiModel.from_gram([[2]])
    tgt = FujikiModel.from_gram([[0, 1, 0], [1, 0, 0], [0, 0, -2]])
    img = [[1, 1, 0]]
    h = src.h2([1])
    x = src.multiply(src.multiply(h, h), h)
    pushed = embed_class(x, img)
    assert tgt.multiply(pushed, tgt.h2(img[0])).value == src.multiply(x, h).value
    c = src.c2(3)
    assert embed_class(c, img).c2 == 3


def test_mixed_rank_classes_rejected():
    with pytest.raises(PreconditionError):
        H2Class((1, 2)) + H2Class((1,))
