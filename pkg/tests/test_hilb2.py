import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hkmodular.chern import chi_end0, discriminant, modularity_d
from hkmodular.errors import PreconditionError
from hkmodular.hilb2 import (
    Hilb2Embedding,
    Hilb2Params,
    MukaiVector,
    catalog,
    chi_hom,
    dictionary,
    dictionary_via_hilb2,
    econ,
    hilb2_chern,
    hplus_class,
    m0_from_e,
    modular_package,
    mukai_pair,
    mukai_square,
    rigid_params,
)
from hkmodular.lattice import GramLattice

NS3 = GramLattice([[6]])


def test_mukai_examples():
    v = MukaiVector(2, (1,), 2, NS3)
    assert mukai_square(v) == -2
    assert chi_hom(v, v) == 2
    u = GramLattice([[0, 1], [1, 0]])
    assert mukai_square(MukaiVector(1, (0, 0), 1, u)) == -2
    w = MukaiVector(0, (1,), 0, GramLattice([[2]]))
    assert mukai_pair(w, w) == 2


def test_hplus_examples():
    p = Hilb2Params(2, 3, "+")
    h, q = hplus_class(p)
    assert q == Fraction(11, 2)
    emb = Hilb2Embedding.standard(3)
    assert emb.model().q(2 * h) == 22
    _, q = hplus_class(Hilb2Params(2, 1, "+"))
    assert q == Fraction(3, 2) and 4 * q == 6
    h, _ = hplus_class(Hilb2Params(3, 2, "+"))
    assert all(c.denominator == 1 for c in h.coords)
    assert h.coords[-1] == -1


def test_rigid_params_gate():
    with pytest.raises(PreconditionError):
        Hilb2Params(2, 2).s0
    with pytest.raises(PreconditionError):
        Hilb2Params(2, 3, "x")
    assert Hilb2Params(2, 3).s0 == 2


@pytest.mark.parametrize(
    "r0,m0,delta,d,a",
    [(2, 3, 1, 30, 120), (3, 2, 6, 180, 3645), (1, 4, 0, 0, 0)],
)
def test_modular_package_examples(r0, m0, delta, d, a):
    p = Hilb2Params(r0, m0, "+")
    emb = Hilb2Embedding.standard(m0)
    pkg = modular_package(p, hilb2_chern(p, emb), emb.model())
    assert (pkg.delta_c2_coeff, pkg.d, pkg.a, pkg.a_from_d) == (delta, d, a, a)


@given(st.sampled_from(rigid_params(5, 40, r0_min=2)))
def test_hilb2_bundles_are_rigid_and_modular(p):
    emb = Hilb2Embedding.standard(p.m0)
    m = emb.model()
    ch = hilb2_chern(p, emb)
    r = p.r0**2
    assert chi_end0(m, ch) == 0
    assert discriminant(m, ch) == m.c2(Fraction(r * (r - 1), 12))
    assert modularity_d(m, ch) == 5 * math.comb(r, 2)


def test_line_embedding_agrees_with_standard():
    p = Hilb2Params(3, 5, "-")
    for emb in (Hilb2Embedding.standard(5), Hilb2Embedding.line(5)):
        assert chi_end0(emb.model(), hilb2_chern(p, emb)) == 0


def test_dictionary_dv():
    de = dictionary(22, 2, 2)
    assert de.econ_ok and (de.m0, de.s0) == (3, 2)
    assert de.ch3_coeff == Fraction(-1, 264) and de.ch4 == Fraction(-1, 4)
    assert de.h_div == 2 and de.h_primitive
    assert de.ch == catalog()["dv-Q"].ch


def test_dictionary_cubic():
    de = dictionary(6, 2, 2)
    assert (de.m0, de.s0) == (1, 1)
    assert de.ch3_coeff == Fraction(-1, 24) and de.ch4 == Fraction(3, 4)
    assert de.ch == catalog()["cubic-lines-Q"].ch


def test_dictionary_rejects_bad_congruence():
    assert not econ(7, 2)
    with pytest.raises(PreconditionError):
        dictionary(7, 2, 2)
    with pytest.raises(PreconditionError):
        dictionary(22, 2, 1)


def _admissible(r0, bound):
    i = 2 - r0 % 2
    return [(e, r0, i) for e in range(1, bound) if econ(e, r0)]


@given(st.sampled_from([t for r0 in range(1, 7) for t in _admissible(r0, 300)]))
def test_dictionary_agrees_with_hilb2(t):
    de = dictionary(*t)
    pushed, direct = dictionary_via_hilb2(de)
    assert pushed == direct


@given(st.integers(1, 600), st.integers(1, 10))
def test_congruence_equivalent_to_integrality(e, r0):
    i = 2 - r0 % 2
    m0 = m0_from_e(e, r0, i)
    integral = m0.denominator == 1 and (m0.numerator + 1) % r0 == 0
    assert econ(e, r0) == integral


@given(st.integers(1, 400), st.integers(1, 6), st.sampled_from(["+", "-"]))
def test_dictionary_minus_sign(e, r0, sign):
    i = 2 - r0 % 2
    m0 = m0_from_e(e, r0, i, sign)
    ok = m0.denominator == 1 and (m0.numerator + 1) % r0 == 0 and (sign == "-" or econ(e, r0))
    if not ok:
        with pytest.raises(PreconditionError):
            dictionary(e, r0, i, sign)
        return
    de = dictionary(e, r0, i, sign)
    pushed, direct = dictionary_via_hilb2(de)
    assert pushed == direct


def test_catalog_entries():
    cat = catalog()
    assert list(cat) == ["cubic-lines-Q", "dv-Q"]
    for entry in cat.values():
        assert entry.ch.ch0 == 4
        assert chi_end0(entry.model, entry.ch) == 0


def test_congruence_scan():
    from hkmodular.hilb2 import congruence_scan

    rows = congruence_scan(120, 4)
    assert len(rows) == 480
    assert all(r.econ_ok == r.rigid for r in rows)
    assert all(r.chi_end0 == 0 for r in rows if r.rigid)


@given(st.sampled_from([p for p in rigid_params(6, 60) if hplus_class(p)[1] != 0]))
def test_q_free_ch3_matches_closed_form(p):
    from hkmodular.cohomology import H2Class
    from hkmodular.hilb2 import ch3_coefficient

    emb = Hilb2Embedding.standard(p.m0)
    m = emb.model()
    h, q = hplus_class(p, emb)
    h3 = m.power(h, 3)
    alt = h3 / (6 * p.r0) - m.multiply(m.c2(Fraction(p.r0**2 - 1, 24 * p.r0)), h)
    for i in range(3):
        a = H2Class.basis(i, 3)
        assert m.multiply(alt, a) == m.multiply(ch3_coefficient(p.r0, q) * h3, a)
