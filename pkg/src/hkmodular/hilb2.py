"""Numerical shadow of the bundles F[2]^± on the Hilbert square of a K3 surface.

Starting from a rigid bundle ``F`` on a K3 surface ``S`` with Mukai vector
``(r0, D, s0)``, ``D^2 = 2 m0`` and ``m0 + 1 = r0 s0``, the bundles
``F[2]^±`` on ``S^[2]`` have rank ``r0^2`` and first Chern class
``r0 h^±`` where ``h^± = μ(D) - ((r0 ∓ 1)/2) δ``.  This module computes
their Chern characters, the resulting modularity data, the translation
between ``(e, r0, i)`` and ``(m0, s0)``, and a small catalog of known
examples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chern import (
    ChernCharacter,
    a_value,
    chern_classes_from_character,
    chi_end0,
    discriminant,
    modularity_d,
)
from .cohomology import FujikiModel, H2Class, embed_class
from .errors import ConsistencyError, PreconditionError
from .lattice import GramLattice

U_GRAM = ((0, 1), (1, 0))


# -- Mukai vectors --------------------------------------------------------------


@dataclass(frozen=True)
class MukaiVector:
    r: int
    D: tuple[int, ...]
    s: int
    ns: GramLattice

    def __post_init__(self) -> None:
        object.__setattr__(self, "D", tuple(int(x) for x in self.D))
        if len(self.D) != self.ns.rank:
            raise PreconditionError("D does not live in the given Néron-Severi lattice")


def _same_ns(v: MukaiVector, w: MukaiVector) -> None:
    if v.ns != w.ns:
        raise PreconditionError("Mukai vectors over different Néron-Severi lattices")


def mukai_pair(v: MukaiVector, w: MukaiVector) -> int:
    _same_ns(v, w)
    return v.ns.pair(v.D, w.D) - v.r * w.s - w.r * v.s


def mukai_square(v: MukaiVector) -> int:
    return mukai_pair(v, v)


def chi_hom(v: MukaiVector, w: MukaiVector) -> int:
    """``χ(F, E) = -<v(F), v(E)>``."""
    return -mukai_pair(v, w)


# -- parameters and lattice embedding ---------------------------------------------


@dataclass(frozen=True)
class Hilb2Params:
    r0: int
    m0: int
    sign: str = "+"

    def __post_init__(self) -> None:
        if self.sign not in ("+", "-"):
            raise PreconditionError(f"sign must be '+' or '-', got {self.sign!r}")
        if self.r0 < 1:
            raise PreconditionError("r0 must be a positive integer")

    @property
    def shift(self) -> Fraction:
        """Coefficient ``(r0 ∓ 1)/2`` of ``δ`` in ``h^±``."""
        return Fraction(self.r0 - 1 if self.sign == "+" else self.r0 + 1, 2)

    @property
    def rigid(self) -> bool:
        return (self.m0 + 1) % self.r0 == 0

    @property
    def s0(self) -> int:
        if not self.rigid:
            raise PreconditionError(f"r0={self.r0} does not divide m0+1={self.m0 + 1}, so χ(End F) != 2")
        return (self.m0 + 1) // self.r0


@dataclass(frozen=True)
class Hilb2Embedding:
    """H^2 sublattice ``μ(L_S) ⊕ Z δ`` of ``S^[2]`` with ``D ∈ L_S``.

    ``s_gram`` is the intersection form on a sublattice ``L_S`` of
    ``H^2(S)``; the default is a hyperbolic plane ``U`` with ``D = u1 + m0 u2``.
    Since ``U`` is unimodular, divisibilities computed in this model agree
    with those in the full lattice ``H^2(S^[2], Z)``.
    """

    s_gram: tuple[tuple[int, ...], ...]
    D: tuple[int, ...]

    @classmethod
    def standard(cls, m0: int) -> "Hilb2Embedding":
        return cls(U_GRAM, (1, m0))

    @classmethod
    def line(cls, m0: int) -> "Hilb2Embedding":
        """``L_S = Z D`` only."""
        return cls(((2 * m0,),), (1,))

    @property
    def s_lattice(self) -> GramLattice:
        return GramLattice(self.s_gram)

    @property
    def n_s(self) -> int:
        return len(self.s_gram)

    @property
    def m0(self) -> Fraction:
        return Fraction(self.s_lattice.square(self.D), 2)

    def lattice(self) -> GramLattice:
        n = self.n_s
        rows = [list(r) + [0] for r in self.s_gram]
        rows.append([0] * n + [-2])
        return GramLattice(tuple(tuple(r) for r in rows))

    def model(self) -> FujikiModel:
        return FujikiModel(self.lattice())

    def mu(self, x: Sequence) -> H2Class:
        return H2Class(tuple(x) + (0,))

    @property
    def delta(self) -> H2Class:
        return H2Class.basis(self.n_s, self.n_s + 1)

    @property
    def mu_D(self) -> H2Class:
        return self.mu(self.D)


def hplus_class(p: Hilb2Params, emb: Hilb2Embedding | None = None) -> tuple[H2Class, Fraction]:
    """``h^±`` and its BBF square."""
    emb = emb or Hilb2Embedding.standard(p.m0)
    if emb.m0 != p.m0:
        raise PreconditionError(f"embedding has D^2 = {2 * emb.m0}, expected {2 * p.m0}")
    model = emb.model()
    h = emb.mu_D - p.shift * emb.delta
    qh = model.q(h)
    if 2 * p.m0 != qh + 2 * p.shift**2:
        raise ConsistencyError(f"2 m0 = q(h) + (r0 ∓ 1)^2/2 fails: {2 * p.m0} vs {qh} + {2 * p.shift**2}")
    return h, qh


def ch3_coefficient(r0: int, q: Fraction) -> Fraction:
    """Coefficient of ``(h^±)^3`` in ``ch_3(F[2]^±)``, with ``q = q(h^±)``."""
    R = r0 * r0 - 1
    return (2 * q - 5 * R) / (12 * r0 * q)


def ch4_value(r0: int, q: Fraction) -> Fraction:
    R = r0 * r0 - 1
    return (4 * q * q - 20 * R * q + R * (21 * r0 * r0 - 25)) / (32 * r0 * r0)


def hilb2_chern(p: Hilb2Params, emb: Hilb2Embedding | None = None) -> ChernCharacter:
    """Closed-form Chern character of ``F[2]^±``."""
    emb = emb or Hilb2Embedding.standard(p.m0)
    p.s0  # raises unless χ(End F) = 2
    h, q = hplus_class(p, emb)
    model = emb.model()
    r0 = p.r0
    h2 = model.multiply(h, h)
    h3 = model.multiply(h2, h)
    if q:
        ch3 = ch3_coefficient(r0, q) * h3
    else:
        # h^3 pairs like (q/10) c2 h, so the closed form equals this q-free class
        ch3 = h3 / (6 * r0) - model.multiply(model.c2(Fraction(r0 * r0 - 1, 24 * r0)), h)
    return ChernCharacter(r0 * r0, r0 * h, h2 / 2 - model.c2(Fraction(r0 * r0 - 1, 24)), ch3, ch4_value(r0, q))


@dataclass(frozen=True)
class ModularPackage:
    rank: int
    delta_c2_coeff: Fraction
    d: Fraction
    a: Fraction
    a_from_d: Fraction


def modular_package(p: Hilb2Params, ch: ChernCharacter, model: FujikiModel) -> ModularPackage:
    """Check that ``F[2]^±`` is modular with the expected ``Δ``, ``d`` and ``a``.

    Any mismatch raises :class:`ConsistencyError`.
    """
    r = p.r0 * p.r0
    if ch.ch0 != r:
        raise ConsistencyError(f"rank {ch.ch0} != r0^2 = {r}")
    delta = discriminant(model, ch)
    expected = model.c2(Fraction(r * (r - 1), 12))
    if delta != expected:
        raise ConsistencyError(f"Δ = {delta} is not (r(r-1)/12) c2")
    d = modularity_d(model, ch)
    if d != 5 * math.comb(r, 2):
        raise ConsistencyError(f"d(F) = {d}, expected 5 C(r,2) = {5 * math.comb(r, 2)}")
    a_closed = Fraction(5, 8) * p.r0**6 * (p.r0**2 - 1)
    a_direct = a_value(model, ch, d)
    if a_closed != a_direct:
        raise ConsistencyError(f"a(F): closed form {a_closed} != r^2 d / 4 c_X = {a_direct}")
    return ModularPackage(r, delta.c2, d, a_closed, a_direct)


# -- dictionary (e, r0, i) <-> (m0, s0) -----------------------------------------


def econ(e: int, r0: int) -> bool:
    """Congruence on ``e`` for existence of the rank ``r0^2`` bundle."""
    c = r0 % 4
    if c == 0:
        return (e - (4 * r0 - 10)) % (8 * r0) == 0
    if c == 1:
        return (2 * e - (r0 - 5)) % (4 * r0) == 0
    if c == 2:
        return (e + 10) % (8 * r0) == 0
    return (2 * e + (r0 + 5)) % (4 * r0) == 0


def m0_from_e(e: int, r0: int, i: int, sign: str = "+") -> Fraction:
    """``m0`` from ``q(i h^±) = e``: ``2 m0 = e / i^2 + (r0 ∓ 1)^2 / 2``."""
    shift = r0 - 1 if sign == "+" else r0 + 1
    return Fraction(e, 2 * i * i) + Fraction(shift * shift, 4)


def polarized_ch3_coefficient(e: int, r0: int) -> Fraction:
    """Coefficient of ``h^3`` in ``ch_3`` in terms of ``e = q(h)``."""
    R = r0 * r0 - 1
    if r0 % 2:
        return Fraction(2 * e - 5 * R, 12 * r0 * e)
    return Fraction(e - 10 * R, 48 * r0 * e)


def polarized_ch4(e: int, r0: int) -> Fraction:
    R = r0 * r0 - 1
    if r0 % 2:
        return Fraction(4 * e * e - 20 * R * e + R * (21 * r0 * r0 - 25), 32 * r0 * r0)
    return Fraction(e * e - 20 * R * e + 4 * R * (21 * r0 * r0 - 25), 128 * r0 * r0)


def polarization_model(e: int) -> FujikiModel:
    """Rank-one model spanned by a polarization ``h`` with ``q(h) = e``."""
    return FujikiModel.from_gram([[e]])


@dataclass(frozen=True)
class DictionaryEntry:
    e: int
    r0: int
    i: int
    sign: str
    econ_ok: bool | None
    m0: int
    s0: int
    h: H2Class  # i h^± inside the S^[2] model
    h_div: int
    h_primitive: bool
    c1_div: int
    ch: ChernCharacter  # over polarization_model(e)
    ch3_coeff: Fraction
    ch4: Fraction
    d0_threshold: Fraction
    d_threshold: Fraction


def dictionary(e: int, r0: int, i: int, sign: str = "+") -> DictionaryEntry:
    """Translate ``(e, r0, i)`` into the data of a rigid bundle on a K3 surface.

    For ``sign='+'`` the congruence :func:`econ` is the gate; when it holds,
    ``m0`` must come out integral with ``r0 | m0 + 1`` and a failure of that
    raises :class:`ConsistencyError`.  For ``sign='-'`` no congruence is
    tabulated, so integrality of ``m0`` and ``r0 | m0 + 1`` are the gate.
    """
    if i not in (1, 2):
        raise PreconditionError(f"i must be 1 or 2, got {i}")
    if e <= 0 or r0 < 1:
        raise PreconditionError("e and r0 must be positive")
    if (r0 - i) % 2:
        raise PreconditionError(f"r0={r0} and i={i} must have the same parity")
    if sign == "+":
        ok = econ(e, r0)
        if not ok:
            raise PreconditionError(f"e={e} fails the congruence condition for r0={r0}")
        bug = ConsistencyError
    else:
        ok = None
        bug = PreconditionError
    m0 = m0_from_e(e, r0, i, sign)
    if m0.denominator != 1:
        raise bug(f"m0 = {m0} is not an integer")
    m0 = int(m0)
    if (m0 + 1) % r0:
        raise bug(f"r0={r0} does not divide m0+1={m0 + 1}")
    s0 = (m0 + 1) // r0

    p = Hilb2Params(r0, m0, sign)
    emb = Hilb2Embedding.standard(m0)
    lat = emb.lattice()
    hp, qhp = hplus_class(p, emb)
    h = i * hp
    if any(c.denominator != 1 for c in h.coords):
        raise ConsistencyError(f"h = i h^± = {h.coords} is not integral")
    hint = tuple(int(c) for c in h.coords)
    if lat.square(hint) != e:
        raise ConsistencyError(f"q(h) = {lat.square(hint)} != e = {e}")
    r = r0 * r0
    c1int = tuple(r0 * c // i for c in hint)

    model = polarization_model(e)
    hh = model.h2([1])
    h2 = model.multiply(hh, hh)
    c3 = polarized_ch3_coefficient(e, r0)
    c4 = polarized_ch4(e, r0)
    ch = ChernCharacter(
        r,
        Fraction(r0, i) * hh,
        h2 / (2 * i * i) - model.c2(Fraction(r0 * r0 - 1, 24)),
        c3 * model.multiply(h2, hh),
        c4,
    )
    return DictionaryEntry(
        e=e,
        r0=r0,
        i=i,
        sign=sign,
        econ_ok=ok,
        m0=m0,
        s0=s0,
        h=h,
        h_div=lat.divisibility(hint),
        h_primitive=math.gcd(*hint) == 1,
        c1_div=lat.divisibility(c1int),
        ch=ch,
        ch3_coeff=c3,
        ch4=c4,
        d0_threshold=Fraction((2 * m0 + 1) * r * (r - 1), 4),
        d_threshold=Fraction(5, 16) * r0**6 * (r - 1) * (e + 1),
    )


def dictionary_via_hilb2(entry: DictionaryEntry) -> tuple[ChernCharacter, ChernCharacter]:
    """Compare the closed forms in ``e`` against :func:`hilb2_chern` on ``S^[2]``.

    Returns the dictionary character pushed into the ``S^[2]`` model along
    ``h ↦ i h^±``, and the character computed there directly.
    """
    p = Hilb2Params(entry.r0, entry.m0, entry.sign)
    emb = Hilb2Embedding.standard(entry.m0)
    direct = hilb2_chern(p, emb)
    images = [entry.h.coords]
    pushed = ChernCharacter.from_pieces([embed_class(x, images) for x in entry.ch.pieces()])
    return pushed, direct


def rigid_params(r0_max: int, m0_max: int, signs: Sequence[str] = ("+", "-"), r0_min: int = 1) -> list[Hilb2Params]:
    """All ``(r0, m0, sign)`` with ``r0 | m0 + 1``, in canonical order."""
    return [
        Hilb2Params(r0, m0, sign)
        for r0 in range(r0_min, r0_max + 1)
        for m0 in range(1, m0_max + 1)
        if (m0 + 1) % r0 == 0
        for sign in signs
    ]


# -- catalog -----------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    e: int
    div: int
    model: FujikiModel
    ch: ChernCharacter
    description: str


def _quotient_bundle(e: int, ch3: Fraction, ch4: Fraction) -> tuple[FujikiModel, ChernCharacter]:
    model = polarization_model(e)
    h = model.h2([1])
    h2 = model.multiply(h, h)
    ch = ChernCharacter(4, h, (h2 - model.c2()) / 8, ch3 * model.multiply(h2, h), ch4)
    return model, ch


def catalog() -> dict[str, CatalogEntry]:
    cubic_model, cubic_ch = _quotient_bundle(6, Fraction(-1, 24), Fraction(3, 4))
    dv_model, dv_ch = _quotient_bundle(22, Fraction(-1, 264), Fraction(-1, 4))
    return {
        "cubic-lines-Q": CatalogEntry(
            "cubic-lines-Q", 6, 2, cubic_model, cubic_ch,
            "tautological quotient of Gr(2,6) restricted to the Fano variety of lines of a cubic fourfold",
        ),
        "dv-Q": CatalogEntry(
            "dv-Q", 22, 2, dv_model, dv_ch,
            "tautological quotient of Gr(6,10) restricted to a Debarre-Voisin fourfold",
        ),
    }


def catalog_c4(entry: CatalogEntry) -> Fraction:
    return chern_classes_from_character(entry.model, entry.ch)[3].value


@dataclass(frozen=True)
class ScanRow:
    e: int
    r0: int
    i: int
    econ_ok: bool
    m0: Fraction
    rigid: bool
    chi_end0: Fraction | None


def congruence_scan(e_max: int, r0_max: int) -> list[ScanRow]:
    """Tabulate the congruence against integrality of ``m0`` and ``χ(End_0)``.

    ``chi_end0`` is computed on ``S^[2]`` whenever ``m0`` is a positive
    integer with ``r0 | m0 + 1``; otherwise it is ``None``.  No conclusion is
    drawn: the rows are data.
    """
    rows = []
    for r0 in range(1, r0_max + 1):
        i = 2 - r0 % 2
        for e in range(1, e_max + 1):
            m0 = m0_from_e(e, r0, i)
            rigid = m0.denominator == 1 and m0 > 0 and (m0.numerator + 1) % r0 == 0
            chi = None
            if rigid:
                p = Hilb2Params(r0, int(m0), "+")
                emb = Hilb2Embedding.standard(p.m0)
                chi = chi_end0(emb.model(), hilb2_chern(p, emb))
            rows.append(ScanRow(e, r0, i, econ(e, r0), m0, rigid, chi))
    return rows
