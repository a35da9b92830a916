"""Grothendieck-Riemann-Roch on the blow-up of S × S along the diagonal.

Let ``τ: X̃ → S × S`` be the blow-up of the diagonal, ``E`` the exceptional
divisor with class ``e``, ``q1, q2: X̃ → S`` the two projections and
``p: X̃ → S^[2]`` the double cover.  A :class:`BlowupClass` is a rational
combination of monomials ``q1^*x · q2^*y · e^j`` with ``x, y`` in the span of
``1``, a sublattice of ``H^2(S)`` and the point class ``η``.

Top-degree integrals come from Künneth for ``j = 0`` and, for ``j ≥ 1``,
from ``∫ e^j q1^*x q2^*y = ∫_E ζ^(j-1) τ_E^*(x y)`` where ``E = P(T_S)``,
``ζ = e|_E`` has degree ``-1`` on the fibres and ``ζ^2 = -24 τ_E^* η``
(``c1(S) = 0``, ``c2(S) = 24``).  This gives ``∫ e^2 q_i^*x q_j^*y = -x·y``,
``∫ e^4 = 24`` and zero for ``j = 1, 3``.

The module re-derives the Chern character of ``F[2]^±`` from the exact
sequences ``0 → p^*F[2]^± → q1^*F ⊗ q2^*F → ι_*τ_E^*(Λ^2 F or Sym^2 F) → 0``
and compares it with the closed forms of :mod:`hkmodular.hilb2`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable

from .chern import ChernCharacter
from .cohomology import H2Class, H4Class, H6Class, TopClass
from .errors import PreconditionError
from .hilb2 import Hilb2Embedding, Hilb2Params, hilb2_chern

Monomial = tuple[int, int, int]


class BlowupRing:
    """Monomial bookkeeping for ``H^*(X̃)`` over a sublattice of ``H^2(S)``.

    Basis of the surface part: index ``0`` is ``1``, ``1..n`` the lattice
    basis, ``n + 1`` the point class ``η``.
    """

    def __init__(self, s_gram):
        self.s_gram = tuple(tuple(int(x) for x in r) for r in s_gram)
        self.n = len(self.s_gram)
        self.eta = self.n + 1

    def s_degree(self, a: int) -> int:
        if a == 0:
            return 0
        return 4 if a == self.eta else 2

    def s_mult(self, a: int, b: int) -> dict[int, Fraction]:
        """Product of two surface basis elements as ``{index: coefficient}``."""
        if a == 0:
            return {b: Fraction(1)}
        if b == 0:
            return {a: Fraction(1)}
        if a == self.eta or b == self.eta:
            return {}
        g = self.s_gram[a - 1][b - 1]
        return {self.eta: Fraction(g)} if g else {}

    def s_integral(self, a: int) -> Fraction:
        return Fraction(1) if a == self.eta else Fraction(0)

    def mono_degree(self, m: Monomial) -> int:
        a, b, j = m
        return self.s_degree(a) + self.s_degree(b) + 2 * j

    def monomials(self, deg: int) -> list[Monomial]:
        idx = range(self.n + 2)
        return [(a, b, j) for a, b in product(idx, idx) for j in range(5) if self.mono_degree((a, b, j)) == deg]

    # -- constructors -----------------------------------------------------

    def cls(self, terms: dict[Monomial, Fraction] | None = None) -> "BlowupClass":
        return BlowupClass(self, dict(terms or {}))

    def one(self) -> "BlowupClass":
        return self.cls({(0, 0, 0): Fraction(1)})

    def e(self, power: int = 1) -> "BlowupClass":
        return self.cls({(0, 0, power): Fraction(1)})

    def pull(self, factor: int, s_class: dict[int, Fraction]) -> "BlowupClass":
        """``q_factor^*`` of a surface class ``{index: coefficient}``."""
        if factor == 1:
            return self.cls({(a, 0, 0): Fraction(c) for a, c in s_class.items()})
        if factor == 2:
            return self.cls({(0, a, 0): Fraction(c) for a, c in s_class.items()})
        raise PreconditionError("factor must be 1 or 2")

    def s_h2(self, v) -> dict[int, Fraction]:
        return {k + 1: Fraction(c) for k, c in enumerate(v) if c}

    def s_point(self, t=1) -> dict[int, Fraction]:
        return {self.eta: Fraction(t)}

    def sym_pull(self, s_class: dict[int, Fraction]) -> "BlowupClass":
        """``q1^*x + q2^*x``."""
        return self.pull(1, s_class) + self.pull(2, s_class)

    # -- integration ----------------------------------------------------------

    def _e_integral(self, j: int, z: dict[int, Fraction]) -> Fraction:
        # ∫ e^j τ^*(z) = ∫_E ζ^(j-1) τ_E^* z, with ζ·τ^*η ↦ -1 and ζ^2 = -24 τ^*η
        if j == 2:
            return -z.get(self.eta, Fraction(0))
        if j == 4:
            return 24 * z.get(0, Fraction(0))
        return Fraction(0)

    def eval_mono(self, m: Monomial) -> Fraction:
        a, b, j = m
        if self.mono_degree(m) != 8:
            raise PreconditionError(f"monomial {m} has degree {self.mono_degree(m)}, expected 8")
        if j == 0:
            return self.s_integral(a) * self.s_integral(b)
        return self._e_integral(j, self.s_mult(a, b))


@dataclass
class BlowupClass:
    ring: BlowupRing
    terms: dict[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.terms = {m: Fraction(c) for m, c in self.terms.items() if c and self.ring.mono_degree(m) <= 8}

    def __add__(self, other: "BlowupClass") -> "BlowupClass":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return BlowupClass(self.ring, out)

    def __neg__(self) -> "BlowupClass":
        return BlowupClass(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "BlowupClass") -> "BlowupClass":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BlowupClass(self.ring, {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, BlowupClass):
            return NotImplemented
        ring = self.ring
        out: dict[Monomial, Fraction] = {}
        for (a1, b1, j1), c1 in self.terms.items():
            for (a2, b2, j2), c2 in other.terms.items():
                j = j1 + j2
                for a, ca in ring.s_mult(a1, a2).items():
                    for b, cb in ring.s_mult(b1, b2).items():
                        m = (a, b, j)
                        if ring.mono_degree(m) <= 8:
                            out[m] = out.get(m, Fraction(0)) + c1 * c2 * ca * cb
        return BlowupClass(ring, out)

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (1 / Fraction(s))

    def __pow__(self, k: int) -> "BlowupClass":
        out = self.ring.one()
        for _ in range(k):
            out = out * self
        return out

    def part(self, deg: int) -> "BlowupClass":
        return BlowupClass(self.ring, {m: c for m, c in self.terms.items() if self.ring.mono_degree(m) == deg})

    def swap(self) -> "BlowupClass":
        """Pull back along the covering involution."""
        return BlowupClass(self.ring, {(b, a, j): c for (a, b, j), c in self.terms.items()})

    def degrees(self) -> set[int]:
        return {self.ring.mono_degree(m) for m in self.terms}

    def evaluate(self) -> Fraction:
        """Integral over ``X̃`` of the degree-8 part."""
        return sum((c * self.ring.eval_mono(m) for m, c in self.terms.items() if self.ring.mono_degree(m) == 8), Fraction(0))


def eval_top_blowup(c: BlowupClass) -> Fraction:
    bad = c.degrees() - {8}
    if bad:
        raise PreconditionError(f"class has components of degree {sorted(bad)}, expected pure degree 8")
    return c.evaluate()


def pairings(c: BlowupClass, deg: int) -> dict[Monomial, Fraction]:
    """Integrals of the degree-``deg`` part of ``c`` against every complementary monomial."""
    part = c.part(deg)
    ring = c.ring
    return {m: (part * ring.cls({m: Fraction(1)})).evaluate() for m in ring.monomials(8 - deg)}


def equivalent(x: BlowupClass, y: BlowupClass) -> bool:
    return all(pairings(x, d) == pairings(y, d) for d in range(0, 10, 2))


# -- pullback from S^[2] --------------------------------------------------------


def pullback_h2(ring: BlowupRing, v: H2Class) -> BlowupClass:
    """``μ(x) ↦ q1^*x + q2^*x`` and ``δ ↦ e``; the last coordinate is ``δ``."""
    if v.dim != ring.n + 1:
        raise PreconditionError(f"H2 class of rank {v.dim} does not match μ(L_S) ⊕ Zδ of rank {ring.n + 1}")
    *xs, y = v.coords
    return ring.sym_pull(ring.s_h2(xs)) + ring.e() * y


def pullback_c2(ring: BlowupRing) -> BlowupClass:
    return ring.sym_pull(ring.s_point(24)) - ring.e(2) * 3


def pullback(ring: BlowupRing, x) -> BlowupClass:
    """``p^*`` of a graded class of the ``S^[2]`` model."""
    n = ring.n + 1
    basis = [pullback_h2(ring, H2Class.basis(i, n)) for i in range(n)]
    if isinstance(x, (int, Fraction)):
        return ring.one() * Fraction(x)
    if isinstance(x, H2Class):
        return pullback_h2(ring, x)
    if isinstance(x, H4Class):
        out = pullback_c2(ring) * x.c2
        for i, j in product(range(n), repeat=2):
            if x.sym2[i][j]:
                out = out + basis[i] * basis[j] * x.sym2[i][j]
        return out
    if isinstance(x, H6Class):
        out = pullback_c2(ring) * pullback_h2(ring, x.c2_h2)
        for i, j, k in product(range(n), repeat=3):
            if x.sym3[i][j][k]:
                out = out + basis[i] * basis[j] * basis[k] * x.sym3[i][j][k]
        return out
    if isinstance(x, TopClass):
        # p has degree 2
        return ring.cls({(ring.eta, ring.eta, 0): 2 * x.value})
    raise TypeError(f"cannot pull back {type(x).__name__}")


def pullback_ch(ch: ChernCharacter, emb: Hilb2Embedding) -> BlowupClass:
    ring = BlowupRing(emb.s_gram)
    out = ring.cls()
    for piece in ch.pieces():
        out = out + pullback(ring, piece)
    return out


# -- GRR ------------------------------------------------------------------------------


def surface_ch(p: Hilb2Params, emb: Hilb2Embedding) -> dict[int, Fraction]:
    """``ch(F) = r0 + D + ch2 η`` with ``2 r0 ch2 = 2 m0 - 2 (r0^2 - 1)``."""
    p.s0
    ring = BlowupRing(emb.s_gram)
    ch = {0: Fraction(p.r0)}
    ch.update(ring.s_h2(emb.D))
    ch[ring.eta] = Fraction(2 * p.m0 - 2 * (p.r0**2 - 1), 2 * p.r0)
    return ch


def grr_hilb2(p: Hilb2Params, emb: Hilb2Embedding | None = None) -> BlowupClass:
    """``p^* ch(F[2]^±)`` from the exact sequences on ``X̃``."""
    emb = emb or Hilb2Embedding.standard(p.m0)
    ring = BlowupRing(emb.s_gram)
    r0 = p.r0
    chF = surface_ch(p, emb)
    ch1 = {k: c for k, c in chF.items() if ring.s_degree(k) == 2}
    ch2 = chF[ring.eta]
    ch1_sq = sum((c * d * ring.s_mult(a, b).get(ring.eta, 0) for a, c in ch1.items() for b, d in ch1.items()), Fraction(0))
    # Λ^2 F for '+', Sym^2 F for '-': rank, ch1 and ch2 coefficients
    if p.sign == "+":
        rank, c1_mult, c2_mult = math.comb(r0, 2), r0 - 1, r0 - 2
    else:
        rank, c1_mult, c2_mult = math.comb(r0 + 1, 2), r0 + 1, r0 + 2
    e = ring.e()
    td_inv = e - ring.e(2) / 2 + ring.e(3) / 6 - ring.e(4) / 24
    pushed = (
        ring.one() * rank
        + ring.sym_pull(ch1) * Fraction(c1_mult, 2)
        + ring.sym_pull(ring.s_point(2 * c2_mult * ch2 + ch1_sq)) / 4
    )
    return ring.pull(1, chF) * ring.pull(2, chF) - pushed * td_inv


@dataclass
class OracleReport:
    r0: int
    m0: int
    sign: str
    pairings_checked: int
    mismatches: list[tuple[int, Monomial, Fraction, Fraction]]
    relations_checked: int
    relation_failures: list[tuple[str, Monomial, Fraction]]

    @property
    def ok(self) -> bool:
        return not self.mismatches and not self.relation_failures


def relations(ring: BlowupRing, alpha, m0) -> dict[str, BlowupClass]:
    """The two relations among classes built from ``α ∈ H^2(S)`` with ``α^2 = 2 m0 η``.

    The second relation is written with an undecorated factor; both readings
    ``q1^*α · q1^*α · e`` and ``q1^*α · q2^*α · e`` are returned.
    """
    a = ring.s_h2(alpha)
    q1a, q2a = ring.pull(1, a), ring.pull(2, a)
    q1eta, q2eta = ring.pull(1, ring.s_point()), ring.pull(2, ring.s_point())
    rel1 = (q1eta * q2a + q1a * q2eta) * 2 + (q1a + q2a) * ring.e(2)
    e3 = ring.e(3) * Fraction(m0)
    return {
        "eta-alpha": rel1,
        "alpha-alpha-e[q1q2]": q1a * q2a * ring.e() * 12 + e3,
        "alpha-alpha-e[q1q1]": q1a * q1a * ring.e() * 12 + e3,
    }


def oracle_compare(p: Hilb2Params, emb: Hilb2Embedding | None = None) -> OracleReport:
    """Compare :func:`grr_hilb2` with the pullback of :func:`hilb2_chern` degree by degree."""
    emb = emb or Hilb2Embedding.standard(p.m0)
    ring = BlowupRing(emb.s_gram)
    grr = grr_hilb2(p, emb)
    closed = pullback_ch(hilb2_chern(p, emb), emb)
    mismatches = []
    count = 0
    for deg in range(0, 10, 2):
        pa, pb = pairings(grr, deg), pairings(closed, deg)
        for m in sorted(pa):
            count += 1
            if pa[m] != pb[m]:
                mismatches.append((deg, m, pa[m], pb[m]))
    rel_fail = []
    rel_count = 0
    for name, rel in relations(ring, emb.D, p.m0).items():
        for m, v in sorted(pairings(rel, 6).items()):
            rel_count += 1
            if v:
                rel_fail.append((name, m, v))
    return OracleReport(p.r0, p.m0, p.sign, count, mismatches, rel_count, rel_fail)


def oracle_grid(params: Iterable[Hilb2Params]) -> list[OracleReport]:
    return [oracle_compare(p) for p in sorted(params, key=lambda p: (p.r0, p.m0, p.sign))]
