"""Chern characters of sheaves on K3^[2]-type fourfolds.

A :class:`ChernCharacter` lives in the graded model of
:mod:`hkmodular.cohomology`.  The main invariants are the discriminant
``Δ = -2 r ch2 + ch1^2``, the modularity constant ``d(F)`` with
``∫ Δ a b = d(F) q(a, b)``, and the chamber radius ``a(F) = r^2 d(F) / (4 c_X)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cohomology import FujikiModel, H2Class, H4Class, H6Class, TopClass, _frac
from .errors import PreconditionError


@dataclass(frozen=True)
class ChernCharacter:
    ch0: Fraction
    ch1: H2Class
    ch2: H4Class
    ch3: H6Class
    ch4: TopClass

    def __post_init__(self) -> None:
        object.__setattr__(self, "ch0", _frac(self.ch0))
        if not isinstance(self.ch4, TopClass):
            object.__setattr__(self, "ch4", TopClass(self.ch4))
        dims = {self.ch1.dim, self.ch2.dim, self.ch3.dim}
        if len(dims) != 1:
            raise PreconditionError("Chern character components live over lattices of different rank")

    @property
    def rank(self) -> Fraction:
        return self.ch0

    @property
    def dim(self) -> int:
        return self.ch1.dim

    def pieces(self) -> list:
        return [self.ch0, self.ch1, self.ch2, self.ch3, self.ch4]

    @classmethod
    def from_pieces(cls, pieces: Sequence) -> "ChernCharacter":
        return cls(*pieces)

    @classmethod
    def trivial(cls, model: FujikiModel, rank: int = 1) -> "ChernCharacter":
        return cls(rank, model.zero(2), model.zero(4), model.zero(6), model.zero(8))

    def __add__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter.from_pieces([a + b for a, b in zip(self.pieces(), other.pieces())])

    def __sub__(self, other: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter.from_pieces([a - b for a, b in zip(self.pieces(), other.pieces())])

    def __mul__(self, s):
        if isinstance(s, (int, Fraction)):
            return ChernCharacter.from_pieces([s * p for p in self.pieces()])
        return NotImplemented

    __rmul__ = __mul__

    def dual(self) -> "ChernCharacter":
        return ChernCharacter(self.ch0, -self.ch1, self.ch2, -self.ch3, self.ch4)


def graded_product(model: FujikiModel, x: Sequence, y: Sequence) -> list:
    """Product of two inhomogeneous classes given as lists of graded pieces."""
    out = [Fraction(0)] + [model.zero(2 * k) for k in range(1, 5)]
    for i, a in enumerate(x):
        for j, b in enumerate(y):
            if i + j <= 4:
                out[i + j] = out[i + j] + model.multiply(a, b)
    return out


def tensor(model: FujikiModel, a: ChernCharacter, b: ChernCharacter) -> ChernCharacter:
    return ChernCharacter.from_pieces(graded_product(model, a.pieces(), b.pieces()))


def twist(model: FujikiModel, ch: ChernCharacter, line: H2Class) -> ChernCharacter:
    """``ch · exp(L)``."""
    return ChernCharacter.from_pieces(graded_product(model, ch.pieces(), model.exp(line)))


def discriminant(model: FujikiModel, ch: ChernCharacter) -> H4Class:
    return model.multiply(ch.ch1, ch.ch1) - 2 * ch.ch0 * ch.ch2


def modularity_d(model: FujikiModel, ch: ChernCharacter) -> Fraction | None:
    """The constant ``d`` with ``∫ Δ a b = d q(a, b)`` for all ``a, b``, or ``None``."""
    b = model.pairing_matrix(discriminant(model, ch))
    g = model.gram
    n = model.rank
    d = None
    for i in range(n):
        for j in range(n):
            if g[i][j]:
                d = Fraction(b[i][j], g[i][j])
                break
        if d is not None:
            break
    if d is None:
        return None
    if all(b[i][j] == d * g[i][j] for i in range(n) for j in range(n)):
        return d
    return None


def a_value(model: FujikiModel, ch: ChernCharacter, d: Fraction | int | None) -> Fraction:
    if d is None:
        raise PreconditionError("a(F) is only defined for modular characters")
    return ch.ch0**2 * _frac(d) / (4 * model.c_X)


def rank_restriction(lattice, r: int, c1: Sequence[int], variant: str = "K3sq") -> bool:
    """Necessary condition on the rank of a modular sheaf: ``r | m^2`` (or ``3 m^2`` for Kum2)."""
    m = lattice.divisibility(c1)
    if variant == "K3sq":
        return (m * m) % r == 0
    if variant == "Kum2":
        return (3 * m * m) % r == 0
    raise PreconditionError(f"unknown deformation type {variant!r}; expected 'K3sq' or 'Kum2'")


def lambda_class(che: ChernCharacter, chf: ChernCharacter) -> H2Class:
    return chf.ch0 * che.ch1 - che.ch0 * chf.ch1


def mercedes_identity(model: FujikiModel, che: ChernCharacter, chg: ChernCharacter) -> bool:
    """Check ``rF rG Δ(E) + rF rE Δ(G) = rE rG Δ(F) + λ_{E,F}^2`` for ``F = E + G``."""
    if che.ch0 <= 0 or chg.ch0 <= 0:
        raise PreconditionError("the identity is checked for positive ranks only")
    chf = che + chg
    re, rg, rf = che.ch0, chg.ch0, chf.ch0
    lam = lambda_class(che, chf)
    lhs = rf * rg * discriminant(model, che) + rf * re * discriminant(model, chg)
    rhs = re * rg * discriminant(model, chf) + model.multiply(lam, lam)
    return lhs == rhs


def hrr_chi(model: FujikiModel, ch: ChernCharacter) -> Fraction:
    """Euler characteristic via Hirzebruch-Riemann-Roch."""
    return ch.ch4.value + model.integrate_top(model.c2(Fraction(1, 12)), ch.ch2) + model.chi_O * ch.ch0


def chi_end0(model: FujikiModel, ch: ChernCharacter) -> Fraction:
    """``χ(End_0) = χ(E ⊗ E^∨) - χ(O_X)``."""
    if ch.ch0 <= 0:
        raise PreconditionError("χ(End_0) needs positive rank")
    return hrr_chi(model, tensor(model, ch, ch.dual())) - model.chi_O


def chern_classes_from_character(model: FujikiModel, ch: ChernCharacter) -> tuple[H2Class, H4Class, H6Class, TopClass]:
    """Newton's identities with power sums ``p_k = k! ch_k``."""
    p1 = ch.ch1
    p2 = 2 * ch.ch2
    p3 = 6 * ch.ch3
    p4 = 24 * ch.ch4
    mul = model.multiply
    c1 = p1
    c2 = (mul(c1, p1) - p2) / 2
    c3 = (mul(c2, p1) - mul(c1, p2) + p3) / 3
    c4 = (mul(c3, p1) - mul(c2, p2) + mul(c1, p3) - p4) / 4
    return c1, c2, c3, c4
