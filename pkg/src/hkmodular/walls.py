"""Walls and chambers for slope stability on rank-2 hyperbolic Picard lattices.

An ``a``-wall is ``λ^⊥`` for an integral ``λ`` with ``-a <= q(λ) < 0``.
Chambers are never materialized as real intervals (the boundary of the
positive cone is usually irrational); membership in the same open chamber
is decided from the signs of ``q(λ, h)``, which are exact integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chern import ChernCharacter, a_value, lambda_class
from .cohomology import FujikiModel
from .errors import PreconditionError
from .lattice import GramLattice, LatVec, Rational, enumerate_negative_classes


def _sign(x) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Wall:
    lam: LatVec
    q_lam: int


def awalls(lattice: GramLattice, a: Rational) -> list[Wall]:
    """One wall per primitive direction among the classes of square in ``[-a, 0)``."""
    seen: dict[tuple[int, ...], Wall] = {}
    for v in enumerate_negative_classes(lattice, a):
        p = v.primitive()
        if p.coords not in seen:
            seen[p.coords] = Wall(p, lattice.square(p.coords))
    return [seen[k] for k in sorted(seen)]


def _check_positive(lattice: GramLattice, *classes: Sequence[int]) -> None:
    for h in classes:
        if lattice.square(h) <= 0:
            raise PreconditionError(f"class {tuple(h)} is not in the positive cone (q = {lattice.square(h)})")


def same_chamber(lattice: GramLattice, a: Rational, h0: Sequence[int], h1: Sequence[int]) -> bool:
    """Whether ``h0`` and ``h1`` lie in the same open ``a``-chamber.

    A wall separates them when the pairings have opposite signs or exactly
    one of them vanishes.
    """
    _check_positive(lattice, h0, h1)
    if lattice.pair(h0, h1) <= 0:
        raise PreconditionError("h0 and h1 lie in opposite components of the positive cone")
    for w in awalls(lattice, a):
        s0 = _sign(lattice.pair(w.lam.coords, h0))
        s1 = _sign(lattice.pair(w.lam.coords, h1))
        if s0 != s1:
            return False
    return True


def suitable(lattice: GramLattice, a: Rational, h: Sequence[int], f: Sequence[int] = (1, 0)) -> bool:
    """``h`` is ``a``-suitable for the fibration class ``f``.

    For every ``λ`` with ``-a <= q(λ) < 0``, ``q(λ, h)`` and ``q(λ, f)``
    must have the same sign or both vanish.  A zero paired with a nonzero
    value counts as a violation.
    """
    if lattice.square(f) != 0:
        raise PreconditionError("the fibration class f must be isotropic")
    for v in enumerate_negative_classes(lattice, a):
        if _sign(lattice.pair(v.coords, h)) != _sign(lattice.pair(v.coords, f)):
            return False
    return True


def destabilizer_window(
    model: FujikiModel, che: ChernCharacter, chf: ChernCharacter, d_f: Rational
) -> bool:
    """Necessary condition on ``λ_{E,F}`` for a destabilizing subsheaf ``E ⊂ F``.

    ``-a(F) <= q(λ) <= 0``, and ``q(λ) = 0`` only for ``λ = 0``.
    """
    if not 0 < che.ch0 < chf.ch0:
        raise PreconditionError("need 0 < r(E) < r(F)")
    lam = lambda_class(che, chf)
    if lam.is_zero():
        return True
    q = model.q(lam)
    return -a_value(model, chf, Fraction(d_f)) <= q < 0
