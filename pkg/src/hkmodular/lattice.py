"""Integral lattices with a symmetric bilinear form.

Everything here works with Python integers and :class:`fractions.Fraction`,
so results are exact.  The enumeration routines only cover the rank-2
hyperbolic lattices spanned by an isotropic class ``f`` and a polarization
``h``, with Gram matrix ``[[0, d], [d, e]]``; in that case the number of
classes of bounded negative square is finite and can be listed directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import PreconditionError

Rational = Fraction | int


@dataclass(frozen=True)
class GramLattice:
    """A free abelian group of finite rank with an integral symmetric form."""

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.gram)
        n = len(rows)
        if n == 0:
            raise PreconditionError("lattice must have positive rank")
        if any(len(row) != n for row in rows):
            raise PreconditionError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise PreconditionError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", rows)

    @classmethod
    def hyperbolic(cls, d: int, e: int) -> "GramLattice":
        """Lattice with basis ``(f, h)``, ``q(f) = 0``, ``q(f, h) = d``, ``q(h) = e``."""
        if d < 1 or e < 0:
            raise PreconditionError(f"hyperbolic lattice needs d >= 1, e >= 0 (got d={d}, e={e})")
        return cls(((0, d), (d, e)))

    @property
    def rank(self) -> int:
        return len(self.gram)

    def _check(self, v: Sequence) -> None:
        if len(v) != self.rank:
            raise PreconditionError(f"vector of length {len(v)} does not match lattice rank {self.rank}")

    def pair(self, v: Sequence[Rational], w: Sequence[Rational]) -> Rational:
        self._check(v)
        self._check(w)
        g = self.gram
        return sum(v[i] * g[i][j] * w[j] for i in range(self.rank) for j in range(self.rank))

    def square(self, v: Sequence[Rational]) -> Rational:
        return self.pair(v, v)

    def image(self, v: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of the functional ``q(v, -)`` on the basis."""
        self._check(v)
        return tuple(sum(self.gram[i][j] * v[j] for j in range(self.rank)) for i in range(self.rank))

    def divisibility(self, v: Sequence[int]) -> int:
        """Positive generator of the ideal ``q(v, L)``; 0 when that ideal is 0."""
        return math.gcd(*self.image(v))

    def is_hyperbolic_pair(self) -> bool:
        g = self.gram
        return self.rank == 2 and g[0][0] == 0 and g[0][1] >= 1 and g[1][1] >= 0


@dataclass(frozen=True)
class LatVec:
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    def __iter__(self) -> Iterator[int]:
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, i: int) -> int:
        return self.coords[i]

    def __neg__(self) -> "LatVec":
        return LatVec(tuple(-c for c in self.coords))

    def content(self) -> int:
        return math.gcd(*self.coords)

    def is_primitive(self) -> bool:
        return self.content() == 1

    def primitive(self) -> "LatVec":
        g = self.content()
        if g == 0:
            raise PreconditionError("the zero vector has no primitive part")
        return LatVec(tuple(c // g for c in self.coords))


def pair_and_divisibility(lattice: GramLattice, v: Sequence[int], w: Sequence[int]) -> tuple[int, int, int]:
    """Return ``(q(v, w), q(v), div(v))``."""
    return lattice.pair(v, w), lattice.square(v), lattice.divisibility(v)


def _require_hyperbolic(lattice: GramLattice) -> tuple[int, int]:
    if not lattice.is_hyperbolic_pair():
        raise PreconditionError(f"expected Gram matrix [[0, d], [d, e]] with d >= 1, e >= 0, got {lattice.gram}")
    return lattice.gram[0][1], lattice.gram[1][1]


def _divisors(k: int) -> list[int]:
    small = [y for y in range(1, math.isqrt(k) + 1) if k % y == 0]
    return sorted(set(small + [k // y for y in small]))


def _normalize(x: int, y: int) -> tuple[int, int]:
    # classes of negative square always have y != 0; represent the +/- pair with y > 0
    return (x, y) if y > 0 else (-x, -y)


def classes_of_square(lattice: GramLattice, k: int) -> list[LatVec]:
    """All ``x f + y h`` with ``q = -k`` (``k >= 1``), one per sign pair.

    ``q(x f + y h) = y (2 d x + e y)``, so ``y`` divides ``k`` and ``x`` is
    then fixed by ``2 d x = -k / y - e y``.
    """
    d, e = _require_hyperbolic(lattice)
    if k < 1:
        raise PreconditionError("k must be a positive integer")
    found = set()
    for y0 in _divisors(k):
        for y in (y0, -y0):
            num = -k // y - e * y
            if num % (2 * d) == 0:
                found.add(_normalize(num // (2 * d), y))
    return [LatVec(c) for c in sorted(found)]


def enumerate_negative_classes(lattice: GramLattice, a: Rational) -> list[LatVec]:
    """Classes ``gamma`` with ``-a <= q(gamma) < 0``, one per sign pair, sorted."""
    _require_hyperbolic(lattice)
    a = Fraction(a)
    if a <= 0:
        raise PreconditionError("a must be positive")
    out: set[tuple[int, int]] = set()
    for k in range(1, math.floor(a) + 1):
        out.update(v.coords for v in classes_of_square(lattice, k))
    return [LatVec(c) for c in sorted(out)]


def min_negative_square(lattice: GramLattice) -> tuple[int, bool]:
    """Smallest ``k`` with a class of square ``-k``, and whether ``k >= 2d/(1+e)``."""
    d, e = _require_hyperbolic(lattice)
    # x f + h with 2 d x + e < 0 has negative square, so the scan stops
    k = 1
    while not classes_of_square(lattice, k):
        k += 1
    return k, Fraction(k) >= Fraction(2 * d, 1 + e)


@dataclass(frozen=True)
class IsotropicReport:
    e: int
    d: int
    f: LatVec
    alpha: LatVec
    pairing_f: int
    pairing_alpha: int
    pairing_alpha_gcd_de: Fraction
    unique: bool
    e_divides_2d: bool


def isotropic_analysis(e: int, d: int) -> IsotropicReport:
    """The two primitive isotropic rays of ``[[0, d], [d, e]]`` that pair positively with ``h``.

    Besides ``f`` the other ray is spanned by ``2 d h - e f``.  ``pairing_alpha``
    uses the primitive generator (divide by ``gcd(2d, e)``);
    ``pairing_alpha_gcd_de`` records ``d e / gcd(d, e)``, which is what one
    gets dividing by ``gcd(d, e)`` instead.  The two differ by a factor 2
    exactly when ``gcd(2d, e) = 2 gcd(d, e)``.
    """
    if e <= 0:
        raise PreconditionError("isotropic analysis needs e > 0 (e = 0 is degenerate)")
    lattice = GramLattice.hyperbolic(d, e)
    f = LatVec((1, 0))
    alpha = LatVec((-e, 2 * d)).primitive()
    h = (0, 1)
    p_f = lattice.pair(h, f.coords)
    p_alpha = lattice.pair(h, alpha.coords)
    assert lattice.square(alpha.coords) == 0 and p_alpha > 0
    return IsotropicReport(
        e=e,
        d=d,
        f=f,
        alpha=alpha,
        pairing_f=p_f,
        pairing_alpha=p_alpha,
        pairing_alpha_gcd_de=Fraction(d * e, math.gcd(d, e)),
        unique=p_alpha != p_f,
        e_divides_2d=(2 * d) % e == 0,
    )


def nl_hypotheses(e: int, d: int, i: int, r0: int, a0: Rational | None = None) -> dict[str, object]:
    """Numeric conditions on a Lagrangian Noether-Lefschetz divisor.

    ``a0`` defaults to ``(5/8) r0^6 (r0^2 - 1)``, the chamber radius of the
    rank ``r0^2`` bundles built from rigid bundles on K3 surfaces.
    """
    if i not in (1, 2):
        raise PreconditionError(f"divisibility i must be 1 or 2, got {i}")
    if min(e, d, r0) < 1:
        raise PreconditionError("e, d, r0 must be positive integers")
    if a0 is None:
        a0 = Fraction(5, 8) * r0**6 * (r0**2 - 1)
    a0 = Fraction(a0)
    rank_bound = Fraction(5, 16) * r0**6 * (r0**2 - 1) * (e + 1)
    checks = {
        "d_gt_10(e+1)": d > 10 * (e + 1),
        "e_not_divides_2d": (2 * d) % e != 0,
        "d_even_if_i_2": i == 1 or d % 2 == 0,
        "d_gt_a0(e+1)/2": d > a0 * (e + 1) / 2,
        "d_gt_5/16_r0^6(r0^2-1)(e+1)": d > rank_bound,
    }
    return {
        "e": e,
        "d": d,
        "i": i,
        "r0": r0,
        "a0": a0,
        "rank_bound": rank_bound,
        "checks": checks,
        "all": all(checks.values()),
    }
