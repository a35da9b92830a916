"""Ranks of simple semi-homogeneous bundles on polarized abelian varieties.

For a polarization with elementary divisors ``(1, ..., 1, d1, d2)`` on an
abelian variety of dimension ``n``, a simple semi-homogeneous bundle ``F``
with ``c1(F) = a θ`` has ``r(F) = r0^n / (g1 g2)`` and
``gcd(r(F), a) = r0^(n-1) / (g1 g2)`` with ``g_i = gcd(r0, d_i)``.  The
group of line bundles ``ξ`` with ``F ⊗ ξ ≅ F`` has order ``r(F)^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError


@dataclass(frozen=True)
class PolarizedAbelianType:
    n: int
    d1: int = 1
    d2: int = 1

    def __post_init__(self) -> None:
        if self.n < 1:
            raise PreconditionError("dimension must be positive")
        if self.d1 < 1 or self.d2 < 1 or self.d2 % self.d1:
            raise PreconditionError(f"need positive d1 | d2, got ({self.d1}, {self.d2})")


@dataclass(frozen=True)
class SemihomRank:
    r: Fraction
    gcd_part: Fraction
    g1: int
    g2: int
    sigma_order: Fraction
    r_integral: bool
    gcd_integral: bool
    gcd_matches: bool | None = None

    @property
    def admissible(self) -> bool:
        return self.r_integral and self.gcd_integral

    @property
    def sigma_ok(self) -> bool:
        return self.sigma_order == self.r**2


def semihom_rank(t: PolarizedAbelianType, r0: int, a: int | None = None) -> SemihomRank:
    """Rank and ``gcd(r, a)`` of a simple semi-homogeneous bundle with parameter ``r0``.

    Non-integral values are returned as fractions and flagged rather than
    rounded.  For curves (``n = 1``) the rank is ``r0`` and ``gcd(r, a) = 1``.
    When ``a`` is given, ``gcd_matches`` reports whether ``gcd(r, a)`` equals
    the predicted value.
    """
    if r0 < 1:
        raise PreconditionError("r0 must be a positive integer")
    if t.n == 1:
        r, g, g1, g2 = Fraction(r0), Fraction(1), 1, 1
        sigma = Fraction(r0 * r0)
    else:
        g1, g2 = math.gcd(r0, t.d1), math.gcd(r0, t.d2)
        r = Fraction(r0**t.n, g1 * g2)
        g = Fraction(r0 ** (t.n - 1), g1 * g2)
        sigma = Fraction(r0 ** (2 * t.n), g1 * g1 * g2 * g2)
    matches = None
    if a is not None and r.denominator == 1:
        matches = Fraction(math.gcd(int(r), a)) == g
    return SemihomRank(r, g, g1, g2, sigma, r.denominator == 1, g.denominator == 1, matches)


def admissible_ranks(n: int, c_X: int, r_max: int) -> list[tuple[int, int, int]]:
    """All ``(r, r0, d)`` with ``d | c_X``, ``r = r0^n / d`` integral and ``1 <= r <= r_max``."""
    if n < 1 or c_X < 1:
        raise PreconditionError("n and c_X must be positive")
    out = []
    divisors = [d for d in range(1, c_X + 1) if c_X % d == 0]
    r0 = 1
    while r0**n <= r_max * c_X:
        for d in divisors:
            if r0**n % d == 0 and r0**n // d <= r_max:
                out.append((r0**n // d, r0, d))
        r0 += 1
    return sorted(out)


def rank_set(n: int, c_X: int, r_max: int) -> set[int]:
    return {r for r, _, _ in admissible_ranks(n, c_X, r_max)}
