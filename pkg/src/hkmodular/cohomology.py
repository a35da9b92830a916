"""Evaluation-only cohomology of a hyperkähler fourfold of type K3^[2].

Classes are built from a sublattice of H^2 (with its BBF form) and a formal
second Chern class ``c2``.  The ring is never presented by relations; a
class of degree ``2k`` is known only through its integrals against classes
of degree ``8 - 2k``.  The top-degree integrals are

* ``∫ a b c d = c_X (q(a,b) q(c,d) + q(a,c) q(b,d) + q(a,d) q(b,c))``,
* ``∫ c2 a b = 30 q(a, b)``,
* ``∫ c2^2 = 828``,

and the Todd class has ``td_1 = td_3 = 0``, ``td_2 = c2/12``,
``∫ td_4 = (3 ∫c2^2 - ∫c4)/720 = 3``.

Degree-4 classes carry a symmetric 2-tensor over the basis plus a ``c2``
coefficient; degree-6 classes a symmetric 3-tensor plus an H^2 class
multiplying ``c2``.  Equality of two classes is componentwise in this
representation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence, Union

from .errors import PreconditionError
from .lattice import GramLattice

Scalar = Union[Fraction, int]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _vec(v: Iterable) -> tuple[Fraction, ...]:
    return tuple(_frac(x) for x in v)


def _mat(m: Iterable[Iterable]) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(_vec(row) for row in m)


def _ten3(t) -> tuple[tuple[tuple[Fraction, ...], ...], ...]:
    return tuple(_mat(s) for s in t)


def _zeros2(n: int):
    return tuple((Fraction(0),) * n for _ in range(n))


def _zeros3(n: int):
    return tuple(_zeros2(n) for _ in range(n))


def _combine(x, y, a, b):
    """Entrywise ``a*x + b*y`` on nested tuples."""
    if isinstance(x, tuple):
        return tuple(_combine(u, v, a, b) for u, v in zip(x, y))
    return a * x + b * y


def _scale(x, s):
    if isinstance(x, tuple):
        return tuple(_scale(u, s) for u in x)
    return s * x


class _Linear:
    """Vector-space operations shared by the graded class types."""

    degree = 0

    def _parts(self) -> tuple:
        raise NotImplementedError

    @classmethod
    def _from_parts(cls, parts):
        return cls(*parts)

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        self._same_shape(other)
        return self._from_parts(tuple(_combine(p, q, 1, 1) for p, q in zip(self._parts(), other._parts())))

    def __sub__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        self._same_shape(other)
        return self._from_parts(tuple(_combine(p, q, 1, -1) for p, q in zip(self._parts(), other._parts())))

    def __neg__(self):
        return self._from_parts(tuple(_scale(p, -1) for p in self._parts()))

    def __mul__(self, s):
        if isinstance(s, (int, Fraction)):
            return self._from_parts(tuple(_scale(p, Fraction(s)) for p in self._parts()))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, s):
        if isinstance(s, (int, Fraction)):
            return self * (1 / Fraction(s))
        return NotImplemented

    def _same_shape(self, other) -> None:
        if self.dim != other.dim:
            raise PreconditionError(f"classes over lattices of rank {self.dim} and {other.dim} cannot be combined")

    def is_zero(self) -> bool:
        return self == self * 0


@dataclass(frozen=True)
class H2Class(_Linear):
    coords: tuple[Fraction, ...]
    degree = 2

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", _vec(self.coords))

    def _parts(self):
        return (self.coords,)

    @property
    def dim(self) -> int:
        return len(self.coords)

    @classmethod
    def zero(cls, n: int) -> "H2Class":
        return cls((0,) * n)

    @classmethod
    def basis(cls, i: int, n: int) -> "H2Class":
        return cls(tuple(1 if j == i else 0 for j in range(n)))


@dataclass(frozen=True)
class H4Class(_Linear):
    sym2: tuple[tuple[Fraction, ...], ...]
    c2: Fraction = Fraction(0)
    degree = 4

    def __post_init__(self) -> None:
        m = _mat(self.sym2)
        n = len(m)
        if any(len(r) != n for r in m) or any(m[i][j] != m[j][i] for i in range(n) for j in range(n)):
            raise PreconditionError("sym2 part of an H4 class must be a symmetric square matrix")
        object.__setattr__(self, "sym2", m)
        object.__setattr__(self, "c2", _frac(self.c2))

    def _parts(self):
        return (self.sym2, self.c2)

    @property
    def dim(self) -> int:
        return len(self.sym2)

    @classmethod
    def zero(cls, n: int) -> "H4Class":
        return cls(_zeros2(n), 0)

    @classmethod
    def c2_class(cls, n: int, t: Scalar = 1) -> "H4Class":
        """``t`` times the second Chern class of the fourfold."""
        return cls(_zeros2(n), t)


@dataclass(frozen=True)
class H6Class(_Linear):
    sym3: tuple
    c2_h2: H2Class = field(default=None)  # type: ignore[assignment]
    degree = 6

    def __post_init__(self) -> None:
        t = _ten3(self.sym3)
        n = len(t)
        for i, j, k in product(range(n), repeat=3):
            v = t[i][j][k]
            if v != t[j][i][k] or v != t[i][k][j]:
                raise PreconditionError("sym3 part of an H6 class must be a symmetric tensor")
        object.__setattr__(self, "sym3", t)
        c = self.c2_h2 if self.c2_h2 is not None else H2Class.zero(n)
        if not isinstance(c, H2Class):
            c = H2Class(c)
        if c.dim != n:
            raise PreconditionError("c2 component of an H6 class has the wrong rank")
        object.__setattr__(self, "c2_h2", c)

    def _parts(self):
        return (self.sym3, self.c2_h2.coords)

    @classmethod
    def _from_parts(cls, parts):
        return cls(parts[0], H2Class(parts[1]))

    @property
    def dim(self) -> int:
        return len(self.sym3)

    @classmethod
    def zero(cls, n: int) -> "H6Class":
        return cls(_zeros3(n), H2Class.zero(n))


@dataclass(frozen=True)
class TopClass(_Linear):
    """A multiple of the point class."""

    value: Fraction
    degree = 8

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", _frac(self.value))

    def _parts(self):
        return (self.value,)

    @property
    def dim(self) -> int:
        return 0

    def _same_shape(self, other) -> None:
        pass

    @classmethod
    def zero(cls, n: int = 0) -> "TopClass":
        return cls(0)


Graded = Union[Scalar, H2Class, H4Class, H6Class, TopClass]


def degree(x: Graded) -> int:
    if isinstance(x, (int, Fraction)):
        return 0
    return x.degree


TODD_DENOMINATOR = 720


def todd_chi(c2_sq: Scalar, c4: Scalar) -> Fraction:
    """``∫ td_4`` of a fourfold with ``c1 = 0``."""
    return (3 * _frac(c2_sq) - _frac(c4)) / TODD_DENOMINATOR


@dataclass(frozen=True)
class FujikiModel:
    """BBF sublattice of H^2 together with the characteristic numbers of K3^[2]."""

    lattice: GramLattice
    c_X: Fraction = Fraction(1)
    c2_alpha_coeff: Fraction = Fraction(30)
    c2_sq: Fraction = Fraction(828)
    c4: Fraction = Fraction(324)
    chi_O: Fraction = Fraction(3)

    def __post_init__(self) -> None:
        for name in ("c_X", "c2_alpha_coeff", "c2_sq", "c4", "chi_O"):
            object.__setattr__(self, name, _frac(getattr(self, name)))
        if self.c_X <= 0:
            raise PreconditionError("the Fujiki constant must be positive")
        if todd_chi(self.c2_sq, self.c4) != self.chi_O:
            raise PreconditionError(
                f"Todd inconsistency: (3*{self.c2_sq} - {self.c4})/720 = {todd_chi(self.c2_sq, self.c4)} != chi(O) = {self.chi_O}"
            )

    @classmethod
    def from_gram(cls, gram: Sequence[Sequence[int]], **kwargs) -> "FujikiModel":
        return cls(GramLattice(tuple(tuple(r) for r in gram)), **kwargs)

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def gram(self):
        return self.lattice.gram

    # -- constructors ---------------------------------------------------

    def h2(self, coords: Sequence) -> H2Class:
        v = H2Class(coords)
        if v.dim != self.rank:
            raise PreconditionError(f"H2 class of length {v.dim} in a model of rank {self.rank}")
        return v

    def c2(self, t: Scalar = 1) -> H4Class:
        return H4Class.c2_class(self.rank, t)

    def point(self, t: Scalar = 1) -> TopClass:
        return TopClass(t)

    def zero(self, deg: int):
        n = self.rank
        return {0: Fraction(0), 2: H2Class.zero(n), 4: H4Class.zero(n), 6: H6Class.zero(n), 8: TopClass(0)}[deg]

    # -- bilinear form ----------------------------------------------------

    def q(self, a: H2Class, b: H2Class | None = None) -> Fraction:
        b = a if b is None else b
        return Fraction(self.lattice.pair(a.coords, b.coords))

    def fujiki4(self, a: H2Class, b: H2Class, c: H2Class, d: H2Class) -> Fraction:
        q = self.q
        return self.c_X * (q(a, b) * q(c, d) + q(a, c) * q(b, d) + q(a, d) * q(b, c))

    # -- products ----------------------------------------------------------

    def _tr(self, s) -> Fraction:
        g, n = self.gram, self.rank
        return sum((s[i][j] * g[i][j] for i in range(n) for j in range(n)), Fraction(0))

    def _sym2_pair(self, s, t) -> Fraction:
        """``∑ s_ij t_kl ∫ e_i e_j e_k e_l`` for symmetric ``s``, ``t``."""
        g, n = self.gram, self.rank
        sg = [[sum(s[i][k] * g[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        tg = [[sum(t[i][k] * g[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        cross = sum(sg[i][j] * tg[j][i] for i in range(n) for j in range(n))
        return self.c_X * (self._tr(s) * self._tr(t) + 2 * cross)

    def _h2_h6(self, a: H2Class, x: H6Class) -> Fraction:
        g, n, t = self.gram, self.rank, x.sym3
        ga = [sum(g[i][j] * a.coords[j] for j in range(n)) for i in range(n)]
        contracted = sum(ga[j] * t[j][k][l] * g[k][l] for j in range(n) for k in range(n) for l in range(n))
        return 3 * self.c_X * contracted + self.c2_alpha_coeff * self.q(a, x.c2_h2)

    def multiply(self, x: Graded, y: Graded) -> Graded:
        dx, dy = degree(x), degree(y)
        if dx + dy > 8:
            raise PreconditionError(f"product of degrees {dx} and {dy} exceeds the top degree 8")
        if dx == 0:
            return _frac(x) * y if dy else _frac(x) * _frac(y)
        if dy == 0:
            return _frac(y) * x
        if dx > dy:
            x, y, dx, dy = y, x, dy, dx
        n = self.rank
        if (dx, dy) == (2, 2):
            a, b = x.coords, y.coords
            return H4Class(tuple(tuple((a[i] * b[j] + a[j] * b[i]) / 2 for j in range(n)) for i in range(n)), 0)
        if (dx, dy) == (2, 4):
            a, s = x.coords, y.sym2
            t = tuple(
                tuple(tuple((a[i] * s[j][k] + a[j] * s[i][k] + a[k] * s[i][j]) / 3 for k in range(n)) for j in range(n))
                for i in range(n)
            )
            return H6Class(t, x * y.c2)
        if (dx, dy) == (2, 6):
            return TopClass(self._h2_h6(x, y))
        if (dx, dy) == (4, 4):
            val = (
                self._sym2_pair(x.sym2, y.sym2)
                + self.c2_alpha_coeff * (x.c2 * self._tr(y.sym2) + y.c2 * self._tr(x.sym2))
                + self.c2_sq * x.c2 * y.c2
            )
            return TopClass(val)
        raise PreconditionError(f"unsupported product of degrees {dx} and {dy}")

    def product(self, *pieces: Graded) -> Graded:
        out: Graded = Fraction(1)
        for p in pieces:
            out = self.multiply(out, p)
        return out

    def power(self, x: Graded, k: int) -> Graded:
        return self.product(*([x] * k))

    def integrate_top(self, *pieces: Graded) -> Fraction:
        """Integral of the product of ``pieces``; their degrees must sum to 8."""
        total = sum(degree(p) for p in pieces)
        if total != 8:
            raise PreconditionError(f"integrand has degree {total}, expected 8")
        return self.product(*pieces).value

    def pairing_matrix(self, x: H4Class) -> tuple[tuple[Fraction, ...], ...]:
        """``B(e_i, e_j) = ∫ x e_i e_j`` over the basis."""
        n = self.rank
        basis = [H2Class.basis(i, n) for i in range(n)]
        return tuple(tuple(self.integrate_top(x, basis[i], basis[j]) for j in range(n)) for i in range(n))

    def exp(self, line: H2Class) -> list[Graded]:
        """Graded pieces ``[1, L, L^2/2, L^3/6, L^4/24]`` of ``exp(L)``."""
        out: list[Graded] = [Fraction(1)]
        for k in range(1, 5):
            out.append(self.multiply(out[-1], line) / k)
        return out

    def todd(self) -> list:
        """Graded pieces of the Todd class; the top piece is given by its integral."""
        return [Fraction(1), self.zero(2), self.c2(Fraction(1, 12)), self.zero(6), TopClass(self.chi_O)]


def embed_class(x: Graded, images: Sequence[Sequence]) -> Graded:
    """Push a class forward along a lattice map sending basis vector ``i`` to ``images[i]``.

    The map is assumed to be an isometry onto its image inside H^2 of the
    same fourfold, so the formal ``c2`` and the point class are preserved.
    """
    imgs = [_vec(v) for v in images]
    m = len(imgs[0]) if imgs else 0
    src = len(imgs)

    def push1(v):
        return tuple(sum((v[i] * imgs[i][a] for i in range(src)), Fraction(0)) for a in range(m))

    if isinstance(x, (int, Fraction)) or isinstance(x, TopClass):
        return x
    if isinstance(x, H2Class):
        return H2Class(push1(x.coords))
    if isinstance(x, H4Class):
        s = x.sym2
        t = tuple(
            tuple(sum((s[i][j] * imgs[i][a] * imgs[j][b] for i in range(src) for j in range(src)), Fraction(0)) for b in range(m))
            for a in range(m)
        )
        return H4Class(t, x.c2)
    if isinstance(x, H6Class):
        s = x.sym3
        nz = [(i, j, k, s[i][j][k]) for i, j, k in product(range(src), repeat=3) if s[i][j][k]]
        t = tuple(
            tuple(
                tuple(sum((v * imgs[i][a] * imgs[j][b] * imgs[k][c] for i, j, k, v in nz), Fraction(0)) for c in range(m))
                for b in range(m)
            )
            for a in range(m)
        )
        return H6Class(t, H2Class(push1(x.c2_h2.coords)))
    raise TypeError(f"cannot embed {type(x).__name__}")
