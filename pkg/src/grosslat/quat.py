"""Arithmetic in a definite rational quaternion algebra (a, b | Q).

Basis 1, i, j, k with i^2 = a, j^2 = b, ij = k = -ji, both a and b negative.
Elements carry exact rational coordinates.  The basis multiplication table is
precomputed per algebra so the sign conventions live in exactly one place.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class AlgebraMismatch(ValueError):
    pass


def _basis_table(a: int, b: int):
    # table[u][v] = coordinates of e_u * e_v over (1, i, j, k)
    one = (1, 0, 0, 0)
    i = (0, 1, 0, 0)
    j = (0, 0, 1, 0)
    k = (0, 0, 0, 1)
    return (
        (one, i, j, k),
        (i, (a, 0, 0, 0), k, (0, 0, a, 0)),
        (j, (0, 0, 0, -1), (b, 0, 0, 0), (0, -b, 0, 0)),
        (k, (0, 0, -a, 0), (0, b, 0, 0), (-a * b, 0, 0, 0)),
    )


def mul4(u, v, a: int, b: int):
    """Product of integer coordinate 4-vectors over (1, i, j, k)."""
    u0, u1, u2, u3 = u
    v0, v1, v2, v3 = v
    return (
        u0 * v0 + a * u1 * v1 + b * u2 * v2 - a * b * u3 * v3,
        u0 * v1 + u1 * v0 - b * u2 * v3 + b * u3 * v2,
        u0 * v2 + u2 * v0 + a * u1 * v3 - a * u3 * v1,
        u0 * v3 + u3 * v0 + u1 * v2 - u2 * v1,
    )


def conj4(u):
    return (u[0], -u[1], -u[2], -u[3])


def nrd4(u, a: int, b: int) -> int:
    u0, u1, u2, u3 = u
    return u0 * u0 - a * u1 * u1 - b * u2 * u2 + a * b * u3 * u3


def inner4(u, v, a: int, b: int) -> int:
    """Numerator of (u, v) = trd(u * conj(v)) / 2 for integer vectors."""
    return u[0] * v[0] - a * u[1] * v[1] - b * u[2] * v[2] + a * b * u[3] * v[3]


@dataclass(frozen=True)
class QuaternionAlgebra:
    a: int
    b: int
    p: int

    def __post_init__(self):
        if self.a >= 0 or self.b >= 0:
            raise ValueError("need a < 0 and b < 0 for a definite algebra")
        object.__setattr__(self, "_table", _basis_table(self.a, self.b))

    def element(self, c0, c1=0, c2=0, c3=0) -> "QuaternionElement":
        return QuaternionElement(
            self, (Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3))
        )

    def one(self):
        return self.element(1)

    def gens(self):
        return self.element(0, 1), self.element(0, 0, 1), self.element(0, 0, 0, 1)

    def __repr__(self):
        return f"QuaternionAlgebra(a={self.a}, b={self.b}, p={self.p})"


@dataclass(frozen=True)
class QuaternionElement:
    algebra: QuaternionAlgebra
    coords: tuple

    def _same(self, other):
        if self.algebra != other.algebra:
            raise AlgebraMismatch("elements live in different algebras")

    def __add__(self, other):
        self._same(other)
        return QuaternionElement(
            self.algebra, tuple(x + y for x, y in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        self._same(other)
        return QuaternionElement(
            self.algebra, tuple(x - y for x, y in zip(self.coords, other.coords))
        )

    def __neg__(self):
        return QuaternionElement(self.algebra, tuple(-x for x in self.coords))

    def __mul__(self, other):
        if isinstance(other, QuaternionElement):
            self._same(other)
            table = self.algebra._table
            out = [Fraction(0)] * 4
            for u in range(4):
                cu = self.coords[u]
                if not cu:
                    continue
                for v in range(4):
                    cv = other.coords[v]
                    if not cv:
                        continue
                    tv = table[u][v]
                    f = cu * cv
                    for w in range(4):
                        if tv[w]:
                            out[w] += f * tv[w]
            return QuaternionElement(self.algebra, tuple(out))
        return QuaternionElement(
            self.algebra, tuple(x * Fraction(other) for x in self.coords)
        )

    __rmul__ = __mul__

    def conj(self):
        c = self.coords
        return QuaternionElement(self.algebra, (c[0], -c[1], -c[2], -c[3]))

    def trd(self) -> Fraction:
        return 2 * self.coords[0]

    def nrd(self) -> Fraction:
        a, b = self.algebra.a, self.algebra.b
        c0, c1, c2, c3 = self.coords
        return c0 * c0 - a * c1 * c1 - b * c2 * c2 + a * b * c3 * c3

    def inner(self, other) -> Fraction:
        self._same(other)
        a, b = self.algebra.a, self.algebra.b
        u, v = self.coords, other.coords
        return u[0] * v[0] - a * u[1] * v[1] - b * u[2] * v[2] + a * b * u[3] * v[3]

    def is_integral(self) -> bool:
        return self.trd().denominator == 1 and self.nrd().denominator == 1

    def __str__(self):
        return " + ".join(
            f"{c}{s}" for c, s in zip(self.coords, ("", "*i", "*j", "*k"))
        )

    def __repr__(self):
        return f"<{self} in {self.algebra!r}>"


def inner(x: QuaternionElement, y: QuaternionElement) -> Fraction:
    return x.inner(y)
