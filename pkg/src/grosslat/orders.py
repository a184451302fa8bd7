"""Maximal orders of B_p and their isomorphism types.

Orders and ideals are rank-4 row lattices over (1, i, j, k), stored as an HNF
integer matrix plus a common positive denominator.  Type enumeration walks
the ell-neighbor graph (right orders of left ideals of reduced norm ell) and
deduplicates by the successive minima triple of the Gross lattice, which is a
complete isomorphism invariant.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd, isqrt

from .exact import det, factorize, hnf, hnf_solve, is_perfect_square, is_prime, legendre
from .lattice import GrossLattice, gross_lattice, minima_triple, minimal_basis
from .quat import QuaternionAlgebra, QuaternionElement, conj4, mul4, nrd4


class OrderError(ValueError):
    pass


def _canonical(rows, den: int):
    mat = hnf(rows)
    g = den
    for row in mat:
        for x in row:
            g = gcd(g, x)
    if g > 1:
        mat = tuple(tuple(x // g for x in row) for row in mat)
        den //= g
    return mat, den


def _hnf_diag_det(mat) -> int:
    d = 1
    for i, row in enumerate(mat):
        d *= row[i]
    return d


@dataclass(frozen=True)
class QuaternionOrder:
    algebra: QuaternionAlgebra
    mat: tuple    # 4x4 HNF rows over (1, i, j, k)
    den: int

    @classmethod
    def from_generators(cls, algebra, rows, den):
        mat, den = _canonical(rows, den)
        if len(mat) != 4:
            raise OrderError("generators do not span a rank-4 lattice")
        return cls(algebra, mat, den)

    @classmethod
    def from_elements(cls, algebra, elements):
        den = 1
        for e in elements:
            for c in e.coords:
                den = den * c.denominator // gcd(den, c.denominator)
        rows = [
            [int(c * den) for c in e.coords]
            for e in elements
        ]
        return cls.from_generators(algebra, rows, den)

    def contains_vec(self, vec, vden: int) -> bool:
        scaled = []
        for x in vec:
            num = x * self.den
            if num % vden:
                return False
            scaled.append(num // vden)
        return hnf_solve(self.mat, scaled) is not None

    def basis_elements(self):
        return tuple(
            QuaternionElement(
                self.algebra, tuple(Fraction(c, self.den) for c in row)
            )
            for row in self.mat
        )

    def is_ring(self) -> bool:
        """1 in the lattice, basis integral, closed under multiplication."""
        a, b = self.algebra.a, self.algebra.b
        d2 = self.den * self.den
        if hnf_solve(self.mat, (self.den, 0, 0, 0)) is None:
            return False
        for row in self.mat:
            if (2 * row[0]) % self.den or nrd4(row, a, b) % d2:
                return False
        for u in self.mat:
            for v in self.mat:
                if not self.contains_vec(mul4(u, v, a, b), d2):
                    return False
        return True


def reduced_discriminant(order: QuaternionOrder) -> int:
    """Positive square root of |det(trd(e_i e_j))| over the Z-basis."""
    a, b = order.algebra.a, order.algebra.b
    rows = order.mat
    s = [
        [
            u[0] * v[0] + a * u[1] * v[1] + b * u[2] * v[2] - a * b * u[3] * v[3]
            for v in rows
        ]
        for u in rows
    ]
    tdet = Fraction(16 * det(s), order.den ** 8)
    if tdet.denominator != 1:
        raise OrderError("trace pairing determinant is not an integer")
    val = abs(int(tdet))
    if not is_perfect_square(val):
        raise OrderError("trace pairing determinant is not a perfect square")
    return isqrt(val)


def _quaternion_algebra_for(p: int) -> QuaternionAlgebra:
    if p == 2:
        return QuaternionAlgebra(-1, -1, 2)
    if p % 4 == 3:
        return QuaternionAlgebra(-1, -p, p)
    if p % 3 == 2:
        return QuaternionAlgebra(-3, -p, p)
    q = 3
    while True:
        if q % 4 == 3 and is_prime(q) and legendre(p, q) == -1:
            break
        q += 2
    return QuaternionAlgebra(-q, -p, p)


def standard_maximal_order(p: int) -> QuaternionOrder:
    """A maximal order of B_p with reduced discriminant p.

    p = 2 uses the Hurwitz order; p = 3 mod 4 and p = 2 mod 3 use the
    explicit Ibukiyama-style bases; p = 1 mod 12 saturates <1,i,j,k> inside
    (-q, -p) for the least prime q = 3 mod 4 with (p|q) = -1.
    """
    if not is_prime(p):
        raise OrderError(f"{p} is not prime")
    alg = _quaternion_algebra_for(p)
    if p == 2:
        rows = [(2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (1, 1, 1, 1)]
        order = QuaternionOrder.from_generators(alg, rows, 2)
    elif p % 4 == 3:
        rows = [(2, 0, 0, 0), (0, 2, 0, 0), (1, 0, 1, 0), (0, 1, 0, 1)]
        order = QuaternionOrder.from_generators(alg, rows, 2)
    elif p % 3 == 2:
        rows = [(6, 0, 0, 0), (3, 3, 0, 0), (0, 0, 3, -3), (0, 2, 0, -2)]
        order = QuaternionOrder.from_generators(alg, rows, 6)
    else:
        seed = QuaternionOrder.from_generators(
            alg, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)], 1
        )
        order = saturate_to_maximal(seed)
    d = reduced_discriminant(order)
    if d != p:
        raise OrderError(f"standard order has discriminant {d}, expected {p}")
    return order


def _enlarge_once(order: QuaternionOrder, ell: int):
    """Search x = (sum a_l e_l)/ell joining which gives a superorder."""
    a, b = order.algebra.a, order.algebra.b
    rows = order.mat
    den = order.den
    dl = den * ell
    dl2 = dl * dl
    # trd(e_l) is integral, so the trace condition on x is linear mod ell
    s = [(2 * row[0]) // den for row in rows]
    for a1, a2, a3 in product(range(ell), repeat=3):
        rhs = -(a1 * s[1] + a2 * s[2] + a3 * s[3]) % ell
        g = gcd(s[0], ell)
        if rhs % g:
            continue
        if g == ell:
            a0_choices = range(ell)
        else:
            a0_choices = (rhs * pow(s[0], -1, ell) % ell,)
        for a0 in a0_choices:
            if not (a0 or a1 or a2 or a3):
                continue
            v = tuple(
                a0 * rows[0][t] + a1 * rows[1][t] + a2 * rows[2][t] + a3 * rows[3][t]
                for t in range(4)
            )
            if (2 * v[0]) % dl or nrd4(v, a, b) % dl2:
                continue
            if order.contains_vec(v, dl):
                continue
            gens = [tuple(ell * x for x in row) for row in rows]
            gens.append(v)
            try:
                cand = QuaternionOrder.from_generators(order.algebra, gens, dl)
            except OrderError:
                continue
            if cand.is_ring():
                return cand
    return None


def saturate_to_maximal(order: QuaternionOrder) -> QuaternionOrder:
    """Grow an order until its reduced discriminant equals the ramified prime."""
    p = order.algebra.p
    current = order
    while True:
        d = reduced_discriminant(current)
        if d == p:
            return current
        if d % p:
            raise OrderError("discriminant not divisible by p: wrong presentation")
        found = None
        for ell in sorted(set(factorize(2 * (d // p)))):
            found = _enlarge_once(current, ell)
            if found is not None:
                break
        if found is None:
            raise OrderError("saturation stalled: wrong algebra presentation")
        current = found


@dataclass(frozen=True)
class QuaternionIdeal:
    left_order: QuaternionOrder
    mat: tuple
    den: int
    norm: int


def left_ideals_of_norm(order: QuaternionOrder, ell: int):
    """The ell+1 left ideals I = O*alpha + O*ell of reduced norm ell.

    alpha sweeps representatives of O/ellO with nrd(alpha) = 0 mod ell and
    alpha not in ellO; results are deduplicated by HNF and index-checked.
    """
    p = order.algebra.p
    if not is_prime(ell) or ell == p:
        raise OrderError("ell must be a prime different from p")
    a, b = order.algebra.a, order.algebra.b
    rows = order.mat
    den = order.den
    d2 = den * den
    odet = _hnf_diag_det(order.mat)
    seen = {}
    for coeffs in product(range(ell), repeat=4):
        if not any(coeffs):
            continue
        alpha = tuple(
            sum(c * rows[i][t] for i, c in enumerate(coeffs)) for t in range(4)
        )
        n = nrd4(alpha, a, b)
        assert n % d2 == 0, "order basis element with non-integral norm"
        if (n // d2) % ell:
            continue
        gens = [mul4(row, alpha, a, b) for row in rows]
        gens.extend(tuple(ell * den * x for x in row) for row in rows)
        mat, iden = _canonical(gens, d2)
        if len(mat) != 4:
            continue
        index = Fraction(_hnf_diag_det(mat) * den ** 4, odet * iden ** 4)
        if index != ell * ell:
            continue
        seen[(mat, iden)] = QuaternionIdeal(order, mat, iden, ell)
    ideals = [seen[k] for k in sorted(seen)]
    assert len(ideals) == ell + 1, (
        f"expected {ell + 1} ideals of norm {ell}, found {len(ideals)}"
    )
    return ideals


def right_order(ideal: QuaternionIdeal) -> QuaternionOrder:
    """Right order (1/nrd I) * conj(I) * I, validated as maximal."""
    alg = ideal.left_order.algebra
    a, b = alg.a, alg.b
    rows = ideal.mat
    gens = [
        mul4(conj4(u), v, a, b) for u in rows for v in rows
    ]
    order = QuaternionOrder.from_generators(
        alg, gens, ideal.den * ideal.den * ideal.norm
    )
    if not order.is_ring():
        raise OrderError("right order is not a ring: corrupt ideal")
    if reduced_discriminant(order) != alg.p:
        raise OrderError("right order is not maximal: corrupt ideal")
    return order


@dataclass(frozen=True)
class TypeRecord:
    order: QuaternionOrder
    lattice: GrossLattice
    minima: tuple
    gram: tuple
    basis: tuple   # minimal basis rows, coordinates w.r.t. lattice.mat


@lru_cache(maxsize=256)
def enumerate_types(p: int, ell: int = 2):
    """All isomorphism types of maximal orders in B_p, sorted by minima.

    Breadth-first search over ell-neighbors starting from the standard
    maximal order; a node whose Gross minima triple was already seen is
    discarded (the triple characterizes the type).  Results are cached and
    must be treated as read-only.
    """
    if not is_prime(p):
        raise OrderError(f"{p} is not prime")
    if ell == p:
        raise OrderError("ell must differ from p")
    queue = [standard_maximal_order(p)]
    seen = set()
    records = []
    while queue:
        order = queue.pop(0)
        lat = gross_lattice(order)
        triple = minima_triple(lat.gram)
        if triple in seen:
            continue
        seen.add(triple)
        mb = minimal_basis(lat, "asc")
        assert tuple(mb.minima) == tuple(triple), "greedy/enumerated minima disagree"
        records.append(
            TypeRecord(order, lat, tuple(mb.minima), mb.gram, mb.coords)
        )
        for ideal in left_ideals_of_norm(order, ell):
            queue.append(right_order(ideal))
    records.sort(key=lambda r: r.minima)
    return tuple(records)
