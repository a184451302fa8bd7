"""Gross lattices: extraction, short vectors, successive minima, Gram data.

A Gross lattice is stored as a rank-3 integer basis over a common positive
denominator; basis rows are coordinates over the pure quaternions (i, j, k).
All minima machinery works on the integer Gram matrix alone, so it applies to
any positive definite ternary form.

Vector norms follow the squared-norm convention throughout: the "norm" of v
is v G v^T.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .exact import hnf
from .quat import QuaternionElement


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class GrossLattice:
    algebra: object
    mat: tuple        # 3x3 integer rows, coordinates over (i, j, k), HNF
    den: int
    gram: tuple       # 3x3 integer Gram matrix of mat/den

    def basis_elements(self):
        return tuple(
            QuaternionElement(
                self.algebra,
                (Fraction(0),) + tuple(Fraction(c, self.den) for c in row),
            )
            for row in self.mat
        )

    def vector_element(self, coords):
        row = [0, 0, 0]
        for c, b in zip(coords, self.mat):
            for t in range(3):
                row[t] += c * b[t]
        return QuaternionElement(
            self.algebra, (Fraction(0),) + tuple(Fraction(c, self.den) for c in row)
        )


def gross_lattice(order) -> GrossLattice:
    """Apply x -> 2x - trd(x) to an order basis and HNF the rank-3 image."""
    a, b, p = order.algebra.a, order.algebra.b, order.algebra.p
    rows = [(2 * r[1], 2 * r[2], 2 * r[3]) for r in order.mat]
    mat = hnf(rows)
    if len(mat) != 3:
        raise LatticeError("trace-zero image does not have rank 3")
    den = order.den
    g = den
    for row in mat:
        for x in row:
            g = gcd(g, x)
    mat = tuple(tuple(x // g for x in row) for row in mat)
    den //= g
    d2 = den * den
    gram = []
    for u in mat:
        grow = []
        for v in mat:
            num = -a * u[0] * v[0] - b * u[1] * v[1] + a * b * u[2] * v[2]
            if num % d2:
                raise LatticeError("non-integer Gram entry: input is not an order")
            grow.append(num // d2)
        gram.append(tuple(grow))
    gram = tuple(gram)
    d = _det3(gram)
    if d != 4 * p * p:
        raise LatticeError(f"det(gram) = {d}, expected 4p^2 = {4 * p * p}")
    return GrossLattice(order.algebra, mat, den, gram)


def _det3(g) -> int:
    return (
        g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
        - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
    )


def gram_norm(gram, v) -> int:
    t = 0
    for i in range(3):
        vi = v[i]
        if vi:
            row = gram[i]
            t += vi * (row[0] * v[0] + row[1] * v[1] + row[2] * v[2])
    return t


def gram_inner(gram, u, v) -> int:
    t = 0
    for i in range(3):
        ui = u[i]
        if ui:
            row = gram[i]
            t += ui * (row[0] * v[0] + row[1] * v[1] + row[2] * v[2])
    return t


def _check_positive_definite(gram):
    if gram[0][0] <= 0:
        raise LatticeError("gram is not positive definite")
    if gram[0][0] * gram[1][1] - gram[0][1] ** 2 <= 0:
        raise LatticeError("gram is not positive definite")
    if _det3(gram) <= 0:
        raise LatticeError("gram is not positive definite")


# -- greedy dimension-3 reduction (integer Gram arithmetic only) -------------

def _apply_addmul(g, u, i, j, q):
    # b_i <- b_i + q b_j
    u[i] = [x + q * y for x, y in zip(u[i], u[j])]
    for t in range(3):
        g[i][t] += q * g[j][t]
    for t in range(3):
        g[t][i] += q * g[t][j]


def _apply_swap(g, u, i, j):
    u[i], u[j] = u[j], u[i]
    g[i], g[j] = g[j], g[i]
    for t in range(3):
        g[t][i], g[t][j] = g[t][j], g[t][i]


def _nearest(t: int, n: int) -> int:
    # nearest integer to t/n for n > 0, ties rounded down
    return (2 * t + n) // (2 * n)


def greedy_reduce(gram):
    """Greedy (Minkowski) reduction of a positive definite 3x3 Gram matrix.

    Returns (u, g) with g = u * gram * u^T, u unimodular, and the rows of u
    sorted by norm.  In dimension 3 the greedy output attains the successive
    minima, which makes the diagonal of g a cheap dedup key; callers that
    need certainty re-derive minima by enumeration.
    """
    g = [list(row) for row in gram]
    u = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(10000):
        changed = False
        i0 = min(range(3), key=lambda i: (g[i][i], i))
        if i0 != 0:
            _apply_swap(g, u, 0, i0)
            changed = True
        if g[1][1] > g[2][2]:
            _apply_swap(g, u, 1, 2)
            changed = True
        # Gauss-reduce the first two rows
        for _ in range(10000):
            if g[0][0] > g[1][1]:
                _apply_swap(g, u, 0, 1)
                changed = True
            q = _nearest(g[1][0], g[0][0])
            if q:
                _apply_addmul(g, u, 1, 0, -q)
                changed = True
            if g[1][1] >= g[0][0] and _nearest(g[1][0], g[0][0]) == 0:
                break
        # reduce the third row against the plane of the first two
        d2 = g[0][0] * g[1][1] - g[0][1] ** 2
        an = g[2][0] * g[1][1] - g[2][1] * g[0][1]
        bn = g[2][1] * g[0][0] - g[2][0] * g[0][1]
        a0 = _nearest(an, d2)
        b0 = _nearest(bn, d2)
        best = (g[2][2], 0, 0)
        for c0 in (a0 - 1, a0, a0 + 1):
            for c1 in (b0 - 1, b0, b0 + 1):
                if c0 == 0 and c1 == 0:
                    continue
                n = (
                    g[2][2]
                    + c0 * c0 * g[0][0]
                    + c1 * c1 * g[1][1]
                    - 2 * c0 * g[2][0]
                    - 2 * c1 * g[2][1]
                    + 2 * c0 * c1 * g[0][1]
                )
                if n < best[0]:
                    best = (n, c0, c1)
        if best[1] or best[2]:
            _apply_addmul(g, u, 2, 0, -best[1])
            _apply_addmul(g, u, 2, 1, -best[2])
            changed = True
        if not changed:
            break
    else:
        raise AssertionError("greedy reduction did not converge")
    return tuple(tuple(r) for r in u), tuple(tuple(r) for r in g)


# -- exact short vector enumeration ------------------------------------------

def _floor_c_plus_sqrt(c: Fraction, t: Fraction) -> int:
    """floor(c + sqrt(t)) for t >= 0, exactly."""
    cn, cd = c.numerator, c.denominator
    tn, td = t.numerator, t.denominator
    # c + sqrt(tn/td) = (cn*td + cd*sqrt(tn*td)) / (cd*td)
    a = cn * td
    bden = cd * td
    m = cd * cd * tn * td
    k = (a + isqrt(m)) // bden
    while True:
        d = (k + 1) * bden - a
        if d <= 0 or d * d <= m:
            k += 1
        else:
            break
    while True:
        d = k * bden - a
        if d > 0 and d * d > m:
            k -= 1
        else:
            break
    return k


def _enumerate_reduced(g, bound: int):
    """All (norm, z) with 0 < z G z^T <= bound, one per +/- pair.

    Exact Fincke-Pohst over the LDL decomposition of g; z coordinates refer
    to the rows of the (reduced) basis behind g.
    """
    d0 = Fraction(g[0][0])
    mu10 = Fraction(g[0][1], g[0][0])
    d1 = Fraction(g[1][1]) - mu10 * mu10 * d0
    mu20 = Fraction(g[0][2], g[0][0])
    mu21 = (Fraction(g[1][2]) - mu20 * mu10 * d0) / d1
    d2 = Fraction(g[2][2]) - mu20 * mu20 * d0 - mu21 * mu21 * d1
    out = []
    bf = Fraction(bound)
    z2_hi = _floor_c_plus_sqrt(Fraction(0), bf / d2)
    for z2 in range(0, z2_hi + 1):
        r2 = bf - d2 * z2 * z2
        c1 = -mu21 * z2
        lo1 = -_floor_c_plus_sqrt(-c1, r2 / d1)
        hi1 = _floor_c_plus_sqrt(c1, r2 / d1)
        for z1 in range(lo1, hi1 + 1):
            r1 = r2 - d1 * (z1 - c1) ** 2
            c0 = -mu10 * z1 - mu20 * z2
            lo0 = -_floor_c_plus_sqrt(-c0, r1 / d0)
            hi0 = _floor_c_plus_sqrt(c0, r1 / d0)
            for z0 in range(lo0, hi0 + 1):
                if z2 == 0 and (z1 < 0 or (z1 == 0 and z0 <= 0)):
                    continue  # one representative per +/- pair, zero excluded
                v = (z0, z1, z2)
                n = gram_norm(g, v)
                if 0 < n <= bound:
                    out.append((n, v))
    return out


def _canon_sign(v):
    for x in v:
        if x > 0:
            return v
        if x < 0:
            return tuple(-y for y in v)
    return v


def short_vectors(gram, bound: int):
    """All nonzero v with v gram v^T <= bound, one per +/- pair.

    Returns (norm, coords) pairs sorted by (norm, lexicographic coords);
    each representative has its first nonzero coordinate positive.
    """
    _check_positive_definite(gram)
    if bound <= 0:
        return []
    u, g = greedy_reduce(gram)
    out = []
    for n, z in _enumerate_reduced(g, bound):
        v = tuple(
            z[0] * u[0][t] + z[1] * u[1][t] + z[2] * u[2][t] for t in range(3)
        )
        out.append((n, _canon_sign(v)))
    out.sort()
    return out


# -- successive minima and minimal bases --------------------------------------

class MinimaTriple(tuple):
    def __new__(cls, d1, d2, d3):
        assert d1 <= d2 <= d3
        return super().__new__(cls, (d1, d2, d3))

    @property
    def d1(self):
        return self[0]

    @property
    def d2(self):
        return self[1]

    @property
    def d3(self):
        return self[2]


def _independent2(v, w) -> bool:
    return (
        v[0] * w[1] - v[1] * w[0] != 0
        or v[0] * w[2] - v[2] * w[0] != 0
        or v[1] * w[2] - v[2] * w[1] != 0
    )


def _det3v(a, b, c) -> int:
    return (
        a[0] * (b[1] * c[2] - b[2] * c[1])
        - a[1] * (b[0] * c[2] - b[2] * c[0])
        + a[2] * (b[0] * c[1] - b[1] * c[0])
    )


def _greedy_minima_from(vecs):
    """(d1, d2, d3, v1, v2) from a (norm, coords)-sorted vector list."""
    v1 = vecs[0][1]
    d1 = vecs[0][0]
    v2 = d2 = None
    for n, v in vecs:
        if _independent2(v1, v):
            v2, d2 = v, n
            break
    if v2 is None:
        return None
    for n, v in vecs:
        if _det3v(v1, v2, v) != 0:
            return d1, d2, n, v1, v2
    return None


def minima_triple(gram) -> MinimaTriple:
    """Successive minima of a positive definite ternary Gram matrix."""
    _check_positive_definite(gram)
    u, g = greedy_reduce(gram)
    bound = g[2][2]
    vecs = sorted(_enumerate_reduced(g, bound))
    got = _greedy_minima_from(vecs)
    assert got is not None, "enumeration bound missed rank 3"
    return MinimaTriple(got[0], got[1], got[2])


@dataclass(frozen=True)
class MinimalBasis:
    lattice: GrossLattice
    coords: tuple     # 3 rows, coordinates w.r.t. lattice.mat
    gram: tuple
    minima: MinimaTriple

    def basis_elements(self):
        return tuple(self.lattice.vector_element(c) for c in self.coords)


def _sorted_candidates(gram, bound, tie_break):
    vecs = short_vectors(gram, bound)
    if tie_break == "asc":
        return vecs
    if tie_break == "desc":
        return sorted(vecs, key=lambda t: (t[0], tuple(-x for x in t[1])))
    raise ValueError(f"unknown tie_break {tie_break!r}")


def minimal_basis(lattice: GrossLattice, tie_break: str = "asc") -> MinimalBasis:
    """Normalized successive minimal basis of a Gross lattice.

    Greedy selection over the sorted short-vector list: shortest vector,
    shortest independent vector, then the shortest rank-3 completion with
    unimodular coordinate determinant.  Signs are flipped so the (1,2) and
    (1,3) inner products are nonnegative.  `tie_break` orders equal-norm
    candidates lexicographically ascending or descending.
    """
    gram0 = lattice.gram
    basis = _minimal_basis_rows(gram0, tie_break)
    g = tuple(
        tuple(gram_inner(gram0, u, v) for v in basis) for u in basis
    )
    minima = MinimaTriple(g[0][0], g[1][1], g[2][2])
    return MinimalBasis(lattice, basis, g, minima)


def _minimal_basis_rows(gram0, tie_break):
    _check_positive_definite(gram0)
    _, gred = greedy_reduce(gram0)
    bound = gred[2][2]
    while True:
        vecs = _sorted_candidates(gram0, bound, tie_break)
        got = _greedy_minima_from(vecs)
        if got is not None:
            break
        bound *= 2  # safety net; the greedy bound already has rank 3
    d1, d2, d3 = got[0], got[1], got[2]
    d1_pool = [v for n, v in vecs if n == d1]
    d2_pool = [v for n, v in vecs if n == d2]
    d3_pool = [v for n, v in vecs if n == d3]
    chosen = None
    for b1 in d1_pool:
        for b2 in d2_pool:
            if not _independent2(b1, b2):
                continue
            for b3 in d3_pool:
                if abs(_det3v(b1, b2, b3)) == 1:
                    chosen = (b1, b2, b3)
                    break
            if chosen:
                break
        if chosen:
            break
    assert chosen is not None, "no index-1 completion among minima-attaining vectors"
    b1, b2, b3 = chosen
    if gram_inner(gram0, b1, b2) < 0:
        b2 = tuple(-x for x in b2)
    if gram_inner(gram0, b1, b3) < 0:
        b3 = tuple(-x for x in b3)
    return (b1, b2, b3)


def rank2_det(gram, i1: int, i2: int) -> int:
    """2x2 Gram minor D_i D_j - (i,j)^2 of the basis behind `gram`."""
    if i1 == i2:
        raise ValueError("need two distinct indices")
    return gram[i1][i1] * gram[i2][i2] - gram[i1][i2] ** 2


def attaining_rank2_sublattices(lattice: GrossLattice):
    """Distinct HNFs of <v, w> over all pairs attaining the first two minima.

    Coordinates are taken w.r.t. the lattice basis, so two pairs span the
    same sublattice exactly when their HNFs agree.  Sorted for determinism.
    """
    mb = minimal_basis(lattice)
    d1, d2 = mb.minima.d1, mb.minima.d2
    vecs = short_vectors(lattice.gram, d2)
    firsts = [v for n, v in vecs if n == d1]
    seconds = [v for n, v in vecs if n == d2]
    seen = set()
    for v in firsts:
        for w in seconds:
            if not _independent2(v, w):
                continue
            seen.add(hnf([v, w]))
    return sorted(seen)


def minimal_rank2_sublattice(lattice: GrossLattice):
    """HNF basis of the canonical rank-2 sublattice attaining (D1, D2)."""
    mb = minimal_basis(lattice)
    return hnf([mb.coords[0], mb.coords[1]])


def basis_pair_rank2_sublattices(mb: MinimalBasis):
    """Distinct HNFs of <b_i, b_j> over basis pairs attaining (D1, D2).

    For a j = 0 type the second and third basis vectors share the norm D2,
    so two distinct sublattices appear; for other spine types this is the
    single sublattice of minimal_rank2_sublattice.
    """
    d1, d2 = mb.minima.d1, mb.minima.d2
    seen = set()
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            if mb.gram[i][i] == d1 and mb.gram[j][j] == d2:
                seen.add(hnf([mb.coords[i], mb.coords[j]]))
    return sorted(seen)


@dataclass(frozen=True)
class OrthogonalizationData:
    mu21: Fraction
    mu31: Fraction
    mu32: Fraction
    delta: Fraction


def orthogonalization(gram) -> OrthogonalizationData:
    """Exact Gram-Schmidt coefficients of a successive minimal basis Gram."""
    d1, d2 = gram[0][0], gram[1][1]
    x, y, z = gram[0][1], gram[0][2], gram[1][2]
    mu21 = Fraction(x, d1)
    mu31 = Fraction(y, d1)
    mu32 = Fraction(d1 * z - x * y, d1 * d2 - x * x)
    delta = Fraction(z, d2)
    return OrthogonalizationData(mu21, mu31, mu32, delta)
