"""Exact integer linear algebra on small matrices.

Matrices are tuples of tuples of Python ints, rows first.  Lattices are row
lattices of such matrices, optionally over a common positive denominator.
Everything here is exact; no floats anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt


def ceil_div(a: int, b: int) -> int:
    # b > 0
    return -((-a) // b)


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def hnf(rows):
    """Row-style Hermite normal form of the row lattice spanned by `rows`.

    Zero rows are dropped, pivots are positive, and entries above each pivot
    are reduced into [0, pivot).  Returns a tuple of row tuples.
    """
    m = [list(r) for r in rows if any(r)]
    if not m:
        return ()
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(m[i][c]), i))
            if i0 != r:
                m[r], m[i0] = m[i0], m[r]
            clean = True
            piv = m[r][c]
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // piv
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][c]:
                        clean = False
            if clean:
                break
        if r < len(m) and m[r][c]:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            piv = m[r][c]
            for i in range(r):
                q = m[i][c] // piv
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
            r += 1
    for i in range(r, len(m)):
        assert not any(m[i]), "HNF elimination left a nonzero trailing row"
    return tuple(tuple(row) for row in m[:r])


def det(mat) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("det needs a square matrix")
    a = [list(row) for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_in_lattice(basis, denom: int, target):
    """Integer coordinates of `target` in the lattice (1/denom)*rowspan(basis).

    `target` is a vector of Fractions (or ints).  Returns a tuple of ints, or
    None when the vector is not a lattice member.  Raises on a dimension
    mismatch.  The basis rows must be linearly independent.
    """
    nrows = len(basis)
    ncols = len(basis[0])
    if len(target) != ncols:
        raise ValueError("dimension mismatch")
    # Solve x * basis = denom * target exactly over the rationals, then
    # demand integrality.
    cols = [[Fraction(basis[i][j]) for i in range(nrows)] for j in range(ncols)]
    rhs = [Fraction(t) * denom for t in target]
    # Gaussian elimination on the (ncols x nrows) system A x = rhs.
    a = [cols[j][:] + [rhs[j]] for j in range(ncols)]
    piv_rows = []
    row = 0
    for col in range(nrows):
        piv = None
        for i in range(row, ncols):
            if a[i][col]:
                piv = i
                break
        if piv is None:
            continue
        a[row], a[piv] = a[piv], a[row]
        pv = a[row][col]
        a[row] = [x / pv for x in a[row]]
        for i in range(ncols):
            if i != row and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[row])]
        piv_rows.append(col)
        row += 1
        if row == ncols:
            break
    # Inconsistent rows mean the target is outside the rational span.
    for i in range(row, ncols):
        if a[i][nrows]:
            return None
    if len(piv_rows) != nrows:
        raise ValueError("basis rows are linearly dependent")
    sol = [Fraction(0)] * nrows
    for i, col in enumerate(piv_rows):
        sol[col] = a[i][nrows]
    if any(s.denominator != 1 for s in sol):
        return None
    return tuple(int(s) for s in sol)


def hnf_solve(hnf_rows, target):
    """Integer coordinates of integer vector `target` in an HNF row lattice.

    Fast staircase back-substitution; returns None for non-members.
    """
    w = list(target)
    coords = []
    for row in hnf_rows:
        pc = next(c for c, x in enumerate(row) if x)
        q, rem = divmod(w[pc], row[pc])
        if rem:
            return None
        if q:
            w = [x - q * y for x, y in zip(w, row)]
        coords.append(q)
    if any(w):
        return None
    return tuple(coords)


# -- desk-scale integer utilities (trial division only) -----------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int):
    """Sorted prime factors with multiplicity, by trial division."""
    if n <= 0:
        raise ValueError("factorize needs n > 0")
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def primes_between(lo: int, hi: int):
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]


def legendre(a: int, q: int) -> int:
    """Legendre symbol (a | q) for an odd prime q."""
    r = pow(a % q, (q - 1) // 2, q)
    return -1 if r == q - 1 else r
