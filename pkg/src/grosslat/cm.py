"""The 13 class-number-one CM rows and their lattice-side recomputation.

Each row carries the quadratic order data, the congruence classes of inert
(supersingular) primes, and the tabulated threshold prime N_E above which
the first Gross minimum of the reduction equals d.  recompute_ne re-derives
N_E from type enumeration: the unique type embedding discriminant -d
primitively is located per prime and its D1 compared with d.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .exact import is_prime, primes_between
from .lattice import short_vectors
from .orders import enumerate_types


@dataclass(frozen=True)
class CmRow:
    j_label: str
    d: int                 # -d is the order discriminant
    f: int                 # conductor
    field_disc: int        # fundamental discriminant (negative)
    modulus: int
    residues: tuple        # inert congruence classes mod `modulus`
    n_e: int               # tabulated threshold prime

    def is_supersingular_prime(self, p: int) -> bool:
        return p % self.modulus in self.residues


CM_ROWS = (
    CmRow("0", 3, 1, -3, 3, (2,), 5),
    CmRow("1728", 4, 1, -4, 4, (3,), 7),
    CmRow("-15^3", 7, 1, -7, 7, (3, 5, 6), 13),
    CmRow("20^3", 8, 1, -8, 8, (5, 7), 23),
    CmRow("-32^3", 11, 1, -11, 11, (2, 6, 7, 8, 10), 29),
    CmRow("2*30^3", 12, 2, -3, 12, (5, 11), 41),
    CmRow("66^3", 16, 2, -4, 16, (3, 7, 11, 15), 67),
    CmRow("-96^3", 19, 1, -19, 19, (2, 3, 8, 10, 12, 13, 14, 15, 18), 79),
    CmRow("-3*160^3", 27, 3, -3, 27, (2, 5, 8, 11, 14, 17, 20, 23, 26), 167),
    CmRow("255^3", 28, 2, -7, 28, (3, 5, 13, 17, 19, 27), 181),
    CmRow(
        "-960^3", 43, 1, -43, 43,
        (2, 3, 5, 7, 8, 12, 18, 19, 20, 22, 26, 27, 28, 29, 30, 32, 33, 34,
         37, 39, 42),
        433,
    ),
    CmRow(
        "-5280^3", 67, 1, -67, 67,
        (2, 3, 5, 7, 8, 11, 12, 13, 18, 20, 27, 28, 30, 31, 32, 34, 38, 41,
         42, 43, 44, 45, 46, 48, 50, 51, 52, 53, 57, 58, 61, 63, 66),
        1103,
    ),
    CmRow(
        "-640320^3", 163, 1, -163, 163,
        (2, 3, 5, 7, 8, 11, 12, 13, 17, 18, 19, 20, 23, 27, 28, 29, 30, 31,
         32, 37, 42, 44, 45, 48, 50, 52, 59, 63, 66, 67, 68, 70, 72, 73, 75,
         76, 78, 79, 80, 82, 86, 89, 92, 94, 98, 99, 101, 102, 103, 105, 106,
         107, 108, 109, 110, 112, 114, 116, 117, 120, 122, 123, 124, 125,
         127, 128, 129, 130, 137, 138, 139, 141, 142, 147, 148, 149, 153,
         154, 157, 159, 162),
        6481,
    ),
)

EXTENDED_DS = (43, 67, 163)


def cm_rows():
    return CM_ROWS


def cm_row(label: str) -> CmRow:
    for row in CM_ROWS:
        if row.j_label == label:
            return row
    raise KeyError(f"unknown CM row label {label!r}")


D1_20_LABEL = "d1-20"


def closed_form_gram(label: str, p: int):
    """Symbolic normalized Gram of a known family, instantiated at p.

    Labels: "0" (p = 2 mod 3), "1728" (p = 3 mod 4, p > 3), "-15^3"
    (p >= 13, p = 3, 5, 6 mod 7) and "d1-20" (p >= 113, p = 13, 17 mod 20,
    the non-spine first-minimum-20 family).
    """
    if label == "0":
        if p % 3 != 2:
            raise ValueError(f"p = {p} is not 2 mod 3")
        d2 = (4 * p + 1) // 3
        z = -(2 * p - 1) // 3
        return ((3, 1, 1), (1, d2, z), (1, z, d2))
    if label == "1728":
        if p % 4 != 3 or p <= 3:
            raise ValueError(f"p = {p} is not 3 mod 4 with p > 3")
        return ((4, 0, 2), (0, p, 0), (2, 0, p + 1))
    if label == "-15^3":
        if p < 13 or p % 7 not in (3, 5, 6):
            raise ValueError(f"p = {p} is not a -15^3 prime >= 13")
        r = p % 7
        if r == 3:
            x, y = 3, 2
            d2, z, d3 = (4 * p + 9) // 7, -(2 * p - 6) // 7, (8 * p + 4) // 7
        elif r == 5:
            x, y = 1, 3
            d2, z, d3 = (4 * p + 1) // 7, -(2 * p - 3) // 7, (8 * p + 9) // 7
        else:
            x, y = 2, 1
            d2, z, d3 = 4 * (p + 1) // 7, 2 * (p + 1) // 7, (8 * p + 1) // 7
        return ((7, x, y), (x, d2, z), (y, z, d3))
    if label == D1_20_LABEL:
        if p < 113 or p % 20 not in (13, 17):
            raise ValueError(f"p = {p} is not 13 or 17 mod 20 with p >= 113")
        r, s = (3, 1) if p % 20 == 13 else (1, 2)
        d2 = (2 * p + r * r) // 5
        d3 = (3 * p + s * s) // 5
        z = (-p + r * s) // 5
        return ((20, 2 * r, 2 * s), (2 * r, d2, z), (2 * s, z, d3))
    raise KeyError(f"no closed form for label {label!r}")


def has_primitive_vector_of_norm(gram, d: int) -> bool:
    for n, v in short_vectors(gram, d):
        if n == d and gcd(gcd(v[0], v[1]), v[2]) == 1:
            return True
    return False


def supersingular_primes(row: CmRow, lo: int, hi: int):
    return [p for p in primes_between(lo, hi) if row.is_supersingular_prime(p)]


def locate_embedding_type(p: int, d: int):
    """The unique type whose Gross lattice has a primitive norm-d vector."""
    types = enumerate_types(p)
    matches = [t for t in types if has_primitive_vector_of_norm(t.lattice.gram, d)]
    assert len(matches) == 1, (
        f"{len(matches)} types embed discriminant -{d} at p = {p}; expected 1"
    )
    return matches[0]


def recompute_ne(row: CmRow, p_max: int):
    """Re-derive N_E for a CM row by sweeping supersingular primes.

    Sweeps row-supersingular primes in [5, p_max] (the characteristic-2 and
    -3 reductions are outside the sweep, matching the tables), locates the
    unique type embedding -d primitively, and returns the least swept prime
    N with D1 = d from N on, together with the per-prime detail.
    """
    d = row.d
    if 4 * p_max < (d + 1) ** 2:
        raise ValueError(f"p_max must be at least (d+1)^2/4 = {(d + 1) ** 2 / 4}")
    detail = []
    last_bad = 0
    for p in supersingular_primes(row, 5, p_max):
        rec = locate_embedding_type(p, d)
        good = rec.minima[0] == d
        detail.append((p, rec.minima, good))
        if not good:
            last_bad = p
    n_e = None
    for p, _, _ in detail:
        if p > last_bad:
            n_e = p
            break
    assert n_e is not None, "no good prime in sweep range"
    # N_E never exceeds the least prime q with q > (d+1)^2/4
    q = (d + 1) ** 2 // 4 + 1
    while not is_prime(q):
        q += 1
    assert n_e <= q, "recomputed N_E exceeds its theoretical bound"
    return n_e, detail
