"""Independent finite-field ground truth for supersingular j-invariants.

A Legendre curve y^2 = x(x-1)(x-lambda) is supersingular exactly when the
Hasse polynomial H_p(lambda) = sum C(m,i)^2 lambda^i vanishes, m = (p-1)/2.
The sweep evaluates H_p at every lambda in F_{p^2} minus {0, 1} and maps
roots through j(lambda); everything else (spine flags, Galois orbit count)
is read off the root set.  F_{p^2} = F_p(s) with s^2 the smallest positive
non-residue.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exact import is_prime


@dataclass(frozen=True)
class SupersingularSet:
    p: int
    nonresidue: int            # s^2, or 0 when every j lies in F_p
    js: tuple                  # ((re, im), ...) sorted, im coordinate over s
    spine_count: int
    orbit_count: int

    @property
    def count(self):
        return len(self.js)


def deuring_polynomial(p: int):
    """Coefficients C(m,i)^2 mod p of the Hasse polynomial, m = (p-1)/2."""
    if p < 3 or not is_prime(p):
        raise ValueError("need an odd prime")
    m = (p - 1) // 2
    coeffs = [1]
    c = 1
    for i in range(1, m + 1):
        # C(m,i) = C(m,i-1) * (m-i+1) / i, tracked exactly then reduced
        c = c * (m - i + 1) // i
        coeffs.append((c * c) % p)
    return coeffs


def _smallest_nonresidue(p: int) -> int:
    residues = {(x * x) % p for x in range(1, p)}
    for s in range(2, p):
        if s not in residues:
            return s
    raise AssertionError("no non-residue found")


def _j_invariant(lam_re: int, lam_im: int, p: int, sigma: int):
    """j = 256 (l^2 - l + 1)^3 / (l^2 (l-1)^2) in F_p(s), s^2 = sigma."""

    def mul(a, b):
        return ((a[0] * b[0] + sigma * a[1] * b[1]) % p,
                (a[0] * b[1] + a[1] * b[0]) % p)

    def inv(a):
        n = (a[0] * a[0] - sigma * a[1] * a[1]) % p
        ninv = pow(n, p - 2, p)
        return ((a[0] * ninv) % p, (-a[1] * ninv) % p)

    lam = (lam_re % p, lam_im % p)
    lam2 = mul(lam, lam)
    num = ((lam2[0] - lam[0] + 1) % p, (lam2[1] - lam[1]) % p)
    num3 = mul(mul(num, num), num)
    lm1 = ((lam[0] - 1) % p, lam[1])
    den = mul(lam2, mul(lm1, lm1))
    j = mul(num3, inv(den))
    return ((256 * j[0]) % p, (256 * j[1]) % p)


def _eichler_count(p: int) -> int:
    if p in (2, 3):
        return 1
    eps = {1: 0, 5: 1, 7: 1, 11: 2}[p % 12]
    return p // 12 + eps


def supersingular_j_set(p: int) -> SupersingularSet:
    """Supersingular j-invariants over F_{p^2} with field-of-definition flags."""
    if p == 2:
        return SupersingularSet(2, 0, ((0, 0),), 1, 1)
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    coeffs = deuring_polynomial(p)
    sigma = _smallest_nonresidue(p)
    if (2 + sigma) * p * p >= 2 ** 63:
        raise ValueError(f"p = {p} exceeds the int64-safe sweep range")
    roots = []

    # lambda in F_p (excluding 0, 1): vectorized Horner
    u = np.arange(2, p, dtype=np.int64)
    acc = np.zeros_like(u)
    for c in reversed(coeffs):
        acc = (acc * u + c) % p
    for lam in u[acc == 0]:
        roots.append((int(lam), 0))

    # lambda = u + v s with 1 <= v <= (p-1)/2; conjugates added afterwards
    uu, vv = np.meshgrid(
        np.arange(p, dtype=np.int64),
        np.arange(1, (p - 1) // 2 + 1, dtype=np.int64),
        indexing="ij",
    )
    re = np.zeros_like(uu)
    im = np.zeros_like(vv)
    for c in reversed(coeffs):
        re, im = (re * uu + sigma * im * vv + c) % p, (re * vv + im * uu) % p
    hit = (re == 0) & (im == 0)
    for a, v in zip(uu[hit].tolist(), vv[hit].tolist()):
        roots.append((a, v))
        roots.append((a, p - v))

    js = set()
    for lre, lim in roots:
        js.add(_j_invariant(lre, lim, p, sigma))
    total = len(js)
    expected = _eichler_count(p)
    assert total == expected, f"count {total} != Eichler-Deuring {expected} at p={p}"
    spine = sum(1 for _, im in js if im == 0)
    assert (total - spine) % 2 == 0
    orbit = spine + (total - spine) // 2
    return SupersingularSet(p, sigma, tuple(sorted(js)), spine, orbit)


def spine_count(p: int) -> int:
    return supersingular_j_set(p).spine_count
