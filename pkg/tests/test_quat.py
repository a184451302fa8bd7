import random

from fractions import Fraction

import pytest

from grosslat.quat import (
    AlgebraMismatch,
    QuaternionAlgebra,
    QuaternionElement,
    mul4,
)


def alg(a=-1, b=-11, p=11):
    return QuaternionAlgebra(a, b, p)


def test_defining_relations():
    A = alg()
    one, (i, j, k) = A.one(), A.gens()
    assert i * j == k
    assert j * i == -k
    assert i * i == A.element(-1)
    assert (one + i) * (one - i) == A.element(2)


def test_conjugate_product_generic_a():
    A = QuaternionAlgebra(-3, -5, 5)
    one, (i, _, _) = A.one(), A.gens()
    assert (one + i) * (one - i) == A.element(4)  # 1 - a


def test_trd_nrd_conj():
    A = alg(-1, -1, 2)
    one, (i, j, k) = A.one(), A.gens()
    assert (one + i).conj() == one - i
    assert i.trd() == 0
    assert i.nrd() == 1
    omega = A.element(Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 2))
    assert omega.nrd() == 1
    assert omega.trd() == 1


def test_inner_examples():
    A = QuaternionAlgebra(-3, -5, 5)
    _, (i, j, _) = A.one(), A.gens()
    assert i.inner(j) == 0
    # j=0 basis at p=5: (beta1, beta2) = 1
    b1 = A.element(0, 1)
    b2 = A.element(0, Fraction(1, 3), 1, Fraction(-1, 3))
    assert b1.inner(b2) == 1
    # j=1728 basis at p=11: (2i, i-k) = 2
    B = alg()
    _, (i, j, k) = B.one(), B.gens()
    assert (2 * i).inner(i - k) == 2


def test_mul4_matches_table():
    # the structure-constant table is the single tested site for signs
    A = alg(-2, -7, 7)
    rng = random.Random(3)
    for _ in range(100):
        u = tuple(rng.randrange(-5, 6) for _ in range(4))
        v = tuple(rng.randrange(-5, 6) for _ in range(4))
        x = QuaternionElement(A, tuple(Fraction(c) for c in u))
        y = QuaternionElement(A, tuple(Fraction(c) for c in v))
        assert (x * y).coords == tuple(
            Fraction(c) for c in mul4(u, v, A.a, A.b)
        )


def test_norm_multiplicative_and_conj_antihom():
    A = QuaternionAlgebra(-3, -13, 13)
    rng = random.Random(5)
    for _ in range(50):
        x = A.element(*[Fraction(rng.randrange(-6, 7), rng.choice([1, 2, 3])) for _ in range(4)])
        y = A.element(*[Fraction(rng.randrange(-6, 7), rng.choice([1, 2, 3])) for _ in range(4)])
        assert (x * y).nrd() == x.nrd() * y.nrd()
        assert (x * y).conj() == y.conj() * x.conj()
        assert x + x.conj() == A.element(x.trd())
        if x.coords != (0, 0, 0, 0):
            assert x.inner(x) > 0


def test_algebra_mismatch():
    A, B = alg(), alg(-1, -7, 7)
    with pytest.raises(AlgebraMismatch):
        A.one() * B.one()


def test_rendering():
    A = alg()
    e = A.element(Fraction(1, 2), -1, 0, 3)
    assert str(e) == "1/2 + -1*i + 0*j + 3*k"
