import pytest

from grosslat.cm import (
    D1_20_LABEL,
    closed_form_gram,
    cm_row,
    cm_rows,
    locate_embedding_type,
    recompute_ne,
    supersingular_primes,
)
from grosslat.exact import is_prime
from grosslat.lattice import _det3


def test_thirteen_rows_with_consistent_order_data():
    rows = cm_rows()
    assert len(rows) == 13
    assert {r.d for r in rows} == {3, 4, 7, 8, 11, 12, 16, 19, 27, 28, 43, 67, 163}
    for r in rows:
        assert r.d == r.f ** 2 * abs(r.field_disc)
        # N_E never exceeds the least prime above (d+1)^2/4
        q = (r.d + 1) ** 2 // 4 + 1
        while not is_prime(q):
            q += 1
        assert r.n_e <= q
        assert all(0 < a < r.modulus for a in r.residues)


def test_specific_rows():
    r7 = cm_row("-15^3")
    assert (r7.d, r7.f, r7.n_e, r7.residues) == (7, 1, 13, (3, 5, 6))
    r3 = cm_row("0")
    assert (r3.d, r3.n_e, r3.residues) == (3, 5, (2,))
    r163 = cm_row("-640320^3")
    assert (r163.d, r163.n_e) == (163, 6481)
    with pytest.raises(KeyError):
        cm_row("nope")


def test_closed_form_instances():
    assert closed_form_gram("-15^3", 19) == ((7, 1, 3), (1, 11, -5), (3, -5, 23))
    assert closed_form_gram(D1_20_LABEL, 113) == (
        (20, 6, 2), (6, 47, -22), (2, -22, 68),
    )
    assert closed_form_gram(D1_20_LABEL, 137) == (
        (20, 2, 4), (2, 55, -27), (4, -27, 83),
    )
    assert closed_form_gram("1728", 11) == ((4, 0, 2), (0, 11, 0), (2, 0, 12))
    assert closed_form_gram("0", 5) == ((3, 1, 1), (1, 7, -3), (1, -3, 7))


def test_closed_form_rejects_inapplicable():
    for label, p in (("0", 7), ("1728", 5), ("1728", 3), ("-15^3", 11),
                     ("-15^3", 29), (D1_20_LABEL, 13), (D1_20_LABEL, 111)):
        with pytest.raises(ValueError):
            closed_form_gram(label, p)
    with pytest.raises(KeyError):
        closed_form_gram("66^3", 7)


def test_closed_form_determinants_are_4p2():
    from grosslat.exact import primes_between

    for p in primes_between(5, 250):
        if p % 3 == 2:
            assert _det3(closed_form_gram("0", p)) == 4 * p * p
        if p % 4 == 3 and p > 3:
            assert _det3(closed_form_gram("1728", p)) == 4 * p * p
        if p >= 13 and p % 7 in (3, 5, 6):
            assert _det3(closed_form_gram("-15^3", p)) == 4 * p * p
        if p >= 113 and p % 20 in (13, 17):
            assert _det3(closed_form_gram(D1_20_LABEL, p)) == 4 * p * p


def test_supersingular_primes_helper():
    assert supersingular_primes(cm_row("-15^3"), 5, 40) == [5, 13, 17, 19, 31]


def test_locate_embedding_type_is_unique_and_correct():
    rec = locate_embedding_type(31, 7)
    assert rec.minima == (7, 19, 36)


def test_recompute_ne_examples():
    assert recompute_ne(cm_row("-15^3"), 300)[0] == 13
    assert recompute_ne(cm_row("0"), 300)[0] == 5
    assert recompute_ne(cm_row("-96^3"), 300)[0] == 79


def test_recompute_ne_requires_enough_range():
    with pytest.raises(ValueError):
        recompute_ne(cm_row("-96^3"), 50)


def test_gramgross_single_matrix_for_cm_rows():
    # above N_E the search returns exactly the Gram of the embedding type
    from grosslat.gramgross import gram_gross

    for row in cm_rows():
        if row.d > 28:
            continue
        for p in supersingular_primes(row, row.n_e, 300):
            cands = gram_gross(p, row.d)
            assert len(cands) == 1, (row.j_label, p)
            assert cands[0].gram == locate_embedding_type(p, row.d).gram


def test_closed_form_rows_match_gramgross_exactly():
    for p in supersingular_primes(cm_row("0"), 2, 120):
        (cand,) = gram_gross_list(p, 3)
        assert cand == closed_form_gram("0", p)
    for p in supersingular_primes(cm_row("1728"), 5, 120):
        (cand,) = gram_gross_list(p, 4)
        assert cand == closed_form_gram("1728", p)
    for p in supersingular_primes(cm_row("-15^3"), 13, 120):
        (cand,) = gram_gross_list(p, 7)
        assert cand == closed_form_gram("-15^3", p)


def gram_gross_list(p, d1):
    from grosslat.gramgross import gram_gross

    return [c.gram for c in gram_gross(p, d1)]
