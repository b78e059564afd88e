import math

import pytest

from normsector.quadfield import (galois_conjugate, ideal_product, make_field,
                                  narrow_class_group, primes_over, split_type)


def test_field_invariants_imaginary():
    f = make_field(-1)
    assert f.disc == -4 and f.signature == (0, 1) and f.unit_count == 4
    f3 = make_field(-3)
    assert f3.disc == -3 and f3.unit_count == 6
    f7 = make_field(-7)
    assert f7.disc == -7 and f7.unit_count == 2


def test_field_invariants_real():
    f = make_field(5)
    assert f.disc == 5 and f.signature == (2, 0)
    # fundamental unit (1 + sqrt 5)/2, norm -1
    assert f.fund_unit == (1, 1) and f.unit_den == 2
    assert f.fund_unit_norm == -1
    # totally positive fundamental unit is its square, (3 + sqrt 5)/2
    assert f.tot_pos_unit == (3, 1) and f.tot_pos_den == 2
    assert f.log_tot_pos == pytest.approx(math.log((3 + math.sqrt(5)) / 2))

    f13 = make_field(13)
    assert f13.fund_unit == (3, 1) and f13.fund_unit_norm == -1

    f6 = make_field(6)
    assert f6.disc == 24 and f6.fund_unit == (5, 2) and f6.unit_den == 1
    assert f6.fund_unit_norm == 1


def test_make_field_rejects_bad_m():
    with pytest.raises(ValueError):
        make_field(12)  # not squarefree
    with pytest.raises(ValueError):
        make_field(1)


def test_narrow_class_numbers():
    assert narrow_class_group(make_field(-1)).order == 1
    assert narrow_class_group(make_field(-5)).order == 2
    assert narrow_class_group(make_field(-23)).order == 3
    assert narrow_class_group(make_field(5)).order == 1
    # norm +1 fundamental unit doubles the narrow count for m = 6: h+ = 2
    assert narrow_class_group(make_field(6)).order == 2


def test_group_structure_minus23():
    g = narrow_class_group(make_field(-23))
    e = g.identity_idx
    non_triv = [i for i in range(3) if i != e]
    a, b = non_triv
    assert g.inverse[a] == b and g.inverse[b] == a
    assert g.compose_idx(a, a) == b  # cyclic of order 3
    assert g.power_idx(a, 3) == e


def test_split_types():
    f = make_field(-1)
    assert split_type(f, 2) == "ramified"
    assert split_type(f, 5) == "split"
    assert split_type(f, 7) == "inert"
    f5 = make_field(-5)
    assert split_type(f5, 2) == "ramified" and split_type(f5, 5) == "ramified"
    assert split_type(f5, 3) == "split" and split_type(f5, 11) == "inert"


def test_primes_over_split():
    f = make_field(-1)
    g = narrow_class_group(f)
    recs = primes_over(f, 5, g)
    assert len(recs) == 2
    for r in recs:
        assert r.norm == 5 and r.kind == "split"
        a, b, c = r.form
        assert a == 5 and b * b - 4 * a * c == -4
    # conjugate swaps the two
    assert galois_conjugate(f, recs[0]).form == recs[1].form


def test_primes_over_classes_minus5():
    f = make_field(-5)
    g = narrow_class_group(f)
    recs = primes_over(f, 3, g)
    assert {r.form for r in recs} == {(3, 2, 2), (3, -2, 2)}
    assert all(r.class_idx != g.identity_idx for r in recs)
    # 29 = 9 + 20 is a norm, hence principal
    recs29 = primes_over(f, 29, g)
    assert all(r.class_idx == g.identity_idx for r in recs29)


def test_primes_over_inert_and_ramified():
    f = make_field(-1)
    g = narrow_class_group(f)
    (inert,) = primes_over(f, 7, g)
    assert inert.kind == "inert" and inert.norm == 49
    (ram,) = primes_over(f, 2, g)
    assert ram.kind == "ramified" and ram.norm == 2


def test_ideal_product_matches_class_composition():
    f = make_field(-5)
    g = narrow_class_group(f)
    r3 = primes_over(f, 3, g)[0]
    r7 = primes_over(f, 7, g)[0]
    prod_form, content = ideal_product(f, r3.form, r7.form)
    assert content == 1  # distinct primes: primitive product
    idx = g.class_index(prod_form)
    assert idx == g.compose_idx(r3.class_idx, r7.class_idx)
