from normsector import forms


def test_principal_form_definite():
    assert forms.principal_form(-4) == (1, 0, 1)
    assert forms.principal_form(-20) == (1, 0, 5)
    assert forms.principal_form(-23) == (1, 1, 6)


def test_form_eval_and_discriminant():
    f = (2, 2, 3)
    assert forms.discriminant(f) == -20
    assert forms.form_eval(f, 1, 1) == 7


def test_reduce_definite_tracks_transform():
    f = (15, 26, 12)  # disc -44
    red, t = forms.reduce_definite(f)
    assert forms.discriminant(red) == -44
    a, b, c = red
    assert abs(b) <= a <= c
    # the transform really carries f to red
    p, q, r, s = t
    x, y = 3, -2
    assert forms.form_eval(f, p * x + q * y, r * x + s * y) \
        == forms.form_eval(red, x, y)


def test_indefinite_reduction_cycle_closes():
    for disc in [5, 13, 24, 40, 60, 316]:
        f = forms.principal_form(disc)
        cycle = forms.reduction_cycle(f)
        assert len(cycle) >= 1
        for g in cycle:
            assert forms.discriminant(g) == disc
            assert forms._is_reduced_indefinite(g, disc)


def test_compose_identity_and_inverse():
    disc = -20
    one = forms.principal_form(disc)
    f = (2, 2, 3)
    prod, content = forms.compose(f, one)
    assert content == 1
    assert forms.reduce_form(prod) == forms.reduce_form(f)
    # f has order 2 in the class group of disc -20
    sq, _ = forms.compose(f, f)
    assert forms.reduce_form(sq) == forms.reduce_form(one)


def test_compose_matches_prime_splitting():
    # over disc -4: (2+i)(2-i) = 5, principal
    f1 = (5, 4, 1)
    f2 = (5, -4, 1)
    prod, content = forms.compose(f1, f2)
    assert content == 5  # the product ideal is 5 * (1)
    assert forms.reduce_form(prod) == (1, 0, 1)


def test_principal_rep():
    # a form equivalent to the principal one represents 1
    for f in [(13, 10, 2), (5, 4, 1), (1, 0, 1)]:
        assert forms.reduce_form(f) == (1, 0, 1)
        x, y = forms.principal_rep(f)
        assert forms.form_eval(f, x, y) == 1


def test_conjugate():
    assert forms.conjugate((2, 1, 3)) == (2, -1, 3)
    assert forms.discriminant(forms.conjugate((3, 2, 2))) == -20
