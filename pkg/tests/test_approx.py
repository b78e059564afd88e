import math

import numpy as np
import pytest

from normsector.approx import (PolytopeSpec, SmoothWindow,
                               box_sum, coeff_bound_check, default_params,
                               mellin, selberg_box, selberg_interval, tile,
                               transition, window_eval)


# --- smooth windows -------------------------------------------------------

def test_transition_shape():
    assert transition(0.0) == 0.0 and transition(1.0) == 1.0
    assert transition(0.5) == pytest.approx(0.5)
    for y in np.linspace(0.05, 0.95, 19):
        assert transition(y) + transition(1 - y) == pytest.approx(1.0)
        assert 0.0 < transition(y) < 1.0


def test_window_eval_support_and_plateau():
    w = SmoothWindow(x=1000.0, h=100.0, u=10.0, sign="minus")
    assert window_eval(w, 999.0) == 0.0 and window_eval(w, 1101.0) == 0.0
    assert window_eval(w, 1050.0) == 1.0
    wp = SmoothWindow(x=1000.0, h=100.0, u=10.0, sign="plus")
    assert window_eval(wp, 1000.0) == 1.0 and window_eval(wp, 1100.0) == 1.0
    assert window_eval(wp, 989.0) == 0.0
    # minus <= plus pointwise
    for y in np.linspace(980, 1120, 200):
        assert window_eval(w, y) <= window_eval(wp, y) + 1e-15


def test_window_validation():
    with pytest.raises(ValueError):
        SmoothWindow(x=1000.0, h=100.0, u=60.0, sign="minus")
    with pytest.raises(ValueError):
        SmoothWindow(x=1000.0, h=100.0, u=10.0, sign="exact")


def test_mellin_at_one_is_h_plus_minus_u():
    x, h, u = 10 ** 6, 10 ** 4, 100.0
    gm = mellin(SmoothWindow(x=x, h=h, u=u, sign="minus"), 1.0)
    gp = mellin(SmoothWindow(x=x, h=h, u=u, sign="plus"), 1.0)
    assert gm.imag == 0.0 and gp.imag == 0.0
    assert abs(gm.real - (h - u)) <= 1e-10
    assert abs(gp.real - (h + u)) <= 1e-10
    assert abs(gm.real - h) <= u and abs(gp.real - h) <= u


def test_mellin_conjugate_symmetry():
    w = SmoothWindow(x=1000.0, h=200.0, u=20.0, sign="plus")
    s = 1.0 + 3.7j
    assert mellin(w, s) == pytest.approx(np.conj(mellin(w, np.conj(s))))


def test_mellin_against_quadrature_oracle():
    from scipy.integrate import quad
    w = SmoothWindow(x=500.0, h=80.0, u=15.0, sign="minus")
    val, _ = quad(lambda y: window_eval(w, y) * y ** 1.5, 500, 580, limit=200)
    assert mellin(w, 2.5, tol=1e-7).real == pytest.approx(val, abs=1e-6)


def test_mellin_vertical_decay():
    # |G(1+it)| decays in t; smaller u gives slower decay onset
    w = SmoothWindow(x=10 ** 5, h=10 ** 3, u=50.0, sign="plus")
    mags = [abs(mellin(w, 1.0 + 1j * t)) for t in (0.0, 0.01, 0.05)]
    assert mags[0] > mags[1] > mags[2]


# --- Selberg polynomials --------------------------------------------------

def test_interval_zero_coeff_identities():
    kappa, big_m = 0.07, 60
    big_k = big_m + 1
    plus = selberg_interval(big_m, 0.0, kappa, "plus")
    minus = selberg_interval(big_m, 0.0, kappa, "minus")
    assert plus.zero_coeff() - kappa == pytest.approx(1.0 / big_k, abs=1e-13)
    assert kappa - minus.zero_coeff() == pytest.approx(1.0 / big_k, abs=1e-13)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_box_zero_coeff_identities(d):
    kappa, big_m = 0.05, 40
    big_k = big_m + 1
    box = tuple((0.1, 0.1 + kappa) for _ in range(d))
    plus = selberg_box(big_m, box, "plus")
    minus = selberg_box(big_m, box, "minus")
    vol = kappa ** d
    assert plus.zero_coeff() - vol == pytest.approx(
        (kappa + 1 / big_k) ** d - kappa ** d, abs=1e-12)
    assert vol - minus.zero_coeff() == pytest.approx(
        (kappa + 2 / big_k) ** d - (kappa + 1 / big_k) ** d, abs=1e-12)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_box_sandwich(d):
    rng = np.random.default_rng(11 + d)
    kappa, big_m = 0.13, 25
    box = tuple((0.2, 0.2 + kappa) for _ in range(d))
    plus = selberg_box(big_m, box, "plus")
    minus = selberg_box(big_m, box, "minus")
    pts = rng.random((20000, d))
    chi = np.all((pts >= 0.2) & (pts <= 0.2 + kappa), axis=1).astype(float)
    assert np.all(minus.eval_many(pts) <= chi + 1e-12)
    assert np.all(chi <= plus.eval_many(pts) + 1e-12)


def test_unequal_sides_sandwich():
    rng = np.random.default_rng(5)
    box = ((0.0, 0.04), (0.5, 0.61))
    plus = selberg_box(30, box, "plus")
    minus = selberg_box(30, box, "minus")
    pts = rng.random((20000, 2))
    inside = ((pts[:, 0] <= 0.04)
              & (pts[:, 1] >= 0.5) & (pts[:, 1] <= 0.61)).astype(float)
    assert np.all(minus.eval_many(pts) <= inside + 1e-12)
    assert np.all(inside <= plus.eval_many(pts) + 1e-12)


def test_wrap_around_interval():
    # an arc crossing 0
    plus = selberg_interval(40, -0.03, 0.03, "plus")
    minus = selberg_interval(40, -0.03, 0.03, "minus")
    pts = np.linspace(0, 1, 4001, endpoint=False)
    chi = ((pts % 1.0 <= 0.03) | (pts % 1.0 >= 0.97)).astype(float)
    assert np.all(minus.eval_many(pts) <= chi + 1e-12)
    assert np.all(chi <= plus.eval_many(pts) + 1e-12)


def test_coeff_bound_check():
    for d in (1, 2):
        box = tuple((0.0, 0.05) for _ in range(d))
        res = coeff_bound_check(selberg_box(35, box, "plus"))
        assert res["max_ratio"] <= 10.0 and not res["flagged"]


def test_coeff_degree_support():
    big_m = 12
    appr = selberg_interval(big_m, 0.0, 0.1, "plus")
    assert appr.coeff((big_m + 1,)) == 0.0
    assert appr.coeff((big_m,)) != 0.0


# --- polytopes and tilings ------------------------------------------------

def test_polytope_volume_and_contains():
    poly = PolytopeSpec(dim=1, boxes=(((0.2, 0.3),),))
    assert poly.volume() == pytest.approx(0.1)
    assert poly.contains((0.25,)) and not poly.contains((0.5,))
    # wrap-around box
    wrap = PolytopeSpec(dim=1, boxes=(((0.95, 1.05),),))
    assert wrap.contains((0.02,)) and wrap.contains((0.97,))
    assert not wrap.contains((0.5,))


def test_polygon_polytope():
    tri = PolytopeSpec(dim=2, polygon=((0.1, 0.1), (0.5, 0.1), (0.1, 0.5)))
    assert tri.volume() == pytest.approx(0.08)
    assert tri.contains((0.2, 0.2)) and not tri.contains((0.45, 0.45))


def test_tile_interval_volumes_bracket():
    poly = PolytopeSpec(dim=1, boxes=(((0.2, 0.5),),))
    t = tile(poly, kappa0=0.01, anchor=(0.0,))
    assert t.inner_vol <= poly.volume() + 1e-9 <= t.outer_vol + 2e-9
    assert poly.volume() - t.inner_vol <= 2 * 0.011
    assert t.outer_vol - poly.volume() <= 2 * 0.011


def test_tile_refinement_tightens():
    poly = PolytopeSpec(dim=2, polygon=((0.1, 0.1), (0.6, 0.15), (0.3, 0.55)))
    gaps = []
    for k in (0.05, 0.02, 0.01):
        t = tile(poly, kappa0=k, anchor=(0.0, 0.0))
        assert t.inner_vol <= poly.volume() + 1e-9
        assert t.outer_vol >= poly.volume() - 1e-9
        gaps.append(t.outer_vol - t.inner_vol)
    assert gaps[0] >= gaps[1] >= gaps[2]


def test_box_sum_sandwich_over_tiling():
    rng = np.random.default_rng(3)
    poly = PolytopeSpec(dim=1, boxes=(((0.33, 0.61),),))
    t = tile(poly, kappa0=0.02, anchor=(0.0,))
    lowsum = box_sum(t, 40, "minus")
    upsum = box_sum(t, 40, "plus")
    pts = rng.random((5000, 1))
    chi = np.array([float(poly.contains(p)) for p in pts])
    assert np.all(lowsum.eval_many(pts) <= chi + 1e-9)
    assert np.all(chi <= upsum.eval_many(pts) + 1e-9)


def test_default_params():
    p = default_params(10 ** 6, 0.1, 0.1)
    assert 0.1 < p.tau_prime < p.tau < 2 / 10
    assert p.u == pytest.approx((10 ** 6) ** (1 - p.tau_prime))
    assert p.M == math.ceil((10 ** 6) ** p.tau)
    assert p.kappa0 == pytest.approx(math.log(10 ** 6) ** -3.0)
    with pytest.raises(ValueError):
        default_params(10 ** 6, 0.3, 0.1)
