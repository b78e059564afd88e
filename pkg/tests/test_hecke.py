import math
import random

import pytest

from normsector.hecke import (AngleVec, PullbackMatrix, SectorSpec, angle_of,
                              character_pullback, in_sector, make_basis,
                              sector_polytope)
from normsector.quadfield import (galois_conjugate, ideal_product, make_field,
                                  narrow_class_group, primes_over)
from normsector.util import torus_dist


def test_sector_spec_validation():
    SectorSpec(phi0=(0.1,), delta=0.1)
    with pytest.raises(ValueError):
        SectorSpec(phi0=(0.1,), delta=0.6)
    with pytest.warns(UserWarning):
        SectorSpec(phi0=(0.1,), delta=0.3)
    with pytest.raises(ValueError):
        SectorSpec(phi0=(0.1,), delta=0.1, scale_mode="fixed-x")  # no x_ref


def test_sector_radius_modes():
    per_prime = SectorSpec(phi0=(0.0,), delta=0.1)
    assert per_prime.radius(10 ** 4) == pytest.approx(10 ** -0.4)
    fixed = SectorSpec(phi0=(0.0,), delta=0.1, scale_mode="fixed-x",
                       x_ref=10 ** 6)
    assert fixed.radius(10 ** 4) == pytest.approx(10 ** -0.6)


def test_angle_vec():
    a = AngleVec((0.9,))
    b = AngleVec((0.05,))
    assert a.dist(b.coords) == pytest.approx(0.15)


def test_gaussian_angle_frozen_value():
    # ideal (2 + i) over p = 5: angle = 4 * atan2(1, 2) / (2 pi) mod 1
    f = make_field(-1)
    basis = make_basis(f)
    recs = primes_over(f, 5, narrow_class_group(f))
    angles = sorted(angle_of(f, basis, r).coords[0] for r in recs)
    expect = (4 * math.atan2(1, 2) / (2 * math.pi)) % 1.0
    assert min(angles) == pytest.approx(min(expect, 1 - expect), abs=1e-12)
    assert angles[0] + angles[1] == pytest.approx(1.0)
    assert angles[0] == pytest.approx(0.2951672353008665, abs=1e-12)


def test_real_quadratic_angle_frozen_value():
    # p = 11 in Q(sqrt 5): generator (7 + sqrt 5)/2, totally positive;
    # angle = (2 log((7 + sqrt 5)/2) - log 11) / (2 log eps+)
    f = make_field(5)
    basis = make_basis(f)
    recs = primes_over(f, 11, narrow_class_group(f))
    angles = sorted(angle_of(f, basis, r).coords[0] for r in recs)
    s5 = math.sqrt(5)
    expect = (2 * math.log((7 + s5) / 2) - math.log(11)) \
        / (2 * math.log((3 + s5) / 2))
    assert angles[0] == pytest.approx(expect % 1.0, abs=1e-10)
    assert angles[0] + angles[1] == pytest.approx(1.0)


def test_conjugate_negates_angle():
    for m in (-1, -5, 5):
        f = make_field(m)
        basis = make_basis(f)
        g = narrow_class_group(f)
        checked = 0
        for p in range(3, 400):
            if not all(p % d for d in range(2, int(math.isqrt(p)) + 1)):
                continue
            if f.disc % p == 0:
                continue
            recs = primes_over(f, p, g)
            if recs[0].kind != "split":
                continue
            a1 = angle_of(f, basis, recs[0]).coords[0]
            a2 = angle_of(f, basis, galois_conjugate(f, recs[0])).coords[0]
            assert torus_dist(a1 + a2, 0.0) < 1e-9, (m, p)
            checked += 1
        assert checked > 20


def test_angle_additivity_under_ideal_product():
    # angle(ab) = angle(a) + angle(b) on the torus
    rng = random.Random(99)
    f = make_field(-5)
    basis = make_basis(f)
    g = narrow_class_group(f)
    split = []
    for p in range(3, 600):
        if all(p % d for d in range(2, int(math.isqrt(p)) + 1)) \
                and f.disc % p != 0:
            recs = primes_over(f, p, g)
            if recs[0].kind == "split":
                split.append(recs[0])
    for _ in range(40):
        r1, r2 = rng.choice(split), rng.choice(split)
        prod_form, content = ideal_product(f, r1.form, r2.form)
        if content != 1:
            continue
        a1 = angle_of(f, basis, r1).coords[0]
        a2 = angle_of(f, basis, r2).coords[0]
        from normsector.quadfield import PrimeIdealRec
        prod_rec = PrimeIdealRec(
            p=0, norm=prod_form[0], kind="split", form=prod_form,
            gen=None, class_idx=g.class_index(prod_form))
        ap = angle_of(f, basis, prod_rec).coords[0]
        assert torus_dist(ap, a1 + a2) < 1e-9


@pytest.mark.parametrize("m", [-1, -5, 5])
def test_character_pullback_is_negation(m):
    f = make_field(m)
    basis = make_basis(f)
    pb = character_pullback(f, basis, "conjugation")
    assert pb.entries == ((-1,),)


def test_in_sector():
    spec = SectorSpec(phi0=(0.25,), delta=0.1)
    assert in_sector(AngleVec((0.26,)), spec, 10 ** 4)
    assert not in_sector(AngleVec((0.26 + 10 ** -0.4,)), spec, 10 ** 4)


def test_sector_polytope_single_arc():
    poly = sector_polytope((0.3,), 0.2, [PullbackMatrix(((1,),))], 10 ** 4)
    r = 10 ** -0.8
    (lo, hi) = poly.boxes[0][0]
    assert lo == pytest.approx(0.3 - r) and hi == pytest.approx(0.3 + r)
    assert poly.dilation == pytest.approx(r)
    assert poly.base_boxes == (((-1.0, 1.0),),)


def test_sector_polytope_intersection_empty():
    pbs = [PullbackMatrix(((1,),)), PullbackMatrix(((-1,),))]
    poly = sector_polytope((0.3,), 0.2, pbs, 10 ** 4)
    assert poly.is_empty
    # arcs at +-phi0 overlap when phi0 is near 0
    near = sector_polytope((0.01,), 0.2, pbs, 10 ** 4)
    assert not near.is_empty


def test_sector_polytope_full_torus():
    poly = sector_polytope((0.3,), 0.0, [PullbackMatrix(((1,),))], 10 ** 4)
    assert poly.volume() == pytest.approx(1.0)
