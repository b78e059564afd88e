"""Infinite-order Hecke character basis on a quadratic field.

The angle map phi sends an ideal to a point of the circle R/Z.  On a
narrowly principal ideal with totally positive generator alpha it is

    imaginary field:  phi = g * arg(alpha) / (2 pi)    (g roots of unity),
    real field:       phi = v * log|alpha^(1)/alpha^(2)| / (2 pi),
                      v = pi / log(eps), eps the least totally positive
                      unit > 1,

both invariant under the allowed unit multiples.  The extension to
non-principal ideals fixes one branch per generator of a cyclic
decomposition of the narrow class group; everything else follows by
additivity through actual ideal products, which keeps phi(sigma(a)) = -phi(a)
exact rather than true only up to a class character.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from . import forms
from .approx import PolytopeSpec
from .quadfield import (
    FieldSpec,
    NarrowClassGroup,
    PrimeIdealRec,
    _surd_positive,
    narrow_class_group,
    primes_over,
)
from .util import InvariantError, log_quadratic_surd, torus_dist

TWO_PI = 2.0 * math.pi

DELTA_SOFT_BOUND = 0.2  # 2/(5n) at n = 2
DELTA_HARD_BOUND = 0.5


@dataclass(frozen=True)
class AngleVec:
    coords: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(c % 1.0 for c in self.coords))

    def dist(self, other) -> float:
        oc = other.coords if isinstance(other, AngleVec) else tuple(other)
        return max(torus_dist(a, b) for a, b in zip(self.coords, oc))


@dataclass(frozen=True)
class SectorSpec:
    """Sector of sup-radius norm^-delta (per-prime) or x_ref^-delta (fixed-x)
    about the center phi0."""

    phi0: tuple[float, ...]
    delta: float
    scale_mode: str = "per-prime"
    x_ref: float | None = None

    def __post_init__(self):
        if self.scale_mode not in ("per-prime", "fixed-x"):
            raise ValueError("scale_mode must be 'per-prime' or 'fixed-x'")
        if self.scale_mode == "fixed-x" and not self.x_ref:
            raise ValueError("fixed-x scaling needs x_ref")
        if self.delta >= DELTA_HARD_BOUND:
            raise ValueError(f"delta = {self.delta} >= {DELTA_HARD_BOUND}")
        if self.delta > DELTA_SOFT_BOUND:
            warnings.warn(
                f"delta = {self.delta} exceeds the theorem range {DELTA_SOFT_BOUND}",
                stacklevel=2)

    def radius(self, norm: int) -> float:
        base = self.x_ref if self.scale_mode == "fixed-x" else norm
        return float(base) ** (-self.delta)


@dataclass(frozen=True)
class PullbackMatrix:
    entries: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class HeckeBasis:
    field: FieldSpec
    group: NarrowClassGroup
    d: int
    kind: str  # "imaginary" | "real"
    exponent_g: int      # imaginary case
    winding_v: float     # real case, v = pi / log(eps_+)
    gen_classes: tuple[int, ...]
    gen_orders: tuple[int, ...]
    gen_forms: tuple[forms.Form, ...]
    gen_angles: tuple[float, ...]
    class_exps: tuple[tuple[int, ...], ...]
    anchor_forms: tuple[forms.Form, ...]
    anchor_angles: tuple[float, ...]


def _principal_angle(field: FieldSpec, f: forms.Form) -> float:
    """phi of the narrowly principal ideal attached to f, in [0, 1)."""
    rep = forms.principal_rep(f)
    if rep is None:
        raise InvariantError(f"form {f} is not narrowly principal")
    x, y = rep
    a, b, _ = f
    p_part, q_part = 2 * a * x + b * y, y
    return _angle_from_gen(field, p_part, q_part)


def _angle_from_gen(field: FieldSpec, p_part: int, q_part: int) -> float:
    """phi of alpha = (P + Q sqrt(disc))/2; sign-normalized internally."""
    disc = field.disc
    if field.is_real:
        if not _surd_positive(p_part, q_part, disc):
            p_part, q_part = -p_part, -q_part
        if q_part == 0:
            return 0.0
        nrm = (p_part * p_part - disc * q_part * q_part) // 4
        if nrm <= 0:
            raise InvariantError("generator is not totally positive")
        big = log_quadratic_surd(abs(p_part), abs(q_part), 2, disc)
        log_ratio = (1 if q_part > 0 else -1) * (2.0 * big - math.log(nrm))
        return (log_ratio / (2.0 * field.log_tot_pos)) % 1.0
    g = field.unit_count
    theta = math.atan2(q_part * math.sqrt(-disc), float(p_part))
    return (g * theta / TWO_PI) % 1.0


def _cyclic_decomposition(group: NarrowClassGroup) -> tuple[list[int], list[int], dict]:
    """Generators g_i, orders n_i, and exponent tuples realizing the group as
    a direct product of the cyclic subgroups <g_i>."""
    h = group.order
    e = group.identity_idx
    comp = group.comp_table
    gens: list[int] = []
    orders: list[int] = []
    expr: dict[int, tuple[int, ...]] = {e: ()}
    while len(expr) < h:
        # element with maximal order in the quotient by the current subgroup
        best, best_k = None, 0
        for x in range(h):
            if x in expr:
                continue
            k, y = 1, x
            while y not in expr:
                y = comp[y][x]
                k += 1
            if k > best_k:
                best, best_k = x, k
        k = best_k
        # replace by a coset element whose k-th power is the identity, so the
        # new cyclic factor splits off as a direct summand
        lift = None
        for s in list(expr):
            cand = comp[best][s]
            y = e
            for _ in range(k):
                y = comp[y][cand]
            if y == e:
                lift = cand
                break
        if lift is None:
            raise InvariantError("cyclic decomposition failed to split")
        old = dict(expr)
        for s, es in old.items():
            y = s
            for j in range(k):
                if j:
                    y = comp[y][lift]
                expr[y] = es + (j,)
        if len(expr) != len(old) * k:
            raise InvariantError("cyclic factor did not split off cleanly")
        gens.append(lift)
        orders.append(k)
    full = {c: es + (0,) * (len(gens) - len(es)) for c, es in expr.items()}
    return gens, orders, full


def _smallest_split_form_in_class(field: FieldSpec, group: NarrowClassGroup,
                                  cls: int, p_limit: int = 100_000) -> forms.Form:
    from .sieve import primes_in_range
    for p in primes_in_range(2, p_limit):
        p = int(p)
        if field.disc % p == 0:
            continue
        from .util import kronecker
        if kronecker(field.disc, p) != 1:
            continue
        for rec in primes_over(field, p, group):
            if rec.class_idx == cls:
                return rec.form
    raise InvariantError(f"no split prime ideal found in class {cls}")


def make_basis(field: FieldSpec) -> HeckeBasis:
    group = narrow_class_group(field)
    if field.is_real:
        kind, g, v = "real", 2, math.pi / field.log_tot_pos
    else:
        kind, g, v = "imaginary", field.unit_count, 0.0
    gens, orders, expr = _cyclic_decomposition(group)
    gen_forms: list[forms.Form] = []
    gen_angles: list[float] = []
    for cls, n in zip(gens, orders):
        f = _smallest_split_form_in_class(field, group, cls)
        gen_forms.append(f)
        # phi on the anchor: 1/n of the principal angle of its n-th power,
        # branch fixed in [0, 1/n)
        power = forms.principal_form(field.disc)
        for _ in range(n):
            power, _c = forms.compose(power, f)
        ang = _principal_angle(field, power)
        gen_angles.append((ang % 1.0) / n)
    anchor_forms: list[forms.Form] = []
    anchor_angles: list[float] = []
    for c in range(group.order):
        es = expr[c]
        prod = forms.principal_form(field.disc)
        ang = 0.0
        for f, n_e, a_g in zip(gen_forms, es, gen_angles):
            for _ in range(n_e):
                prod, _c = forms.compose(prod, f)
            ang += n_e * a_g
        if group.class_index(prod) != c:
            raise InvariantError("anchor product landed in the wrong class")
        anchor_forms.append(prod)
        anchor_angles.append(ang % 1.0)
    return HeckeBasis(
        field=field, group=group, d=1, kind=kind, exponent_g=g, winding_v=v,
        gen_classes=tuple(gens), gen_orders=tuple(orders),
        gen_forms=tuple(gen_forms), gen_angles=tuple(gen_angles),
        class_exps=tuple(tuple(expr[c]) for c in range(group.order)),
        anchor_forms=tuple(anchor_forms), anchor_angles=tuple(anchor_angles),
    )


def angle_of(field: FieldSpec, basis: HeckeBasis, ideal: PrimeIdealRec) -> AngleVec:
    if ideal.form is None:
        return AngleVec((0.0,))  # rational ideal: the character is trivial
    c = ideal.class_idx
    if c == basis.group.identity_idx:
        if ideal.gen is not None:
            return AngleVec((_angle_from_gen(field, *ideal.gen),))
        return AngleVec((_principal_angle(field, ideal.form),))
    # phi(b) = phi(anchor of class) + phi of the principal ideal b*sigma(anchor)
    anchor = basis.anchor_forms[c]
    prod, _content = forms.compose(ideal.form, forms.conjugate(anchor))
    ang = basis.anchor_angles[c] + _principal_angle(field, prod)
    return AngleVec((ang % 1.0,))


def character_pullback(field: FieldSpec, basis: HeckeBasis, sigma: str,
                       test_primes: int = 60, tol: float = 1e-6) -> PullbackMatrix:
    """Integer matrix X with phi(sigma(a)) = X phi(a) mod 1, verified on split
    prime ideals and recovered by rounding."""
    if sigma not in ("identity", "conjugation"):
        raise ValueError("sigma must be 'identity' or 'conjugation'")
    if sigma == "identity":
        return PullbackMatrix(((1,),))
    from .quadfield import galois_conjugate
    from .sieve import primes_in_range
    from .util import kronecker
    samples = []
    for p in primes_in_range(2, 10_000):
        p = int(p)
        if kronecker(field.disc, p) != 1:
            continue
        rec = primes_over(field, p, basis.group)[0]
        a1 = angle_of(field, basis, rec).coords[0]
        a2 = angle_of(field, basis, galois_conjugate(field, rec)).coords[0]
        samples.append((a1, a2))
        if len(samples) >= test_primes:
            break
    best_k, best_res = None, math.inf
    for k in range(-3, 4):
        res = max(torus_dist(a2, (k * a1) % 1.0) for a1, a2 in samples)
        if res < best_res:
            best_k, best_res = k, res
    if best_res > tol:
        raise InvariantError(
            f"no integer pullback matches within {tol} (best residual {best_res:.2e})")
    return PullbackMatrix(((best_k,),))


def in_sector(angle: AngleVec, spec: SectorSpec, norm: int) -> bool:
    if norm < 2:
        raise ValueError("norm must be >= 2")
    return angle.dist(spec.phi0) < spec.radius(norm)


def sector_polytope(phi0: tuple[float, ...], delta: float,
                    pullbacks: list[PullbackMatrix], x: float) -> PolytopeSpec:
    """Intersection over the chosen automorphisms of |phi0 - X_j phi| < x^-delta
    on the circle, as a union of arcs, with the homothety base when the arc
    centers coincide."""
    r = float(x) ** (-delta)
    c0 = phi0[0] % 1.0
    centers = []
    for pb in pullbacks:
        k = pb.entries[0][0]
        if abs(k) != 1:
            raise ValueError("only pullback entries +-1 arise for d = 1")
        centers.append((k * c0) % 1.0)
    if r >= 0.5:
        return PolytopeSpec(dim=1, boxes=(((0.0, 1.0),),),
                            base_boxes=None, center=(c0,), dilation=r)
    coincident = all(torus_dist(c, centers[0]) < 1e-9 for c in centers)
    if coincident:
        c = centers[0]
        return PolytopeSpec(
            dim=1, boxes=(((c - r, c + r),),),
            base_boxes=(((-1.0, 1.0),),), center=(c,), dilation=r)
    # distinct centers: exact intersection of the arcs (usually empty)
    base = centers[0]
    lo, hi = base - r, base + r
    for c in centers[1:]:
        cl = c + round(base - c)  # lift near the first center
        lo, hi = max(lo, cl - r), min(hi, cl + r)
    if hi - lo <= 0:
        return PolytopeSpec(dim=1, boxes=())
    return PolytopeSpec(dim=1, boxes=(((lo, hi),),))
