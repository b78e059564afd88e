"""Arithmetic of imaginary and real quadratic fields.

Covers fundamental discriminants, units, prime splitting, prime ideal
enumeration, and narrow class groups realized through reduced binary
quadratic forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from . import forms
from .util import (
    InvariantError,
    ResourceLimitError,
    is_probable_prime,
    is_squarefree,
    kronecker,
    log_quadratic_surd,
    sqrt_mod_prime,
)

_MAX_CF_STEPS = 1_000_000


@dataclass(frozen=True)
class FieldSpec:
    """A quadratic field K = Q(sqrt(m)) with its unit data."""

    m: int
    disc: int
    signature: tuple[int, int]
    unit_count: int
    # units are stored as (a, b) meaning (a + b*sqrt(m)) / unit_den
    fund_unit: tuple[int, int] | None
    unit_den: int
    fund_unit_norm: int
    tot_pos_unit: tuple[int, int] | None
    tot_pos_den: int
    log_tot_pos: float

    @property
    def is_real(self) -> bool:
        return self.m > 0


@dataclass(frozen=True)
class PrimeIdealRec:
    """A prime ideal over a rational prime p.

    `form` is the binary quadratic form (a, b, c) attached to the Z-module
    a*Z + (b + sqrt(disc))/2 * Z; it is None for inert primes, whose ideal is
    the rational ideal (p).  `gen` is a totally positive generator written as
    (P, Q) meaning (P + Q*sqrt(disc))/2, present when the ideal is narrowly
    principal.
    """

    p: int
    norm: int
    kind: str  # "split" | "inert" | "ramified"
    form: forms.Form | None
    gen: tuple[int, int] | None
    class_idx: int


@dataclass(frozen=True)
class NarrowClassGroup:
    forms: tuple[forms.Form, ...]
    comp_table: tuple[tuple[int, ...], ...]
    identity_idx: int
    inverse: tuple[int, ...]
    lookup: dict

    @property
    def order(self) -> int:
        return len(self.forms)

    def compose_idx(self, i: int, j: int) -> int:
        return self.comp_table[i][j]

    def power_idx(self, i: int, k: int) -> int:
        result = self.identity_idx
        k %= self.order * 2  # any multiple of the exponent would do
        for _ in range(k):
            result = self.comp_table[result][i]
        return result

    def class_index(self, f: forms.Form) -> int:
        key = forms.reduce_form(f)
        if key not in self.lookup:
            raise InvariantError(f"form {f} not of discriminant of this group")
        return self.lookup[key]


def _fundamental_unit(m: int) -> tuple[tuple[int, int], int, int]:
    """Fundamental unit of the ring of integers of Q(sqrt(m)), m > 1 squarefree.

    Returns ((a, b), den, norm) with the unit (a + b*sqrt(m))/den, den in {1, 2}.

    Walks one period of the reduction cycle of the principal form; the
    accumulated transform is the fundamental automorph, giving the smallest
    totally positive unit (t + u*sqrt(disc))/2.  When the cycle contains a form
    with leading coefficient -1 the field has a norm -1 unit, recovered as the
    exact square root of the automorph unit.
    """
    disc = m if m % 4 == 1 else 4 * m
    f0, _ = forms.reduce_indefinite(forms.principal_form(disc))
    s = math.isqrt(disc)
    t_mat = forms.IDENT
    g = f0
    has_minus = False
    for _ in range(_MAX_CF_STEPS):
        if g[0] == -1:
            has_minus = True
        g, step = forms._rho(g, disc, s)
        t_mat = forms._mat_mul(t_mat, step)
        if g == f0:
            break
    else:
        raise ResourceLimitError("principal cycle did not close")
    t = t_mat[0] + t_mat[3]
    u = t_mat[2] // f0[0]
    if t < 0:
        t, u = -t, -u
    if u < 0:
        u = -u  # unit vs its inverse; pick the one > 1
    if t * t - disc * u * u != 4:
        raise InvariantError("automorph does not solve the Pell equation")
    if has_minus:
        # (r + s*sqrt(disc))/2 squaring to (t + u*sqrt(disc))/2
        r = math.isqrt(t - 2)
        w = math.isqrt((t + 2) // disc)
        if r * r != t - 2 or w * w * disc != t + 2 or r * w != u:
            raise InvariantError("norm -1 unit square root failed")
        t, u, nrm = r, w, -1
    else:
        nrm = 1
    if m % 4 == 1:
        if t % 2 == 0 and u % 2 == 0:
            return (t // 2, u // 2), 1, nrm
        return (t, u), 2, nrm
    # disc = 4m: (t + 2u*sqrt(m))/2 with t even
    return (t // 2, u), 1, nrm


def make_field(m: int) -> FieldSpec:
    """Build the FieldSpec for K = Q(sqrt(m)); m must be squarefree, not 0 or 1."""
    if m in (0, 1) or not is_squarefree(m):
        raise ValueError(f"m = {m} must be squarefree and different from 0, 1")
    disc = m if m % 4 == 1 else 4 * m
    if m < 0:
        g = 4 if disc == -4 else 6 if disc == -3 else 2
        return FieldSpec(
            m=m, disc=disc, signature=(0, 1), unit_count=g,
            fund_unit=None, unit_den=1, fund_unit_norm=1,
            tot_pos_unit=None, tot_pos_den=1, log_tot_pos=0.0,
        )
    (a, b), den, nrm = _fundamental_unit(m)
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    if nrm == 1:
        tp, tp_den = (a, b), den
    else:
        # square the unit: both embeddings become positive
        aa, bb = a * a + b * b * m, 2 * a * b
        if den == 2:
            aa, bb, tp_den = aa // 2, bb // 2, 2
        else:
            tp_den = 1
        tp = (aa, bb)
    log_tp = log_quadratic_surd(tp[0], tp[1], tp_den, m)
    return FieldSpec(
        m=m, disc=disc, signature=(2, 0), unit_count=2,
        fund_unit=(a, b), unit_den=den, fund_unit_norm=nrm,
        tot_pos_unit=tp, tot_pos_den=tp_den, log_tot_pos=log_tp,
    )


def split_type(field: FieldSpec, p: int) -> str:
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    sym = kronecker(field.disc, p)
    if sym == 0:
        return "ramified"
    return "split" if sym == 1 else "inert"


def _normalize_b(a: int, b: int) -> int:
    """Reduce b modulo 2a into (-a, a]."""
    r = b % (2 * a)
    return r - 2 * a if r > a else r


def _ideal_form(field: FieldSpec, p: int, b: int) -> forms.Form:
    c = (b * b - field.disc) // (4 * p)
    return (p, b, c)


def _generator_from_form(field: FieldSpec, f: forms.Form) -> tuple[int, int] | None:
    """Totally positive generator (P, Q), alpha = (P + Q*sqrt(disc))/2, when the
    ideal of f is narrowly principal; None otherwise."""
    rep = forms.principal_rep(f)
    if rep is None:
        return None
    x, y = rep
    a, b, _ = f
    pq = (2 * a * x + b * y, y)
    if field.is_real and not _surd_positive(pq[0], pq[1], field.disc):
        pq = (-pq[0], -pq[1])
    return pq


def _surd_positive(p_part: int, q_part: int, disc: int) -> bool:
    """Sign test for (P + Q*sqrt(disc))/2 > 0 with exact integers (disc > 0)."""
    if p_part >= 0 and q_part >= 0:
        return not (p_part == 0 and q_part == 0)
    if p_part <= 0 and q_part <= 0:
        return False
    if q_part > 0:
        return q_part * q_part * disc > p_part * p_part
    return p_part * p_part > q_part * q_part * disc


def primes_over(field: FieldSpec, p: int, group: NarrowClassGroup | None = None) -> list[PrimeIdealRec]:
    """The prime ideals of K lying over p, with class labels and generators."""
    kind = split_type(field, p)
    if group is None:
        group = narrow_class_group(field)
    disc = field.disc
    if kind == "inert":
        return [PrimeIdealRec(p=p, norm=p * p, kind="inert", form=None,
                              gen=(2 * p, 0), class_idx=group.identity_idx)]
    if kind == "ramified":
        if p == 2:
            b = 0 if (disc // 4) % 2 == 0 else 2
        else:
            b = 0 if disc % 2 == 0 else p
        f = _ideal_form(field, p, _normalize_b(p, b))
        return [_make_rec(field, group, p, f, "ramified")]
    # split
    if p == 2:
        b = 1  # disc = 1 mod 8 here
    else:
        r = sqrt_mod_prime(disc % p, p)
        b = r if (r - disc) % 2 == 0 else p - r
    f1 = _ideal_form(field, p, _normalize_b(p, b))
    f2 = _ideal_form(field, p, _normalize_b(p, -b))
    return [_make_rec(field, group, p, f1, "split"),
            _make_rec(field, group, p, f2, "split")]


def _make_rec(field: FieldSpec, group: NarrowClassGroup, p: int,
              f: forms.Form, kind: str) -> PrimeIdealRec:
    idx = group.class_index(f)
    gen = _generator_from_form(field, f) if idx == group.identity_idx else None
    return PrimeIdealRec(p=p, norm=p, kind=kind, form=f, gen=gen, class_idx=idx)


def _reduced_forms(disc: int) -> list[forms.Form]:
    """All reduced primitive forms of fundamental discriminant disc."""
    out = []
    if disc < 0:
        amax = math.isqrt(-disc // 3)
        for a in range(1, amax + 1):
            for b in range(-a + 1, a + 1):
                if (b - disc) % 2:
                    continue
                if (b * b - disc) % (4 * a):
                    continue
                c = (b * b - disc) // (4 * a)
                if c < a:
                    continue
                if c == a and b < 0:
                    continue
                if math.gcd(math.gcd(a, abs(b)), c) == 1:
                    out.append((a, b, c))
        return out
    s = math.isqrt(disc)
    for b in range(1, s + 1):
        if (b - disc) % 2:
            continue
        n = (disc - b * b) // 4
        if n <= 0:
            continue
        d = 1
        while d * d <= n:
            if n % d == 0:
                for a in {d, n // d, -d, -(n // d)}:
                    c = -(n // a)
                    f = (a, b, c)
                    if forms.content(f) == 1 and forms._is_reduced_indefinite(f, disc):
                        out.append(f)
            d += 1
    return out


@lru_cache(maxsize=64)
def _narrow_class_group_cached(m: int, bound: int) -> NarrowClassGroup:
    field = make_field(m)
    disc = field.disc
    if abs(disc) > bound:
        raise ResourceLimitError(
            f"|disc| = {abs(disc)} exceeds the class group bound {bound}")
    reduced = _reduced_forms(disc)
    lookup: dict = {}
    reps: list[forms.Form] = []
    if disc < 0:
        for f in sorted(reduced):
            lookup[f] = len(reps)
            reps.append(f)
    else:
        seen = set()
        for f in sorted(reduced):
            if f in seen:
                continue
            cycle = forms.reduction_cycle(f)
            rep = min(cycle)
            idx = len(reps)
            reps.append(rep)
            for g in cycle:
                seen.add(g)
                lookup[g] = idx
    h = len(reps)
    identity_idx = lookup[forms.reduce_form(forms.principal_form(disc))]
    table = []
    for i in range(h):
        row = []
        for j in range(h):
            prod, _ = forms.compose(reps[i], reps[j])
            row.append(lookup[forms.reduce_form(prod)])
        table.append(tuple(row))
    inverse = []
    for i in range(h):
        inv = lookup[forms.reduce_form(forms.conjugate(reps[i]))]
        if table[i][inv] != identity_idx:
            raise InvariantError("inverse inconsistent with composition table")
        inverse.append(inv)
    group = NarrowClassGroup(
        forms=tuple(reps), comp_table=tuple(table),
        identity_idx=identity_idx, inverse=tuple(inverse), lookup=lookup,
    )
    _check_group_axioms(group)
    return group


def narrow_class_group(field: FieldSpec, bound: int = 10 ** 6) -> NarrowClassGroup:
    return _narrow_class_group_cached(field.m, bound)


def _check_group_axioms(g: NarrowClassGroup) -> None:
    h = g.order
    e = g.identity_idx
    for i in range(h):
        if g.comp_table[i][e] != i or g.comp_table[e][i] != i:
            raise InvariantError("identity fails")
        for j in range(h):
            if g.comp_table[i][j] != g.comp_table[j][i]:
                raise InvariantError("composition not commutative")
            for k in range(h):
                if g.comp_table[g.comp_table[i][j]][k] != g.comp_table[i][g.comp_table[j][k]]:
                    raise InvariantError("composition not associative")


def class_of(field: FieldSpec, ideal: PrimeIdealRec) -> int:
    if ideal.form is None:
        return narrow_class_group(field).identity_idx
    return narrow_class_group(field).class_index(ideal.form)


def galois_conjugate(field: FieldSpec, ideal: PrimeIdealRec) -> PrimeIdealRec:
    if ideal.form is None:
        return ideal
    group = narrow_class_group(field)
    a, b, c = ideal.form
    f = (a, _normalize_b(a, -b), c)
    if f == ideal.form:
        return ideal
    return _make_rec(field, group, ideal.p, f, ideal.kind)


def ideal_product(field: FieldSpec, f1: forms.Form, f2: forms.Form) -> tuple[forms.Form, int]:
    """Product of the ideals of two primitive forms: (primitive form, content)."""
    return forms.compose(f1, f2)
