"""Integral binary quadratic forms.

A form (a, b, c) has discriminant b^2 - 4ac.  Forms of discriminant D < 0 are
assumed positive definite (a > 0).  The ideal attached to (a, b, c) is the
Z-module  a*Z + (b + sqrt(D))/2 * Z  of norm a, so proper form classes realize
the narrow ideal class group of the quadratic order of discriminant D.
"""

from __future__ import annotations

import math

from .util import crt_pair, xgcd

Form = tuple[int, int, int]
Matrix = tuple[int, int, int, int]

IDENT: Matrix = (1, 0, 0, 1)

_MAX_REDUCTION_STEPS = 100_000


def discriminant(f: Form) -> int:
    a, b, c = f
    return b * b - 4 * a * c


def form_eval(f: Form, x: int, y: int) -> int:
    a, b, c = f
    return a * x * x + b * x * y + c * y * y


def content(f: Form) -> int:
    return math.gcd(math.gcd(abs(f[0]), abs(f[1])), abs(f[2]))


def conjugate(f: Form) -> Form:
    a, b, c = f
    return (a, -b, c)


def _mat_mul(t: Matrix, s: Matrix) -> Matrix:
    return (
        t[0] * s[0] + t[1] * s[2],
        t[0] * s[1] + t[1] * s[3],
        t[2] * s[0] + t[3] * s[2],
        t[2] * s[1] + t[3] * s[3],
    )


def principal_form(disc: int) -> Form:
    """The reduced principal form of the given fundamental discriminant."""
    if disc < 0:
        b = disc & 1
        return (1, b, (b * b - disc) // 4)
    s = math.isqrt(disc)
    b = s if (s - disc) % 2 == 0 else s - 1
    return (1, b, (b * b - disc) // 4)


# --- definite reduction ---------------------------------------------------

def _is_reduced_definite(f: Form) -> bool:
    a, b, c = f
    if not (-a < b <= a <= c):
        return False
    return b >= 0 if a == c else True


def reduce_definite(f: Form) -> tuple[Form, Matrix]:
    """Reduce a positive definite form; return (reduced, T) with f o T = reduced."""
    a, b, c = f
    if a <= 0 or discriminant(f) >= 0:
        raise ValueError("expected a positive definite form")
    t: Matrix = IDENT
    for _ in range(_MAX_REDUCTION_STEPS):
        # translate b into (-a, a]
        r = (a - b) // (2 * a)
        if r:
            b, c = b + 2 * a * r, a * r * r + b * r + c
            t = _mat_mul(t, (1, r, 0, 1))
        if a > c or (a == c and b < 0):
            a, b, c = c, -b, a
            t = _mat_mul(t, (0, -1, 1, 0))
            continue
        return (a, b, c), t
    raise RuntimeError("definite reduction did not terminate")


# --- indefinite reduction and cycles --------------------------------------

def _is_reduced_indefinite(f: Form, disc: int) -> bool:
    a, b, _ = f
    if b <= 0 or b * b >= disc:
        return False
    lo = 2 * abs(a) + b
    hi = 2 * abs(a) - b
    # |sqrt(disc) - 2|a|| < b  <=>  (2|a|+b)^2 > disc  and  (2|a|-b)^2 < disc
    return lo * lo > disc and (hi < 0 or hi * hi < disc)


def _rho(f: Form, disc: int, sqrt_disc: int) -> tuple[Form, Matrix]:
    """One reduction step for an indefinite form, with its substitution matrix."""
    a, b, c = f
    ac = abs(c)
    if ac == 0:
        raise ValueError("degenerate form (square discriminant)")
    if ac <= sqrt_disc:
        # normalize b' into (sqrt(disc) - 2|c|, sqrt(disc)]
        bp = sqrt_disc - (sqrt_disc + b) % (2 * ac)
    else:
        # normalize b' into (-|c|, |c|], b' == -b mod 2|c|
        bp = (-b) % (2 * ac)
        if bp > ac:
            bp -= 2 * ac
    tstep = (b + bp) // (2 * c)
    cp = (bp * bp - disc) // (4 * c)
    return (c, bp, cp), (0, -1, 1, tstep)


def reduce_indefinite(f: Form) -> tuple[Form, Matrix]:
    """Reduce an indefinite form; return (reduced, T) with f o T = reduced."""
    disc = discriminant(f)
    if disc <= 0:
        raise ValueError("expected an indefinite form")
    s = math.isqrt(disc)
    if s * s == disc:
        raise ValueError("square discriminant not supported")
    t: Matrix = IDENT
    g = f
    for _ in range(_MAX_REDUCTION_STEPS):
        if _is_reduced_indefinite(g, disc):
            return g, t
        g, step = _rho(g, disc, s)
        t = _mat_mul(t, step)
    raise RuntimeError("indefinite reduction did not terminate")


def reduction_cycle(f: Form) -> list[Form]:
    """The cycle of reduced forms properly equivalent to f (f need not be reduced)."""
    disc = discriminant(f)
    s = math.isqrt(disc)
    start, _ = reduce_indefinite(f)
    cycle = [start]
    g = start
    for _ in range(_MAX_REDUCTION_STEPS):
        g, _ = _rho(g, disc, s)
        if g == start:
            return cycle
        cycle.append(g)
    raise RuntimeError("reduction cycle did not close")


def reduce_form(f: Form) -> Form:
    """Canonical class representative: the reduced form (definite) or the
    lexicographically least form in the reduction cycle (indefinite)."""
    if discriminant(f) < 0:
        return reduce_definite(f)[0]
    return min(reduction_cycle(f))


# --- representations of 1 -------------------------------------------------

def principal_rep(f: Form) -> tuple[int, int] | None:
    """Integers (x, y) with f(x, y) = 1, or None when f is not in the
    principal class.  Existence of such a representation is exactly narrow
    principality of the ideal attached to f."""
    disc = discriminant(f)
    if disc < 0:
        red, t = reduce_definite(f)
        if red != principal_form(disc):
            return None
        return t[0], t[2]
    s = math.isqrt(disc)
    start, t = reduce_indefinite(f)
    g = start
    for _ in range(_MAX_REDUCTION_STEPS):
        if g[0] == 1:
            return t[0], t[2]
        g, step = _rho(g, disc, s)
        t = _mat_mul(t, step)
        if g == start:
            return None
    raise RuntimeError("cycle walk did not close")


# --- composition ----------------------------------------------------------

def compose(f1: Form, f2: Form) -> tuple[Form, int]:
    """Gauss composition of primitive forms of equal discriminant.

    Returns (f3, d) where f3 is the primitive form of the product ideal and d
    is the rational content: ideal(f1) * ideal(f2) = d * ideal(f3).
    """
    disc = discriminant(f1)
    if discriminant(f2) != disc:
        raise ValueError("discriminants differ")
    if content(f1) != 1 or content(f2) != 1:
        raise ValueError("forms must be primitive")
    a1, b1, _ = f1
    a2, b2, _ = f2
    beta = (b1 + b2) // 2
    g0, _, _ = xgcd(a1, a2)
    d, _, _ = xgcd(g0, beta)
    a3 = a1 * a2 // (d * d)
    m1, m2 = 2 * a1 // d, 2 * a2 // d
    r, lcm = crt_pair(b1 % m1, m1, b2 % m2, m2)
    mod = 2 * a3
    # among the residues matching both congruences pick the one with the
    # correct square class mod 4*a3
    b3 = None
    k = r % lcm
    count = max(1, (mod + lcm - 1) // lcm) + 1
    for _ in range(count):
        if (k * k - disc) % (4 * a3) == 0:
            b3 = k % mod
            break
        k += lcm
    if b3 is None:
        raise ArithmeticError("composition congruences unsolvable")
    if b3 > a3:
        b3 -= mod
    c3 = (b3 * b3 - disc) // (4 * a3)
    return (a3, b3, c3), d
