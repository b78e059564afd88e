"""Small number-theoretic and numeric helpers shared across modules."""

from __future__ import annotations


class InvariantError(Exception):
    """An internal mathematical invariant failed; maps to CLI exit code 2."""


class ResourceLimitError(Exception):
    """A configured resource bound was exceeded; maps to CLI exit code 3."""


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, u, v) with u*a + v*b = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def solve_linear_congruence(a: int, b: int, m: int) -> tuple[int, int]:
    """Solve a*x = b (mod m); return (x0, step) so solutions are x0 + k*step.

    Raises ValueError when no solution exists.
    """
    m = abs(m)
    if m == 0:
        if b % a:
            raise ValueError("no solution")
        return b // a, 0
    g, u, _ = xgcd(a, m)
    if b % g:
        raise ValueError("no solution")
    step = m // g
    x0 = (b // g) * u % step
    return x0, step


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    """Combine x = r1 (mod m1), x = r2 (mod m2); return (r, lcm).

    Moduli need not be coprime; raises ValueError if inconsistent.
    """
    g, u, _ = xgcd(m1, m2)
    if (r2 - r1) % g:
        raise ValueError("inconsistent congruences")
    lcm = m1 // g * m2
    r = (r1 + (r2 - r1) // g * u % (m2 // g) * m1) % lcm
    return r, lcm


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a|n), defined for all integers n."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    if n < 0:
        return (-1 if a < 0 else 1) * kronecker(a, -n)
    # strip factors of 2 from n
    t = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            t = -t
    a %= n
    # Jacobi symbol loop
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                t = -t
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            t = -t
        a %= n
    return t if n == 1 else 0


def is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 64-bit inputs."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def sqrt_mod_prime(a: int, p: int) -> int | None:
    """A square root of a modulo an odd prime p, or None if a is a non-residue."""
    a %= p
    if a == 0:
        return 0
    if p == 2:
        return a
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        return pow(a, (p + 1) // 4, p)
    # Tonelli-Shanks
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t = t * c % p
        r = r * b % p
    return r


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        while n % d == 0:
            n //= d
        d += 1
    return True


def torus_dist(a: float, b: float) -> float:
    """Distance on the circle R/Z."""
    d = abs(a - b) % 1.0
    return min(d, 1.0 - d)


def neumaier_sum(values) -> float:
    """Compensated (Neumaier) summation; deterministic for a fixed iteration order."""
    s = 0.0
    c = 0.0
    for v in values:
        t = s + v
        if abs(s) >= abs(v):
            c += (s - t) + v
        else:
            c += (v - t) + s
        s = t
    return s + c


def block_reduce(values, block: int = 1 << 16) -> float:
    """Sum in fixed-size blocks with compensated accumulation.

    The block layout depends only on len(values), so the result is bit-identical
    regardless of how the work producing `values` was parallelized.
    """
    partial = [neumaier_sum(values[i:i + block]) for i in range(0, len(values), block)]
    return neumaier_sum(partial)


def star_discrepancy(points) -> float:
    """Star discrepancy of a 1-d point set in [0, 1)."""
    xs = sorted(points)
    n = len(xs)
    if n == 0:
        return 1.0
    d = 0.0
    for i, x in enumerate(xs):
        d = max(d, (i + 1) / n - x, x - i / n)
    return d


def phi_euler(n: int) -> int:
    """Euler totient."""
    result = n
    d = 2
    m = n
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


_SURD_LOCK = None


def log_quadratic_surd(a: int, b: int, den: int, m: int) -> float:
    """log((a + b*sqrt(m)) / den) for a positive real quadratic surd, safe for huge a, b."""
    import mpmath

    global _SURD_LOCK
    if _SURD_LOCK is None:
        import threading
        _SURD_LOCK = threading.Lock()
    prec = max(abs(a).bit_length(), abs(b).bit_length(), 64) + 64
    # the mpmath global context is not thread-safe
    with _SURD_LOCK, mpmath.workprec(prec):
        val = (mpmath.mpf(a) + mpmath.mpf(b) * mpmath.sqrt(m)) / den
        return float(mpmath.log(val))
