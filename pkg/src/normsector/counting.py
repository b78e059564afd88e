"""Exact sector-restricted prime counting in short intervals.

Everything here enumerates: split primes are listed by a segmented sieve,
their prime ideals get exact class labels and Hecke angles, and the various
sums (existence-weighted log p, ideal-weighted von Mangoldt, smoothed and
Fourier-weighted) are formed with deterministic compensated reductions so
results are bit-identical regardless of how the work is partitioned.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import sieve
from .approx import PolytopeSpec, SmoothWindow, window_eval
from .hecke import HeckeBasis, SectorSpec, angle_of, make_basis
from .quadfield import (
    FieldSpec,
    PrimeIdealRec,
    galois_conjugate,
    make_field,
    narrow_class_group,
    primes_over,
)
from .util import InvariantError, block_reduce, kronecker, torus_dist

DELTA_SOFT_BOUND = 0.2

_VERSION = "0.1.0"


@lru_cache(maxsize=16)
def _field(m: int) -> FieldSpec:
    return make_field(m)


@lru_cache(maxsize=16)
def _basis(m: int) -> HeckeBasis:
    return make_basis(_field(m))


@dataclass(frozen=True)
class CountQuery:
    m: int
    sector: SectorSpec
    x: float
    delta_prime: float
    h: float | None = None
    class_idx: int | None = None  # None means the identity class
    residue: tuple[int, int] | None = None
    weight: str = "log-p"

    def __post_init__(self):
        if self.x < 100:
            raise ValueError("x must be >= 100")
        if self.delta_prime > DELTA_SOFT_BOUND:
            warnings.warn(
                f"delta' = {self.delta_prime} exceeds the theorem range "
                f"{DELTA_SOFT_BOUND}", stacklevel=2)
        if self.residue is not None:
            a, q = self.residue
            if q < 1 or math.gcd(a, q) != 1:
                raise ValueError("residue (a, q) must have gcd(a, q) = 1")
        if self.weight not in ("log-p", "von-mangoldt"):
            raise ValueError("weight must be 'log-p' or 'von-mangoldt'")

    @property
    def interval(self) -> tuple[float, float]:
        h = self.h if self.h is not None else self.x ** (1.0 - self.delta_prime)
        return (self.x, self.x + h)

    def resolved_class(self) -> int:
        if self.class_idx is not None:
            return self.class_idx
        return narrow_class_group(_field(self.m)).identity_idx

    def config_echo(self) -> dict:
        lo, hi = self.interval
        return {
            "m": self.m,
            "class_idx": self.resolved_class(),
            "phi0": list(self.sector.phi0),
            "delta": self.sector.delta,
            "scale_mode": self.sector.scale_mode,
            "x_ref": self.sector.x_ref,
            "x": self.x,
            "h": hi - lo,
            "delta_prime": self.delta_prime,
            "residue": list(self.residue) if self.residue else None,
            "weight": self.weight,
            "version": _VERSION,
        }


@dataclass(frozen=True)
class CountReport:
    weighted_sum: float
    count: int
    params: dict
    skipped_ramified: tuple[int, ...]
    per_prime: tuple | None = None
    main_term_prediction: float | None = None
    ratio: float | None = None

    def to_json(self) -> str:
        d = {
            "weighted_sum": self.weighted_sum,
            "count": self.count,
            "params": self.params,
            "skipped_ramified": list(self.skipped_ramified),
            "main_term_prediction": self.main_term_prediction,
            "ratio": self.ratio,
        }
        return json.dumps(d, indent=2, sort_keys=True)

    def write_per_prime_csv(self, path: str) -> None:
        if self.per_prime is None:
            raise ValueError("query was run without per-prime records")
        with open(path, "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["p", "norm", "class_idx", "angle", "in_sector"])
            for row in self.per_prime:
                wr.writerow(row)


# --- shared enumeration ---------------------------------------------------

class _EnumData:
    """Split-prime data for one field over one interval of norms."""

    __slots__ = ("p", "angle", "cls", "logp", "anchor_meta")

    def __init__(self, p, angle, cls, logp, anchor_meta):
        self.p = p
        self.angle = angle
        self.cls = cls
        self.logp = logp
        self.anchor_meta = anchor_meta


_ENUM_CACHE: dict[tuple, _EnumData] = {}
_ENUM_CACHE_MAX = 8


def _enum_chunk(m: int, primes: list[int]) -> tuple[list, list, list]:
    field = _field(m)
    basis = _basis(m)
    group = basis.group
    ps, angles, clss = [], [], []
    for p in primes:
        if kronecker(field.disc, p) != 1:
            continue
        rec = primes_over(field, p, group)[0]
        ps.append(p)
        angles.append(angle_of(field, basis, rec).coords[0])
        clss.append(rec.class_idx)
    return ps, angles, clss


def enumerate_split(m: int, lo: int, hi: int, threads: int = 1) -> _EnumData:
    """Arrays (p, angle, class) for one prime ideal over each split prime in
    [lo, hi); the conjugate ideal has angle -angle and the inverse class.

    The chunk layout depends only on the prime list, and chunk results are
    concatenated in order, so any thread count gives identical arrays."""
    key = (m, lo, hi)
    if key in _ENUM_CACHE:
        return _ENUM_CACHE[key]
    basis = _basis(m)
    primes = sieve.primes_in_range(lo, hi).tolist()
    if threads > 1 and len(primes) > 4 * threads:
        from concurrent.futures import ThreadPoolExecutor
        chunk = (len(primes) + 4 * threads - 1) // (4 * threads)
        parts = [primes[i:i + chunk] for i in range(0, len(primes), chunk)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda part: _enum_chunk(m, part), parts))
        ps, angles, clss = [], [], []
        for rp, ra, rc in results:
            ps.extend(rp)
            angles.extend(ra)
            clss.extend(rc)
    else:
        ps, angles, clss = _enum_chunk(m, primes)
    data = _EnumData(
        p=np.asarray(ps, dtype=np.int64),
        angle=np.asarray(angles, dtype=np.float64),
        cls=np.asarray(clss, dtype=np.int16),
        logp=np.log(np.asarray(ps, dtype=np.float64)) if ps else np.empty(0),
        anchor_meta={"gen_classes": list(basis.gen_classes),
                     "gen_angles": list(basis.gen_angles)},
    )
    if len(_ENUM_CACHE) >= _ENUM_CACHE_MAX:
        _ENUM_CACHE.pop(next(iter(_ENUM_CACHE)))
    _ENUM_CACHE[key] = data
    return data


def _torus_dist_arr(a: np.ndarray, b: float) -> np.ndarray:
    d = np.abs(a - b) % 1.0
    return np.minimum(d, 1.0 - d)


def _sector_radii(spec: SectorSpec, norms: np.ndarray) -> np.ndarray:
    if spec.scale_mode == "fixed-x":
        return np.full(len(norms), float(spec.x_ref) ** (-spec.delta))
    return norms.astype(np.float64) ** (-spec.delta)


def _ramified_in(field: FieldSpec, lo: float, hi: float) -> tuple[int, ...]:
    return tuple(p for p in _prime_factors(abs(field.disc)) if lo <= p < hi)


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- sector prime sums ----------------------------------------------------

def _existence_mask(data: _EnumData, group, class_idx: int, spec: SectorSpec):
    """Per split prime: does some prime ideal over p meet the class and sector
    conditions; also the per-ideal flags (t1 for the stored ideal, t2 for its
    conjugate)."""
    phi0 = spec.phi0[0]
    r = _sector_radii(spec, data.p)
    inv = np.asarray(group.inverse, dtype=np.int16)
    d1 = _torus_dist_arr(data.angle, phi0)
    d2 = _torus_dist_arr(-data.angle, phi0)
    t1 = (data.cls == class_idx) & (d1 < r)
    t2 = (inv[data.cls] == class_idx) & (d2 < r)
    return t1 | t2, t1, t2


def sector_prime_sum(q: CountQuery, keep_per_prime: bool = False) -> CountReport:
    field = _field(q.m)
    group = narrow_class_group(field)
    lo, hi = q.interval
    data = enumerate_split(q.m, int(math.floor(lo)), int(math.ceil(hi)))
    sel = (data.p >= lo) & (data.p < hi)
    if q.residue is not None:
        a, mod = q.residue
        sel &= (data.p % mod) == a % mod
    exists, t1, t2 = _existence_mask(data, group, q.resolved_class(), q.sector)
    mask = sel & exists
    weighted = block_reduce(data.logp[mask])
    per_prime = None
    if keep_per_prime:
        phi0 = q.sector.phi0[0]
        rows = []
        for i in np.flatnonzero(sel):
            rows.append((int(data.p[i]), int(data.p[i]), int(data.cls[i]),
                         float(data.angle[i]), bool(t1[i])))
            inv_c = group.inverse[int(data.cls[i])]
            rows.append((int(data.p[i]), int(data.p[i]), int(inv_c),
                         float((-data.angle[i]) % 1.0), bool(t2[i])))
        per_prime = tuple(rows)
    return CountReport(
        weighted_sum=float(weighted),
        count=int(np.count_nonzero(mask)),
        params=q.config_echo(),
        skipped_ramified=_ramified_in(field, lo, hi),
        per_prime=per_prime,
    )


def inclusion_exclusion_identity(m: int, p: int, class_idx: int,
                                 spec: SectorSpec) -> tuple[int, float]:
    """Both sides of the Galois inclusion-exclusion identity at one prime.

    lhs: indicator of a prime ideal over p with norm p, the given class, and
    angle inside the sector.  rhs: the alternating sum over nonempty subsets
    of the Galois group.  They must agree, and rhs must be integral.
    """
    field = _field(m)
    basis = _basis(m)
    if field.disc % p == 0:
        raise ValueError(f"p = {p} ramifies; the identity assumes unramified p")
    recs = primes_over(field, p, basis.group)

    def cond(rec: PrimeIdealRec) -> bool:
        if rec.norm != p or rec.class_idx != class_idx:
            return False
        ang = angle_of(field, basis, rec)
        return ang.dist(spec.phi0) < spec.radius(rec.norm)

    lhs = int(any(cond(r) for r in recs))
    n = 2
    sigmas = ("identity", "conjugation")
    rhs = 0.0
    for subset in range(1, 1 << n):
        k = bin(subset).count("1")
        term = 0
        for rec in recs:
            ok = True
            for j, name in enumerate(sigmas):
                if not subset >> j & 1:
                    continue
                image = rec if name == "identity" else galois_conjugate(field, rec)
                if not cond(image):
                    ok = False
                    break
            term += int(ok)
        rhs += (-1) ** (k - 1) * term / n
    return lhs, rhs


def identity_scan(m: int, lo: int, hi: int, class_idx: int,
                  spec: SectorSpec) -> dict:
    """Vectorized check of the inclusion-exclusion identity over all
    unramified primes of [lo, hi); returns counts of checks and mismatches."""
    field = _field(m)
    group = narrow_class_group(field)
    data = enumerate_split(m, lo, hi)
    exists, t1, t2 = _existence_mask(data, group, class_idx, spec)
    a1 = t1.astype(np.int64)
    a2 = t2.astype(np.int64)
    # (1/2) [ sum_sigma singles - pairs ]: 2*(t1 + t2)/2 - (2*t1*t2)/2
    rhs2 = a1 + a2 - a1 * a2
    lhs = exists.astype(np.int64)
    mismatches = int(np.count_nonzero(lhs != rhs2))
    inert_checked = int(len(sieve.primes_in_range(lo, hi))) - len(data.p) \
        - len(_ramified_in(field, lo, hi))
    return {
        "split_checked": int(len(data.p)),
        "inert_checked": inert_checked,
        "mismatches": mismatches,
        "rhs_integral": bool(np.all((2 * rhs2) % 2 == 0)),
    }


# --- von Mangoldt sums ----------------------------------------------------

@dataclass(frozen=True)
class IdealTerm:
    norm: int
    p: int
    k: int           # ideal = (prime ideal)^k
    lam: float       # log N(prime ideal)
    angle: float
    class_idx: int


def _ideal_terms(m: int, lo: float, hi: float) -> list[IdealTerm]:
    """Every unramified prime-power ideal with norm in [lo, hi), with its
    von Mangoldt weight, angle, and class."""
    field = _field(m)
    basis = _basis(m)
    group = basis.group
    terms: list[IdealTerm] = []
    data = enumerate_split(m, int(math.floor(lo)), int(math.ceil(hi)))
    inv = group.inverse
    for i in range(len(data.p)):
        p = int(data.p[i])
        if not lo <= p < hi:
            continue
        lam = float(data.logp[i])
        ang = float(data.angle[i])
        c = int(data.cls[i])
        terms.append(IdealTerm(p, p, 1, lam, ang, c))
        terms.append(IdealTerm(p, p, 1, lam, (-ang) % 1.0, inv[c]))
    # prime powers p^k, k >= 2, and inert ideals (norm p^2 and its powers)
    top = int(math.isqrt(int(hi)))
    for p in sieve.primes_in_range(2, top + 1).tolist():
        if field.disc % p == 0:
            continue
        sym = kronecker(field.disc, p)
        logp = math.log(p)
        if sym == 1:
            rec = primes_over(field, p, group)[0]
            base_ang = angle_of(field, basis, rec).coords[0]
            c = rec.class_idx
            norm = p * p
            k = 2
            while norm < hi:
                if norm >= lo:
                    for ang, cc in ((base_ang, c), (-base_ang, inv[c])):
                        terms.append(IdealTerm(norm, p, k, logp,
                                               (k * ang) % 1.0,
                                               group.power_idx(cc, k)))
                norm *= p
                k += 1
        else:
            # inert: ideal (p)^j has norm p^(2j), trivial angle and class
            norm = p * p
            j = 1
            while norm < hi:
                if norm >= lo:
                    terms.append(IdealTerm(norm, p, 2 * j, 2.0 * logp, 0.0,
                                           group.identity_idx))
                norm *= p * p
                j += 1
    return terms


@dataclass(frozen=True)
class VonMangoldtReport:
    total: float
    prime_part: float
    power_part: float
    params: dict

    @property
    def diff_from_prime_part(self) -> float:
        return self.total - self.prime_part


def von_mangoldt_sum(q: CountQuery) -> VonMangoldtReport:
    """Ideal-weighted von Mangoldt sum over the class and sector conditions.

    Counts every satisfying ideal (both conjugates of a split prime may
    contribute), including prime powers; ramified primes are excluded."""
    lo, hi = q.interval
    class_idx = q.resolved_class()
    spec = q.sector
    prime_vals, power_vals = [], []
    for t in _ideal_terms(q.m, lo, hi):
        if q.residue is not None:
            a, mod = q.residue
            if t.norm % mod != a % mod:
                continue
        if t.class_idx != class_idx:
            continue
        if torus_dist(t.angle, spec.phi0[0]) >= spec.radius(t.norm):
            continue
        if t.k == 1:
            prime_vals.append(t.lam)
        else:
            power_vals.append(t.lam)
    prime_part = block_reduce(np.asarray(prime_vals))
    power_part = block_reduce(np.asarray(power_vals))
    return VonMangoldtReport(
        total=float(prime_part + power_part),
        prime_part=float(prime_part),
        power_part=float(power_part),
        params=q.config_echo(),
    )


def galois_class_constancy(m: int, class_idx: int, sigmas) -> int | None:
    """The common class sigma^-1(I) when it does not depend on sigma, else None."""
    if not sigmas:
        raise ValueError("need a non-empty automorphism set")
    group = narrow_class_group(_field(m))
    images = set()
    for s in sigmas:
        if s == "identity":
            images.add(class_idx)
        elif s == "conjugation":
            # conjugation is an involution: sigma^-1(I) = sigma(I) = I^-1
            images.add(group.inverse[class_idx])
        else:
            raise ValueError(f"unknown automorphism {s!r}")
    if len(images) == 1:
        return images.pop()
    return None


# --- smoothed sums and the sandwich ---------------------------------------

@dataclass(frozen=True)
class SmoothedSumReport:
    lower: float
    exact: float
    upper: float
    main_term_lower: float
    main_term_upper: float
    params: dict

    def to_json(self) -> str:
        return json.dumps(self.__dict__, indent=2, sort_keys=True)


def smoothed_sum(m: int, class_idx: int, region: PolytopeSpec,
                 w_minus: SmoothWindow, w_plus: SmoothWindow,
                 f_minus, f_plus, x: float, h: float,
                 params_echo: dict | None = None) -> SmoothedSumReport:
    """The sandwich of the exact indicator sum between the smoothed,
    Fourier-weighted lower and upper sums.

    f_minus / f_plus evaluate the Selberg minorant/majorant of the region
    indicator (SelbergApprox or BoxSum); windows bracket [x, x+h)."""
    lo_s, hi_s = w_plus.support
    terms = _ideal_terms(m, lo_s, hi_s)
    terms = [t for t in terms if t.class_idx == class_idx]
    if terms:
        angles = np.asarray([t.angle for t in terms])
        lams = np.asarray([t.lam for t in terms])
        norms = np.asarray([t.norm for t in terms], dtype=np.float64)
        fvals_m = f_minus.eval_many(angles)
        fvals_p = f_plus.eval_many(angles)
        g_m = np.asarray([window_eval(w_minus, float(v)) for v in norms])
        g_p = np.asarray([window_eval(w_plus, float(v)) for v in norms])
        ind_int = (norms >= x) & (norms < x + h)
        ind_reg = np.asarray([region.contains((t.angle,)) for t in terms])
        lower = block_reduce(lams * g_m * fvals_m)
        exact = block_reduce(lams * ind_int * ind_reg)
        upper = block_reduce(lams * g_p * fvals_p)
    else:
        lower = exact = upper = 0.0
    class_count = narrow_class_group(_field(m)).order
    from .approx import mellin
    g1m = mellin(w_minus, 1.0).real
    g1p = mellin(w_plus, 1.0).real
    report = SmoothedSumReport(
        lower=float(lower), exact=float(exact), upper=float(upper),
        main_term_lower=main_term(f_minus.zero_coeff(), g1m, class_count),
        main_term_upper=main_term(f_plus.zero_coeff(), g1p, class_count),
        params=params_echo or {},
    )
    if not (report.lower <= report.exact + 1e-9 and
            report.exact <= report.upper + 1e-9):
        raise InvariantError(
            f"sandwich violated: {report.lower} <= {report.exact} <= {report.upper}")
    return report


def main_term(f0: float, g1: float, class_count: int) -> float:
    """The leading term F(0) G(1) / |class group| of the smoothed expansion."""
    if class_count == 0:
        raise ValueError("class count must be positive")
    return f0 * g1 / class_count


def asymptotic_fit(m: int, class_idx: int | None, phi0: float, delta: float,
                   delta_prime: float, xs,
                   scale_mode: str = "fixed-x") -> tuple[float, list[float]]:
    """Least-squares calibration of sum(log p) = c * x^-delta * h / |I|
    through the origin across an x-ladder; returns (c_hat, observed/predicted).

    scale_mode picks the sector radius ("fixed-x" or "per-prime") so the fit
    can use the same selection rule as the scan it calibrates."""
    xs = list(xs)
    if len(xs) < 3:
        raise ValueError("need at least 3 ladder points")
    group = narrow_class_group(_field(m))
    obs, pred = [], []
    for x in xs:
        spec = SectorSpec(phi0=(phi0,), delta=delta, scale_mode=scale_mode,
                          x_ref=x if scale_mode == "fixed-x" else None)
        q = CountQuery(m=m, sector=spec, x=float(x), delta_prime=delta_prime,
                       class_idx=class_idx)
        rep = sector_prime_sum(q)
        h = q.interval[1] - q.interval[0]
        obs.append(rep.weighted_sum)
        pred.append(x ** (-delta) * h / group.order)
    obs_a, pred_a = np.asarray(obs), np.asarray(pred)
    c_hat = float(np.dot(obs_a, pred_a) / np.dot(pred_a, pred_a))
    ratios = (obs_a / pred_a).tolist()
    return c_hat, ratios
