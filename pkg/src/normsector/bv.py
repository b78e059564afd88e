"""Per-modulus residue scans and the averaged equidistribution discrepancy.

One enumeration of the interval is shared across all moduli; residue classes
are a post-pass bucketing by p mod q.  Moduli whose cyclotomic field meets the
narrow Hilbert class field are flagged and excluded from the total, since no
equidistribution statement holds for them.
"""

from __future__ import annotations

import csv
import json
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .counting import (CountQuery, _existence_mask, asymptotic_fit,
                       enumerate_split, _field)
from .quadfield import FieldSpec, narrow_class_group
from .util import block_reduce, phi_euler


def q_admissible(field: FieldSpec, q: int) -> bool:
    """Whether primes coprime to q can equidistribute mod q for this field.

    Trivial narrow class group: exact rule (the field embeds in the q-th
    cyclotomic field iff |disc| divides q).  Nontrivial: the necessary
    condition gcd(q, disc) = 1; see admissibility_rule for the tag."""
    if q < 1:
        raise ValueError("q must be >= 1")
    group = narrow_class_group(field)
    if group.order == 1:
        return q % abs(field.disc) != 0
    return math.gcd(q, field.disc) == 1


def admissibility_rule(field: FieldSpec) -> str:
    """"exact" when the narrow class group is trivial, else "gcd-surrogate"."""
    return "exact" if narrow_class_group(field).order == 1 else "gcd-surrogate"


@dataclass(frozen=True)
class BVQuery:
    base: CountQuery
    theta: float
    a_exp: float = 2.0
    c_hat: float | None = None

    def __post_init__(self):
        if self.base.residue is not None:
            raise ValueError("the base query must not fix a residue class")
        n = 2
        bound = 2.0 / (5.0 * n)
        slack = 2.0 * self.theta + max(self.base.sector.delta,
                                       self.base.delta_prime)
        if slack > bound:
            warnings.warn(
                f"2*theta + max(delta, delta') = {slack:.3f} is outside the "
                f"averaged-equidistribution range {bound:.3f}", stacklevel=2)

    @property
    def big_q(self) -> int:
        return max(math.ceil(self.base.x ** self.theta), 3)


@dataclass(frozen=True)
class BVReport:
    per_q: tuple[dict, ...]
    total: float
    normalized_total: float
    main_term_scale: float
    c_hat: float
    power_correction: tuple[tuple[int, float], ...]
    admissibility: str
    params: dict

    def to_json(self) -> str:
        d = dict(self.__dict__)
        d["per_q"] = list(self.per_q)
        d["power_correction"] = [list(t) for t in self.power_correction]
        return json.dumps(d, indent=2, sort_keys=True)

    def write_csv(self, path: str) -> None:
        with open(path, "w", newline="") as fh:
            wr = csv.writer(fh)
            wr.writerow(["q", "admissible", "phi_q", "max_a", "argmax_a",
                         "discrepancy", "normalized"])
            for row in self.per_q:
                wr.writerow([row["q"], row["admissible"], row["phi_q"],
                             row["max_a"], row["argmax_a"],
                             row["discrepancy"], row["normalized"]])


def _interval_selection(base: CountQuery):
    """Shared per-interval arrays: selected split primes and existence mask."""
    field = _field(base.m)
    group = narrow_class_group(field)
    lo, hi = base.interval
    data = enumerate_split(base.m, int(math.floor(lo)), int(math.ceil(hi)))
    sel = (data.p >= lo) & (data.p < hi)
    exists, _, _ = _existence_mask(data, group, base.resolved_class(),
                                   base.sector)
    mask = sel & exists
    return data.p[mask], data.logp[mask]


def residue_counts(base: CountQuery, q_mod: int) -> dict[int, float]:
    """Sector-restricted log-p sums bucketed by p mod q_mod, for every
    residue class coprime to q_mod."""
    if q_mod < 1:
        raise ValueError("q_mod must be >= 1")
    ps, logs = _interval_selection(base)
    out = {}
    res = ps % q_mod
    for a in range(q_mod):
        if math.gcd(a, q_mod) != 1:
            continue
        out[a] = float(block_reduce(logs[res == a]))
    return out


def residue_partition_check(base: CountQuery, q_mod: int) -> dict:
    """Exactness of the partition: the residue buckets coprime to q_mod must
    tile the primes coprime to q_mod, and reassembling the buckets in prime
    order must reproduce the unrestricted coprime sum bit for bit."""
    ps, logs = _interval_selection(base)
    res = ps % q_mod
    coprime = np.array([math.gcd(int(r), q_mod) == 1 for r in res]) \
        if q_mod > 1 else np.ones(len(ps), dtype=bool)
    bucket_idx = [np.flatnonzero(coprime & (res == a))
                  for a in range(q_mod) if math.gcd(a, q_mod) == 1]
    n_bucketed = sum(len(ix) for ix in bucket_idx)
    union = np.sort(np.concatenate(bucket_idx)) if bucket_idx else \
        np.empty(0, dtype=np.int64)
    tiles = n_bucketed == int(np.count_nonzero(coprime)) and \
        bool(np.array_equal(union, np.flatnonzero(coprime)))
    full = block_reduce(logs[coprime])
    reassembled = block_reduce(logs[union])
    return {
        "q": q_mod,
        "counts_partition_exact": bool(tiles),
        "weighted_full": float(full),
        "weighted_reassembled": float(reassembled),
        "weighted_bit_identical": full == reassembled,
        "dropped_p_dividing_q": int(np.count_nonzero(~coprime)),
    }


def calibrate_c_hat(base: CountQuery) -> float:
    """Self-calibration of the main-term constant by a least-squares fit of
    the unrestricted counts over the ladder {x/4, x/2, x}, selecting with
    the same sector radius rule as the scan itself."""
    c_hat, _ = asymptotic_fit(
        base.m, base.class_idx, base.sector.phi0[0], base.sector.delta,
        base.delta_prime, [base.x / 4.0, base.x / 2.0, base.x],
        scale_mode=base.sector.scale_mode)
    return c_hat


def bv_discrepancy(query: BVQuery) -> BVReport:
    base = query.base
    field = _field(base.m)
    group = narrow_class_group(field)
    lo, hi = base.interval
    x, h = base.x, hi - lo
    delta = base.sector.delta
    scale = h * x ** (-delta)
    c_hat = query.c_hat if query.c_hat is not None else calibrate_c_hat(base)

    ps, logs = _interval_selection(base)
    big_q = query.big_q
    # admissibility must be divisor-closed
    adm = {q: q_admissible(field, q) for q in range(1, big_q + 1)}
    for q in range(1, big_q + 1):
        if adm[q]:
            for d in range(1, q + 1):
                if q % d == 0 and not adm[d]:
                    raise AssertionError(
                        f"admissible q = {q} has non-admissible divisor {d}")

    per_q = []
    totals = []
    power_corr = []
    for q in range(1, big_q + 1):
        res = ps % q
        expected = c_hat * scale / (phi_euler(q) * group.order)
        best, best_a = -1.0, None
        for a in range(q):
            if math.gcd(a, q) != 1:
                continue
            count_a = float(block_reduce(logs[res == a]))
            d = abs(count_a - expected)
            if d > best:
                best, best_a = d, a
        per_q.append({
            "q": q,
            "admissible": adm[q],
            "phi_q": phi_euler(q),
            "max_a": best,
            "argmax_a": best_a,
            "discrepancy": best,
            "normalized": best / scale,
        })
        if adm[q]:
            totals.append(best)
        power_corr.append((q, math.sqrt(x) / math.sqrt(q)))

    total = float(block_reduce(np.asarray(totals)))
    return BVReport(
        per_q=tuple(per_q),
        total=total,
        normalized_total=total / scale,
        main_term_scale=scale,
        c_hat=c_hat,
        power_correction=tuple(power_corr),
        admissibility=admissibility_rule(field),
        params={**base.config_echo(), "theta": query.theta, "Q": big_q,
                "A": query.a_exp},
    )
