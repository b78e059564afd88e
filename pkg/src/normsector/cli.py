"""Command-line front end.

Subcommands wrap the library modules; configuration is a flat key=value file
with command-line overrides (flags win).  Every JSON output embeds the fully
resolved configuration, including the seed, so runs can be reproduced.
Exit codes: 0 success, 2 invariant violation, 3 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import random
import sys

import numpy as np

from . import bv as bvmod
from . import counting, sieve
from .approx import coeff_bound_check, selberg_box
from .hecke import SectorSpec
from .quadfield import make_field, narrow_class_group, primes_over
from .util import InvariantError, ResourceLimitError


def _parse_value(text: str):
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    if text.lower() in ("true", "false"):
        return text.lower() == "true"
    return text


def load_config(path: str) -> dict:
    """Flat key=value file; blank lines and # comments ignored."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise SystemExit(
                    f"config {path}:{lineno}: expected key=value, got {line!r}")
            key, _, val = line.partition("=")
            out[key.strip()] = _parse_value(val.strip())
    return out


def resolve_config(args: argparse.Namespace, defaults: dict) -> dict:
    """defaults < config file < explicit flags."""
    cfg = dict(defaults)
    if getattr(args, "config", None):
        file_cfg = load_config(args.config)
        bad = set(file_cfg) - set(defaults)
        if bad:
            raise SystemExit(f"unknown config key(s): {', '.join(sorted(bad))}")
        cfg.update(file_cfg)
    for key in defaults:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    return cfg


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, default=str)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _sector(cfg: dict, scale_mode: str = "per-prime") -> SectorSpec:
    return SectorSpec(phi0=(float(cfg["phi0"]),), delta=float(cfg["delta"]),
                      scale_mode=scale_mode,
                      x_ref=float(cfg["x"]) if scale_mode == "fixed-x" else None)


def _class_idx(cfg: dict) -> int | None:
    sel = cfg["class"]
    if sel == "identity":
        return None
    return int(sel)


def _base_query(cfg: dict, residue=None) -> counting.CountQuery:
    h = cfg.get("h")
    return counting.CountQuery(
        m=int(cfg["m"]), sector=_sector(cfg), x=float(cfg["x"]),
        delta_prime=float(cfg["delta_prime"]),
        h=float(h) if h is not None else None,
        class_idx=_class_idx(cfg), residue=residue,
        weight=str(cfg.get("weight", "log-p")))


# --- subcommands ----------------------------------------------------------

def cmd_enumerate(args) -> int:
    defaults = {"m": -1, "lo": 2, "hi": 1000, "out": None, "threads": 1}
    cfg = resolve_config(args, defaults)
    field = make_field(int(cfg["m"]))
    group = narrow_class_group(field)
    from .hecke import angle_of, make_basis
    basis = make_basis(field)
    rows = []
    for p in sieve.primes_in_range(int(cfg["lo"]), int(cfg["hi"])).tolist():
        for rec in primes_over(field, p, group):
            ang = angle_of(field, basis, rec).coords[0]
            rows.append([p, rec.norm, rec.kind, rec.class_idx, f"{ang:.15f}"])
    target = open(cfg["out"], "w", newline="") if cfg["out"] else sys.stdout
    try:
        wr = csv.writer(target)
        wr.writerow(["p", "norm", "kind", "class_idx", "angle"])
        wr.writerows(rows)
    finally:
        if cfg["out"]:
            target.close()
    return 0


_COUNT_DEFAULTS = {
    "m": -1, "class": "identity", "phi0": 0.0, "delta": 0.1,
    "delta_prime": 0.1, "x": 1e6, "h": None, "q": None, "a": None,
    "weight": "log-p", "out": None, "threads": 1, "seed": 0,
}


def cmd_count(args) -> int:
    cfg = resolve_config(args, _COUNT_DEFAULTS)
    residue = None
    if cfg["q"] is not None:
        residue = (int(cfg["a"]), int(cfg["q"]))
    q = _base_query(cfg, residue=residue)
    counting.enumerate_split(q.m, int(math.floor(q.interval[0])),
                             int(math.ceil(q.interval[1])),
                             threads=int(cfg["threads"]))
    rep = counting.sector_prime_sum(q)
    payload = {
        "log_p": json.loads(rep.to_json()),
        "config": {**cfg, "seed": int(cfg["seed"])},
    }
    if cfg["weight"] == "von-mangoldt":
        vm = counting.von_mangoldt_sum(q)
        payload["von_mangoldt"] = {
            "total": vm.total, "prime_part": vm.prime_part,
            "power_part": vm.power_part,
        }
    _emit(payload, cfg["out"])
    return 0


def cmd_identity_check(args) -> int:
    defaults = {"m": -1, "p_max": 10000, "sectors": 10, "seed": 0,
                "delta": 0.1, "out": None, "threads": 1}
    cfg = resolve_config(args, defaults)
    m = int(cfg["m"])
    group = narrow_class_group(make_field(m))
    rng = random.Random(int(cfg["seed"]))
    counting.enumerate_split(m, 2, int(cfg["p_max"]),
                             threads=int(cfg["threads"]))
    rows, all_pass = [], True
    for s in range(int(cfg["sectors"])):
        spec = SectorSpec(phi0=(rng.random(),), delta=float(cfg["delta"]))
        for cls in range(group.order):
            res = counting.identity_scan(m, 2, int(cfg["p_max"]), cls, spec)
            ok = res["mismatches"] == 0 and res["rhs_integral"]
            all_pass &= ok
            rows.append({"sector": s, "phi0": spec.phi0[0], "class_idx": cls,
                         **res, "pass": ok})
    _emit({"rows": rows, "all_pass": all_pass, "config": cfg}, cfg["out"])
    if not all_pass:
        raise InvariantError("inclusion-exclusion identity failed")
    return 0


def cmd_selberg(args) -> int:
    defaults = {"d": 1, "kappa": 0.05, "M": 100, "samples": 10000,
                "seed": 0, "out": None}
    cfg = resolve_config(args, defaults)
    d, kappa, big_m = int(cfg["d"]), float(cfg["kappa"]), int(cfg["M"])
    box = tuple((0.0, kappa) for _ in range(d))
    big_k = big_m + 1
    plus = selberg_box(big_m, box, "plus")
    minus = selberg_box(big_m, box, "minus")
    vol = kappa ** d
    id_plus = plus.zero_coeff() - vol - ((kappa + 1 / big_k) ** d - kappa ** d)
    id_minus = vol - minus.zero_coeff() - (
        (kappa + 2 / big_k) ** d - (kappa + 1 / big_k) ** d)
    rng = np.random.default_rng(int(cfg["seed"]))
    pts = rng.random((int(cfg["samples"]), d))
    fm = minus.eval_many(pts)
    fp = plus.eval_many(pts)
    chi = np.all(pts % 1.0 <= kappa, axis=1).astype(float)
    violations = int(np.count_nonzero((fm > chi + 1e-12) |
                                      (chi > fp + 1e-12)))
    bounds = coeff_bound_check(plus)
    payload = {
        "identity_plus_defect": id_plus,
        "identity_minus_defect": id_minus,
        "sandwich_violations": violations,
        "coeff_bound": bounds,
        "config": cfg,
    }
    _emit(payload, cfg["out"])
    if abs(id_plus) > 1e-12 or abs(id_minus) > 1e-12 or violations:
        raise InvariantError("Selberg polynomial verification failed")
    return 0


def cmd_fit(args) -> int:
    defaults = {"m": -1, "class": "identity", "phi0": 0.25, "delta": 0.15,
                "delta_prime": 0.15, "x_ladder": "1e5,3e5,1e6", "out": None,
                "threads": 1}
    cfg = resolve_config(args, defaults)
    xs = [float(t) for t in str(cfg["x_ladder"]).split(",")]
    c_hat, ratios = counting.asymptotic_fit(
        int(cfg["m"]), _class_idx(cfg), float(cfg["phi0"]),
        float(cfg["delta"]), float(cfg["delta_prime"]), xs)
    _emit({"c_hat": c_hat, "ratios": ratios, "x_ladder": xs, "config": cfg},
          cfg["out"])
    return 0


def cmd_bv(args) -> int:
    defaults = {**_COUNT_DEFAULTS, "theta": 0.05, "A": 2.0, "c_hat": None,
                "csv": None}
    defaults.pop("q")
    defaults.pop("a")
    cfg = resolve_config(args, defaults)
    query = bvmod.BVQuery(base=_base_query(cfg), theta=float(cfg["theta"]),
                          a_exp=float(cfg["A"]),
                          c_hat=float(cfg["c_hat"]) if cfg["c_hat"] is not None
                          else None)
    rep = bvmod.bv_discrepancy(query)
    payload = json.loads(rep.to_json())
    payload["config"] = cfg
    _emit(payload, cfg["out"])
    if cfg["csv"]:
        rep.write_csv(cfg["csv"])
    return 0


def cmd_cache(args) -> int:
    directory = args.dir or sieve.cache_dir()
    if not directory:
        raise SystemExit("no cache directory: pass --dir or set NORMSECTOR_CACHE")
    if args.action == "inspect":
        if not os.path.isdir(directory):
            _emit({"directory": directory, "files": []}, None)
            return 0
        _emit({"directory": directory, "files": sieve.inspect_cache(directory)},
              None)
    else:
        n = sieve.purge_cache(directory) if os.path.isdir(directory) else 0
        _emit({"directory": directory, "purged": n}, None)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="normsector",
        description="Prime counting in Hecke sectors of quadratic fields")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, keys):
        p = sub.add_parser(name)
        p.add_argument("--config", help="flat key=value config file")
        for key in keys:
            p.add_argument(f"--{key.replace('_', '-')}", dest=key)
        p.set_defaults(func=func, keys=keys)
        return p

    add("enumerate", cmd_enumerate, ["m", "lo", "hi", "out", "threads"])
    add("count", cmd_count, list(_COUNT_DEFAULTS))
    add("identity-check", cmd_identity_check,
        ["m", "p_max", "sectors", "seed", "delta", "out", "threads"])
    add("selberg", cmd_selberg, ["d", "kappa", "M", "samples", "seed", "out"])
    add("fit", cmd_fit, ["m", "class", "phi0", "delta", "delta_prime",
                         "x_ladder", "out", "threads"])
    add("bv", cmd_bv, [k for k in _COUNT_DEFAULTS if k not in ("q", "a")]
        + ["theta", "A", "c_hat", "csv"])

    pc = sub.add_parser("cache")
    pc.add_argument("action", choices=["inspect", "purge"])
    pc.add_argument("--dir")
    pc.set_defaults(func=cmd_cache)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    # flag values arrive as strings; coerce through the generic parser
    for key in getattr(args, "keys", []):
        val = getattr(args, key, None)
        if isinstance(val, str):
            setattr(args, key, _parse_value(val))
    try:
        return args.func(args)
    except InvariantError as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
