"""Segmented prime sieve with an on-disk cache of odd-only bitsets.

Cache files carry a magic header, the range, a wheel tag, and a sha256
checksum of the payload, so stale or corrupt files are recomputed instead of
trusted.  The cache directory comes from the NORMSECTOR_CACHE environment
variable unless given explicitly.
"""

from __future__ import annotations

import hashlib
import math
import os
import struct

import numpy as np

MAGIC = b"SPRM1"
VERSION = 1
WHEEL = 2  # odd-only bitset

_HEADER = struct.Struct("<5sHQQH32s")


def _simple_sieve(n: int) -> np.ndarray:
    """All primes <= n as an int64 array."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    mask = np.ones(n + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if mask[p]:
            mask[p * p:: p] = False
    return np.flatnonzero(mask).astype(np.int64)


def _odd_mask(lo: int, hi: int) -> np.ndarray:
    """Boolean primality mask for odd numbers lo+1+2k in [lo, hi), lo even."""
    count = (hi - lo) // 2
    mask = np.ones(count, dtype=bool)
    for p in _simple_sieve(math.isqrt(max(hi - 1, 0))):
        p = int(p)
        if p == 2:
            continue
        start = max(p * p, (lo + p - 1) // p * p)
        if start % 2 == 0:
            start += p
        if start >= hi:
            continue
        mask[(start - lo - 1) // 2:: p] = False
    # mask indices correspond to values lo+1, lo+3, ...
    first = lo + 1
    if first <= 1 and count:
        mask[: min((1 - first) // 2 + 1, count)] = False
    return mask


def cache_dir() -> str | None:
    return os.environ.get("NORMSECTOR_CACHE")


def _cache_path(directory: str, lo: int, hi: int) -> str:
    return os.path.join(directory, f"sprm_{lo}_{hi}.bin")


def _write_cache(path: str, lo: int, hi: int, mask: np.ndarray) -> None:
    payload = np.packbits(mask.astype(np.uint8)).tobytes()
    digest = hashlib.sha256(payload).digest()
    header = _HEADER.pack(MAGIC, VERSION, lo, hi, WHEEL, digest)
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(header)
        fh.write(payload)
    os.replace(tmp, path)


def _read_cache(path: str, lo: int, hi: int) -> np.ndarray | None:
    try:
        with open(path, "rb") as fh:
            header = fh.read(_HEADER.size)
            if len(header) != _HEADER.size:
                return None
            magic, version, start, end, wheel, digest = _HEADER.unpack(header)
            if (magic, version, start, end, wheel) != (MAGIC, VERSION, lo, hi, WHEEL):
                return None
            payload = fh.read()
    except OSError:
        return None
    if hashlib.sha256(payload).digest() != digest:
        return None
    count = (hi - lo) // 2
    bits = np.unpackbits(np.frombuffer(payload, dtype=np.uint8), count=count)
    return bits.astype(bool)


def inspect_cache(directory: str) -> list[dict]:
    """Describe every cache file in a directory (validity included)."""
    out = []
    for name in sorted(os.listdir(directory)):
        if not name.startswith("sprm_") or not name.endswith(".bin"):
            continue
        path = os.path.join(directory, name)
        rec = {"file": name, "size": os.path.getsize(path), "valid": False}
        try:
            with open(path, "rb") as fh:
                header = fh.read(_HEADER.size)
            magic, version, start, end, wheel, _ = _HEADER.unpack(header)
            rec.update(start=start, end=end, wheel=wheel, version=version)
            rec["valid"] = _read_cache(path, start, end) is not None
        except (OSError, struct.error):
            pass
        out.append(rec)
    return out


def purge_cache(directory: str) -> int:
    """Delete all sieve cache files in a directory; returns the count removed."""
    n = 0
    for name in os.listdir(directory):
        if name.startswith("sprm_") and name.endswith((".bin", ".bin.tmp")):
            os.remove(os.path.join(directory, name))
            n += 1
    return n


def primes_in_range(lo: int, hi: int, directory: str | None = None) -> np.ndarray:
    """All primes in [lo, hi) as an int64 array, using the cache when possible."""
    if hi <= lo:
        return np.empty(0, dtype=np.int64)
    lo_even = lo - (lo % 2)
    directory = directory if directory is not None else cache_dir()
    mask = None
    path = None
    if directory:
        os.makedirs(directory, exist_ok=True)
        path = _cache_path(directory, lo_even, hi)
        mask = _read_cache(path, lo_even, hi)
    if mask is None:
        mask = _odd_mask(lo_even, hi)
        if path:
            _write_cache(path, lo_even, hi, mask)
    odds = lo_even + 1 + 2 * np.flatnonzero(mask).astype(np.int64)
    odds = odds[odds >= lo]
    if lo <= 2 < hi:
        return np.concatenate(([np.int64(2)], odds))
    return odds
