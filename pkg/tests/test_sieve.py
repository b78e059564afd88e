import numpy as np
import pytest

from normsector import sieve


def _oracle(lo, hi):
    out = []
    for n in range(max(lo, 2), hi):
        if all(n % d for d in range(2, int(n ** 0.5) + 1)):
            out.append(n)
    return out


@pytest.mark.parametrize("lo,hi", [(2, 100), (0, 50), (90, 150),
                                   (1000, 1100), (7919, 7920), (10, 10)])
def test_primes_in_range_matches_oracle(lo, hi):
    got = sieve.primes_in_range(lo, hi).tolist()
    assert got == _oracle(lo, hi)


def test_large_segment_count():
    # pi(10^6) - pi(9*10^5) is a standard table value
    got = sieve.primes_in_range(900000, 1000000)
    assert len(got) == 7224


def test_cache_cold_warm_identical(tmp_path):
    d = str(tmp_path)
    cold = sieve.primes_in_range(10 ** 5, 10 ** 5 + 5000, directory=d)
    warm = sieve.primes_in_range(10 ** 5, 10 ** 5 + 5000, directory=d)
    assert np.array_equal(cold, warm)
    files = sieve.inspect_cache(d)
    assert len(files) == 1 and files[0]["valid"]


def test_corrupt_cache_is_recomputed(tmp_path):
    d = str(tmp_path)
    sieve.primes_in_range(5000, 6000, directory=d)
    (entry,) = sieve.inspect_cache(d)
    path = tmp_path / entry["file"]
    raw = bytearray(path.read_bytes())
    raw[-1] ^= 0xFF
    path.write_bytes(bytes(raw))
    assert not sieve.inspect_cache(d)[0]["valid"]
    again = sieve.primes_in_range(5000, 6000, directory=d)
    assert again.tolist() == _oracle(5000, 6000)
    assert sieve.inspect_cache(d)[0]["valid"]


def test_purge(tmp_path):
    d = str(tmp_path)
    sieve.primes_in_range(100, 200, directory=d)
    sieve.primes_in_range(300, 400, directory=d)
    assert sieve.purge_cache(d) == 2
    assert sieve.inspect_cache(d) == []


def test_env_var_directory(tmp_path, monkeypatch):
    monkeypatch.setenv("NORMSECTOR_CACHE", str(tmp_path))
    sieve.primes_in_range(200, 300)
    assert len(sieve.inspect_cache(str(tmp_path))) == 1
