"""Timing harness for the scheme's elementary operations.

Measures key generation (master key, share split, share encryption),
post en-/decryption across sizes, full access, and the cost of a single
attacker trial (share decryption plus key reconstruction) for
extrapolating dictionary-attack wall clock.  Emits mean and standard
deviation per configuration as stable CSV.
"""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import dataclass
from typing import Callable, Sequence

from .errors import InvalidParams
from .primitives import RandomSource, encrypt, decrypt, hash_value, sample_master_key
from .scheme import Attribute, access, protect, recover_key
from .shamir import SharingParams, split_secret

SUITES = ("keygen", "encdec", "access", "trial")
MIN_RUNS = 30

DEFAULT_SCHEMES = ((1, 1), (2, 2), (2, 4), (3, 4), (5, 10), (10, 20))
DEFAULT_SIZES = (1_000, 10_000, 100_000)
_WARMUP_RUNS = 3


@dataclass
class BenchRecord:
    suite: str
    n: int
    t: int
    size_bytes: int
    mean_ms: float
    stddev_ms: float
    runs: int


def _time(op: Callable[[], object], runs: int) -> tuple[float, float]:
    for _ in range(_WARMUP_RUNS):
        op()
    samples = []
    for _ in range(runs):
        start = time.perf_counter()
        op()
        samples.append((time.perf_counter() - start) * 1000.0)
    return statistics.mean(samples), statistics.stdev(samples)


def _values(n: int) -> list[str]:
    return [f"benchmark value {i:03d}" for i in range(n)]


def bench_keygen(n: int, t: int, runs: int, rng: RandomSource) -> BenchRecord:
    """Master-key sampling + share split + per-share hashing/encryption."""
    params = SharingParams(n=n, t=t)
    values = _values(n)

    def op():
        master = sample_master_key(rng)
        shares = split_secret(master, params, rng)
        for v, s in zip(values, shares):
            encrypt(hash_value(v), bytes([s.x]) + s.y, rng)

    mean, stddev = _time(op, runs)
    return BenchRecord("keygen", n, t, 0, mean, stddev, runs)


def bench_encdec(size: int, runs: int, rng: RandomSource) -> BenchRecord:
    """One encryption plus one decryption of a size-byte post, fixed key."""
    key = sample_master_key(rng)
    post = rng.bytes(size)

    def op():
        decrypt(key, encrypt(key, post, rng))

    mean, stddev = _time(op, runs)
    return BenchRecord("encdec", 0, 0, size, mean, stddev, runs)


def bench_access(n: int, t: int, size: int, runs: int, rng: RandomSource) -> BenchRecord:
    """Full open with correct values: share decryption, reconstruction,
    post decryption."""
    values = _values(n)
    pp = protect(
        [Attribute(f"d{i}", v) for i, v in enumerate(values)],
        rng.bytes(size),
        SharingParams(n=n, t=t),
        rng,
    )
    guesses = [(i + 1, values[i]) for i in range(t)]

    mean, stddev = _time(lambda: access(guesses, pp), runs)
    return BenchRecord("access", n, t, size, mean, stddev, runs)


def bench_trial(n: int, t: int, runs: int, rng: RandomSource) -> BenchRecord:
    """One attacker trial: hash t candidate values, decrypt t shares,
    reconstruct the key candidate.  Post decryption excluded, since an
    attacker pays it only on promising candidates."""
    values = _values(n)
    pp = protect(
        [Attribute(f"d{i}", v) for i, v in enumerate(values)],
        b"attack timing filler post",
        SharingParams(n=n, t=t),
        rng,
    )
    wrong = [(i + 1, f"candidate guess {i}") for i in range(t)]

    mean, stddev = _time(lambda: recover_key(wrong, pp), runs)
    return BenchRecord("trial", n, t, 0, mean, stddev, runs)


def run_suite(
    suite: str,
    runs: int = 100,
    schemes: Sequence[tuple[int, int]] = DEFAULT_SCHEMES,
    sizes: Sequence[int] = DEFAULT_SIZES,
    rng: RandomSource | None = None,
) -> list[BenchRecord]:
    """Run every configuration of one suite; schemes are (t, n) pairs."""
    if suite not in SUITES:
        raise InvalidParams(f"unknown suite {suite!r}, pick one of {SUITES}")
    if runs < MIN_RUNS:
        raise InvalidParams(f"runs must be >= {MIN_RUNS} for stable statistics")
    if rng is None:
        rng = RandomSource()

    records = []
    if suite == "keygen":
        for t, n in schemes:
            records.append(bench_keygen(n, t, runs, rng))
    elif suite == "encdec":
        for size in sizes:
            records.append(bench_encdec(size, runs, rng))
    elif suite == "access":
        for t, n in schemes:
            for size in sizes:
                records.append(bench_access(n, t, size, runs, rng))
    elif suite == "trial":
        for t, n in schemes:
            records.append(bench_trial(n, t, runs, rng))
    return records


def records_to_csv(records: Sequence[BenchRecord]) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["suite", "n", "t", "size_bytes", "mean_ms", "stddev_ms", "runs"])
    for r in records:
        writer.writerow(
            [r.suite, r.n, r.t, r.size_bytes, f"{r.mean_ms:.4f}", f"{r.stddev_ms:.4f}", r.runs]
        )
    return out.getvalue()
