import random
from itertools import combinations

import pytest

from knowlock.errors import (
    DuplicateX,
    InsufficientShares,
    InvalidParams,
    LengthMismatch,
)
from knowlock.primitives import RandomSource
from knowlock.shamir import Share, SharingParams, reconstruct_secret, split_secret


def test_threshold_one_gives_constant_shares(rng):
    shares = split_secret(b"\x05", SharingParams(n=3, t=1), rng)
    assert [s.x for s in shares] == [1, 2, 3]
    assert all(s.y == b"\x05" for s in shares)


def test_known_polynomial_evaluation(scripted_random):
    # t=2 draws exactly one coefficient byte; inject 0x03 so the
    # polynomial is p(x) = 0x05 + 0x03*x, hence p(1)=0x06, p(2)=0x03
    shares = split_secret(b"\x05", SharingParams(n=2, t=2), scripted_random(b"\x03"))
    assert shares == [Share(x=1, y=b"\x06"), Share(x=2, y=b"\x03")]


def test_reconstruct_inverts_known_shares():
    shares = [Share(x=1, y=b"\x06"), Share(x=2, y=b"\x03")]
    assert reconstruct_secret(shares, 2) == b"\x05"


def test_reconstruct_identity_threshold():
    assert reconstruct_secret([Share(x=1, y=b"\x05")], 1) == b"\x05"


def test_params_rejected():
    rng = RandomSource(0)
    with pytest.raises(InvalidParams):
        split_secret(b"\x01", SharingParams(n=300, t=2), rng)
    with pytest.raises(InvalidParams):
        split_secret(b"\x01", SharingParams(n=2, t=3), rng)
    with pytest.raises(InvalidParams):
        split_secret(b"\x01", SharingParams(n=2, t=0), rng)
    with pytest.raises(InvalidParams):
        split_secret(b"", SharingParams(n=2, t=2), rng)


def test_reconstruct_rejects_bad_inputs():
    with pytest.raises(InsufficientShares):
        reconstruct_secret([Share(x=1, y=b"\x06")], 2)
    with pytest.raises(DuplicateX):
        reconstruct_secret([Share(x=1, y=b"\x06"), Share(x=1, y=b"\x03")], 2)
    with pytest.raises(LengthMismatch):
        reconstruct_secret([Share(x=1, y=b"\x06\x07"), Share(x=2, y=b"\x03")], 2)


def test_every_subset_reconstructs(rng):
    r = random.Random(42)
    for _ in range(12):
        n = r.randint(1, 10)
        secret = bytes(r.randrange(256) for _ in range(r.randint(1, 64)))
        for t in range(1, n + 1):
            shares = split_secret(secret, SharingParams(n=n, t=t), rng)
            for subset in combinations(shares, t):
                assert reconstruct_secret(list(subset), t) == secret


def test_extra_shares_beyond_t_are_ignored(rng):
    secret = b"deep dark secret"
    shares = split_secret(secret, SharingParams(n=6, t=3), rng)
    assert reconstruct_secret(shares, 3) == secret
    assert reconstruct_secret(shares[::-1], 3) == secret


def test_corrupted_share_gives_wrong_secret_silently(rng):
    secret = b"\x11\x22\x33"
    shares = split_secret(secret, SharingParams(n=3, t=2), rng)
    bad = Share(x=shares[0].x, y=bytes(b ^ 0x01 for b in shares[0].y))
    got = reconstruct_secret([bad, shares[1]], 2)
    assert got != secret
    assert len(got) == len(secret)


def test_seeded_split_is_reproducible():
    secret = bytes(range(32))
    a = split_secret(secret, SharingParams(n=5, t=3), RandomSource(7))
    b = split_secret(secret, SharingParams(n=5, t=3), RandomSource(7))
    assert a == b


def test_single_share_byte_close_to_uniform_and_secret_independent():
    # Shortened version of the full secrecy acceptance check: share 1 of
    # a t=2 split is coefficient + secret, uniform for any fixed secret.
    counts = {0x00: [0] * 256, 0xFF: [0] * 256}
    rng = RandomSource(2024)
    for secret, hist in counts.items():
        for _ in range(20_000):
            share = split_secret(bytes([secret]), SharingParams(n=2, t=2), rng)[0]
            hist[share.y[0]] += 1
    for hist in counts.values():
        assert max(hist) < 160  # mean is 78, generous bound on extremes
        assert min(hist) > 20
