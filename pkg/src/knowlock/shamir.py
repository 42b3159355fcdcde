"""Byte-wise Shamir threshold splitting over GF(2^8).

Each byte of the secret is shared through its own random polynomial of
degree t-1 whose constant term is that byte; share i holds the
evaluations at x = i.  Any t shares recover the secret by Lagrange
interpolation at x = 0; t-1 shares carry no information about it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DuplicateX, InsufficientShares, InvalidParams, LengthMismatch
from .gf256 import gf_inv, gf_mul

MAX_SHARES = 255


@dataclass(frozen=True)
class SharingParams:
    """n = total shares, t = how many are needed back."""

    n: int
    t: int

    def validate(self) -> None:
        if not 1 <= self.t <= self.n <= MAX_SHARES:
            raise InvalidParams(
                f"need 1 <= t <= n <= {MAX_SHARES}, got n={self.n}, t={self.t}"
            )


@dataclass(frozen=True)
class Share:
    """One evaluation point: x in [1, 255], y has one byte per secret byte."""

    x: int
    y: bytes


def _mul_by_point(a: int, x: int) -> int:
    """Multiply a field element by the public evaluation point x.

    Identical math to gf_mul, but iterating over the bits of x; the loop
    shape depends only on the public x, never on the secret operand.
    """
    p = 0
    while x:
        if x & 1:
            p ^= a
        x >>= 1
        a <<= 1
        if a & 0x100:
            a ^= 0x11B
    return p


def split_secret(secret: bytes, params: SharingParams, rng) -> list[Share]:
    """Split ``secret`` into params.n shares, any params.t of which recover it.

    Coefficient bytes are drawn from ``rng`` in one block (coefficient-major
    order), so a seeded source reproduces the same shares byte for byte.
    Before returning, the shares are checked by reconstructing the secret
    from the first t of them; a mismatch means the process is unsound
    (memory fault, broken arithmetic) and must not publish shares.
    """
    params.validate()
    if not secret:
        raise InvalidParams("secret must be non-empty")

    n, t = params.n, params.t
    length = len(secret)

    if t == 1:
        shares = [Share(x=x, y=bytes(secret)) for x in range(1, n + 1)]
    else:
        # coeffs[k] holds coefficient k+1 of every byte's polynomial
        buf = rng.bytes(length * (t - 1))
        coeffs = [buf[k * length:(k + 1) * length] for k in range(t - 1)]
        top = coeffs[-1]
        rest = coeffs[:-1][::-1]  # remaining coefficients, highest first

        shares = []
        mul = _mul_by_point
        for x in range(1, n + 1):
            y = bytearray(length)
            for j in range(length):
                # Horner from the highest coefficient down to the secret byte
                acc = top[j]
                for c in rest:
                    acc = mul(acc, x) ^ c[j]
                y[j] = mul(acc, x) ^ secret[j]
            shares.append(Share(x=x, y=bytes(y)))

    if reconstruct_secret(shares[:t], t) != secret:
        raise AssertionError("share self-check failed: reconstruction mismatch")
    return shares


def reconstruct_secret(shares: Sequence[Share], t: int) -> bytes:
    """Interpolate the secret from the first t of the given shares.

    Wrong or corrupted shares produce a wrong secret silently; nothing in
    the share format can detect that here.
    """
    if len(shares) < t:
        raise InsufficientShares(f"got {len(shares)} shares, need {t}")
    xs = [s.x for s in shares]
    if len(set(xs)) != len(xs):
        raise DuplicateX("shares must have pairwise-distinct x")
    length = len(shares[0].y)
    if any(len(s.y) != length for s in shares):
        raise LengthMismatch("shares must have equal-length payloads")

    used = shares[:t]
    # Lagrange basis at x = 0: l_j = prod_{m != j} x_m / (x_j + x_m)
    lagrange = []
    for j, sj in enumerate(used):
        num, den = 1, 1
        for m, sm in enumerate(used):
            if m == j:
                continue
            num = gf_mul(num, sm.x)
            den = gf_mul(den, sj.x ^ sm.x)
        lagrange.append(gf_mul(num, gf_inv(den)))

    secret = bytearray(length)
    for j in range(length):
        acc = 0
        for coeff, share in zip(lagrange, used):
            acc ^= gf_mul(coeff, share.y[j])
        secret[j] = acc
    return bytes(secret)
