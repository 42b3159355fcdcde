"""Arithmetic in GF(2^8) with the AES reduction polynomial.

Bytes are treated as polynomials over GF(2) reduced modulo
x^8 + x^4 + x^3 + x + 1 (0x11B).  Multiplication is shift-and-reduce
rather than table-driven, so no secret-dependent table lookups occur.
"""

from .errors import ZeroInverse

REDUCTION_POLY = 0x11B


def gf_add(a: int, b: int) -> int:
    """Add (= subtract) two field elements: bitwise XOR."""
    return a ^ b


def gf_mul(a: int, b: int) -> int:
    """Multiply two field elements, reducing modulo 0x11B."""
    p = 0
    for _ in range(8):
        if b & 1:
            p ^= a
        b >>= 1
        a <<= 1
        if a & 0x100:
            a ^= REDUCTION_POLY
    return p


def gf_pow(a: int, e: int) -> int:
    """Raise a field element to a non-negative integer power."""
    result = 1
    base = a
    while e:
        if e & 1:
            result = gf_mul(result, base)
        base = gf_mul(base, base)
        e >>= 1
    return result


def gf_inv(a: int) -> int:
    """Multiplicative inverse; the field has 255 nonzero elements, so
    a^254 = a^-1."""
    if a == 0:
        raise ZeroInverse("0 has no multiplicative inverse")
    return gf_pow(a, 254)
