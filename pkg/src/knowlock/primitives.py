"""Symmetric building blocks: randomness, hashing, AES-256-CBC.

The cipher layer is deliberately plain CBC with PKCS#7 padding and no
authentication tag: a wrong key must yield garbage output, never a
reliable "wrong key" signal.  When padding happens not to parse under a
wrong key, :class:`~knowlock.errors.GarbledPadding` carries the raw
decrypted bytes so callers can still hand them back as the garbage
result.
"""

from __future__ import annotations

import hashlib
import os
import random as _random
from dataclasses import dataclass

from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes

from .errors import EntropyUnavailable, GarbledPadding, MalformedCipherText

KEY_BYTES = 32
BLOCK_BYTES = 16


class RandomSource:
    """Byte generator, seedable for reproducible runs.

    Unseeded instances draw from the OS entropy pool and are the only
    mode suitable for real use.  Seeded instances run a deterministic
    (non-cryptographic) stream for tests and golden fixtures.
    Instances are not safe to share between concurrent callers.
    """

    def __init__(self, seed: int | None = None):
        self.seeded = seed is not None
        self._rng = _random.Random(seed) if self.seeded else _random.SystemRandom()

    def bytes(self, n: int) -> bytes:
        if self.seeded:
            return self._rng.randbytes(n)
        try:
            return os.urandom(n)
        except NotImplementedError as exc:
            raise EntropyUnavailable("OS entropy source unavailable") from exc

    def randrange(self, bound: int) -> int:
        """Uniform integer in [0, bound)."""
        try:
            return self._rng.randrange(bound)
        except NotImplementedError as exc:
            raise EntropyUnavailable("OS entropy source unavailable") from exc


@dataclass(frozen=True)
class CipherText:
    iv: bytes
    body: bytes


def sample_master_key(rng: RandomSource) -> bytes:
    """Draw a fresh 256-bit key."""
    return rng.bytes(KEY_BYTES)


def hash_value(value: str) -> bytes:
    """SHA-256 of the UTF-8 bytes of an (already normalized) value."""
    return hashlib.sha256(value.encode("utf-8")).digest()


def _pad(data: bytes) -> bytes:
    # PKCS#7: always appends 1..16 bytes, so ciphertext length only leaks
    # the plaintext length at 16-byte granularity
    fill = BLOCK_BYTES - len(data) % BLOCK_BYTES
    return data + bytes([fill]) * fill


def _unpad(data: bytes) -> bytes:
    fill = data[-1]
    if not 1 <= fill <= BLOCK_BYTES or data[-fill:] != bytes([fill]) * fill:
        raise GarbledPadding(data)
    return data[:-fill]


def cbc_encrypt_raw(key: bytes, iv: bytes, padded: bytes) -> bytes:
    """CBC-encrypt already block-aligned data (exposed for known-answer tests)."""
    enc = Cipher(algorithms.AES(key), modes.CBC(iv)).encryptor()
    return enc.update(padded) + enc.finalize()


def cbc_decrypt_raw(key: bytes, iv: bytes, body: bytes) -> bytes:
    dec = Cipher(algorithms.AES(key), modes.CBC(iv)).decryptor()
    return dec.update(body) + dec.finalize()


def encrypt(key: bytes, plaintext: bytes, rng: RandomSource) -> CipherText:
    """AES-256-CBC with a fresh random IV per call."""
    _check_key(key)
    iv = rng.bytes(BLOCK_BYTES)
    return CipherText(iv=iv, body=cbc_encrypt_raw(key, iv, _pad(plaintext)))


def decrypt(key: bytes, ct: CipherText) -> bytes:
    """Invert :func:`encrypt`.

    Under the right key this returns the original plaintext.  Under a
    wrong key it returns whatever bytes the padding strip produces, or
    raises GarbledPadding carrying the raw bytes when the padding does
    not parse; either way the caller learns nothing reliable about key
    correctness.
    """
    _check_key(key)
    if not ct.body or len(ct.body) % BLOCK_BYTES != 0:
        raise MalformedCipherText(
            f"body must be a positive multiple of {BLOCK_BYTES} bytes, got {len(ct.body)}"
        )
    if len(ct.iv) != BLOCK_BYTES:
        raise MalformedCipherText(f"iv must be {BLOCK_BYTES} bytes, got {len(ct.iv)}")
    return _unpad(cbc_decrypt_raw(key, ct.iv, ct.body))


def _check_key(key: bytes) -> None:
    if len(key) != KEY_BYTES:
        raise ValueError(f"key must be {KEY_BYTES} bytes, got {len(key)}")
