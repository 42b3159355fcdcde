"""Core scheme: lock a post under n attribute values, open it with any t.

A protected post carries the post encrypted under a random master key,
plus that key split into n threshold shares, each share encrypted under
the hash of one attribute value.  Knowing t correct values lets anyone
rebuild the master key; fewer than t correct values yields garbage
output that is deliberately indistinguishable from a decryption of
random bytes — wrong guesses are never signalled.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DuplicateIndex,
    EmptyAfterNormalize,
    EmptyPost,
    EmptyValue,
    GarbledPadding,
    IndexOutOfRange,
    InvalidParams,
    MalformedEnvelope,
    WrongGuessCount,
)
from .primitives import (
    KEY_BYTES,
    CipherText,
    RandomSource,
    decrypt,
    encrypt,
    hash_value,
    sample_master_key,
)
from .shamir import Share, SharingParams, reconstruct_secret, split_secret
from .text import looks_like_text, normalize

__all__ = [
    "Attribute",
    "ProtectedPost",
    "protect",
    "access",
    "recover_key",
    "looks_like_text",
    "SUITE",
    "FORMAT_VERSION",
]

SUITE = "aes-256-cbc+sha-256"
FORMAT_VERSION = 1

# serialized share: 1 byte x followed by the 32-byte key share
SHARE_WIRE_BYTES = 1 + KEY_BYTES


@dataclass(frozen=True)
class Attribute:
    """Public description, secret value ("Name" / "john").

    Descriptions may repeat across a post's attributes; values are what
    accessors must know.
    """

    description: str
    value: str


@dataclass(frozen=True)
class ProtectedPost:
    params: SharingParams
    descriptions: tuple[str, ...]
    post_ct: CipherText
    share_cts: tuple[CipherText, ...]
    suite: str = SUITE
    version: int = FORMAT_VERSION


def protect(
    attributes: list[Attribute],
    post: bytes,
    params: SharingParams,
    rng: RandomSource,
) -> ProtectedPost:
    """Encrypt ``post`` so that any params.t of the attribute values open it.

    Values are normalized before hashing, so "  John " and "john" count
    as the same knowledge.  The returned structure contains no values
    and no key material, only ciphertexts and the public descriptions.
    """
    params.validate()
    if len(attributes) != params.n:
        raise InvalidParams(
            f"got {len(attributes)} attributes for n={params.n}"
        )
    if not post:
        raise EmptyPost("refusing to protect an empty post")
    for a in attributes:
        if not a.description:
            raise EmptyValue("attribute description must be non-empty")
    try:
        values = [normalize(a.value) for a in attributes]
    except EmptyAfterNormalize as exc:
        raise EmptyValue(str(exc)) from exc

    master = sample_master_key(rng)
    post_ct = encrypt(master, post, rng)
    shares = split_secret(master, params, rng)
    share_cts = tuple(
        encrypt(hash_value(v), bytes([s.x]) + s.y, rng)
        for v, s in zip(values, shares)
    )
    return ProtectedPost(
        params=params,
        descriptions=tuple(a.description for a in attributes),
        post_ct=post_ct,
        share_cts=share_cts,
    )


def recover_key(guesses: list[tuple[int, str]], pp: ProtectedPost) -> bytes:
    """Rebuild the master-key candidate from t (index, value) guesses.

    This is the share-retrieval step on its own: decrypt the selected
    share ciphertexts under the hashed guesses and interpolate.  The
    result is the true master key exactly when all guesses are correct,
    and uniformly unhelpful bytes otherwise.
    """
    _check_envelope_shape(pp)
    n, t = pp.params.n, pp.params.t
    if len(guesses) != t:
        raise WrongGuessCount(f"need exactly t={t} guesses, got {len(guesses)}")
    seen = set()
    for idx, _ in guesses:
        if not 1 <= idx <= n:
            raise IndexOutOfRange(f"index {idx} outside [1, {n}]")
        if idx in seen:
            raise DuplicateIndex(f"index {idx} guessed twice")
        seen.add(idx)

    shares = []
    for idx, value in guesses:
        key = hash_value(normalize(value))
        try:
            raw = decrypt(key, pp.share_cts[idx - 1])
        except GarbledPadding as garbage:
            raw = garbage.raw
        # Wrong keys yield arbitrary bytes of arbitrary length; shaping
        # them into a fixed-width share keeps reconstruction total, so a
        # wrong value produces a wrong key and garbage output instead of
        # an error.  The x coordinate comes from the guessed position,
        # never from the (possibly garbled) payload.
        y = (raw + bytes(SHARE_WIRE_BYTES))[1:SHARE_WIRE_BYTES]
        shares.append(Share(x=idx, y=y))

    return reconstruct_secret(shares, t)


def access(guesses: list[tuple[int, str]], pp: ProtectedPost) -> bytes:
    """Try to open a protected post with t (index, value) guesses.

    Indices are 1-based positions into the post's attribute list.  The
    return value equals the original post exactly when every guessed
    value is correct; otherwise it is garbage bytes.  By design there is
    no error for wrong values — use :func:`looks_like_text` or byte
    comparison if a correctness hint is wanted.
    """
    candidate_key = recover_key(guesses, pp)
    try:
        return decrypt(candidate_key, pp.post_ct)
    except GarbledPadding as garbage:
        return garbage.raw


def _check_envelope_shape(pp: ProtectedPost) -> None:
    n = pp.params.n
    ok = (
        1 <= pp.params.t <= n
        and len(pp.descriptions) == n
        and len(pp.share_cts) == n
        and len(pp.post_ct.body) > 0
        and len(pp.post_ct.body) % 16 == 0
        and all(len(ct.body) > 0 and len(ct.body) % 16 == 0 for ct in pp.share_cts)
    )
    if not ok:
        raise MalformedEnvelope("protected post structure is inconsistent")
