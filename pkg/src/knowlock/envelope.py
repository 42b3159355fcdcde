"""Envelope wire format: canonical JSON text for protected posts.

The envelope is plain text so it can be pasted into free-text post
fields.  Serialization is canonical (sorted keys, no insignificant
whitespace, standard base64) so the same protected post always encodes
to the same bytes; see docs/format.md for the field-by-field layout.
"""

from __future__ import annotations

import base64
import binascii
import json

from .errors import BadBase64, CountMismatch, ParseError, VersionUnsupported
from .primitives import BLOCK_BYTES, CipherText
from .scheme import FORMAT_VERSION, SHARE_WIRE_BYTES, SUITE, ProtectedPost
from .shamir import SharingParams

# PKCS#7 always pads, so a 33-byte share body is exactly 48 bytes
_SHARE_BODY_BYTES = (SHARE_WIRE_BYTES // BLOCK_BYTES + 1) * BLOCK_BYTES


def encode(pp: ProtectedPost) -> str:
    """Serialize a protected post to its canonical text document."""
    doc = {
        "version": pp.version,
        "suite": pp.suite,
        "n": pp.params.n,
        "t": pp.params.t,
        "descriptions": list(pp.descriptions),
        "shares": [
            {"index": i + 1, "iv": _b64(ct.iv), "body": _b64(ct.body)}
            for i, ct in enumerate(pp.share_cts)
        ],
        "post": {"iv": _b64(pp.post_ct.iv), "body": _b64(pp.post_ct.body)},
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def decode(doc: str) -> ProtectedPost:
    """Parse and validate an envelope document.

    Rejects unknown versions outright instead of guessing at their
    layout, and checks every structural invariant of the format so the
    scheme layer can rely on well-formed inputs.
    """
    try:
        obj = json.loads(doc)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"not a valid envelope document: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError("envelope must be a JSON object")

    version = obj.get("version")
    if not isinstance(version, int):
        raise ParseError("missing or non-integer version field")
    if version != FORMAT_VERSION:
        raise VersionUnsupported(f"unsupported envelope version {version}")

    suite = obj.get("suite")
    if suite != SUITE:
        raise ParseError(f"unknown cipher suite {suite!r}")

    n, t = obj.get("n"), obj.get("t")
    if not (isinstance(n, int) and isinstance(t, int)) or not 1 <= t <= n <= 255:
        raise ParseError(f"invalid parameters n={n!r}, t={t!r}")

    descriptions = obj.get("descriptions")
    if not isinstance(descriptions, list) or not all(
        isinstance(d, str) and d for d in descriptions
    ):
        raise ParseError("descriptions must be a list of non-empty strings")

    shares = obj.get("shares")
    if not isinstance(shares, list):
        raise ParseError("shares must be a list")
    if len(descriptions) != n or len(shares) != n:
        raise CountMismatch(
            f"n={n} but {len(descriptions)} descriptions and {len(shares)} shares"
        )

    share_cts: list[CipherText | None] = [None] * n
    for rec in shares:
        if not isinstance(rec, dict):
            raise ParseError("share record must be an object")
        idx = rec.get("index")
        if not isinstance(idx, int) or not 1 <= idx <= n:
            raise ParseError(f"share index {idx!r} outside [1, {n}]")
        if share_cts[idx - 1] is not None:
            raise CountMismatch(f"share index {idx} appears twice")
        iv = _unb64(rec.get("iv"), "share iv")
        body = _unb64(rec.get("body"), "share body")
        if len(iv) != BLOCK_BYTES:
            raise ParseError(f"share iv must be {BLOCK_BYTES} bytes")
        if len(body) != _SHARE_BODY_BYTES:
            raise ParseError(f"share body must be {_SHARE_BODY_BYTES} bytes")
        share_cts[idx - 1] = CipherText(iv=iv, body=body)

    post = obj.get("post")
    if not isinstance(post, dict):
        raise ParseError("post record must be an object")
    post_iv = _unb64(post.get("iv"), "post iv")
    post_body = _unb64(post.get("body"), "post body")
    if len(post_iv) != BLOCK_BYTES:
        raise ParseError(f"post iv must be {BLOCK_BYTES} bytes")
    if not post_body or len(post_body) % BLOCK_BYTES != 0:
        raise ParseError("post body must be a positive multiple of the block size")

    return ProtectedPost(
        params=SharingParams(n=n, t=t),
        descriptions=tuple(descriptions),
        post_ct=CipherText(iv=post_iv, body=post_body),
        share_cts=tuple(share_cts),  # type: ignore[arg-type]
        suite=suite,
        version=version,
    )


def _b64(data: bytes) -> str:
    return base64.b64encode(data).decode("ascii")


def _unb64(field, label: str) -> bytes:
    if not isinstance(field, str):
        raise ParseError(f"{label} must be a base64 string")
    try:
        return base64.b64decode(field, validate=True)
    except (binascii.Error, ValueError) as exc:
        raise BadBase64(f"{label} is not valid base64: {exc}") from exc
