"""Value normalization and the plaintext-vs-garbage heuristic."""

import unicodedata

from .errors import EmptyAfterNormalize

# whitespace-ish characters we still count as "printable" in text detection
_TEXT_WHITESPACE = "\n\r\t"


def normalize(raw: str) -> str:
    """Canonical form of an attribute value.

    Lowercased, Unicode NFC, outer whitespace stripped and inner runs
    collapsed to single spaces.  NFC runs after lowercasing because case
    mapping can denormalize; this order keeps the function idempotent,
    so layers may re-apply it freely.  "  TU  Darmstadt " and
    "tu darmstadt" hash identically.
    """
    folded = " ".join(unicodedata.normalize("NFC", raw.lower()).split())
    if not folded:
        raise EmptyAfterNormalize("value is empty after normalization")
    return folded


def looks_like_text(data: bytes) -> bool:
    """Heuristic: does this decryption output look like text?

    True iff the bytes decode as UTF-8 and at least 90% of the code
    points are printable (tabs and newlines count as printable).  Purely
    advisory: short printable garbage can pass, and binary posts such as
    images will fail even when correctly decrypted.  Empty input is
    False.
    """
    if not data:
        return False
    try:
        decoded = data.decode("utf-8")
    except UnicodeDecodeError:
        return False
    printable = sum(1 for ch in decoded if ch.isprintable() or ch in _TEXT_WHITESPACE)
    return printable >= 0.9 * len(decoded)
