"""knowlock: threshold knowledge-based encryption for public posts.

Protect a post under n attribute values so that anyone who knows at
least t of them can open it — no key exchange, no account, no prior
contact.  Includes an empirical indistinguishability-game harness and a
dictionary-attack cost evaluator for judging how guessable a given
attribute choice is.
"""

from .envelope import decode, encode
from .errors import KnowlockError
from .primitives import CipherText, RandomSource
from .scheme import (
    Attribute,
    ProtectedPost,
    access,
    looks_like_text,
    protect,
    recover_key,
)
from .shamir import Share, SharingParams, reconstruct_secret, split_secret
from .store import AttributeStore, AutoAccessResult, auto_access
from .text import normalize

__version__ = "0.1.0"

__all__ = [
    "Attribute",
    "AttributeStore",
    "AutoAccessResult",
    "CipherText",
    "KnowlockError",
    "ProtectedPost",
    "RandomSource",
    "Share",
    "SharingParams",
    "access",
    "auto_access",
    "decode",
    "encode",
    "looks_like_text",
    "normalize",
    "protect",
    "reconstruct_secret",
    "recover_key",
    "split_secret",
    "__version__",
]
