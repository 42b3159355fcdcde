"""Exception types raised across the toolkit.

Grouped here so the CLI can map them onto exit codes in one place.
"""


class KnowlockError(Exception):
    """Base class for all toolkit errors."""


# --- field / secret sharing ---

class InvalidParams(KnowlockError):
    """Sharing parameters out of range (need 1 <= t <= n <= 255, non-empty secret)."""


class ZeroInverse(KnowlockError):
    """Multiplicative inverse of zero requested."""


class InsufficientShares(KnowlockError):
    """Fewer shares supplied than the reconstruction threshold."""


class DuplicateX(KnowlockError):
    """Two shares carry the same x-coordinate."""


class LengthMismatch(KnowlockError):
    """Share payloads differ in length."""


# --- primitives ---

class EntropyUnavailable(KnowlockError):
    """The OS entropy source failed."""


class MalformedCipherText(KnowlockError):
    """Ciphertext body empty or not a multiple of the block size."""


class GarbledPadding(KnowlockError):
    """Decryption produced bytes whose padding does not parse.

    Carries the raw decrypted bytes in ``raw`` so callers that must never
    signal "wrong key" can still hand back garbage output.
    """

    def __init__(self, raw: bytes):
        super().__init__("padding did not parse after decryption")
        self.raw = raw


# --- scheme ---

class EmptyPost(KnowlockError):
    """Refusing to protect an empty post."""


class EmptyValue(KnowlockError):
    """An attribute value is empty (or empty after normalization)."""


class IndexOutOfRange(KnowlockError):
    """A guess references an attribute index outside [1, n]."""


class DuplicateIndex(KnowlockError):
    """Two guesses reference the same attribute index."""


class WrongGuessCount(KnowlockError):
    """Number of guesses differs from the envelope's threshold t."""


class MalformedEnvelope(KnowlockError):
    """Envelope fields violate the protected-post structure."""


# --- envelope / store ---

class ParseError(KnowlockError):
    """Envelope document is not valid or violates the format."""


class VersionUnsupported(KnowlockError):
    """Envelope format version is unknown."""


class CountMismatch(KnowlockError):
    """Envelope share/description counts disagree with its declared n."""


class BadBase64(KnowlockError):
    """A binary field does not decode as base64."""


class EmptyAfterNormalize(KnowlockError):
    """String normalization left nothing."""


class StoreIoError(KnowlockError):
    """Attribute store could not be read or written."""


# --- attack evaluation / security game ---

class EmptyTable(KnowlockError):
    """Frequency table has no descriptions or an empty value set."""


class ValueNotInBasis(KnowlockError):
    """A guessed value does not occur in the basis distribution."""


class InconsistentTargets(KnowlockError):
    """Target profiles disagree on descriptions, or the basis lacks one."""


class AdversaryContractViolation(KnowlockError):
    """Game adversary produced unequal-length or identical challenge posts."""
