import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from knowlock.primitives import RandomSource


@pytest.fixture
def rng():
    """Deterministic source so failures replay exactly."""
    return RandomSource(seed=1234)


class ScriptedRandom:
    """RandomSource stand-in that plays back preset bytes, then zeros."""

    seeded = True

    def __init__(self, script: bytes):
        self._script = bytearray(script)

    def bytes(self, n: int) -> bytes:
        take = bytes(self._script[:n])
        del self._script[:n]
        return take + bytes(n - len(take))

    def randrange(self, bound: int) -> int:
        return self.bytes(1)[0] % bound


@pytest.fixture
def scripted_random():
    return ScriptedRandom
