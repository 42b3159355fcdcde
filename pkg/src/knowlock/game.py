"""Empirical indistinguishability game for the scheme.

A challenger samples attributes from a distribution, shows the
adversary only the descriptions, accepts two equal-length candidate
posts, protects one of them chosen by a hidden coin, and asks the
adversary which.  The measured advantage (win rate minus one half)
estimates how much the envelope leaks; with unguessable values it
should be statistically indistinguishable from zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Protocol, Sequence

from .errors import AdversaryContractViolation, InvalidParams
from .primitives import RandomSource
from .scheme import Attribute, ProtectedPost, protect
from .shamir import SharingParams


class Adversary(Protocol):
    """Strategy interface for the distinguishing game."""

    def choose_posts(self, descriptions: Sequence[str]) -> tuple[bytes, bytes]:
        """Return two different, equal-length candidate posts."""
        ...

    def guess(self, descriptions: Sequence[str], challenge: ProtectedPost) -> int:
        """Return 0 or 1: which candidate the challenge protects."""
        ...


@dataclass
class GameResult:
    games_played: int
    wins: int
    advantage: float
    ci95: tuple[float, float]

    @property
    def win_rate(self) -> float:
        return self.wins / self.games_played


def run_security_game(
    adversary: Adversary,
    attribute_sampler: Callable[[RandomSource], list[Attribute]],
    games: int,
    rng: RandomSource,
    threshold: int | None = None,
) -> GameResult:
    """Play the distinguishing game ``games`` times and estimate advantage.

    ``attribute_sampler`` draws a fresh attribute tuple per game;
    ``threshold`` defaults to requiring all n values.  The reported 95%
    interval is the normal approximation for the win-rate estimate,
    shifted to the advantage scale.
    """
    if games < 1:
        raise InvalidParams(f"games must be >= 1, got {games}")
    wins = 0
    for _ in range(games):
        attributes = attribute_sampler(rng)
        n = len(attributes)
        t = n if threshold is None else threshold
        descriptions = [a.description for a in attributes]

        p0, p1 = adversary.choose_posts(descriptions)
        if p0 == p1:
            raise AdversaryContractViolation("challenge posts must differ")
        if len(p0) != len(p1):
            raise AdversaryContractViolation("challenge posts must have equal length")

        coin = rng.bytes(1)[0] & 1
        challenge = protect(
            attributes, p1 if coin else p0, SharingParams(n=n, t=t), rng
        )
        if adversary.guess(descriptions, challenge) == coin:
            wins += 1

    rate = wins / games
    half_width = 1.96 * math.sqrt(max(rate * (1.0 - rate), 1e-12) / games)
    advantage = rate - 0.5
    return GameResult(
        games_played=games,
        wins=wins,
        advantage=advantage,
        ci95=(advantage - half_width, advantage + half_width),
    )
