import pytest

from knowlock.errors import AdversaryContractViolation
from knowlock.game import GameResult, run_security_game
from knowlock.primitives import RandomSource
from knowlock.scheme import Attribute, access


def high_entropy_sampler(rng):
    return [
        Attribute(f"question {i}", rng.bytes(16).hex()) for i in range(3)
    ]


class RandomGuesser:
    """Baseline strategy: ignore the challenge, flip a coin."""

    def __init__(self, rng):
        self.rng = rng

    def choose_posts(self, descriptions):
        return b"post zero body..", b"post one body..."

    def guess(self, descriptions, challenge):
        return self.rng.bytes(1)[0] & 1


class Omniscient:
    """Cheating strategy handed the sampled values out of band."""

    def __init__(self, sampler_log):
        self.sampler_log = sampler_log

    def choose_posts(self, descriptions):
        self.posts = (b"post zero body..", b"post one body...")
        return self.posts

    def guess(self, descriptions, challenge):
        values = self.sampler_log[-1]
        guesses = [(i + 1, v) for i, v in enumerate(values)]
        return 1 if access(guesses, challenge) == self.posts[1] else 0


class DegenerateAdversary:
    def choose_posts(self, descriptions):
        return b"same", b"same"

    def guess(self, descriptions, challenge):
        return 0


class UnequalLengths:
    def choose_posts(self, descriptions):
        return b"short", b"much longer post"

    def guess(self, descriptions, challenge):
        return 0


def test_random_guesser_has_no_advantage():
    rng = RandomSource(101)
    result = run_security_game(
        RandomGuesser(RandomSource(202)), high_entropy_sampler, 4000, rng
    )
    assert result.games_played == 4000
    assert abs(result.advantage) <= 3 * 0.5 / 4000**0.5
    assert result.ci95[0] <= 0.0 <= result.ci95[1]


def test_omniscient_adversary_wins_every_game():
    rng = RandomSource(7)
    log = []

    def logging_sampler(r):
        attrs = high_entropy_sampler(r)
        log.append([a.value for a in attrs])
        return attrs

    result = run_security_game(Omniscient(log), logging_sampler, 300, rng)
    assert result.wins == 300
    assert result.advantage == 0.5


def test_identical_posts_rejected():
    with pytest.raises(AdversaryContractViolation):
        run_security_game(
            DegenerateAdversary(), high_entropy_sampler, 5, RandomSource(1)
        )


def test_unequal_lengths_rejected():
    with pytest.raises(AdversaryContractViolation):
        run_security_game(
            UnequalLengths(), high_entropy_sampler, 5, RandomSource(1)
        )


def test_threshold_below_n_supported():
    rng = RandomSource(55)
    result = run_security_game(
        RandomGuesser(RandomSource(66)),
        high_entropy_sampler,
        200,
        rng,
        threshold=2,
    )
    assert isinstance(result, GameResult)
    assert 0 <= result.wins <= 200
