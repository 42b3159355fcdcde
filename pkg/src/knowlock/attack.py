"""Dictionary-attack cost evaluation against attribute-frequency data.

Models an attacker who knows a *basis* distribution of attribute values
(a guessing dictionary with per-value frequencies) and tries value
combinations against posts whose true values follow a *target*
distribution.  Guesses are enumerated in non-decreasing rank-product
order — the product of the per-value frequency ranks, a lower-bound
estimate of a combination's true likelihood rank — and the evaluator
reports how many posts open, after how many trials, and the payoff
curve of success fraction versus trial budget.
"""

from __future__ import annotations

import bisect
import csv
import io
import json
import math
from dataclasses import dataclass
from heapq import heappop, heappush
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import (
    EmptyTable,
    InconsistentTargets,
    InvalidParams,
    ValueNotInBasis,
)
from .primitives import RandomSource
from .scheme import Attribute, access, protect
from .shamir import SharingParams
from .text import normalize

__all__ = [
    "FrequencyTable",
    "RankTable",
    "TargetProfile",
    "Guess",
    "AttackReport",
    "build_ranks",
    "rank_product",
    "enumerate_guesses",
    "search_space_size",
    "run_attack",
    "zipf_probabilities",
    "zipf_frequency_table",
    "sample_profiles",
    "profiles_from_csv",
    "profiles_to_csv",
]


@dataclass
class FrequencyTable:
    """Per-description value→probability maps plus a source label."""

    source: str
    tables: dict[str, dict[str, float]]

    def __post_init__(self):
        for desc, table in self.tables.items():
            if not table:
                raise EmptyTable(f"no values for description {desc!r}")
            if any(p <= 0 for p in table.values()):
                raise EmptyTable(f"non-positive probability under {desc!r}")
            total = sum(table.values())
            if abs(total - 1.0) > 1e-6:
                raise EmptyTable(
                    f"probabilities under {desc!r} sum to {total}, not 1"
                )

    @classmethod
    def from_counts(
        cls, source: str, counts: dict[str, dict[str, float]]
    ) -> "FrequencyTable":
        """Build from raw counts (or unnormalized weights); normalizes per description."""
        tables = {}
        for desc, table in counts.items():
            if not table:
                raise EmptyTable(f"no values for description {desc!r}")
            total = sum(table.values())
            if total <= 0:
                raise EmptyTable(f"non-positive total count under {desc!r}")
            tables[desc] = {v: c / total for v, c in table.items()}
        return cls(source=source, tables=tables)

    @classmethod
    def from_csv(cls, text: str, source: str = "csv") -> "FrequencyTable":
        """Parse `description,value,count` rows; values are normalized, and
        counts of rows that normalize to the same value accumulate."""
        counts: dict[str, dict[str, float]] = {}
        reader = csv.DictReader(io.StringIO(text))
        required = {"description", "value", "count"}
        if reader.fieldnames is None or not required.issubset(reader.fieldnames):
            raise EmptyTable("csv needs a 'description,value,count' header")
        for row in reader:
            desc = row["description"]
            value = normalize(row["value"])
            count = float(row["count"])
            counts.setdefault(desc, {})
            counts[desc][value] = counts[desc].get(value, 0.0) + count
        if not counts:
            raise EmptyTable("csv contains no data rows")
        return cls.from_counts(source, counts)

    @classmethod
    def from_json(cls, text: str) -> "FrequencyTable":
        obj = json.loads(text)
        return cls.from_counts(obj.get("source", "json"), obj["tables"])

    def to_json(self) -> str:
        return json.dumps(
            {"source": self.source, "tables": self.tables},
            sort_keys=True,
            ensure_ascii=False,
        )


@dataclass
class RankTable:
    """value→rank per description (rank 1 = most likely).

    ``ordered`` lists values by rank so rank r is ordered[desc][r-1].
    Equal probabilities are broken by lexicographic value order; the
    rule is recorded so enumeration order is reproducible.
    """

    ranks: dict[str, dict[str, int]]
    ordered: dict[str, list[str]]
    tie_break: str = "probability desc, then value lexicographic"

    def size(self, description: str) -> int:
        return len(self.ordered.get(description, ()))


def build_ranks(ft: FrequencyTable) -> RankTable:
    """Rank every value of every description by descending probability."""
    if not ft.tables:
        raise EmptyTable("frequency table has no descriptions")
    ranks, ordered = {}, {}
    for desc, table in ft.tables.items():
        values = sorted(table, key=lambda v: (-table[v], v))
        ordered[desc] = values
        ranks[desc] = {v: r for r, v in enumerate(values, start=1)}
    return RankTable(ranks=ranks, ordered=ordered)


def rank_product(rt: RankTable, pairs: Iterable[tuple[str, str]]) -> int:
    """Product of the per-value ranks of a (description, value) guess.

    This estimates the guess's position in the likelihood order; it is a
    lower bound on the true combined rank, matching how the enumeration
    orders its stream.
    """
    result = 1
    for desc, value in pairs:
        table = rt.ranks.get(desc)
        if table is None or value not in table:
            raise ValueNotInBasis(f"{value!r} not in basis under {desc!r}")
        result *= table[value]
    return result


@dataclass(frozen=True)
class Guess:
    """One attack trial: positions (0-based into the description list),
    the guessed value for each, and the guess's rank product."""

    positions: tuple[int, ...]
    values: tuple[str, ...]
    product: int


def enumerate_guesses(
    rt: RankTable,
    descriptions: Sequence[str],
    t: int,
    budget: int,
) -> Iterator[Guess]:
    """Yield up to ``budget`` guesses in non-decreasing rank-product order.

    A guess picks t of the n positions and one basis value per picked
    position.  Ties are broken lexicographically on the position vector,
    then on the rank vector, so the stream is fully deterministic.
    Positions whose description has no basis values are never picked,
    and values absent from the basis are never yielded.
    """
    if budget < 1:
        raise InvalidParams(f"budget must be >= 1, got {budget}")
    sizes = [rt.size(d) for d in descriptions]
    usable = [i for i in range(len(descriptions)) if sizes[i] > 0]

    # (product, positions, rank vector, lowest index allowed to grow).
    # Each rank vector is generated exactly once: growing coordinates in
    # non-decreasing index order makes the generation path unique.
    heap: list[tuple[int, tuple[int, ...], tuple[int, ...], int]] = []
    for subset in combinations(usable, t):
        heappush(heap, (1, subset, (1,) * t, 0))

    yielded = 0
    while heap and yielded < budget:
        product, subset, rvec, grow_from = heappop(heap)
        yield Guess(
            positions=subset,
            values=tuple(
                rt.ordered[descriptions[i]][r - 1] for i, r in zip(subset, rvec)
            ),
            product=product,
        )
        yielded += 1
        for j in range(grow_from, t):
            r = rvec[j]
            if r < sizes[subset[j]]:
                child = rvec[:j] + (r + 1,) + rvec[j + 1 :]
                heappush(heap, (product // r * (r + 1), subset, child, j))


def search_space_size(rt: RankTable, descriptions: Sequence[str], t: int) -> int:
    """Total number of guesses the enumeration can ever produce."""
    sizes = [rt.size(d) for d in descriptions]
    usable = [i for i in range(len(descriptions)) if sizes[i] > 0]
    return sum(
        math.prod(sizes[i] for i in subset) for subset in combinations(usable, t)
    )


@dataclass
class TargetProfile:
    """One protected post's ground truth: ordered (description, value) pairs."""

    profile_id: str
    pairs: tuple[tuple[str, str], ...]

    @property
    def descriptions(self) -> tuple[str, ...]:
        return tuple(d for d, _ in self.pairs)

    @property
    def values(self) -> tuple[str, ...]:
        return tuple(v for _, v in self.pairs)


@dataclass
class AttackReport:
    """Aggregated campaign outcome.

    ``per_profile_trials`` maps profile id to the 1-based trial index of
    the first successful guess, or None when the post stayed closed
    within the budget.  Failed posts enter the mean/stddev at the full
    reachable search-space size unless ``failed_cost`` said otherwise.
    """

    basis_source: str
    threshold: int
    budget: int
    target_count: int
    search_space: int
    success_rate: float
    mean_trials: float
    trials_stddev: float
    payoff_curve: list[tuple[int, float]]
    per_profile_trials: dict[str, int | None]
    failed_cost: str = "search_space"

    def to_json(self) -> str:
        doc = {
            "basis_source": self.basis_source,
            "threshold": self.threshold,
            "budget": self.budget,
            "target_count": self.target_count,
            "search_space": self.search_space,
            "success_rate": self.success_rate,
            "mean_trials": self.mean_trials,
            "trials_stddev": self.trials_stddev,
            "failed_cost": self.failed_cost,
            "payoff_curve": [[b, f] for b, f in self.payoff_curve],
            "per_profile_trials": self.per_profile_trials,
        }
        return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2)

    def payoff_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out)
        writer.writerow(["budget", "fraction_accessed"])
        for budget, fraction in self.payoff_curve:
            writer.writerow([budget, f"{fraction:.6f}"])
        return out.getvalue()


def run_attack(
    targets: Sequence[TargetProfile],
    basis: FrequencyTable,
    t: int,
    budget: int,
    failed_cost: str = "search_space",
    crypto_check: bool = False,
    rng: RandomSource | None = None,
) -> AttackReport:
    """Simulate the dictionary attack against every target profile.

    Guesses stream in rank-product order; a target falls at the first
    guess whose values all equal its true values at the guessed
    positions (the attacker can tell a correct decryption apart from
    garbage).  With ``crypto_check=True`` every trial actually builds
    and opens real ciphertexts instead of comparing values — identical
    results, orders of magnitude slower, useful for timing studies.

    ``failed_cost`` chooses what a closed post contributes to the trial
    statistics: the whole reachable search space (default) or just the
    spent ``budget`` ("budget").
    """
    if budget < 1:
        raise InvalidParams(f"budget must be >= 1, got {budget}")
    if failed_cost not in ("search_space", "budget"):
        raise InvalidParams(f"unknown failed_cost policy {failed_cost!r}")
    if not targets:
        raise InconsistentTargets("no target profiles given")
    descriptions = targets[0].descriptions
    n = len(descriptions)
    if not 1 <= t <= n:
        raise InvalidParams(f"threshold t={t} outside [1, {n}]")
    ids = set()
    for tp in targets:
        if tp.descriptions != descriptions:
            raise InconsistentTargets(
                f"profile {tp.profile_id!r} has different descriptions"
            )
        if tp.profile_id in ids:
            raise InconsistentTargets(f"duplicate profile id {tp.profile_id!r}")
        ids.add(tp.profile_id)
    missing = [d for d in set(descriptions) if d not in basis.tables]
    if missing:
        raise InconsistentTargets(f"basis lacks descriptions: {sorted(missing)}")

    rt = build_ranks(basis)
    space = search_space_size(rt, descriptions, t)

    if crypto_check:
        if rng is None:
            rng = RandomSource()
        trials = _resolve_with_crypto(targets, rt, descriptions, t, budget, rng)
    else:
        trials = _resolve_by_comparison(targets, rt, descriptions, t, budget)

    costs = []
    for tp in targets:
        index = trials[tp.profile_id]
        if index is not None:
            costs.append(index)
        else:
            costs.append(space if failed_cost == "search_space" else budget)
    count = len(targets)
    mean = sum(costs) / count
    stddev = math.sqrt(sum((c - mean) ** 2 for c in costs) / count)
    resolved = sorted(v for v in trials.values() if v is not None)

    checkpoints = []
    c = 1
    while c < budget:
        checkpoints.append(c)
        c *= 10
    checkpoints.append(budget)
    payoff = [
        (c, bisect.bisect_right(resolved, c) / count) for c in checkpoints
    ]

    return AttackReport(
        basis_source=basis.source,
        threshold=t,
        budget=budget,
        target_count=count,
        search_space=space,
        success_rate=len(resolved) / count,
        mean_trials=mean,
        trials_stddev=stddev,
        payoff_curve=payoff,
        per_profile_trials=trials,
        failed_cost=failed_cost,
    )


def _resolve_by_comparison(
    targets: Sequence[TargetProfile],
    rt: RankTable,
    descriptions: tuple[str, ...],
    t: int,
    budget: int,
) -> dict[str, int | None]:
    """One shared enumeration pass; each guess is checked against every
    still-closed target by value comparison."""
    trials: dict[str, int | None] = {tp.profile_id: None for tp in targets}

    # map (positions, values) -> profiles that this exact guess opens
    matches: dict[tuple[tuple[int, ...], tuple[str, ...]], list[str]] = {}
    open_count = 0
    for tp in targets:
        reachable = False
        for subset in combinations(range(len(descriptions)), t):
            vals = tuple(tp.values[i] for i in subset)
            if all(
                v in rt.ranks[descriptions[i]] for i, v in zip(subset, vals)
            ):
                matches.setdefault((subset, vals), []).append(tp.profile_id)
                reachable = True
        if reachable:
            open_count += 1

    if open_count == 0:
        return trials
    for index, guess in enumerate(
        enumerate_guesses(rt, descriptions, t, budget), start=1
    ):
        hit = matches.get((guess.positions, guess.values))
        if not hit:
            continue
        for pid in hit:
            if trials[pid] is None:
                trials[pid] = index
                open_count -= 1
        if open_count == 0:
            break
    return trials


def _resolve_with_crypto(
    targets: Sequence[TargetProfile],
    rt: RankTable,
    descriptions: tuple[str, ...],
    t: int,
    budget: int,
    rng: RandomSource,
) -> dict[str, int | None]:
    """Same semantics as comparison mode, but every trial decrypts for real."""
    trials: dict[str, int | None] = {}
    for tp in targets:
        post = f"post body of {tp.profile_id}".encode()
        pp = protect(
            [Attribute(d, v) for d, v in tp.pairs],
            post,
            SharingParams(n=len(tp.pairs), t=t),
            rng,
        )
        trials[tp.profile_id] = None
        for index, guess in enumerate(
            enumerate_guesses(rt, descriptions, t, budget), start=1
        ):
            guesses = [(i + 1, v) for i, v in zip(guess.positions, guess.values)]
            if access(guesses, pp) == post:
                trials[tp.profile_id] = index
                break
    return trials


# --- synthetic data and corpus I/O ---


def zipf_probabilities(k: int, s: float = 1.0) -> list[float]:
    """Zipf probabilities for ranks 1..k with exponent s."""
    if k < 1:
        raise InvalidParams("need at least one value")
    weights = [1.0 / r**s for r in range(1, k + 1)]
    total = sum(weights)
    return [w / total for w in weights]


def zipf_frequency_table(
    descriptions: Sequence[str],
    values_per_description: int,
    s: float = 1.0,
    source: str = "zipf",
) -> FrequencyTable:
    """Synthetic basis/target data: every description gets values
    v0001..v<k> with Zipf-decreasing probabilities."""
    probs = zipf_probabilities(values_per_description, s)
    tables = {
        desc: {f"v{r:04d}": p for r, p in enumerate(probs, start=1)}
        for desc in descriptions
    }
    return FrequencyTable(source=source, tables=tables)


def sample_profiles(
    ft: FrequencyTable,
    descriptions: Sequence[str],
    count: int,
    rng: RandomSource,
    id_prefix: str = "p",
) -> list[TargetProfile]:
    """Draw profiles whose values follow ``ft`` independently per attribute."""
    cumulative: dict[str, tuple[list[float], list[str]]] = {}
    for desc in set(descriptions):
        if desc not in ft.tables:
            raise InconsistentTargets(f"table lacks description {desc!r}")
        values = list(ft.tables[desc])
        edges = []
        acc = 0.0
        for v in values:
            acc += ft.tables[desc][v]
            edges.append(acc)
        cumulative[desc] = (edges, values)

    profiles = []
    for i in range(count):
        pairs = []
        for desc in descriptions:
            edges, values = cumulative[desc]
            u = rng.randrange(1 << 53) / (1 << 53) * edges[-1]
            pairs.append((desc, values[bisect.bisect_left(edges, u)]))
        profiles.append(
            TargetProfile(profile_id=f"{id_prefix}{i:05d}", pairs=tuple(pairs))
        )
    return profiles


def profiles_from_csv(text: str) -> list[TargetProfile]:
    """Parse `profile_id,description,value` rows; values are normalized.
    Row order fixes each profile's attribute order."""
    reader = csv.DictReader(io.StringIO(text))
    required = {"profile_id", "description", "value"}
    if reader.fieldnames is None or not required.issubset(reader.fieldnames):
        raise InconsistentTargets(
            "csv needs a 'profile_id,description,value' header"
        )
    grouped: dict[str, list[tuple[str, str]]] = {}
    for row in reader:
        grouped.setdefault(row["profile_id"], []).append(
            (row["description"], normalize(row["value"]))
        )
    if not grouped:
        raise InconsistentTargets("csv contains no data rows")
    return [
        TargetProfile(profile_id=pid, pairs=tuple(pairs))
        for pid, pairs in grouped.items()
    ]


def profiles_to_csv(profiles: Sequence[TargetProfile]) -> str:
    out = io.StringIO()
    writer = csv.writer(out)
    writer.writerow(["profile_id", "description", "value"])
    for tp in profiles:
        for desc, value in tp.pairs:
            writer.writerow([tp.profile_id, desc, value])
    return out.getvalue()
