"""Domain model for Approval Voting: candidates, preferences, ballots,
electorates, and the tally/outcome computation.

Scores are 64-bit floats.  Integer-weighted electorates therefore tally
exactly, while sampled real-valued weights make exact score ties a
measure-zero event; score comparisons use plain float equality and ties
are broken by candidate declaration order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Iterator, Mapping

if TYPE_CHECKING:
    from .strategies import Strategy

Candidate = str
Ballot = frozenset  # frozenset[Candidate]


@dataclass(frozen=True)
class CandidateSet:
    """Ordered set of candidate names; the order is the tie-break order."""

    names: tuple[Candidate, ...]

    def __post_init__(self) -> None:
        if not self.names:
            raise ValueError("candidate set must be non-empty")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate candidate names")

    @classmethod
    def of(cls, *names: Candidate) -> "CandidateSet":
        return cls(tuple(names))

    def index(self, name: Candidate) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown candidate {name!r}") from None

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[Candidate]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self.names


@dataclass(frozen=True)
class Preference:
    """Ordered tie-groups over the full candidate set.

    ``groups[0]`` holds the most preferred candidates; candidates within a
    group are tied.  The groups partition the candidate set.
    """

    candidates: CandidateSet
    groups: tuple[Ballot, ...]
    _rank: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        seen: set[Candidate] = set()
        rank: dict[Candidate, int] = {}
        for i, group in enumerate(self.groups):
            if not group:
                raise ValueError("empty tie-group")
            for name in group:
                if name not in self.candidates:
                    raise ValueError(f"unknown candidate {name!r}")
                if name in seen:
                    raise ValueError(f"candidate {name!r} repeated in preference")
                seen.add(name)
                rank[name] = i
        if len(seen) != len(self.candidates):
            missing = [n for n in self.candidates if n not in seen]
            raise ValueError(f"incomplete preference, missing {missing}")
        object.__setattr__(self, "_rank", rank)

    @classmethod
    def from_groups(cls, candidates: CandidateSet, groups: Iterable[Iterable[Candidate]]) -> "Preference":
        return cls(candidates, tuple(frozenset(g) for g in groups))

    @classmethod
    def _trusted(cls, candidates: CandidateSet, groups: tuple, rank: dict) -> "Preference":
        # bulk-sampling fast path: caller guarantees groups partition the
        # candidate set and rank matches groups
        self = object.__new__(cls)
        object.__setattr__(self, "candidates", candidates)
        object.__setattr__(self, "groups", groups)
        object.__setattr__(self, "_rank", rank)
        return self

    @classmethod
    def from_notation(cls, candidates: CandidateSet, text: str) -> "Preference":
        """Parse compact notation like ``a(bc)d`` (single-character names only)."""
        if any(len(n) != 1 for n in candidates):
            raise ValueError("compact notation requires single-character names")
        groups: list[list[str]] = []
        in_group = False
        for ch in text:
            if ch == "(":
                if in_group:
                    raise ValueError("nested parenthesis in preference notation")
                in_group = True
                groups.append([])
            elif ch == ")":
                if not in_group:
                    raise ValueError("unbalanced parenthesis in preference notation")
                in_group = False
            else:
                if in_group:
                    groups[-1].append(ch)
                else:
                    groups.append([ch])
        if in_group:
            raise ValueError("unbalanced parenthesis in preference notation")
        return cls.from_groups(candidates, groups)

    def rank_of(self, name: Candidate) -> int:
        """Index of the tie-group containing ``name`` (0 = most preferred)."""
        try:
            return self._rank[name]
        except KeyError:
            raise ValueError(f"unknown candidate {name!r}") from None

    def prefers(self, alpha: Candidate, beta: Candidate) -> bool:
        """True iff ``alpha`` is strictly preferred to ``beta``."""
        return self.rank_of(alpha) < self.rank_of(beta)

    @property
    def tie_free(self) -> bool:
        return all(len(g) == 1 for g in self.groups)

    @property
    def last_group(self) -> Ballot:
        return self.groups[-1]


def strict_prefers(pref: Preference, alpha: Candidate, beta: Candidate) -> bool:
    return pref.prefers(alpha, beta)


def is_sincere(pref: Preference, ballot: Ballot) -> bool:
    """A ballot is sincere when every approved candidate is strictly
    preferred to every non-approved candidate."""
    if not ballot:
        return True
    worst_in = max(pref.rank_of(c) for c in ballot)
    out = [c for c in pref.candidates if c not in ballot]
    if not out:
        return True
    best_out = min(pref.rank_of(c) for c in out)
    return worst_in < best_out


def is_weakly_sincere(pref: Preference, ballot: Ballot) -> bool:
    """Tie-tolerant sincerity: no candidate left off the ballot is
    strictly preferred to one on it.  Coincides with `is_sincere` on
    tie-free preferences; the strict form additionally forbids approving
    one of two tied candidates without the other."""
    if not ballot:
        return True
    worst_in = max(pref.rank_of(c) for c in ballot)
    out = [c for c in pref.candidates if c not in ballot]
    if not out:
        return True
    best_out = min(pref.rank_of(c) for c in out)
    return worst_in <= best_out


def sincere_ballots(pref: Preference) -> list[Ballot]:
    """All prefix-unions of tie-groups, from the empty ballot up to the
    full candidate set, in increasing size."""
    out: list[Ballot] = [frozenset()]
    acc: frozenset = frozenset()
    for group in pref.groups:
        acc = acc | group
        out.append(acc)
    return out


def is_degenerate_ballot(ballot: Ballot, candidates: CandidateSet) -> bool:
    """Empty and full ballots are legal but carry no information."""
    return len(ballot) == 0 or len(ballot) == len(candidates)


@dataclass(frozen=True)
class VoterType:
    """A bloc of identical voters: preference, weight and strategy tag."""

    name: str
    preference: Preference
    weight: float
    strategy: "Strategy"

    def __post_init__(self) -> None:
        if self.weight < 0:
            raise ValueError(f"negative weight for type {self.name!r}")


@dataclass(frozen=True)
class Electorate:
    candidates: CandidateSet
    types: tuple[VoterType, ...]

    def __post_init__(self) -> None:
        names = [t.name for t in self.types]
        if len(set(names)) != len(names):
            raise ValueError("duplicate voter type names")
        for t in self.types:
            if t.preference.candidates != self.candidates:
                raise ValueError(f"type {t.name!r} has a preference over a different candidate set")
        if self.total_weight <= 0:
            raise ValueError("total weight must be positive")

    @property
    def total_weight(self) -> float:
        return sum(t.weight for t in self.types)

    def type_named(self, name: str) -> VoterType:
        for t in self.types:
            if t.name == name:
                return t
        raise ValueError(f"unknown voter type {name!r}")

    def group_index_matrix(self):
        """(n_types, n_candidates) int array of tie-group indices; shared by
        the fast tally paths in `dynamics` and `majority`."""
        import numpy as np

        n = len(self.candidates)
        out = np.empty((len(self.types), n), dtype=np.int64)
        for i, t in enumerate(self.types):
            for j, c in enumerate(self.candidates):
                out[i, j] = t.preference.rank_of(c)
        return out

    def weights_array(self):
        import numpy as np

        return np.array([t.weight for t in self.types], dtype=np.float64)


@dataclass(frozen=True)
class Tally:
    """Approval score per candidate, aligned with the candidate order."""

    candidates: CandidateSet
    scores: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.scores) != len(self.candidates):
            raise ValueError("score vector length mismatch")

    def score(self, name: Candidate) -> float:
        return self.scores[self.candidates.index(name)]

    def as_dict(self) -> dict[Candidate, float]:
        return dict(zip(self.candidates.names, self.scores))


@dataclass(frozen=True)
class Outcome:
    """A tally together with the strict ranking it induces (descending
    score, ties broken by candidate declaration order)."""

    tally: Tally
    ranking: tuple[Candidate, ...]

    @property
    def winner(self) -> Candidate:
        return self.ranking[0]

    @property
    def runner_up(self) -> Candidate:
        return self.ranking[1]

    @property
    def scores(self) -> Tally:
        return self.tally


def tally(electorate: Electorate, assignment: Mapping[str, Ballot]) -> Tally:
    """Compound the ballots cast by each voter type (one ballot per type)."""
    scores = [0.0] * len(electorate.candidates)
    for t in electorate.types:
        if t.name not in assignment:
            raise ValueError(f"no ballot assigned to type {t.name!r}")
        ballot = assignment[t.name]
        for c in ballot:
            scores[electorate.candidates.index(c)] += t.weight
    return Tally(electorate.candidates, tuple(scores))


def outcome_from_tally(t: Tally) -> Outcome:
    if len(t.candidates) < 2:
        raise ValueError("an outcome needs at least two candidates")
    order = sorted(range(len(t.candidates)), key=lambda i: (-t.scores[i], i))
    return Outcome(t, tuple(t.candidates.names[i] for i in order))
