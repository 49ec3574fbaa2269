"""Continuous-state poll dynamics on the product of per-type ballot
simplices.

A state assigns to every voter type a distribution over that type's
admissible ballots.  Generalized strategies map (previous distribution,
expected outcome) to a new distribution; the induced map on states is
iterated exactly like the discrete dynamics, which embeds via
`embed_discrete`.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Callable, Protocol

import numpy as np

from .dynamics import PollState, all_states
from .model import Ballot, Electorate, Outcome, Tally, outcome_from_tally
from .strategies import ballot_for

SUM_TOL = 1e-12


@dataclass(frozen=True)
class SimplexPoint:
    """Distribution over one type's admissible ballots.

    Entries are clamped to [0, 1]; the sum must be 1 within 1e-12 and is
    renormalized exactly on construction.
    """

    ballots: tuple[Ballot, ...]
    shares: tuple[float, ...]

    def __post_init__(self) -> None:
        shares = self.shares
        if len(self.ballots) != len(shares):
            raise ValueError("one share per admissible ballot")
        total = 0.0
        clean = True
        for s in shares:
            if not 0.0 <= s <= 1.0:
                clean = False
            total += s
        if not clean:
            shares = tuple(min(1.0, max(0.0, s)) for s in shares)
            total = sum(shares)
        if abs(total - 1.0) > SUM_TOL:
            raise ValueError(f"shares sum to {total}, not 1")
        if total != 1.0:
            shares = tuple(s / total for s in shares)
        if shares is not self.shares:
            object.__setattr__(self, "shares", shares)

    @classmethod
    def unit(cls, ballots: tuple[Ballot, ...], ballot: Ballot) -> "SimplexPoint":
        if ballot not in ballots:
            raise ValueError(f"{set(ballot)} is not an admissible ballot here")
        return cls(ballots, tuple(1.0 if b == ballot else 0.0 for b in ballots))

    @classmethod
    def _convex(cls, ballots: tuple[Ballot, ...], shares: tuple[float, ...]) -> "SimplexPoint":
        # hot-path constructor for shares produced as a convex combination
        # of valid points: entries are in [0, 1] by construction and the
        # sum error is contracted toward 0 by every further combination,
        # so clamping and renormalization are unnecessary
        self = object.__new__(cls)
        object.__setattr__(self, "ballots", ballots)
        object.__setattr__(self, "shares", shares)
        return self

    def share_of(self, ballot: Ballot) -> float:
        try:
            return self.shares[self.ballots.index(ballot)]
        except ValueError:
            raise ValueError(f"{set(ballot)} is not an admissible ballot here") from None

    def blend_toward(self, ballot: Ballot, p: float) -> "SimplexPoint":
        """p of the voters move to ``ballot``, the rest keep their plan."""
        i = self.ballots.index(ballot)
        if len(self.ballots) == 1 or self.shares[i] == 1.0:
            return self
        q = 1.0 - p
        new = tuple((p if j == i else 0.0) + q * s for j, s in enumerate(self.shares))
        return SimplexPoint._convex(self.ballots, new)

    def as_dict(self) -> dict[Ballot, float]:
        return dict(zip(self.ballots, self.shares))


ContinuousState = tuple  # tuple[SimplexPoint, ...] aligned with electorate.types

# (previous distribution, expected outcome) -> new distribution
GeneralizedStrategy = Callable[[SimplexPoint, Outcome], SimplexPoint]


class SymbolicSource(Protocol):
    """Anything that can be iterated and asked who wins at a state."""

    def step(self, state): ...

    def winner(self, state) -> str: ...


@dataclass(frozen=True)
class ContinuousDynamics:
    electorate: Electorate
    admissible: tuple[tuple[Ballot, ...], ...]
    strategies: tuple[GeneralizedStrategy, ...]

    @cached_property
    def _contributions(self):
        """Per type, per admissible ballot: sparse (candidate index,
        weight) pairs the ballot adds when cast by the whole type."""
        cand = self.electorate.candidates
        out = []
        for t, ballots in zip(self.electorate.types, self.admissible):
            vecs = []
            for ballot in ballots:
                vecs.append(tuple((cand.index(c), t.weight) for c in sorted(ballot, key=cand.index)))
            out.append(tuple(vecs))
        return tuple(out)

    def scores(self, state: ContinuousState) -> Tally:
        cand = self.electorate.candidates
        acc = [0.0] * len(cand)
        for point, vecs in zip(state, self._contributions):
            for share, pairs in zip(point.shares, vecs):
                if share:
                    for i, w in pairs:
                        acc[i] += share * w
        return Tally(cand, tuple(acc))

    def outcome(self, state: ContinuousState) -> Outcome:
        return outcome_from_tally(self.scores(state))

    def winner(self, state: ContinuousState) -> str:
        return self.outcome(state).winner

    def step(self, state: ContinuousState) -> ContinuousState:
        out = self.outcome(state)
        return tuple(g(point, out) for g, point in zip(self.strategies, state))

    def extreme_state(self, assignment: dict) -> ContinuousState:
        """State where all voters of each type cast the assigned ballot."""
        points = []
        for t, ballots in zip(self.electorate.types, self.admissible):
            points.append(SimplexPoint.unit(ballots, frozenset(assignment[t.name])))
        return tuple(points)

    def state_from_shares(self, shares: dict) -> ContinuousState:
        """Build a state from {type name: {ballot: share}}; omitted
        admissible ballots get share zero, and a type omitted entirely
        must have a single admissible ballot (which gets everything)."""
        points = []
        for t, ballots in zip(self.electorate.types, self.admissible):
            if t.name not in shares:
                if len(ballots) != 1:
                    raise ValueError(f"type {t.name!r} has several admissible ballots; shares required")
                points.append(SimplexPoint.unit(ballots, ballots[0]))
                continue
            given = {frozenset(b): s for b, s in shares[t.name].items()}
            points.append(SimplexPoint(ballots, tuple(given.get(b, 0.0) for b in ballots)))
        return tuple(points)


def sup_distance(s: ContinuousState, t: ContinuousState) -> float:
    """Sup norm over every ballot share of every type."""
    worst = 0.0
    for a, b in zip(s, t):
        for x, y in zip(a.shares, b.shares):
            worst = max(worst, abs(x - y))
    return worst


def admissible_ballots(electorate: Electorate) -> tuple[tuple[Ballot, ...], ...]:
    """Image of each type's strategy over the whole state space, in first
    occurrence order."""
    per_type = []
    states = all_states(electorate)
    for t in electorate.types:
        seen: list[Ballot] = []
        for s in states:
            b = ballot_for(t.strategy, t.preference, s)
            if b not in seen:
                seen.append(b)
        per_type.append(tuple(seen))
    return tuple(per_type)


def _ballot_table(t, electorate: Electorate) -> dict:
    """(winner, runner-up) -> the strategy ballot; simple strategies make
    this a complete lookup table."""
    return {
        (s.winner, s.runner_up): ballot_for(t.strategy, t.preference, s)
        for s in all_states(electorate)
    }


def embed_discrete(electorate: Electorate) -> ContinuousDynamics:
    """The continuous lift of the discrete dynamics: every state maps to
    the extreme state of the ballots the discrete strategies dictate."""
    admissible = admissible_ballots(electorate)

    def lift(t, ballots) -> GeneralizedStrategy:
        table = {
            key: SimplexPoint.unit(ballots, b) for key, b in _ballot_table(t, electorate).items()
        }

        def g(point: SimplexPoint, out: Outcome) -> SimplexPoint:
            return table[(out.winner, out.runner_up)]

        return g

    strategies = tuple(lift(t, b) for t, b in zip(electorate.types, admissible))
    return ContinuousDynamics(electorate, admissible, strategies)


class Fallback(Enum):
    """Behavior where some pairwise margin is below the threshold; the
    stability result allows anything there, so it is configurable."""

    KEEP = "keep"
    APPLY = "apply"
    HALF = "half"


def perturbed_dynamics(
    electorate: Electorate,
    p: float,
    margin: float,
    fallback: Fallback = Fallback.KEEP,
) -> ContinuousDynamics:
    """Dynamics where a fraction ``p`` of each type adjusts to its
    strategy ballot whenever all pairwise score margins reach ``margin``
    (a fraction of the total weight); elsewhere the fallback policy
    applies."""
    if not 0 < p <= 1:
        raise ValueError("p must lie in (0, 1]")
    if margin < 0:
        raise ValueError("margin must be non-negative")
    admissible = admissible_ballots(electorate)
    threshold = margin * electorate.total_weight
    margin_memo: dict = {}  # one-slot cache shared by the per-type strategies

    def margins_ok(out: Outcome) -> bool:
        key = id(out)
        if margin_memo.get("key") == key:
            return margin_memo["ok"]
        scores = out.tally.scores
        ok = all(
            abs(scores[i] - scores[j]) >= threshold
            for i in range(len(scores))
            for j in range(i + 1, len(scores))
        )
        margin_memo["key"] = key
        margin_memo["ok"] = ok
        return ok

    def make(t, ballots) -> GeneralizedStrategy:
        table = _ballot_table(t, electorate)

        def g(point: SimplexPoint, out: Outcome) -> SimplexPoint:
            target = table[(out.winner, out.runner_up)]
            if margins_ok(out):
                return point.blend_toward(target, p)
            if fallback is Fallback.KEEP:
                return point
            if fallback is Fallback.APPLY:
                return point.blend_toward(target, p)
            return point.blend_toward(target, p / 2)

        return g

    return ContinuousDynamics(
        electorate, admissible, tuple(make(t, b) for t, b in zip(electorate.types, admissible))
    )


@dataclass(frozen=True)
class TwoShareView:
    """Coordinates (x, z) for electorates where exactly two types are
    undecided between two admissible ballots each; x and z track the
    share of the named types on the given ballots."""

    dynamics: ContinuousDynamics
    type_x: str
    ballot_x: Ballot
    type_z: str
    ballot_z: Ballot

    def _index(self, name: str) -> int:
        for i, t in enumerate(self.dynamics.electorate.types):
            if t.name == name:
                return i
        raise ValueError(f"unknown voter type {name!r}")

    @cached_property
    def _layout(self):
        """Per type: ("x"|"z", ballots) for the tracked types, or the
        constant unit point for single-ballot types."""
        rows = []
        for t, ballots in zip(self.dynamics.electorate.types, self.dynamics.admissible):
            if t.name == self.type_x:
                tracked = frozenset(self.ballot_x)
                coord = "x"
            elif t.name == self.type_z:
                tracked = frozenset(self.ballot_z)
                coord = "z"
            else:
                if len(ballots) != 1:
                    raise ValueError(f"type {t.name!r} is not pinned to a single ballot")
                rows.append(SimplexPoint.unit(ballots, ballots[0]))
                continue
            if len(ballots) != 2 or tracked not in ballots:
                raise ValueError(f"type {t.name!r} must have exactly the tracked and one other ballot")
            rows.append((coord, ballots, tuple(b == tracked for b in ballots)))
        return tuple(rows)

    def state(self, x: float, z: float) -> ContinuousState:
        points = []
        for row in self._layout:
            if isinstance(row, SimplexPoint):
                points.append(row)
                continue
            coord, ballots, mask = row
            val = x if coord == "x" else z
            points.append(SimplexPoint(ballots, tuple(val if m else 1.0 - val for m in mask)))
        return tuple(points)

    @cached_property
    def _coord_slots(self):
        ix, iz = self._index(self.type_x), self._index(self.type_z)
        jx = self.dynamics.admissible[ix].index(frozenset(self.ballot_x))
        jz = self.dynamics.admissible[iz].index(frozenset(self.ballot_z))
        return ix, jx, iz, jz

    def coords(self, state: ContinuousState) -> tuple[float, float]:
        ix, jx, iz, jz = self._coord_slots
        return (state[ix].shares[jx], state[iz].shares[jz])


@dataclass
class Orbit:
    steps: list[int]
    states: list
    winners: str


def iterate_orbit(
    source: SymbolicSource,
    start,
    n_steps: int,
    keep_every: int = 1,
    discard: int = 0,
) -> Orbit:
    """Iterate a map, recording every ``keep_every``-th state after an
    optional transient of ``discard`` steps."""
    if n_steps < 0:
        raise ValueError("n_steps must be non-negative")
    s = start
    for _ in range(discard):
        s = source.step(s)
    steps, states, winners = [], [], []
    for k in range(n_steps + 1):
        if k % keep_every == 0:
            steps.append(discard + k)
            states.append(s)
            winners.append(source.winner(s))
        if k < n_steps:
            s = source.step(s)
    return Orbit(steps, states, "".join(winners))


@dataclass(frozen=True)
class PeriodicOrbit:
    states: tuple
    winners: tuple[str, ...]

    @property
    def period(self) -> int:
        return len(self.states)


def find_periodic_orbit(
    dynamics: ContinuousDynamics,
    sampler: Callable[[np.random.Generator], ContinuousState],
    period: int,
    tol: float = 1e-9,
    seed: int = 0,
    attempts: int = 32,
    settle: int = 512,
) -> PeriodicOrbit | None:
    """Search for an attracting cycle of the given period: iterate from
    sampled starts, then accept a point whose period-fold image returns
    within ``tol`` and whose cycle states are pairwise distinct."""
    if period < 1:
        raise ValueError("period must be at least 1")
    rng = np.random.default_rng(seed)
    for _ in range(attempts):
        s = sampler(rng)
        for _ in range(settle):
            s = dynamics.step(s)
        cycle = [s]
        for _ in range(period):
            cycle.append(dynamics.step(cycle[-1]))
        if sup_distance(cycle[0], cycle[period]) >= tol:
            continue
        distinct = all(
            sup_distance(cycle[i], cycle[j]) > tol
            for i in range(period)
            for j in range(i + 1, period)
        )
        if not distinct:
            continue
        states = tuple(cycle[:period])
        return PeriodicOrbit(states, tuple(dynamics.winner(s) for s in states))
    return None
