"""Discrete poll-response dynamics over (winner, runner-up) states.

Both implemented strategies are simple (they read only the expected
winner and runner-up), so the dynamics factors through the n(n-1)
ordered pairs.  The closed form used by the graph builder: at state
(w, r) every type approves the candidates it strictly prefers to w,
plus w itself when preferred to r, hence

    score(c)  =  D[c, w]              for c != w
    score(w)  =  D[w, r]

with D the pairwise strict-preference weight matrix of `majority`.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .majority import CondorcetReport, condorcet_analysis, duel_matrix
from .model import Candidate, Electorate, Outcome, Tally, outcome_from_tally, tally
from .strategies import Strategy, ballot_for


@dataclass(frozen=True, order=True)
class PollState:
    """Expected winner and runner-up."""

    winner: Candidate
    runner_up: Candidate

    def __post_init__(self) -> None:
        if self.winner == self.runner_up:
            raise ValueError("winner and runner-up must differ")

    @property
    def label(self) -> str:
        if len(self.winner) == 1 and len(self.runner_up) == 1:
            return self.winner + self.runner_up
        return f"{self.winner}>{self.runner_up}"


def all_states(electorate: Electorate) -> list[PollState]:
    names = electorate.candidates.names
    return [PollState(w, r) for w in names for r in names if w != r]


def polling_step(electorate: Electorate, state: PollState) -> PollState:
    """One synchronized poll adjustment, computed through explicit ballots."""
    assignment = {t.name: ballot_for(t.strategy, t.preference, state) for t in electorate.types}
    out = outcome_from_tally(tally(electorate, assignment))
    return PollState(out.winner, out.runner_up)


@dataclass
class PollingGraph:
    """Functional graph of the poll dynamics with its cycle decomposition.

    ``basin[k]`` is the set of states that eventually reach ``cycles[k]``
    (the cycle's own states included); the full score vector observed
    from each state is kept and exposed through ``tally_at``.
    """

    electorate: Electorate
    states: tuple[PollState, ...]
    successor: dict
    score_array: np.ndarray
    cycles: list
    basin: dict
    cycle_index: dict
    condorcet_winner: Candidate | None

    def is_fixed_point(self, state: PollState) -> bool:
        return self.successor[state] == state

    def cycle_of(self, state: PollState) -> int:
        return self.cycle_index[state]

    def tally_at(self, state: PollState) -> Tally:
        """Scores of the election triggered by expecting ``state``."""
        i = self.electorate.candidates.index(state.winner)
        j = self.electorate.candidates.index(state.runner_up)
        return Tally(self.electorate.candidates, tuple(float(x) for x in self.score_array[i, j]))


def _successors_and_scores(electorate: Electorate, duel: np.ndarray | None = None):
    """Vectorized transition table: returns (w1, w2, score_array) where
    score_array[w, r] is the tally seen from state (w, r)."""
    d = duel_matrix(electorate) if duel is None else duel
    n = d.shape[0]
    scores = np.repeat(d.T[:, None, :], n, axis=1)
    idx = np.arange(n)
    scores[idx[:, None], idx[None, :], idx[:, None]] += d
    w1 = scores.argmax(axis=2)  # argmax takes the first maximum: the tie-break order
    masked = scores.copy()
    masked[idx[:, None], idx[None, :], w1] = -np.inf
    w2 = masked.argmax(axis=2)
    return w1, w2, scores


def build_polling_graph(
    electorate: Electorate,
    report: CondorcetReport | None = None,
    duel: np.ndarray | None = None,
) -> PollingGraph:
    """Build the full transition graph; a precomputed Condorcet report
    and/or duel matrix can be supplied to avoid recomputation."""
    names = electorate.candidates.names
    n = len(names)
    if n < 2:
        raise ValueError("need at least two candidates")
    for t in electorate.types:
        if t.strategy is Strategy.LEADER_RULE and not t.preference.tie_free:
            raise ValueError(f"type {t.name!r} uses the leader rule but has a tied preference")

    if duel is None:
        duel = duel_matrix(electorate)
    w1, w2, score_arr = _successors_and_scores(electorate, duel)
    w1l, w2l = w1.tolist(), w2.tolist()
    states = tuple(all_states(electorate))
    successor: dict[PollState, PollState] = {}
    for s in states:
        i, j = electorate.candidates.index(s.winner), electorate.candidates.index(s.runner_up)
        successor[s] = PollState(names[w1l[i][j]], names[w2l[i][j]])

    # Functional-graph decomposition: walk each unresolved state until a
    # known state or the current path repeats.
    cycles: list[tuple[PollState, ...]] = []
    cycle_index: dict[PollState, int] = {}
    for s0 in states:
        if s0 in cycle_index:
            continue
        path: list[PollState] = []
        seen_at: dict[PollState, int] = {}
        s = s0
        while s not in cycle_index and s not in seen_at:
            seen_at[s] = len(path)
            path.append(s)
            s = successor[s]
        if s in seen_at:
            cyc = tuple(path[seen_at[s]:])
            cycles.append(cyc)
            target = len(cycles) - 1
        else:
            target = cycle_index[s]
        for t in path:
            cycle_index[t] = target

    basin = {k: frozenset(s for s in states if cycle_index[s] == k) for k in range(len(cycles))}
    if report is None:
        report = condorcet_analysis(electorate, duel=duel)
    return PollingGraph(
        electorate=electorate,
        states=states,
        successor=successor,
        score_array=score_arr,
        cycles=cycles,
        basin=basin,
        cycle_index=cycle_index,
        condorcet_winner=report.condorcet_winner,
    )


@dataclass(frozen=True)
class CycleReport:
    states: tuple[PollState, ...]
    winners: tuple[Candidate, ...]
    period: int
    trivial: bool
    bad: bool | None
    basin_size: int


@dataclass(frozen=True)
class DynamicsReport:
    """Per-cycle classification; ``is_bad`` is None when no Condorcet
    winner exists (badness is undefined in that case, not false)."""

    condorcet_winner: Candidate | None
    cycles: tuple[CycleReport, ...]
    runtime_s: float = 0.0

    @property
    def is_bad(self) -> bool | None:
        if self.condorcet_winner is None:
            return None
        return any(c.bad for c in self.cycles)


def classify(graph: PollingGraph, report: CondorcetReport) -> DynamicsReport:
    t0 = time.perf_counter()
    cw = report.condorcet_winner
    cycle_reports = []
    for k, cyc in enumerate(graph.cycles):
        winners = tuple(s.winner for s in cyc)
        trivial = len(set(winners)) == 1
        bad = None if cw is None else any(w != cw for w in winners)
        cycle_reports.append(
            CycleReport(
                states=cyc,
                winners=winners,
                period=len(cyc),
                trivial=trivial,
                bad=bad,
                basin_size=len(graph.basin[k]),
            )
        )
    return DynamicsReport(
        condorcet_winner=cw,
        cycles=tuple(cycle_reports),
        runtime_s=time.perf_counter() - t0,
    )
