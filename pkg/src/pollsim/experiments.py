"""Monte Carlo experiment harness: frequency of Condorcet winners and of
bad cycles/equilibria per culture condition.

Each trial is seeded independently from (seed, trial_index), and results
merge by commutative addition, so counts are identical for any worker
count or scheduling order.
"""

from __future__ import annotations

import io
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import sqrt

from .cultures import CultureKind, CultureSpec, sample_electorate
from .dynamics import build_polling_graph, classify
from .majority import condorcet_analysis, duel_matrix

Z95 = 1.959964


def wilson_interval(successes: int, n: int, z: float = Z95) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if n < 1:
        raise ValueError("need at least one observation")
    if not 0 <= successes <= n:
        raise ValueError("successes must lie in [0, n]")
    phat = successes / n
    z2 = z * z
    denom = 1 + z2 / n
    center = (phat + z2 / (2 * n)) / denom
    half = (z / denom) * sqrt(phat * (1 - phat) / n + z2 / (4 * n * n))
    return (max(0.0, center - half), min(1.0, center + half))


@dataclass(frozen=True)
class ConditionResult:
    spec: CultureSpec
    n_trials: int
    n_condorcet: int
    n_bad: int
    runtime_s: float

    @property
    def cw_rate(self) -> float:
        return self.n_condorcet / self.n_trials

    @property
    def bad_rate(self) -> float | None:
        if self.n_condorcet == 0:
            return None
        return self.n_bad / self.n_condorcet

    def cw_interval(self, z: float = Z95) -> tuple[float, float]:
        return wilson_interval(self.n_condorcet, self.n_trials, z)

    def bad_interval(self, z: float = Z95) -> tuple[float, float] | None:
        if self.n_condorcet == 0:
            return None
        return wilson_interval(self.n_bad, self.n_condorcet, z)


def trial_outcome(spec: CultureSpec, trial_index: int) -> tuple[bool, bool]:
    """(condorcet winner exists, dynamics is bad) for one sampled electorate."""
    electorate = sample_electorate(spec, trial_index)
    duel = duel_matrix(electorate)
    report = condorcet_analysis(electorate, duel=duel)
    if report.condorcet_winner is None:
        return False, False
    graph = build_polling_graph(electorate, report=report, duel=duel)
    dyn = classify(graph, report)
    return True, bool(dyn.is_bad)


def _count_range(args: tuple[CultureSpec, int, int]) -> tuple[int, int]:
    spec, start, stop = args
    n_cw = n_bad = 0
    for i in range(start, stop):
        has_cw, bad = trial_outcome(spec, i)
        n_cw += has_cw
        n_bad += bad
    return n_cw, n_bad


def run_condition(spec: CultureSpec, n_trials: int, n_jobs: int = 1) -> ConditionResult:
    if n_trials < 1:
        raise ValueError("need at least one trial")
    t0 = time.perf_counter()
    if n_jobs <= 1:
        n_cw, n_bad = _count_range((spec, 0, n_trials))
    else:
        chunk = max(64, n_trials // (4 * n_jobs))
        tasks = [(spec, lo, min(lo + chunk, n_trials)) for lo in range(0, n_trials, chunk)]
        n_cw = n_bad = 0
        with ProcessPoolExecutor(max_workers=n_jobs) as pool:
            for c, b in pool.map(_count_range, tasks):
                n_cw += c
                n_bad += b
    return ConditionResult(spec, n_trials, n_cw, n_bad, time.perf_counter() - t0)


def run_table(specs: list[CultureSpec], n_trials: int, n_jobs: int = 1) -> list[ConditionResult]:
    return [run_condition(spec, n_trials, n_jobs) for spec in specs]


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def table_csv(results: list[ConditionResult]) -> str:
    """Deterministic CSV: byte-identical for identical counts regardless
    of worker count or run (runtimes are deliberately not included)."""
    buf = io.StringIO()
    buf.write(
        "culture,d,strategy,n_candidates,n_types,n_trials,"
        "cw_rate,cw_low,cw_high,bad_rate,bad_low,bad_high,seed\n"
    )
    for r in results:
        spec = r.spec
        d = "" if spec.kind is CultureKind.IMPARTIAL else str(spec.dimension)
        cw_low, cw_high = r.cw_interval()
        if r.n_condorcet > 0:
            bad_low, bad_high = r.bad_interval()
            bad_cells = [_fmt(r.bad_rate), _fmt(bad_low), _fmt(bad_high)]
        else:
            bad_cells = ["", "", ""]
        row = [
            spec.kind.value,
            d,
            spec.strategy.value,
            str(spec.n_candidates),
            str(spec.n_types),
            str(r.n_trials),
            _fmt(r.cw_rate),
            _fmt(cw_low),
            _fmt(cw_high),
            *bad_cells,
            str(spec.seed),
        ]
        buf.write(",".join(row) + "\n")
    return buf.getvalue()
