"""Electorate text format, serialization, and DOT export of poll graphs.

File grammar (one statement per line, ``#`` starts a comment line)::

    candidates: a b c
    type Z: a>b>c 101 MLR
    type W: c>a=b 104

``>`` separates tie-groups from most to least preferred, ``=`` joins
tied candidates, the number is the voter weight, and the optional
strategy is LR or MLR (default MLR).
"""

from __future__ import annotations

import math

from .dynamics import DynamicsReport, PollingGraph, PollState
from .majority import CondorcetReport
from .model import CandidateSet, Electorate, Preference, VoterType
from .strategies import Strategy


class ParseError(ValueError):
    def __init__(self, line: int, column: int, message: str):
        self.line = line
        self.column = column
        self.message = message
        super().__init__(f"line {line}, column {column}: {message}")


def _fail(lineno: int, line: str, token: str, message: str) -> ParseError:
    col = line.find(token) + 1 if token and token in line else 1
    return ParseError(lineno, col, message)


def parse_electorate(text: str) -> Electorate:
    candidates: CandidateSet | None = None
    types: list[VoterType] = []
    names_seen: set[str] = set()

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("candidates:"):
            if candidates is not None:
                raise _fail(lineno, raw, "candidates:", "duplicate candidates declaration")
            names = line[len("candidates:"):].split()
            if not names:
                raise _fail(lineno, raw, "candidates:", "empty candidates declaration")
            if len(set(names)) != len(names):
                raise _fail(lineno, raw, names[0], "duplicate candidate in declaration")
            candidates = CandidateSet(tuple(names))
            continue
        if line.startswith("type"):
            if candidates is None:
                raise _fail(lineno, raw, "type", "candidates must be declared before types")
            head, _, rest = line.partition(":")
            if not rest:
                raise _fail(lineno, raw, head, "missing ':' after type name")
            tname = head[len("type"):].strip()
            if not tname:
                raise _fail(lineno, raw, "type", "missing type name")
            if tname in names_seen:
                raise _fail(lineno, raw, tname, f"duplicate type {tname!r}")
            fields = rest.split()
            if len(fields) < 2:
                raise _fail(lineno, raw, rest.strip() or ":", "incomplete type declaration (need preference and weight)")
            if len(fields) > 3:
                raise _fail(lineno, raw, fields[3], "too many fields in type declaration")
            pref_tok, weight_tok = fields[0], fields[1]
            strat_tok = fields[2] if len(fields) == 3 else "MLR"

            groups: list[list[str]] = []
            for group_tok in pref_tok.split(">"):
                names = group_tok.split("=") if group_tok else [""]
                if any(not n for n in names):
                    raise _fail(lineno, raw, pref_tok, "malformed preference (empty group or name)")
                groups.append(names)
            flat = [n for g in groups for n in g]
            for n in flat:
                if n not in candidates:
                    raise _fail(lineno, raw, n, f"unknown candidate {n!r}")
            if len(set(flat)) != len(flat):
                raise _fail(lineno, raw, pref_tok, "candidate repeated in preference")
            if len(flat) != len(candidates):
                missing = [n for n in candidates if n not in flat]
                raise _fail(lineno, raw, pref_tok, f"incomplete preference (missing {', '.join(missing)})")

            try:
                weight = float(weight_tok)
            except ValueError:
                raise _fail(lineno, raw, weight_tok, f"malformed number {weight_tok!r}") from None
            if not math.isfinite(weight) or weight < 0:
                raise _fail(lineno, raw, weight_tok, "weight must be a finite non-negative number")

            if strat_tok == "LR":
                strategy = Strategy.LEADER_RULE
            elif strat_tok == "MLR":
                strategy = Strategy.MODIFIED_LEADER_RULE
            else:
                raise _fail(lineno, raw, strat_tok, f"unknown strategy {strat_tok!r} (expected LR or MLR)")

            names_seen.add(tname)
            types.append(VoterType(tname, Preference.from_groups(candidates, groups), weight, strategy))
            continue
        raise _fail(lineno, raw, line.split()[0], "unrecognized line")

    if candidates is None:
        raise ParseError(1, 1, "no candidates declaration")
    if not types:
        raise ParseError(1, 1, "no voter types declared")
    return Electorate(candidates, tuple(types))


def _weight_str(w: float) -> str:
    return str(int(w)) if w == int(w) else repr(w)


def serialize_electorate(electorate: Electorate) -> str:
    lines = ["candidates: " + " ".join(electorate.candidates.names)]
    for t in electorate.types:
        pref = ">".join(
            "=".join(sorted(g, key=electorate.candidates.index)) for g in t.preference.groups
        )
        lines.append(f"type {t.name}: {pref} {_weight_str(t.weight)} {t.strategy.value}")
    return "\n".join(lines) + "\n"


def preference_notation(pref: Preference) -> str:
    """Compact a(bc)d notation for single-character names, arrow notation
    otherwise."""
    order = pref.candidates.index
    if all(len(n) == 1 for n in pref.candidates):
        parts = []
        for g in pref.groups:
            names = "".join(sorted(g, key=order))
            parts.append(names if len(g) == 1 else f"({names})")
        return "".join(parts)
    return " > ".join("=".join(sorted(g, key=order)) for g in pref.groups)


def _transient_heights(graph: PollingGraph) -> dict:
    """Longest incoming path length per transient state: the state cannot
    occur after height+1 poll iterations."""
    on_cycle = {s for cyc in graph.cycles for s in cyc}
    preds: dict[PollState, list[PollState]] = {s: [] for s in graph.states}
    for s, t in graph.successor.items():
        preds[t].append(s)
    heights: dict[PollState, int] = {}

    def height(s: PollState) -> int:
        if s in heights:
            return heights[s]
        stack = [s]
        while stack:
            top = stack[-1]
            pending = [p for p in preds[top] if p not in heights and p not in on_cycle]
            if pending:
                stack.extend(pending)
                continue
            ps = [heights[p] for p in preds[top] if p not in on_cycle]
            heights[top] = 1 + max(ps) if ps else 0
            stack.pop()
        return heights[s]

    return {s: height(s) for s in graph.states if s not in on_cycle}


def export_dot(graph: PollingGraph, report: DynamicsReport | None = None) -> str:
    """DOT rendering of a polling graph.

    One node per state labeled winner+runner-up; self-loops on fixed
    points are omitted.  With a classification report, recurrent states
    electing the Condorcet winner are light green, other states electing
    it are green, bad periodic states are orange, bad equilibria are red,
    and transient states that stop being reachable after some iteration
    are grey (annotated with that iteration count).
    """
    lines = ["digraph polling_dynamics {", "  rankdir=LR;", '  node [style=filled, fillcolor=white];']
    on_cycle = {s for cyc in graph.cycles for s in cyc}
    cw = report.condorcet_winner if report is not None else None
    heights = _transient_heights(graph) if report is not None else {}

    for s in graph.states:
        attrs = []
        if report is not None:
            if s in on_cycle:
                if cw is not None and s.winner == cw:
                    attrs.append("fillcolor=lightgreen")
                elif graph.is_fixed_point(s):
                    attrs.append("fillcolor=red")
                else:
                    attrs.append("fillcolor=orange")
            else:
                gone_after = heights[s] + 1
                if cw is not None and s.winner == cw:
                    attrs.append("fillcolor=green")
                else:
                    attrs.append("fillcolor=grey")
                attrs.append(f'tooltip="cannot occur after {gone_after} iterations"')
        attr_txt = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f'  "{s.label}"{attr_txt};')

    for s in graph.states:
        t = graph.successor[s]
        if t != s:
            lines.append(f'  "{s.label}" -> "{t.label}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_analysis(report: CondorcetReport, dynamics: DynamicsReport, graph: PollingGraph) -> str:
    """Human-readable analysis summary used by the command line."""
    total = len(graph.states)
    out = []
    out.append(f"Condorcet winner: {report.condorcet_winner or 'none'}")
    out.append(f"Condorcet loser: {report.condorcet_loser or 'none'}")
    out.append(f"consensual loser: {report.consensual_loser or 'none'}")
    order = "".join(report.condorcet_order) if report.condorcet_order else "none"
    out.append(f"Condorcet order: {order}")
    for cyc in dynamics.cycles:
        states = "{" + ", ".join(s.label for s in cyc.states) + "}"
        quality = "bad " if cyc.bad else ("good " if cyc.bad is not None else "")
        kind = "fixed point" if cyc.period == 1 else f"{cyc.period}-cycle"
        winners = ",".join(dict.fromkeys(cyc.winners))
        out.append(f"{quality}{kind} {states}: winners {winners}; basin {cyc.basin_size}/{total}")
    if dynamics.is_bad is None:
        out.append("bad dynamics: undefined (no Condorcet winner)")
    else:
        out.append(f"bad dynamics: {'yes' if dynamics.is_bad else 'no'}")
    return "\n".join(out) + "\n"
