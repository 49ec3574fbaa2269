"""Two electorates where synchronized poll adjustments go wrong.

The first has four candidates, tie-free preferences, everyone on the
leader rule, and a clear Condorcet winner (a) -- yet most expected
outcomes spiral into a three-poll cycle that never elects a.  The second
has three candidates and tied preferences: besides a Condorcet winner it
has a candidate ranked last by two thirds of the electorate, and half of
its poll states feed a 2-cycle that elects that candidate on every other
poll.

Writes DOT renderings next to this script (render with `dot -Tsvg`).
"""

from pathlib import Path

from pollsim import build_polling_graph, classify, condorcet_analysis, export_dot
from pollsim.electorate_io import format_analysis, preference_notation
from pollsim.presets import consensual_loser_electorate, lr_cycle_electorate

OUT = Path(__file__).parent / "out"


def show(title, electorate, dot_name):
    print("=" * 60)
    print(title)
    print("=" * 60)
    for t in electorate.types:
        print(f"  {t.name}: {preference_notation(t.preference):10s} weight {t.weight:g} ({t.strategy.value})")
    report = condorcet_analysis(electorate)
    graph = build_polling_graph(electorate)
    dynamics = classify(graph, report)
    print()
    print(format_analysis(report, dynamics, graph))
    print("transition table:")
    for s in graph.states:
        mark = " (fixed point)" if graph.is_fixed_point(s) else ""
        print(f"  {s.label} -> {graph.successor[s].label}{mark}")
    OUT.mkdir(exist_ok=True)
    path = OUT / dot_name
    path.write_text(export_dot(graph, dynamics))
    print(f"\nDOT written to {path}\n")


if __name__ == "__main__":
    show("Leader rule, 4 candidates: an attracting 3-cycle shuts out the Condorcet winner",
         lr_cycle_electorate(), "lr_cycle.dot")
    show("Modified leader rule, 3 candidates: a consensual loser wins on even-numbered polls",
         consensual_loser_electorate(), "consensual_loser.dot")
    print("Takeaway: the parity of the number of polls can decide the election.")
