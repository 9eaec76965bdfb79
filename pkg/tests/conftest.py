from __future__ import annotations

from macdoall.protocols.base import Automaton

# one-line verdicts from the acceptance suite, echoed after the test run
CRITERION_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERION_LINES:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for line in sorted(CRITERION_LINES):
            terminalreporter.write_line(line)


class Scripted(Automaton):
    """Fixed per-round intent script for exercising the engine directly.

    ``script`` lists (default, overrides) pairs, one per round.  ``halt_after``
    maps a round index to the stations stopping at the end of that round
    (or "all").  Stations not halted by the end of the script keep listening.
    """

    name = "scripted"

    def __init__(self, p, t, script, halt_after=None, channel_kind="nocd", seed=0):
        self.script = list(script)
        self.halt_after = dict(halt_after or {})
        super().__init__(p, t, channel_kind, seed)

    def run(self):
        for i, step in enumerate(self.script, start=1):
            yield step
            if i in self.halt_after:
                self.pending_halts = self.halt_after[i]


def listens(n, p, halt_last=True):
    halt = {n: "all"} if halt_last else {}
    return Scripted(p, 1, [(None, {})] * n, halt)
