"""Deterministic list protocol with rotating task segments.

All stations maintain two common lists: operational station ids and
outstanding tasks.  Time is divided into three-round phases: everybody
performs one task, one scheduled station broadcasts, and everybody applies
the outcome.  Silence at a station's slot proves it crashed (a scheduled
station always broadcasts), so it is struck from the station list; a lone
broadcast confirms the broadcaster's performed tasks, which are struck from
the task list.  An epoch ends when the broadcast schedule has cycled through
the current station list; segments are then redealt.

At the start of each epoch the station in position q of the list is dealt a
cyclic segment of q + 1 outstanding tasks starting at offset q(q + 1) / 2,
so consecutive segments tile the task list and the position-q station
finishes its segment by the time its broadcast slot arrives.
"""

from __future__ import annotations

from ..channel import CD, NOCD
from .base import Automaton


class ListState:
    """Common lists plus per-station performed-but-unconfirmed sets."""

    def __init__(self, stations, tasks):
        self.stations: list[int] = list(stations)
        self.tasks: list[int] = list(tasks)
        self.done: dict[int, set[int]] = {v: set() for v in self.stations}
        self.confirmed: set[int] = set()

    def remove_confirmed(self, newly: set[int]):
        self.confirmed |= newly
        self.tasks = [u for u in self.tasks if u not in self.confirmed]


def assign_segments(order, snapshot) -> dict[int, list[int]]:
    """Deal epoch segments: position q gets q + 1 tasks at offset q(q+1)/2."""
    length = len(snapshot)
    segs = {}
    for q, v in enumerate(order):
        if length == 0:
            segs[v] = []
            continue
        start = (q * (q + 1) // 2) % length
        segs[v] = [snapshot[(start + i) % length] for i in range(min(q + 1, length))]
    return segs


def run_phases(auto: Automaton, st: ListState, max_phases: int | None = None):
    """Drive epochs of three-round phases over the shared state.

    Runs until the task list empties (then stops every station and reports
    halted=True) or until ``max_phases`` phases have completed.  Returns
    (phases_run, lone_broadcasts, halted).
    """
    phases = 0
    singles = 0
    while st.tasks and (max_phases is None or phases < max_phases):
        if not st.stations:
            return phases, singles, False
        order = list(st.stations)
        snapshot = list(st.tasks)
        segs = assign_segments(order, snapshot)
        # per-station cursor into its segment; done/confirmed only grow, so
        # the cursor never needs to move backwards within an epoch
        cursor = {v: 0 for v in order}
        idx = 0
        while idx < len(st.stations):
            phases += 1
            # perform round: first segment task not yet done or confirmed
            overrides = {}
            for v in st.stations:
                seg = segs[v]
                c = cursor[v]
                while c < len(seg) and (seg[c] in st.confirmed or seg[c] in st.done[v]):
                    c += 1
                cursor[v] = c
                if c < len(seg):
                    overrides[v] = ("perform", seg[c])
                    st.done[v].add(seg[c])
            yield (None, overrides)
            # broadcast round: the scheduled station announces itself
            w = st.stations[idx]
            fb = yield (None, {w: ("transmit", w)})
            # update round: everyone listens, applies, and may stop
            yield (None, {})
            if fb[0] == "single":
                singles += 1
                st.remove_confirmed(set(st.done[fb[1]]))
                if not st.tasks:
                    auto.pending_halts = "all"
                    return phases, singles, True
                idx += 1
            else:
                st.stations.pop(idx)
            if max_phases is not None and phases >= max_phases:
                return phases, singles, False
    return phases, singles, not st.tasks


class TwoLists(Automaton):
    name = "two_lists"
    # lone broadcasts carry a payload, which a beeping channel cannot deliver
    allowed_channels = (NOCD, CD)

    def run(self):
        self.state = ListState(range(1, self.p + 1), range(1, self.t + 1))
        yield from run_phases(self, self.state)
