"""Group variant of the rotating-segment list protocol.

Stations are arranged into min(ceil(sqrt(t)), p) groups of near-equal size
and the whole group acts as one unit: all members perform the same task each
phase and all members broadcast together at the group's slot.  Any audible
signal (a collision, a lone broadcast, or a beep) proves some member
survived, which confirms everything the group performed; silence proves the
entire group crashed.  Distinguishing noise from silence is all the protocol
needs, so it runs identically on a collision-detection channel and on a
beeping channel, but not without collision detection.
"""

from __future__ import annotations

import math

from ..channel import BEEPING, CD, is_noisy
from .base import Automaton
from .two_lists import assign_segments


def initial_groups(p: int, t: int) -> list[list[int]]:
    g = min(math.isqrt(t - 1) + 1, p)  # ceil(sqrt(t)) capped at p
    return [[s for s in range(1, p + 1) if (s - 1) % g == j] for j in range(g)]


class GroupsTogether(Automaton):
    name = "groups_together"
    allowed_channels = (CD, BEEPING)

    def run(self):
        groups = initial_groups(self.p, self.t)
        tasks = list(range(1, self.t + 1))
        confirmed: set[int] = set()
        done = {j: set() for j in range(len(groups))}  # by initial group index
        gids = list(range(len(groups)))
        while tasks:
            if not gids:
                return
            order = list(gids)
            snapshot = list(tasks)
            segs = assign_segments(order, snapshot)
            idx = 0
            while idx < len(gids):
                # perform round: each surviving group takes its next task
                overrides = {}
                for j in gids:
                    for u in segs[j]:
                        if u not in confirmed and u not in done[j]:
                            for m in groups[j]:
                                overrides[m] = ("perform", u)
                            done[j].add(u)
                            break
                yield (None, overrides)
                # broadcast round: every member of the scheduled group
                j = gids[idx]
                fb = yield (None, {m: ("transmit", j) for m in groups[j]})
                # update round
                yield (None, {})
                if is_noisy(fb):
                    confirmed |= done[j]
                    tasks = [u for u in tasks if u not in confirmed]
                    if not tasks:
                        self.pending_halts = "all"
                        return
                    idx += 1
                else:
                    gids.pop(idx)
