"""Group protocol with a leader echo for channels without collision detection.

Without collision detection a group broadcast is useless on its own: many
transmitters sound exactly like silence.  The fix is a two-broadcast echo.
In every phase the scheduled group transmits together with the current
leader, then the leader transmits alone.  If the echo round is silent the
leader crashed between the two rounds and a new one is elected; otherwise
the leader is alive, so a silent first round must have been a collision
(the group is alive and its work is confirmed), while a legible first round
means only the leader spoke.  The latter confirms progress when the
scheduled group is the leader's own (the leader performed those tasks with
it), and otherwise proves the whole group crashed.

Phases have four rounds: perform, joint broadcast, leader echo, update.
After each full rotation of the schedule, stations are redealt into
min(ceil(sqrt(outstanding)), survivors) groups.

Leader election is randomized but cheap in total: a global trial counter
and a global round-robin pointer persist across elections, so over the
whole execution at most about 2p trial rounds are silent.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..channel import LEADER_LOST, LEADER_ONLY, NOCD, classify_crash_echo
from .base import Automaton
from .two_lists import assign_segments


class GrubTech(Automaton):
    name = "grubtech"
    allowed_channels = (NOCD,)

    def __init__(self, p, t, channel_kind, seed=0, strict_removal=False):
        self.strict_removal = strict_removal
        super().__init__(p, t, channel_kind, seed)

    def _elect(self, believed_dead):
        """Pick a new leader; returns its id (None if everybody seems dead).

        Stage one: stations believed alive transmit with probability 1/p
        until a lone broadcast, spending the persistent global trial budget.
        Stage two: deterministic round robin over the persistent ring; a
        silent slot proves that candidate dead.
        """
        alive = [s for s in range(1, self.p + 1) if s not in believed_dead]
        while self._elect_trials < self.p:
            flips = self.coins.flips(self.rnd, Fraction(1, self.p), self.p)
            fb = yield (None, {s: ("transmit", s) for s in alive if flips[s - 1]})
            if fb[0] == "single":
                return fb[1]
            self._elect_trials += 1
        while self._elect_ring:
            cand = self._elect_ring[0]
            if cand in believed_dead:
                self._elect_ring.pop(0)
                continue
            fb = yield (None, {cand: ("transmit", cand)})
            if fb[0] == "single":
                return cand
            believed_dead.add(cand)
            self._elect_ring.pop(0)
        return None

    def run(self):
        p, t = self.p, self.t
        self._elect_trials = 0
        self._elect_ring = list(range(1, p + 1))
        believed_dead: set[int] = set()
        tasks = list(range(1, t + 1))
        confirmed: set[int] = set()
        g = min(math.isqrt(t - 1) + 1, p)
        entries = [{"members": [s for s in range(1, p + 1) if (s - 1) % g == j],
                    "done": set()} for j in range(g)]

        self.leader = yield from self._elect(believed_dead)
        if self.leader is None:
            return

        while True:
            if not entries:
                # safety net: everyone left performs everything, then stops
                for u in list(tasks):
                    yield (("perform", u), {})
                self.pending_halts = "all"
                return
            snapshot = list(tasks)
            segs = assign_segments(range(len(entries)), snapshot)
            idx = 0
            while idx < len(entries):
                ent = entries[idx]
                # perform round
                overrides = {}
                for q, e in enumerate(entries):
                    for u in segs[q]:
                        if u not in confirmed and u not in e["done"]:
                            for m in e["members"]:
                                overrides[m] = ("perform", u)
                            e["done"].add(u)
                            break
                yield (None, overrides)
                # joint broadcast: scheduled group plus the leader
                joint = {m: ("transmit", m) for m in ent["members"]}
                joint[self.leader] = ("transmit", self.leader)
                first = yield (None, joint)
                # leader echo
                second = yield (None, {self.leader: ("transmit", self.leader)})
                # update round
                yield (None, {})
                home = self.leader in ent["members"]
                outcome = classify_crash_echo(first, second, home, self.strict_removal)
                if outcome == LEADER_LOST:
                    believed_dead.add(self.leader)
                    for e in entries:
                        if self.leader in e["members"]:
                            e["members"].remove(self.leader)
                    self.leader = yield from self._elect(believed_dead)
                    if self.leader is None:
                        return
                    continue  # retry the same slot under the new leader
                if outcome == LEADER_ONLY:
                    believed_dead.update(ent["members"])
                    entries.pop(idx)
                    continue
                confirmed |= ent["done"]
                tasks = [u for u in tasks if u not in confirmed]
                if not tasks:
                    self.pending_halts = "all"
                    return
                idx += 1
            # full rotation done: redeal groups around the survivors
            alive = sorted(m for e in entries for m in e["members"])
            if not alive:
                entries = []
                continue
            g = min(math.isqrt(len(tasks) - 1) + 1, len(alive))
            entries = [{"members": alive[j::g], "done": set()} for j in range(g)]
