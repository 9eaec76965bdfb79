"""Group protocol confirming work by internal leader election.

Groups work on rotating task ranges as in the other group protocols, but a
group's slot on a channel without collision detection is a randomized
election window instead of a single broadcast: members transmit with
probability 2^j / k for j = 0, 1, ... (k is the nominal group size), and a
lone broadcast both elects a momentary leader and confirms the group's
performed tasks.  Up to 4 log2(p) such sweeps are tried; if all stay silent
the group is presumed crashed.  The presumption can be wrong (live members
may have collided every time), so instead of striking the group and moving
on, the whole algorithm switches to a closing procedure: every remaining
station performs every outstanding task and stops.  That keeps the protocol
reliable no matter how unlucky the elections were.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..channel import CD, NOCD
from .base import Automaton


class Gilet(Automaton):
    name = "gilet"
    allowed_channels = (NOCD, CD)

    def run(self):
        p, t = self.p, self.t
        g = min(math.isqrt(t - 1) + 1, p)
        k = Fraction(p, g)
        windows = max(1, 4 * max(1, (p - 1).bit_length()))
        sweep = max(1, (math.ceil(k) - 1).bit_length())  # rounds per sweep
        groups = [[s for s in range(1, p + 1) if (s - 1) % g == j] for j in range(g)]
        done = [set() for _ in groups]
        tasks = list(range(1, t + 1))
        confirmed: set[int] = set()

        while True:
            snapshot = list(tasks)
            length = len(snapshot)
            starts = [(q * (q + 1) // 2) % length for q in range(len(groups))]
            for idx in range(len(groups)):
                # perform round: each group takes the next task of its range
                overrides = {}
                for q, members in enumerate(groups):
                    for off in range(length):
                        u = snapshot[(starts[q] + off) % length]
                        if u not in confirmed and u not in done[q]:
                            for m in members:
                                overrides[m] = ("perform", u)
                            done[q].add(u)
                            break
                yield (None, overrides)
                # confirmation slot: election sweeps by the scheduled group
                heard = False
                for _ in range(windows):
                    for j in range(sweep):
                        prob = min(Fraction(1), Fraction(2 ** j) / k)
                        flips = self.coins.flips(self.rnd, prob, p)
                        fb = yield (None, {m: ("transmit", m)
                                           for m in groups[idx] if flips[m - 1]})
                        if fb[0] == "single":
                            heard = True
                            break
                    if heard:
                        break
                if heard:
                    confirmed |= done[idx]
                    tasks = [u for u in tasks if u not in confirmed]
                    if not tasks:
                        self.pending_halts = "all"
                        return
                else:
                    # group presumed dead: close out reliably and stop
                    for u in list(tasks):
                        yield (("perform", u), {})
                    self.pending_halts = "all"
                    return
            # next epoch over the shrunken task list; groups stay fixed
