"""Randomized list protocol with crash-rate estimation.

The deterministic list protocol wastes broadcast slots on crashed stations.
This variant keeps an estimate p / 2^i of how many stations survive and
spends cheap randomized probes to maintain it.  A probing stage
(one-round trials where stations transmit with probability tuned to the
estimate) both tests the estimate and moves confirmed-alive stations to the
front of the station list; the list protocol then runs in blocks of
ceil(sqrt(t)) phases as long as at least a quarter of the slots in a block
are lone broadcasts.  When the survivor estimate drops to sqrt(t) the plain
list protocol finishes the job.

Two degenerate regimes are dispatched up front: with p^2 <= t the list
protocol is already optimal, and for tiny t relative to log p every station
simply performs all tasks and one lone broadcast confirms global completion.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..channel import CD, NOCD
from .base import Automaton
from .two_lists import ListState, run_phases


def ceil_sqrt(t: int) -> int:
    return math.isqrt(t - 1) + 1 if t > 0 else 0


def mix_and_test(auto: Automaton, st: ListState, i: int):
    """Probe whether about p / 2^i stations survive.

    Runs ceil(sqrt(t)) * ceil(log2 p) one-round trials.  A trial asks every
    station believed operational to transmit with probability 1/coin, where
    coin starts at p / 2^i and drops by one for every lone broadcast heard;
    each lone broadcaster is moved to the front of the station list.
    Returns True when at least ceil(sqrt(t)) trials were lone broadcasts.
    """
    sqt = ceil_sqrt(auto.t)
    lgp = max(1, (auto.p - 1).bit_length())
    coin = Fraction(auto.p, 2 ** i)
    promoted: set[int] = set()
    singles = 0
    for _ in range(sqt * lgp):
        prob = 1 if coin <= 1 else 1 / coin
        flips = auto.coins.flips(auto.rnd, prob, auto.p)
        fb = yield (None, {s: ("transmit", s) for s in st.stations
                           if s not in promoted and flips[s - 1]})
        if fb[0] == "single":
            singles += 1
            w = fb[1]
            if w in st.stations:
                st.stations.remove(w)
                st.stations.insert(0, w)
            promoted.add(w)
            coin -= 1
    return singles >= sqt


def confirm_work(auto: Automaton):
    """Randomized termination agreement: cycle transmission probabilities
    2^j / p until a lone broadcast is heard, then everybody stops."""
    lgp = max(1, (auto.p - 1).bit_length())
    r = 0
    while True:
        prob = min(Fraction(1), Fraction(2 ** (r % (lgp + 1)), auto.p))
        flips = auto.coins.flips(auto.rnd, prob, auto.p)
        fb = yield (None, {s: ("transmit", s) for s in range(1, auto.p + 1)
                           if flips[s - 1]})
        if fb[0] == "single":
            auto.pending_halts = "all"
            return
        r += 1


class Robal(Automaton):
    name = "robal"
    allowed_channels = (NOCD, CD)

    def run(self):
        p, t = self.p, self.t
        st = ListState(range(1, p + 1), range(1, t + 1))
        self.state = st
        sqt = ceil_sqrt(t)
        lgp = max(1, (p - 1).bit_length())
        if p * p <= t:
            yield from run_phases(self, st)
            return
        if math.log2(p) > math.exp(math.sqrt(t) / 32):
            # tiny-t regime: everyone does everything, then agrees to stop
            for u in range(1, t + 1):
                yield (("perform", u), {})
            yield from confirm_work(self)
            return
        i = 0
        while True:
            if p * p <= t * 4 ** i or i >= lgp:
                yield from run_phases(self, st)
                return
            estimate_holds = yield from mix_and_test(self, st, i)
            if estimate_holds:
                while st.tasks and st.stations:
                    _, singles, halted = yield from run_phases(self, st, max_phases=sqt)
                    if halted:
                        return
                    if 4 * singles < sqt:
                        break
            i += 1
