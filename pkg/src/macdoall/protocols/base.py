"""Shared automaton machinery.

A protocol is written as one generator (:meth:`run`) that yields the joint
intent of all operational stations each round and receives the channel
feedback back at the yield.  Because every operational station hears the
same feedback, one shared state machine models all of them; the engine
separately tracks ground truth and simply ignores intents of crashed
stations.

A yielded intent is a pair ``(default, overrides)``: ``default`` is the
action of every operational station not mentioned in ``overrides`` (None
means listen).  Actions are ``("perform", task)``, ``("transmit", payload)``
and ``("listen",)``.

Stations decide to stop during the round in which they hear the decisive
feedback, and that round still counts as work.  The protocol signals this by
setting ``self.pending_halts`` (a set of ids, or "all") before its next
yield; the base class hands the set to the engine from :meth:`observe`.
"""

from __future__ import annotations

from typing import Iterator

from ..channel import CHANNEL_KINDS
from ..errors import ConfigInvalid, WrongChannel
from ..rng import DOMAIN_STATIONS, CoinSource

LISTEN = ("listen",)

Intents = tuple  # (default_action_or_None, dict[int, action])


class Automaton:
    name = "base"
    allowed_channels = CHANNEL_KINDS

    def __init__(self, p: int, t: int, channel_kind: str, seed: int = 0):
        if channel_kind not in CHANNEL_KINDS:
            raise ConfigInvalid(f"unknown channel kind {channel_kind!r}")
        if channel_kind not in self.allowed_channels:
            raise WrongChannel(f"{self.name} cannot run on a {channel_kind} channel")
        if p < 1 or t < 1:
            raise ConfigInvalid("need at least one station and one task")
        self.p = p
        self.t = t
        self.channel_kind = channel_kind
        self.seed = seed
        self.coins = CoinSource(seed, DOMAIN_STATIONS)
        self.rnd = 1  # round the next yielded intent applies to
        self.pending_halts: set[int] | str = set()
        self.leader: int | None = None
        self._gen = self.run()
        self._primed = False
        self._done = False
        self._next_intents: Intents | None = None

    def run(self) -> Iterator[Intents]:
        raise NotImplementedError

    def poll(self, round_index: int) -> Intents | None:
        if not self._primed:
            self._primed = True
            self.rnd = round_index
            try:
                self._next_intents = next(self._gen)
            except StopIteration:
                self._done = True
        return self._next_intents

    def observe(self, round_index: int, feedback: tuple) -> set[int] | str:
        """Feed back the round's channel outcome; returns who halts now."""
        self._next_intents = None
        if not self._done:
            self.rnd = round_index + 1
            try:
                self._next_intents = self._gen.send(feedback)
            except StopIteration:
                self._done = True
        halts = self.pending_halts
        self.pending_halts = set()
        return halts
