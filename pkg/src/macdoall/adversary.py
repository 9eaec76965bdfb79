"""Crash adversaries: legality envelope plus pluggable attack strategies.

An :class:`AdversarySpec` fixes what the adversary is allowed to do: a crash
budget f, a decision delay in rounds, and a partial order over the
fault-prone stations that constrains the crash sequence.  A strategy decides
which of the currently legal candidates to actually crash.  The engine owns
enforcement; strategies may over-request and have illegal requests rejected.

Delay semantics: a strategy with delay 0 is consulted inside the round and
sees the round's intents before the channel resolves (strongly adaptive).  A
strategy with delay c >= 1 is consulted after each round s with history
through s, and its requests take effect at round s + c.  Requests are
irrevocable once submitted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import poset as poset_mod
from .errors import ConfigInvalid, UnknownStrategy
from .poset import Poset
from .rng import DOMAIN_ADVERSARY, CoinSource

STRONGLY_ADAPTIVE = "strongly_adaptive"
WEAKLY_ADAPTIVE = "weakly_adaptive"
LINEARLY_ORDERED = "linearly_ordered"
K_CHAIN_ORDERED = "k_chain_ordered"
K_THICK_ORDERED = "k_thick_ordered"
OBLIVIOUS = "oblivious"
C_RD = "c_rd"

# Labels whose fault-prone set is chosen online; the order spans all p
# stations and only the budget limits the total.
_ONLINE_LABELS = (STRONGLY_ADAPTIVE, C_RD, OBLIVIOUS)


@dataclass
class AdversarySpec:
    label: str
    p: int
    f: int
    delay: int
    order: Poset
    k: int | None = None

    def __post_init__(self):
        if not 0 <= self.f <= self.p - 1:
            raise ConfigInvalid(f"crash budget f={self.f} outside [0, p-1] for p={self.p}")
        if self.delay < 0:
            raise ConfigInvalid("delay must be nonnegative")
        if not self.order.elements <= set(range(1, self.p + 1)):
            raise ConfigInvalid("order mentions stations outside 1..p")
        if self.label not in _ONLINE_LABELS and len(self.order.elements) > self.f:
            raise ConfigInvalid(
                f"{self.label}: fault-prone set of {len(self.order.elements)} "
                f"exceeds budget f={self.f}"
            )
        if self.label == WEAKLY_ADAPTIVE and self.order.covers:
            raise ConfigInvalid("weakly adaptive order must be an antichain")
        if self.label == LINEARLY_ORDERED and self.order.elements:
            # chain iff predecessor counts are 0, 1, ..., n-1 (no width calc)
            sizes = sorted(len(self.order.below[e]) for e in self.order.elements)
            if sizes != list(range(len(self.order.elements))):
                raise ConfigInvalid("linearly ordered adversary needs a chain")
        if (self.label == K_THICK_ORDERED and self.k is not None
                and 0 < len(self.order.elements) <= poset_mod.EXACT_SOLVE_CAP):
            if poset_mod.thickness(self.order) > self.k:
                raise ConfigInvalid(f"order thickness exceeds k={self.k}")


def make_spec(label: str, p: int, f: int, delay: int = 0, k: int | None = None,
              fault_set: list[int] | None = None, order: Poset | None = None,
              seed: int = 0) -> AdversarySpec:
    """Build a spec with the conventional default order for each label.

    The fault-prone set defaults to the lowest f station ids, the worst
    placement for schedules that scan stations in id order.
    """
    if order is None:
        if label in _ONLINE_LABELS:
            order = poset_mod.antichain(range(1, p + 1))
        else:
            ids = fault_set if fault_set is not None else list(range(1, f + 1))
            if label == WEAKLY_ADAPTIVE:
                order = poset_mod.antichain(ids)
            elif label == LINEARLY_ORDERED:
                order = poset_mod.chain(ids)
            elif label in (K_CHAIN_ORDERED, K_THICK_ORDERED):
                if not k:
                    raise ConfigInvalid(f"{label} needs k")
                kk = min(k, len(ids)) if ids else k
                base, extra = divmod(len(ids), kk) if ids else (0, 0)
                lengths = [base + (1 if i < extra else 0) for i in range(kk)]
                lengths = [n for n in lengths if n > 0]
                order = poset_mod.k_chains(ids, lengths) if ids else poset_mod.antichain([])
            else:
                raise ConfigInvalid(f"unknown adversary label {label!r}")
    if label == C_RD and delay < 1:
        delay = 1
    return AdversarySpec(label, p, f, delay, order, k)


def legal_candidates(spec: AdversarySpec, crashed_so_far: set[int],
                     budget_used: int) -> set[int]:
    """Uncrashed fault-prone stations whose predecessors have all crashed."""
    if budget_used >= spec.f:
        return set()
    return {
        e for e in spec.order.elements
        if e not in crashed_so_far and spec.order.below[e] <= crashed_so_far
    }


class View:
    """What a strategy may observe when it is consulted.

    ``intents`` carries the current round's station intents for delay-0
    strategies and is None otherwise; delayed strategies see only
    ``last_intents`` (the most recently completed round).
    """

    __slots__ = ("round_index", "intents", "last_intents", "leader", "alive", "crashed")

    def __init__(self, round_index, intents, last_intents, leader, alive, crashed):
        self.round_index = round_index
        self.intents = intents
        self.last_intents = last_intents
        self.leader = leader
        self.alive = alive
        self.crashed = crashed


class Strategy:
    """Base attack policy. ``decide`` is called once per effective round."""

    name = "noop"

    def decide(self, effective_round: int, candidates: set[int], view: View) -> list[int]:
        return []


class NoOp(Strategy):
    name = "noop"


class ObliviousSchedule(Strategy):
    """Fixed round -> targets map, decided before the execution."""

    name = "oblivious_schedule"

    def __init__(self, schedule: dict[int, list[int]]):
        self.schedule = {int(r): list(ts) for r, ts in schedule.items()}

    def decide(self, effective_round, candidates, view):
        return self.schedule.get(effective_round, [])


class BigBang(Strategy):
    """Crash the whole fault-prone set (up to budget) in one round."""

    name = "big_bang"

    def __init__(self, round: int = 1, order: Poset | None = None):
        self.round = max(1, int(round))
        self.order = order
        self._fired = False

    def decide(self, effective_round, candidates, view):
        if self._fired or effective_round < self.round:
            return []
        self._fired = True
        if self.order is not None:
            return self.order.topological()
        return sorted(candidates)


class LoneTransmitterKiller(Strategy):
    """Crash a station that is about to broadcast alone.

    With delay 0 this reads the round's intents and suppresses the unique
    intending transmitter.  Delayed variants can only see the previous
    round, so they kill the station that last transmitted alone.
    """

    name = "lone_transmitter_killer"

    def decide(self, effective_round, candidates, view):
        intents = view.intents if view.intents is not None else view.last_intents
        if not intents:
            return []
        transmitters = [s for s, a in intents.items()
                        if a[0] == "transmit" and s in view.alive]
        if len(transmitters) == 1 and transmitters[0] in candidates:
            return [transmitters[0]]
        return []


class LeaderHunter(Strategy):
    """Work down the order toward the current leader, then crash it."""

    name = "leader_hunter"

    def __init__(self, order: Poset):
        self.order = order

    def decide(self, effective_round, candidates, view):
        leader = view.leader
        if leader is None or leader not in self.order.elements or leader in view.crashed:
            return []
        blockers = self.order.below[leader] - view.crashed
        if blockers:
            return sorted(blockers & candidates)
        if leader in candidates:
            return [leader]
        return []


class FrontierRandom(Strategy):
    """Each round, with a fixed rate, crash one uniformly chosen candidate."""

    name = "frontier_random"

    def __init__(self, seed: int, rate: float = 0.25):
        self.coins = CoinSource(seed, DOMAIN_ADVERSARY)
        self.rate = rate

    def decide(self, effective_round, candidates, view):
        if not candidates:
            return []
        if not bool(self.coins.flips(effective_round, self.rate, 1)[0]):
            return []
        pick = self.coins.uniform_index(effective_round, len(candidates), slot=1)
        return [sorted(candidates)[pick]]


def built_in_strategies() -> dict[str, type]:
    return {
        "noop": NoOp,
        "oblivious_schedule": ObliviousSchedule,
        "big_bang": BigBang,
        "lone_transmitter_killer": LoneTransmitterKiller,
        "leader_hunter": LeaderHunter,
        "frontier_random": FrontierRandom,
    }


def build_strategy(name: str, spec: AdversarySpec, params: dict | None = None,
                   seed: int = 0) -> Strategy:
    params = dict(params or {})
    catalog = built_in_strategies()
    if name not in catalog:
        raise UnknownStrategy(f"no strategy named {name!r}")
    if name == "oblivious_schedule":
        return ObliviousSchedule(params.get("schedule", {}))
    if name == "big_bang":
        return BigBang(params.get("round", 1),
                       spec.order if spec.label not in _ONLINE_LABELS else None)
    if name == "leader_hunter":
        return LeaderHunter(spec.order)
    if name == "frontier_random":
        return FrontierRandom(seed, params.get("rate", 0.25))
    return catalog[name]()
