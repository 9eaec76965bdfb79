"""Round-by-round executor binding an automaton to a channel and adversary.

Per round: collect intents, let the adversary act (a delay-0 strategy sees
the round's intents; delayed requests scheduled earlier arrive now), charge
work to every operational station that has not stopped (the round in which a
station crashes or stops still counts), suppress all actions of crashed
stations, resolve the channel from surviving transmissions, and feed the
outcome back to the automaton.  Delayed strategies are consulted after the
round closes, with effect c rounds later; requests are irrevocable and
pending requests count against the crash budget.

The accounting separates beliefs from ground truth: the automaton tracks
what stations can infer from feedback, while ``performed`` here only ever
contains tasks completed by a station that was alive in that round.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import channel as channel_mod
from .adversary import AdversarySpec, Strategy, View, legal_candidates
from .errors import IllegalCrash, Timeout
from .poset import crash_is_legal
from .protocols.base import Automaton

LISTEN = ("listen",)


@dataclass
class RoundRecord:
    round_index: int
    intents: dict[int, tuple]
    crashes_applied: tuple[int, ...]
    feedback: tuple
    tasks_performed: tuple[tuple[int, int], ...]
    halts: tuple[int, ...]
    operational_after: tuple[int, ...]

    def to_json(self) -> str:
        return json.dumps({
            "round": self.round_index,
            "intents": {str(s): list(a) for s, a in sorted(self.intents.items())},
            "crashes": list(self.crashes_applied),
            "feedback": list(self.feedback),
            "performed": [list(x) for x in self.tasks_performed],
            "halts": list(self.halts),
            "operational_after": list(self.operational_after),
        }, separators=(",", ":"))


@dataclass
class RunResult:
    p: int
    t: int
    work: int = 0
    time: int = 0
    energy: int = 0
    performed: set[int] = field(default_factory=set)
    crashed: dict[int, int] = field(default_factory=dict)
    halted: dict[int, int] = field(default_factory=dict)
    rejected_crashes: int = 0
    records: list[RoundRecord] | None = None

    @property
    def reliable(self) -> bool:
        """All tasks done and every never-crashed station stopped on its own."""
        return not verify_reliability(self)


def verify_reliability(result: RunResult) -> list[str]:
    """Violation report; empty means the run upheld the reliability contract."""
    report = []
    for u in range(1, result.t + 1):
        if u not in result.performed:
            report.append(f"task {u} never performed")
    for s in range(1, result.p + 1):
        if s not in result.crashed and s not in result.halted:
            report.append(f"surviving station {s} never halted")
    return report


def default_round_cap(p: int, t: int) -> int:
    s = max(1, int(t ** 0.5) + 1)
    lg = max(1, p.bit_length())
    return 50 * (t + p * s * lg * lg)


def run(automaton: Automaton, spec: AdversarySpec | None = None,
        strategy: Strategy | None = None, mode: str = "lite",
        strict: bool = False, round_cap: int | None = None) -> RunResult:
    p, t = automaton.p, automaton.t
    kind = automaton.channel_kind
    cap = round_cap if round_cap is not None else default_round_cap(p, t)
    res = RunResult(p=p, t=t, records=[] if mode == "full" else None)
    crashed: set[int] = set()
    active: set[int] = set(range(1, p + 1))  # operational and not halted
    pending: dict[int, list[int]] = {}
    budget_used = 0  # crashes applied plus requests still in flight
    delay = spec.delay if spec is not None else 0
    has_strategy = spec is not None and strategy is not None
    delayed = has_strategy and delay >= 1

    def visible_intents(default, overrides):
        # strategies only act on transmit intents; expand the compact form
        # fully just when the shared default is itself a transmission
        if default is not None and default[0] == "transmit":
            view = {s: default for s in active}
            view.update({s: a for s, a in overrides.items() if s in active})
            return view
        return {s: a for s, a in overrides.items() if s in active}

    frontier_cache: tuple | None = None  # (crash count, budget, frontier)

    def frontier() -> set[int]:
        # crash legality changes only when crashes land or budget moves
        nonlocal frontier_cache
        key = (len(crashed), budget_used)
        if frontier_cache is None or frontier_cache[0] != key:
            frontier_cache = (key, legal_candidates(spec, crashed, budget_used))
        return frontier_cache[1]

    def consult_delayed(round_index, last_intents):
        nonlocal budget_used
        cands = frontier() & active
        view = View(round_index, None, last_intents, automaton.leader,
                    active, crashed)
        for sid in strategy.decide(round_index + delay, cands, view):
            if budget_used >= spec.f:
                break
            pending.setdefault(round_index + delay, []).append(sid)
            budget_used += 1

    if delayed:
        consult_delayed(0, {})

    last_intents: dict[int, tuple] = {}
    r = 0
    while active:
        r += 1
        if r > cap:
            raise Timeout(f"no termination within {cap} rounds")

        polled = automaton.poll(r)
        default, overrides = polled if polled is not None else (None, {})

        # adversary: delayed arrivals plus an inside-the-round strategy
        requests = list(pending.pop(r, []))
        intents_view = None
        if has_strategy and delay == 0:
            cands = frontier() & active
            intents_view = visible_intents(default, overrides)
            view = View(r, intents_view, last_intents, automaton.leader,
                        active, crashed)
            for sid in strategy.decide(r, cands, view):
                requests.append(sid)
                budget_used += 1

        new_crashes: list[int] = []
        if requests:
            # validate incrementally in topological order so that precedence
            # satisfied within the same round's batch counts
            ordered = sorted(set(requests), key=lambda e: (
                len(spec.order.below.get(e, frozenset())), e))
            for sid in ordered:
                ok = (
                    sid in spec.order.elements
                    and sid not in crashed
                    and len(crashed) + len(new_crashes) < spec.f
                    and crash_is_legal(spec.order, crashed | set(new_crashes), sid)
                )
                if ok:
                    new_crashes.append(sid)
                else:
                    res.rejected_crashes += 1
                    budget_used -= 1
                    if strict:
                        raise IllegalCrash(f"round {r}: crash of {sid} is illegal")

        res.work += len(active)
        res.time = r
        for sid in new_crashes:
            crashed.add(sid)
            active.discard(sid)
            res.crashed[sid] = r

        transmissions = []
        if default is not None and default[0] == "transmit":
            transmissions = [(s, default[1]) for s in sorted(active)
                             if s not in overrides]
        for sid, a in overrides.items():
            if a[0] == "transmit" and sid in active:
                transmissions.append((sid, a[1]))
        res.energy += len(transmissions)

        performs = []
        if default is not None and default[0] == "perform":
            if len(overrides) == 0:
                if active:
                    res.performed.add(default[1])
                    if res.records is not None:
                        performs = [(s, default[1]) for s in sorted(active)]
            else:
                for s in active:
                    if s not in overrides:
                        res.performed.add(default[1])
                        if res.records is not None:
                            performs.append((s, default[1]))
                        else:
                            break
        for sid, a in overrides.items():
            if a[0] == "perform" and sid in active:
                res.performed.add(a[1])
                if res.records is not None:
                    performs.append((sid, a[1]))

        feedback = channel_mod.resolve(kind, transmissions)
        halts = automaton.observe(r, feedback)
        if halts == "all":
            halts_now = sorted(active)
        else:
            halts_now = sorted(s for s in halts if s in active)
        for sid in halts_now:
            active.discard(sid)
            res.halted[sid] = r

        if res.records is not None:
            rec_intents = {s: overrides.get(s, default) or LISTEN
                           for s in sorted(active | set(halts_now) | set(new_crashes))}
            res.records.append(RoundRecord(
                r, rec_intents, tuple(new_crashes), feedback,
                tuple(sorted(performs)), tuple(halts_now), tuple(sorted(active))))

        if delayed or (has_strategy and delay == 0):
            last_intents = (intents_view if intents_view is not None
                            else visible_intents(default, overrides))
        if delayed:
            consult_delayed(r, last_intents)

    return res
