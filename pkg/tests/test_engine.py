from __future__ import annotations

import json

import pytest

from macdoall import adversary, engine
from macdoall.errors import IllegalCrash, Timeout

from conftest import Scripted, listens


def _spec(label="strongly_adaptive", p=4, f=1, **kw):
    return adversary.make_spec(label, p, f, **kw)


def test_work_counts_every_operational_station_round():
    res = engine.run(listens(5, p=3))
    assert (res.work, res.time, res.energy) == (15, 5, 0)
    assert res.halted == {1: 5, 2: 5, 3: 5}


def test_crash_round_still_charges_work():
    strat = adversary.ObliviousSchedule({3: [2]})
    res = engine.run(listens(5, p=2), _spec(p=2, f=1), strat)
    # rounds 1-3 charge both stations, rounds 4-5 only the survivor
    assert res.work == 2 + 2 + 2 + 1 + 1
    assert res.crashed == {2: 3}


def test_halt_round_still_charges_work():
    auto = Scripted(2, 1, [(None, {})] * 4, {2: {2}, 4: "all"})
    res = engine.run(auto)
    assert res.work == 2 + 2 + 1 + 1
    assert res.halted == {2: 2, 1: 4}


def test_crash_suppresses_whole_intent():
    script = [(None, {2: ("transmit", "x")}), (None, {})]
    auto = Scripted(2, 1, script, {2: "all"})
    strat = adversary.ObliviousSchedule({1: [2]})
    res = engine.run(auto, _spec(p=2, f=1), strat)
    assert res.energy == 0
    assert res.crashed == {2: 1}


def test_performed_tracks_ground_truth_only():
    script = [(None, {1: ("perform", 1), 2: ("perform", 2)}), (None, {})]
    auto = Scripted(2, 2, script, {2: "all"})
    strat = adversary.ObliviousSchedule({1: [2]})
    res = engine.run(auto, _spec(p=2, f=1), strat)
    assert res.performed == {1}


def test_default_perform_expands_to_survivors():
    auto = Scripted(3, 1, [(("perform", 1), {})], {1: "all"})
    res = engine.run(auto, mode="full")
    assert res.performed == {1}
    assert res.records[0].tasks_performed == ((1, 1), (2, 1), (3, 1))


def test_budget_rejections_are_counted():
    strat = adversary.BigBang(round=1)
    res = engine.run(listens(3, p=4), _spec(p=4, f=2), strat)
    assert len(res.crashed) == 2
    assert res.rejected_crashes == 2


def test_order_violation_rejected_or_strict_raises():
    strat = adversary.ObliviousSchedule({1: [2]})
    spec = _spec("linearly_ordered", p=4, f=2)  # chain 1 < 2
    res = engine.run(listens(3, p=4), spec, strat)
    assert res.crashed == {} and res.rejected_crashes == 1
    strat = adversary.ObliviousSchedule({1: [2]})
    with pytest.raises(IllegalCrash):
        engine.run(listens(3, p=4), spec, strat, strict=True)


def test_same_round_batch_respects_precedence():
    # both ends of a chain requested in one round: valid in order 1 then 2
    strat = adversary.ObliviousSchedule({2: [2, 1]})
    spec = _spec("linearly_ordered", p=4, f=2)
    res = engine.run(listens(4, p=4), spec, strat)
    assert res.crashed == {1: 2, 2: 2}


def test_delayed_request_lands_c_rounds_later():
    script = [(None, {1: ("transmit", 1)})] + [(None, {})] * 3
    auto = Scripted(2, 1, script, {4: "all"})
    strat = adversary.LoneTransmitterKiller()
    res = engine.run(auto, _spec("c_rd", p=2, f=1, delay=1), strat)
    # the lone transmission happens in round 1; the kill lands in round 2
    assert res.crashed == {1: 2}


def test_delayed_request_before_round_one():
    strat = adversary.ObliviousSchedule({1: [1]})
    res = engine.run(listens(3, p=2), _spec("c_rd", p=2, f=1, delay=1), strat)
    assert res.crashed == {1: 1}


def test_timeout_on_non_terminating_automaton():
    auto = listens(50, p=1, halt_last=False)
    with pytest.raises(Timeout):
        engine.run(auto, round_cap=10)


def test_reliability_report_messages():
    res = engine.RunResult(p=2, t=2, performed={1}, crashed={}, halted={1: 3})
    report = engine.verify_reliability(res)
    assert "task 2 never performed" in report
    assert "surviving station 2 never halted" in report
    assert not res.reliable
    ok = engine.RunResult(p=2, t=1, performed={1}, crashed={2: 1}, halted={1: 3})
    assert ok.reliable


def test_full_mode_records_are_json_lines():
    auto = Scripted(2, 1, [(None, {1: ("perform", 1)}),
                           (None, {1: ("transmit", 1)})], {2: "all"})
    res = engine.run(auto, mode="full")
    assert [r.round_index for r in res.records] == [1, 2]
    rec = json.loads(res.records[1].to_json())
    assert rec == {"round": 2, "intents": {"1": ["transmit", 1], "2": ["listen"]},
                   "crashes": [], "feedback": ["single", 1], "performed": [],
                   "halts": [1, 2], "operational_after": []}


def test_lite_mode_keeps_no_records():
    res = engine.run(listens(2, p=1))
    assert res.records is None
