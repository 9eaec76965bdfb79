from __future__ import annotations

import pytest

from macdoall import adversary, poset
from macdoall.errors import ConfigInvalid, UnknownStrategy


def test_spec_budget_range():
    with pytest.raises(ConfigInvalid):
        adversary.make_spec("strongly_adaptive", 4, 4)
    with pytest.raises(ConfigInvalid):
        adversary.make_spec("strongly_adaptive", 4, -1)
    adversary.make_spec("strongly_adaptive", 4, 3)


def test_online_labels_default_to_full_antichain():
    spec = adversary.make_spec("strongly_adaptive", 5, 2)
    assert spec.order.elements == {1, 2, 3, 4, 5}
    assert spec.order.covers == frozenset()


def test_offline_labels_default_to_lowest_ids():
    spec = adversary.make_spec("linearly_ordered", 8, 3)
    assert spec.order.elements == {1, 2, 3}
    assert spec.order.precedes(1, 2) and spec.order.precedes(2, 3)


def test_fault_set_must_fit_budget():
    with pytest.raises(ConfigInvalid):
        adversary.make_spec("weakly_adaptive", 8, 2, fault_set=[1, 2, 3])


def test_weakly_adaptive_rejects_ordered_sets():
    with pytest.raises(ConfigInvalid):
        adversary.AdversarySpec("weakly_adaptive", 4, 2, 0, poset.chain([1, 2]))


def test_linearly_ordered_rejects_non_chain():
    with pytest.raises(ConfigInvalid):
        adversary.AdversarySpec("linearly_ordered", 4, 3, 0, poset.antichain([1, 2, 3]))


def test_large_chain_validates_without_width_computation():
    # chain check must not hit the exact-solver size cap
    spec = adversary.make_spec("linearly_ordered", 512, 511)
    assert len(spec.order.elements) == 511


def test_k_chain_default_splits_evenly():
    spec = adversary.make_spec("k_chain_ordered", 16, 8, k=4)
    chains = poset.min_chain_cover(spec.order).chains
    assert sorted(len(c) for c in chains) == [2, 2, 2, 2]


def test_k_thick_validates_small_orders():
    wide = poset.antichain([1, 2, 3])
    with pytest.raises(ConfigInvalid):
        adversary.AdversarySpec("k_thick_ordered", 8, 3, 0, wide, k=2)
    adversary.AdversarySpec("k_thick_ordered", 8, 3, 0, poset.chain([1, 2, 3]), k=2)


def test_crd_forces_positive_delay():
    spec = adversary.make_spec("c_rd", 4, 2, delay=0)
    assert spec.delay == 1


def test_legal_candidates_follow_order_and_budget():
    spec = adversary.make_spec("linearly_ordered", 8, 3)
    assert adversary.legal_candidates(spec, set(), 0) == {1}
    assert adversary.legal_candidates(spec, {1}, 1) == {2}
    assert adversary.legal_candidates(spec, {1, 2, 3}, 3) == set()
    # in-flight requests consume budget even before they land
    assert adversary.legal_candidates(spec, set(), 3) == set()


def test_strategy_catalog_and_unknown():
    spec = adversary.make_spec("strongly_adaptive", 4, 2)
    for name in adversary.built_in_strategies():
        adversary.build_strategy(name, spec, seed=1)
    with pytest.raises(UnknownStrategy):
        adversary.build_strategy("meteor", spec)


def _view(intents, alive, leader=None, crashed=frozenset()):
    return adversary.View(1, intents, {}, leader, alive, set(crashed))


def test_lone_transmitter_killer_targets_unique_transmitter():
    strat = adversary.LoneTransmitterKiller()
    cands = {1, 2, 3}
    assert strat.decide(1, cands, _view({2: ("transmit", 2)}, {1, 2, 3})) == [2]
    two = {1: ("transmit", 1), 2: ("transmit", 2)}
    assert strat.decide(1, cands, _view(two, {1, 2, 3})) == []
    assert strat.decide(1, cands, _view({}, {1, 2, 3})) == []
    # a transmitter outside the candidate set is untouchable
    assert strat.decide(1, {1}, _view({2: ("transmit", 2)}, {1, 2})) == []


def test_leader_hunter_walks_down_the_order():
    order = poset.chain([1, 2, 3])
    strat = adversary.LeaderHunter(order)
    v = _view({}, {1, 2, 3}, leader=3)
    assert strat.decide(1, {1}, v) == [1]
    v = _view({}, {3}, leader=3, crashed={1, 2})
    assert strat.decide(1, {3}, v) == [3]
    assert strat.decide(1, {1, 2, 3}, _view({}, {1, 2, 3}, leader=None)) == []


def test_big_bang_fires_once():
    strat = adversary.BigBang(round=2)
    assert strat.decide(1, {1, 2}, _view({}, {1, 2})) == []
    assert strat.decide(2, {1, 2}, _view({}, {1, 2})) == [1, 2]
    assert strat.decide(3, {1, 2}, _view({}, {1, 2})) == []


def test_frontier_random_is_reproducible():
    a = adversary.FrontierRandom(seed=5)
    b = adversary.FrontierRandom(seed=5)
    v = _view({}, {1, 2, 3, 4})
    picks_a = [a.decide(r, {1, 2, 3, 4}, v) for r in range(1, 50)]
    picks_b = [b.decide(r, {1, 2, 3, 4}, v) for r in range(1, 50)]
    assert picks_a == picks_b
    assert any(picks_a)
