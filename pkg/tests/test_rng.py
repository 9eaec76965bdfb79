from __future__ import annotations

from fractions import Fraction

import numpy as np

from macdoall.rng import DOMAIN_ADVERSARY, DOMAIN_STATIONS, CoinSource, threshold_of


def test_same_key_same_round_is_identical():
    a = CoinSource(42, DOMAIN_STATIONS)
    b = CoinSource(42, DOMAIN_STATIONS)
    assert np.array_equal(a.raw(17, 8), b.raw(17, 8))


def test_domains_are_independent_streams():
    a = CoinSource(42, DOMAIN_STATIONS)
    b = CoinSource(42, DOMAIN_ADVERSARY)
    assert not np.array_equal(a.raw(17, 8), b.raw(17, 8))


def test_rounds_are_independent():
    a = CoinSource(42, DOMAIN_STATIONS)
    assert not np.array_equal(a.raw(1, 8), a.raw(2, 8))


def test_round_replay_does_not_depend_on_call_order():
    a = CoinSource(7, DOMAIN_STATIONS)
    early = a.raw(5, 4)
    a.raw(6, 4)
    a.raw(1, 4)
    assert np.array_equal(a.raw(5, 4), early)


def test_threshold_edges():
    assert threshold_of(Fraction(0)) == 0
    assert threshold_of(Fraction(1)) == 1 << 64
    assert threshold_of(Fraction(1, 2)) == 1 << 63


def test_flip_probability_extremes():
    a = CoinSource(3, DOMAIN_STATIONS)
    assert a.flips(1, Fraction(1), 10).all()
    assert not a.flips(1, Fraction(0), 10).any()


def test_flip_frequency_near_probability():
    a = CoinSource(11, DOMAIN_STATIONS)
    hits = sum(int(a.flips(r, Fraction(1, 4), 1)[0]) for r in range(1, 4001))
    assert abs(hits / 4000 - 0.25) < 0.03


def test_uniform_index_range_and_coverage():
    a = CoinSource(13, DOMAIN_STATIONS)
    seen = {a.uniform_index(r, 5) for r in range(1, 200)}
    assert seen == {0, 1, 2, 3, 4}
