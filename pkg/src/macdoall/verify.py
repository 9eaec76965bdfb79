"""Statistical validators for the probabilistic bounds and small exact oracles.

Each check returns a :class:`StatCheck` carrying the measured statistic, the
target bound, and a one-sided margin; Monte-Carlo margins are computed at
99% confidence.  Checks are deterministic given their seed.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .errors import TooLarge
from .rng import DOMAIN_VERIFY, CoinSource

Z99 = 2.326  # one-sided 99% normal quantile


@dataclass
class StatCheck:
    name: str
    trials: int
    statistic: float
    bound: float
    margin: float
    verdict: str  # "pass" | "fail"

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return asdict(self)


def check_single_transmit_bound(x_max: int = 64) -> StatCheck:
    """Exact minimum of P[exactly one of m stations transmits] at coin x.

    For every x in [2, x_max] and m in (x/2, x], the success probability
    (m/x)(1 - 1/x)^(m-1) must stay above 1/(2 sqrt(e)).  Evaluated in exact
    rational arithmetic; only the final comparison is floating point.
    """
    worst = None
    for x in range(2, x_max + 1):
        for m in range(x // 2 + 1, x + 1):
            val = Fraction(m, x) * Fraction(x - 1, x) ** (m - 1)
            if worst is None or val < worst:
                worst = val
    stat = float(worst)
    bound = 1.0 / (2.0 * math.sqrt(math.e))
    verdict = "pass" if stat >= bound else "fail"
    return StatCheck("single_transmit_bound", (x_max - 1), stat, bound, 0.0, verdict)


def hypergeometric_tail(n: int, first_half: int, draws: int, threshold: int) -> float:
    """Exact P[at least threshold of the draws land in the first half]."""
    total = math.comb(n, draws)
    acc = 0
    for j in range(threshold, draws + 1):
        if j <= first_half and draws - j <= n - first_half:
            acc += math.comb(first_half, j) * math.comb(n - first_half, draws - j)
    return acc / total


def check_leader_crash_tail(n: int = 400, sqrt_t: int = 20, trials: int = 10_000,
                            seed: int = 0) -> StatCheck:
    """Tail of the number of uniformly placed leaders falling in the half of
    a linear order that the adversary crashes first.

    Draws sqrt_t leaders without replacement from n positions and counts how
    often at least three quarters of them sit in the first n/2 positions;
    the frequency must stay below e^(-sqrt_t/8) plus a 99% margin.
    """
    rng = np.random.Generator(np.random.Philox(key=[seed, DOMAIN_VERIFY]))
    threshold = math.ceil(0.75 * sqrt_t)
    first_half = n // 2
    hits = 0
    for _ in range(trials):
        picks = rng.choice(n, size=sqrt_t, replace=False)
        if int((picks < first_half).sum()) >= threshold:
            hits += 1
    stat = hits / trials
    bound = math.exp(-sqrt_t / 8.0)
    margin = Z99 * math.sqrt(max(bound * (1 - bound), 1e-12) / trials)
    verdict = "pass" if stat <= bound + margin else "fail"
    return StatCheck("leader_crash_tail", trials, stat, bound, margin, verdict)


def _election_rounds(p: int, f: int, coins: CoinSource, base_round: int) -> int:
    """Rounds spent electing leaders until a non-faulty one is found.

    Replays the election procedure with its persistent counters against an
    adversary that crashes every fault-prone station the moment it is
    elected.  Fault-prone stations are ids 1..f.
    """
    crashed: set[int] = set()
    trials_used = 0
    ring = list(range(1, p + 1))
    rounds = 0
    prob = Fraction(1, p)
    while True:
        leader = None
        while trials_used < p and leader is None:
            rounds += 1
            flips = coins.flips(base_round + rounds, prob, p)
            ts = [s for s in range(1, p + 1) if s not in crashed and flips[s - 1]]
            if len(ts) == 1:
                leader = ts[0]
            else:
                trials_used += 1
        while leader is None and ring:
            cand = ring[0]
            if cand in crashed:
                ring.pop(0)
                continue
            rounds += 1
            leader = cand
        if leader is None:
            return rounds
        if leader > f:
            return rounds
        crashed.add(leader)
        if ring and ring[0] == leader:
            ring.pop(0)


def check_elect_leader_rounds(p: int = 64, f: int = 0, trials: int = 1000,
                              seed: int = 0) -> StatCheck:
    """Frequency with which total election rounds stay within the
    (4p/(p-f)) log2(p) budget must be at least 1 - 1/p (minus margin)."""
    budget = (4.0 * p / (p - f)) * math.log2(p)
    ok = 0
    for j in range(trials):
        coins = CoinSource(seed * 1_000_003 + j, DOMAIN_VERIFY)
        if _election_rounds(p, f, coins, base_round=1) <= budget:
            ok += 1
    stat = ok / trials
    bound = 1.0 - 1.0 / p
    margin = 0.05
    verdict = "pass" if stat >= bound - margin else "fail"
    return StatCheck(f"elect_leader_rounds_p{p}_f{f}", trials, stat, bound,
                     margin, verdict)


def brute_force_doall_oracle(p: int, t: int, crash_schedule: dict[int, int]) -> int:
    """Minimum possible work to perform all t tasks under a crash schedule.

    Exhausts every assignment of stop rounds to surviving stations.  A
    station crashed at round r accrues r work units and can have completed
    at most r - 1 tasks; a survivor stopping after round s accrues s units
    and completes at most s tasks.  Stations idle at least one round.
    """
    if p > 3 or t > 3:
        raise TooLarge("exhaustive oracle is limited to p <= 3, t <= 3")
    survivors = [s for s in range(1, p + 1) if s not in crash_schedule]
    crashed_work = sum(crash_schedule.values())
    crashed_capacity = sum(r - 1 for r in crash_schedule.values())
    if not survivors:
        if crashed_capacity >= t:
            return crashed_work
        raise TooLarge("no survivor can finish the outstanding tasks")
    best = None
    for stops in product(range(1, t + 1), repeat=len(survivors)):
        if sum(stops) + crashed_capacity >= t:
            work = crashed_work + sum(stops)
            if best is None or work < best:
                best = work
    return best


def all_checks(seed: int = 0) -> list[StatCheck]:
    checks = [check_single_transmit_bound(64),
              check_leader_crash_tail(seed=seed)]
    for f in (0, 32, 63):
        checks.append(check_elect_leader_rounds(64, f, trials=1000, seed=seed))
    return checks
