"""Experiment runner: parameter sweeps, aggregation, and bound-ratio fits.

A sweep config declares a protocol, a channel, an adversary (label, delay,
strategy), a grid over (p, t, f[, k]), seeds per cell, and optionally which
closed-form work bound to evaluate per cell.  Grid entries for t and f may
be integers or the relative forms "p", "2p", "4p" (for t) and "0", "half",
"pminus1", "sqrt_t" (for f), which the criteria grids use.

Per-cell seed j is master_seed + 100000 * cell_index + j, so any single
row can be reproduced in isolation.
"""

from __future__ import annotations

import csv
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from statistics import mean, median

from . import adversary as adversary_mod
from . import engine
from . import poset as poset_mod
from .errors import ConfigInvalid, InsufficientCells
from .protocols import build_protocol

CSV_HEADER = ["protocol", "channel", "adversary", "strategy",
              "p", "t", "f", "k", "seed", "work", "time", "energy"]


def ceil_sqrt(t: int) -> int:
    return math.isqrt(t - 1) + 1 if t > 0 else 0


def ceil_log2(p: int) -> int:
    return max(1, (p - 1).bit_length())


def bound_value(name: str, p: int, t: int, f: int, k: int | None = None) -> float:
    """Closed-form work bound for a cell; log means log2, roots take ceilings."""
    s = ceil_sqrt(t)
    lg = ceil_log2(p)
    if name == "two_lists":
        return float(t + p * s + p * min(f, t))
    if name == "groups_together":
        return float(t + p * s)
    if name == "robal":
        return float(t + p * s * lg)
    if name == "grubtech_wa":
        surv = Fraction(p, p - f)
        return float(t + p * s + p * min(surv, t) * lg)
    if name == "grubtech_k":
        if k is None:
            raise ConfigInvalid("grubtech_k bound needs k")
        surv = Fraction(p, p - f)
        return float(t + p * s + p * min(surv, Fraction(t), Fraction(k)) * lg)
    if name == "gilet":
        return float(t + p * s * lg * lg)
    raise ConfigInvalid(f"unknown bound {name!r}")


@dataclass
class ResultRow:
    protocol: str
    channel: str
    adversary: str
    strategy: str
    p: int
    t: int
    f: int
    k: int | None
    works: list[int] = field(default_factory=list)
    times: list[int] = field(default_factory=list)
    energies: list[int] = field(default_factory=list)
    seeds: list[int] = field(default_factory=list)
    reliable_all: bool = True
    bound: float | None = None

    @property
    def mean_work(self) -> float:
        return mean(self.works)

    @property
    def median_work(self) -> float:
        return median(self.works)

    @property
    def max_work(self) -> int:
        return max(self.works)

    @property
    def ratio(self) -> float | None:
        if self.bound is None:
            return None
        return self.mean_work / self.bound


def _resolve_t(spec, p: int) -> int:
    if isinstance(spec, str):
        mult = {"p": 1, "2p": 2, "4p": 4}.get(spec)
        if mult is None:
            raise ConfigInvalid(f"unknown t form {spec!r}")
        return mult * p
    return int(spec)


def _resolve_f(spec, p: int, t: int) -> int:
    if isinstance(spec, str):
        forms = {"0": 0, "half": p // 2, "pminus1": p - 1,
                 "sqrt_t": min(ceil_sqrt(t), p - 1)}
        if spec not in forms:
            raise ConfigInvalid(f"unknown f form {spec!r}")
        return forms[spec]
    return int(spec)


def run_cell(cell: dict) -> ResultRow:
    """Run all seeds of one grid cell; self-contained and picklable."""
    p, t, f, k = cell["p"], cell["t"], cell["f"], cell.get("k")
    adv = cell.get("adversary") or {}
    label = adv.get("label", "strongly_adaptive")
    strat_cfg = adv.get("strategy") or {}
    strat_name = strat_cfg.get("name", "noop")
    order = None
    if adv.get("order"):
        ids = adv.get("fault_set") or list(range(1, f + 1))
        order = poset_mod.generate(adv["order"], ids)
    row = ResultRow(cell["protocol"], cell["channel"], label, strat_name,
                    p, t, f, k)
    spec = adversary_mod.make_spec(
        label, p, f, delay=adv.get("delay", 0), k=k,
        fault_set=adv.get("fault_set"), order=order)
    for seed in cell["seeds"]:
        strategy = adversary_mod.build_strategy(
            strat_name, spec, strat_cfg.get("params"),
            seed=strat_cfg.get("seed", seed))
        automaton = build_protocol(cell["protocol"], p, t, cell["channel"], seed)
        res = engine.run(automaton, spec, strategy)
        row.works.append(res.work)
        row.times.append(res.time)
        row.energies.append(res.energy)
        row.seeds.append(seed)
        row.reliable_all = row.reliable_all and res.reliable
    if cell.get("bound"):
        row.bound = bound_value(cell["bound"], p, t, f, k)
    return row


def expand_cells(config: dict) -> list[dict]:
    grid = config.get("grid") or {}
    ps = grid.get("p", [config.get("p")])
    ts = grid.get("t", [config.get("t")])
    fs = grid.get("f", [config.get("f", 0)])
    ks = grid.get("k", [config.get("k")])
    master = config.get("master_seed", 0)
    per_cell = config.get("seeds_per_cell", 1)
    cells = []
    index = 0
    for p_spec, t_spec, f_spec, k in product(ps, ts, fs, ks):
        p = int(p_spec)
        t = _resolve_t(t_spec, p)
        f = _resolve_f(f_spec, p, t)
        if not 0 <= f <= p - 1:
            raise ConfigInvalid(f"cell (p={p}, t={t}, f={f}): f outside [0, p-1]")
        cells.append({
            "protocol": config["protocol"],
            "channel": config["channel"],
            "adversary": config.get("adversary"),
            "bound": config.get("bound"),
            "p": p, "t": t, "f": f, "k": k,
            "seeds": [master + 100_000 * index + j for j in range(per_cell)],
        })
        index += 1
    return cells


def sweep(config: dict) -> list[ResultRow]:
    cells = expand_cells(config)
    workers = int(os.environ.get("MACDOALL_THREADS", "1"))
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run_cell, cells))
    return [run_cell(c) for c in cells]


def fit_ratio(rows: list[ResultRow], threshold: float = 10.0) -> dict:
    ratios = [r.ratio for r in rows if r.ratio is not None]
    if len(ratios) < 3:
        raise InsufficientCells(f"need at least 3 cells with bounds, got {len(ratios)}")
    top, bottom = max(ratios), min(ratios)
    return {
        "constant_estimate": top,
        "max_ratio": top,
        "min_ratio": bottom,
        "spread": top / bottom,
        "threshold": threshold,
        "holds": top / bottom < threshold,
        "cells": len(ratios),
    }


def csv_rows(rows: list[ResultRow]) -> list[dict]:
    out = []
    for row in rows:
        for seed, work, time_, energy in zip(row.seeds, row.works, row.times,
                                             row.energies):
            out.append({
                "protocol": row.protocol, "channel": row.channel,
                "adversary": row.adversary, "strategy": row.strategy,
                "p": row.p, "t": row.t, "f": row.f,
                "k": "" if row.k is None else row.k,
                "seed": seed, "work": work, "time": time_, "energy": energy,
            })
    return out


def write_csv(rows: list[ResultRow], path: str) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_HEADER)
        writer.writeheader()
        writer.writerows(csv_rows(rows))


def report(rows: list[ResultRow]) -> dict:
    return {
        "cells": [{
            "protocol": r.protocol, "channel": r.channel,
            "adversary": r.adversary, "strategy": r.strategy,
            "p": r.p, "t": r.t, "f": r.f, "k": r.k,
            "seeds": len(r.seeds),
            "mean_work": r.mean_work, "median_work": r.median_work,
            "max_work": r.max_work, "bound": r.bound, "ratio": r.ratio,
            "reliable_all": r.reliable_all,
        } for r in rows],
    }
