"""Command line front end.

Subcommands: ``run`` (single simulation), ``sweep`` (grid of simulations to
CSV + JSON), ``fit`` (sweep plus bound-ratio fit), ``verify`` (statistical
check suite), ``poset-check`` (width and chain cover of a poset file).
Exit codes: 0 success, 1 failed check or reliability violation, 2 bad
configuration.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import adversary as adversary_mod
from . import engine, harness, poset, verify
from .errors import ConfigInvalid, SimulationError
from .protocols import build_protocol


def _load(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def _emit(obj: dict, out_dir: str | None, filename: str) -> None:
    text = json.dumps(obj, indent=2, default=str)
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        with open(os.path.join(out_dir, filename), "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def cmd_run(args) -> int:
    config = _load(args.config)
    seed = args.seed if args.seed is not None else config.get("seed", 0)
    p, t = int(config["p"]), int(config["t"])
    f = int(config.get("f", 0))
    adv = config.get("adversary") or {}
    order = None
    if adv.get("order"):
        ids = adv.get("fault_set") or list(range(1, f + 1))
        order = poset.generate(adv["order"], ids)
    spec = adversary_mod.make_spec(adv.get("label", "strongly_adaptive"),
                                   p, f, delay=adv.get("delay", 0),
                                   k=adv.get("k"), fault_set=adv.get("fault_set"),
                                   order=order)
    strat_cfg = adv.get("strategy") or {}
    strategy = adversary_mod.build_strategy(strat_cfg.get("name", "noop"), spec,
                                            strat_cfg.get("params"),
                                            seed=strat_cfg.get("seed", seed))
    automaton = build_protocol(config["protocol"], p, t, config["channel"], seed)
    result = engine.run(automaton, spec, strategy, mode="full")
    violations = engine.verify_reliability(result)
    metrics = {"work": result.work, "time": result.time, "energy": result.energy,
               "crashes": len(result.crashed), "reliable": not violations,
               "violations": violations}
    _emit(metrics, args.out, "metrics.json")
    if args.out:
        with open(os.path.join(args.out, "trace.jsonl"), "w") as fh:
            for rec in result.records:
                fh.write(rec.to_json() + "\n")
    return 0 if not violations else 1


def cmd_sweep(args) -> int:
    config = _load(args.config)
    if args.seed is not None:
        config["master_seed"] = args.seed
    rows = harness.sweep(config)
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)
    harness.write_csv(rows, os.path.join(out_dir, "sweep.csv"))
    _emit(harness.report(rows), out_dir, "report.json")
    return 0 if all(r.reliable_all for r in rows) else 1


def cmd_fit(args) -> int:
    config = _load(args.config)
    if args.seed is not None:
        config["master_seed"] = args.seed
    rows = harness.sweep(config)
    fit = harness.fit_ratio(rows, threshold=config.get("threshold", 10.0))
    _emit(fit, args.out, "fit.json")
    return 0 if fit["holds"] else 1


def cmd_verify(args) -> int:
    checks = verify.all_checks(seed=args.seed or 0)
    _emit({"checks": [c.to_dict() for c in checks]}, args.out, "verify.json")
    return 0 if all(c.passed for c in checks) else 1


def cmd_poset_check(args) -> int:
    literal = _load(args.config)
    ids = literal.get("ids")
    built = poset.generate(literal, ids)
    cover = poset.min_chain_cover(built)
    anti = poset.max_antichain(built)
    _emit({"elements": len(built.elements), "thickness": len(anti),
           "max_antichain": sorted(anti),
           "chains": len(cover.chains),
           "chain_cover": [list(c) for c in cover.chains]},
          args.out, "poset.json")
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="macdoall",
        description="Simulator for cooperative task performance on a shared channel")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--out", default=None, help="output directory")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn, needs_config in [
        ("run", cmd_run, True), ("sweep", cmd_sweep, True), ("fit", cmd_fit, True),
        ("verify", cmd_verify, False), ("poset-check", cmd_poset_check, True),
    ]:
        sp = sub.add_parser(name, parents=[common])
        if needs_config:
            sp.add_argument("--config", required=True)
        sp.set_defaults(fn=fn)
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ConfigInvalid, FileNotFoundError, KeyError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except SimulationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
