"""Command-line interface.

Subcommands: verify (claim checks as JSON lines), profile (sample and save
profile measures), dist (Levy-Prokhorov or Hausdorff distances), actiondist
(truncated action-metric estimate), limit (emit limit-approximant operator
JSON), experiment (config-driven runs with manifest and CSV output).
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import harness, lp_metric, measures, profiles

__all__ = ["main", "build_parser"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="actionlim", description=__doc__.strip().splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit machine-readable JSON on stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument("--suite", default="all", help="suite name or 'all'")
    p_verify.add_argument("--out", help="also write JSON-lines records to this file")
    p_verify.add_argument("--time-guard", type=float, default=120.0, help="skip suites estimated above this many seconds")

    p_profile = sub.add_parser("profile", help="sample k-profile measures of an operator")
    p_profile.add_argument("--graph", required=True, help="operator spec, e.g. star:100 or gplus:cycle:8")
    p_profile.add_argument("-k", type=int, default=1, help="profile order")
    p_profile.add_argument("--kind", default="mixed", choices=profiles.STRATEGY_KINDS)
    p_profile.add_argument("--count", type=int, default=64)
    p_profile.add_argument("--seed", type=int, default=0)
    p_profile.add_argument("--probe-vertex", type=int, default=None)
    p_profile.add_argument("--out", required=True, help="output directory for measure JSON files")

    p_dist = sub.add_parser("dist", help="distances between measures or measure sets")
    dist_sub = p_dist.add_subparsers(dest="metric", required=True)
    p_lp = dist_sub.add_parser("lp", help="Levy-Prokhorov distance between two measure files")
    p_lp.add_argument("file_a")
    p_lp.add_argument("file_b")
    p_lp.add_argument("--brute-force", action="store_true", help="use the subset-enumeration engine")
    p_h = dist_sub.add_parser("hausdorff", help="Hausdorff distance between two directories of measures")
    p_h.add_argument("dir_a")
    p_h.add_argument("dir_b")

    p_ad = sub.add_parser("actiondist", help="truncated action-metric estimate between operators")
    p_ad.add_argument("--a", required=True, help="operator spec for the first operator")
    p_ad.add_argument("--b", required=True, help="operator spec for the second operator")
    p_ad.add_argument("-K", type=int, default=3, help="truncation order")
    p_ad.add_argument("--kind", default="mixed", choices=profiles.STRATEGY_KINDS)
    p_ad.add_argument("--count", type=int, default=64)
    p_ad.add_argument("--seed", type=int, default=0)
    p_ad.add_argument("--probe-a", type=int, default=None, help="probe vertex on operator a (switches to vertex_probe)")
    p_ad.add_argument("--probe-b", type=int, default=None, help="probe vertex on operator b (switches to vertex_probe)")

    p_limit = sub.add_parser("limit", help="emit a limit-approximant operator as JSON")
    limit_sub = p_limit.add_subparsers(dest="family", required=True)
    p_bc = limit_sub.add_parser("broadcast", help="rank-one broadcast matrix")
    p_bc.add_argument("--n", type=int, required=True)
    p_bc.add_argument("--i", type=int, default=0, help="distinguished column")
    p_bc.add_argument("--out", help="write operator JSON here instead of stdout")
    p_sg = limit_sub.add_parser("signed", help="base operator plus or minus the broadcast matrix")
    p_sg.add_argument("--graph", required=True, help="base operator spec")
    p_sg.add_argument("--i", type=int, default=0, help="distinguished column")
    p_sg.add_argument("--sign", choices=["+", "-", "+1", "-1"], required=True)
    p_sg.add_argument("--out", help="write operator JSON here instead of stdout")

    p_exp = sub.add_parser("experiment", help="run a config-driven experiment")
    p_exp.add_argument("--config", help="flat key=value config file")
    p_exp.add_argument("--set", action="append", default=[], metavar="KEY=VALUE", help="override a config key")
    p_exp.add_argument("--out", help="override the output directory")
    p_exp.add_argument("--seed", type=int, help="override the sampling seed")
    return parser


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload) if args.json else text)


def _cmd_verify(args) -> int:
    records = harness.run_verify(args.suite, out=args.out, time_guard=args.time_guard)
    for r in records:
        if args.json:
            print(json.dumps(r.to_dict()))
        else:
            status = {True: "PASS", False: "FAIL"}.get(r.passed, "SKIP")
            print(f"[{status}] {r.id}: expected {r.expected}; measured {r.measured} ({r.ms:.0f} ms)")
    failed = [r for r in records if r.passed is False]
    if failed and not args.json:
        print(f"{len(failed)} of {len(records)} checks failed", file=sys.stderr)
    return 1 if failed else 0


def _strategy_from_args(args, probe) -> profiles.TestFunctionStrategy:
    kind = args.kind
    if probe is not None and kind != "vertex_probe":
        kind = "vertex_probe"
    return profiles.TestFunctionStrategy(kind, count=args.count, seed=args.seed, probe_vertex=probe)


def _cmd_profile(args) -> int:
    op = harness.parse_operator_spec(args.graph)
    strat = _strategy_from_args(args, args.probe_vertex)
    sample = profiles.profile_sample(op, args.k, strat)
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    names = []
    for i, mu in enumerate(sample.measures):
        name = f"measure_{i:04d}.json"
        (outdir / name).write_text(mu.to_json() + "\n")
        names.append(name)
    manifest = {
        "operator": sample.operator_id,
        "k": sample.k,
        "strategy": strat.fingerprint(),
        "files": names,
    }
    (outdir / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")
    _emit(args, manifest, f"wrote {len(names)} measures to {outdir}")
    return 0


def _load_measure_dir(path: str) -> list[measures.DiscreteMeasure]:
    files = sorted(p for p in Path(path).glob("*.json") if p.name != "manifest.json")
    if not files:
        raise SystemExit(f"no measure files in {path}")
    return [measures.DiscreteMeasure.from_json(p.read_text()) for p in files]


def _cmd_dist(args) -> int:
    if args.metric == "lp":
        a = measures.DiscreteMeasure.from_json(Path(args.file_a).read_text())
        b = measures.DiscreteMeasure.from_json(Path(args.file_b).read_text())
        res = lp_metric.lp_distance_bruteforce(a, b) if args.brute_force else lp_metric.lp_distance(a, b)
        _emit(args, {"metric": "lp", "value": res.value, "method": res.method}, repr(res.value))
    else:
        res = lp_metric.hausdorff(_load_measure_dir(args.dir_a), _load_measure_dir(args.dir_b))
        _emit(args, {"metric": "hausdorff", "value": res.value, "argmax_side": res.argmax_side}, repr(res.value))
    return 0


def _cmd_actiondist(args) -> int:
    op_a = harness.parse_operator_spec(args.a)
    op_b = harness.parse_operator_spec(args.b)
    strat_a = _strategy_from_args(args, args.probe_a)
    strat_b = _strategy_from_args(args, args.probe_b) if args.probe_b is not None else None
    report = profiles.action_distance_estimate(op_a, op_b, args.K, strat_a, strat_b)
    text = f"estimate {report.value!r} (truncated at K={report.truncation_k}, tail bound {report.tail_bound})"
    _emit(args, report.to_dict(), text)
    return 0


def _cmd_limit(args) -> int:
    if args.family == "broadcast":
        from .limits import broadcast

        op = broadcast(args.n, args.i)
    else:
        from .limits import signed_limit

        sign = 1 if args.sign in ("+", "+1") else -1
        op = signed_limit(harness.parse_operator_spec(args.graph), args.i, sign)
    payload = json.dumps(op.to_dict(), indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(payload)
        _emit(args, {"written": args.out, "name": op.name}, f"wrote {op.name} to {args.out}")
    else:
        print(payload, end="")
    return 0


def _cmd_experiment(args) -> int:
    overrides: dict = {}
    for item in args.set:
        key, sep, value = item.partition("=")
        if not sep:
            raise SystemExit(f"--set expects KEY=VALUE, got {item!r}")
        overrides[key.strip()] = value.strip()
    if args.out is not None:
        overrides["out"] = args.out
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.config:
        cfg = harness.ExperimentConfig.from_file(args.config, overrides)
    else:
        cfg = harness.ExperimentConfig.from_mapping(overrides)
    outdir = harness.run_experiment(cfg)
    _emit(args, {"out": str(outdir), "experiment": cfg.experiment}, f"experiment {cfg.experiment} written to {outdir}")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "verify": _cmd_verify,
        "profile": _cmd_profile,
        "dist": _cmd_dist,
        "actiondist": _cmd_actiondist,
        "limit": _cmd_limit,
        "experiment": _cmd_experiment,
    }
    return handlers[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
