#!/usr/bin/env python3
"""Estimate the action distance from apex-augmented cycles to a signed limit.

Compares the cycle-plus-apex operator on n+1 vertices against the cycle
adjacency with the broadcast matrix added on a distinguished coordinate,
probing the apex on one side and the distinguished coordinate on the other.
"""
import argparse
from pathlib import Path

from actionlim.harness import ExperimentConfig, run_experiment


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[8, 16, 32, 64, 128])
    ap.add_argument("--count", type=int, default=64)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("-K", type=int, default=3)
    ap.add_argument("--out", default="gplus_limit_out")
    args = ap.parse_args()

    cfg = ExperimentConfig(
        experiment="gplus_vs_signed",
        graph_a="gplus:cycle:{n}",
        graph_b="signed:+1:0:cycle:{n1}",
        sizes=tuple(args.sizes),
        K=args.K,
        count=args.count,
        seed=args.seed,
        strategy="vertex_probe",
        probe_a="last",
        probe_b="0",
        out=args.out,
    )
    outdir = run_experiment(cfg)
    print((Path(outdir) / "trajectory.csv").read_text(), end="")


if __name__ == "__main__":
    main()
