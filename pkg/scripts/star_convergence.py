#!/usr/bin/env python3
"""Estimate the action distance from growing stars to their rank-one limit.

Runs the star-vs-broadcast experiment over a size sweep and prints the
trajectory; outputs land in star_convergence_out/ (manifest, per-size
reports, trajectory CSV).
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
    ap.add_argument("--out", default="star_convergence_out")
    args = ap.parse_args()

    cfg = ExperimentConfig(
        experiment="star_vs_broadcast",
        graph_a="star:{n}",
        graph_b="broadcast:{n}:0",
        sizes=tuple(args.sizes),
        K=args.K,
        count=args.count,
        seed=args.seed,
        out=args.out,
    )
    outdir = run_experiment(cfg)
    print((Path(outdir) / "trajectory.csv").read_text(), end="")


if __name__ == "__main__":
    main()
