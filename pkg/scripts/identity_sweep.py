"""Worst relative error of the single-minor identity over random instances."""

import argparse

import numpy as np

from sympdet.baseline import decompose_baseline, s_vectors_from_S
from sympdet.bench import bench_lambdas
from sympdet.identities import relative_gap, single_minor_sides
from sympdet.sympbase import random_covariance


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--instances", type=int, default=100)
    parser.add_argument("--max-modes", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for i in range(args.instances):
        d = int(rng.integers(1, args.max_modes + 1))
        inst = random_covariance(d, bench_lambdas(d, rng), seed=int(rng.integers(2**31)))
        ref = decompose_baseline(inst.V)
        s = s_vectors_from_S(ref.S)
        for m in range(d):
            for k in range(2 * d):
                for l in range(2 * d):
                    lhs, rhs = single_minor_sides(inst.V, ref.lambdas, m, k, l, s)
                    worst = max(worst, relative_gap(lhs, rhs, floor=0.0) if max(abs(lhs), abs(rhs)) > 0 else 0.0)
    print(f"worst relative error over {args.instances} instances: {worst:.2e}")


if __name__ == "__main__":
    main()
