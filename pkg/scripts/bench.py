"""Time the determinant method against the baseline across mode counts."""

import argparse

from sympdet.bench import run_bench, to_csv, to_table


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--modes", default="2,4,8,12,16,20")
    parser.add_argument("--trials", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--csv", default=None)
    args = parser.parse_args(argv)
    rows = run_bench([int(v) for v in args.modes.split(",")], args.trials, args.seed)
    print(to_table(rows), end="")
    by_d = {}
    for r in rows:
        by_d.setdefault(r.d, {})[r.method] = r.median_ms
    for d, t in by_d.items():
        print(f"d={d}: det/baseline time ratio {t['det'] / t['baseline']:.1f}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(to_csv(rows))


if __name__ == "__main__":
    main()
