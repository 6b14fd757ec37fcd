"""Run the exact theorem check over the Eisenstein corpus and print a per-level table."""
import argparse
import json
import time

from shimura_kit.shimura import sweep_theorem


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--levels", default="3,4,5,7")
    parser.add_argument("--prec", type=int, default=40)
    parser.add_argument("--random", type=int, default=20, help="random product forms per level")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    levels = [int(x) for x in args.levels.split(",")]
    start = time.perf_counter()
    rep = sweep_theorem(levels, args.prec, args.random, args.seed)
    elapsed = time.perf_counter() - start
    print(f"{'N':>4} {'checks':>8}")
    for N, count in sorted(rep.per_level.items()):
        print(f"{N:>4} {count:>8}")
    print(f"total {rep.checked} checks, {len(rep.failures)} failures, {elapsed:.1f}s")
    for failure in rep.failures[:5]:
        print(json.dumps(failure, sort_keys=True))


if __name__ == "__main__":
    main()
