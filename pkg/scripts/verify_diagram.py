"""Exhaustive finite check of the level-structure diagram for N = 2..max_n."""
import argparse
import json
import time

from shimura_kit.levelstruct import sweep_diagram


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=12)
    parser.add_argument("--samples", type=int, default=2,
                        help="random level structures checked per (g, lambda) besides the identity")
    args = parser.parse_args()

    start = time.perf_counter()
    rep = sweep_diagram(range(2, args.max_n + 1), samples=args.samples)
    elapsed = time.perf_counter() - start
    print(f"checked {rep.checked} cases in {elapsed:.2f}s, {len(rep.failures)} failures")
    for failure in rep.failures[:5]:
        print(json.dumps(failure, sort_keys=True))


if __name__ == "__main__":
    main()
