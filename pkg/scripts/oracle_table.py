"""Compare exact q-series values with truncated lattice sums.

Prints the plain box error and the error after extrapolating in the cutoff,
so the convergence rate of the box sum is visible next to the tolerance.
"""
import argparse
import random

from shimura_kit.eisenstein import (
    EisSymbol,
    eisenstein_qexp,
    lattice_sum_extrapolated,
    lattice_sum_numeric,
    terms_for,
)


def rel(a, b):
    return abs(a - b) / abs(a) if abs(a) > 1e-12 else abs(a - b)


def fmt(tau):
    return f"{tau.real:.3f}+{tau.imag:.3f}i"


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=6)
    parser.add_argument("--cutoff", type=int, default=400)
    parser.add_argument("--vectors", type=int, default=2)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    print(f"{'N':>3} {'k':>2} {'v':>8} {'tau':>12} {'box':>9} {'extrap':>9}")
    for N in range(1, args.max_n + 1):
        for k in (3, 4, 5):
            for _ in range(args.vectors):
                sym = EisSymbol(N, k, rng.randrange(N), rng.randrange(N))
                for tau in (1j, 1 / 3 + 1j):
                    exact = eisenstein_qexp(sym, terms_for(tau, N, k)).eval_numeric(tau)
                    box = lattice_sum_numeric(sym, tau, args.cutoff)
                    extrap = lattice_sum_extrapolated(sym, tau, args.cutoff)
                    print(f"{N:>3} {k:>2} {str(sym.vector):>8} {fmt(tau):>12} "
                          f"{rel(exact, box):9.1e} {rel(exact, extrap):9.1e}")


if __name__ == "__main__":
    main()
