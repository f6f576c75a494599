#!/usr/bin/env python3
"""Benchmark the factored easy-path evaluator against exact enumeration.

Builds random parity-tree formulas (always consistent, one connected
component) at growing sizes, times the factored evaluation at the all-ones
point, and cross-checks the small sizes against brute-force enumeration.
"""

import argparse
import random
import time
from fractions import Fraction

from satpoly.easy_eval import easy_evaluate
from satpoly.formulas import Formula, eval_formula_poly
from satpoly.relations import BUILTIN_RELATIONS


def parity_tree(rng: random.Random, n: int) -> Formula:
    eq, ne = BUILTIN_RELATIONS["EQ"], BUILTIN_RELATIONS["NE"]
    cons = tuple(
        (eq if rng.random() < 0.5 else ne, (rng.randrange(v), v)) for v in range(1, n)
    )
    return Formula(n, cons)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument(
        "--sizes", default="10,100,1000,10000,100000", help="comma-separated variable counts"
    )
    args = parser.parse_args()
    rng = random.Random(args.seed)
    print(f"{'vars':>8} {'factored':>12} {'enumeration':>12}  value")
    for n in [int(s) for s in args.sizes.split(",")]:
        f = parity_tree(rng, n)
        ones = [Fraction(1)] * n
        t0 = time.perf_counter()
        fast = easy_evaluate(f, ones)
        t_fast = time.perf_counter() - t0
        if n <= 20:
            t0 = time.perf_counter()
            brute = eval_formula_poly(f, ones)
            t_brute = time.perf_counter() - t0
            assert brute == fast
            brute_s = f"{t_brute * 1e3:9.2f}ms"
        else:
            brute_s = "skipped"
        print(f"{n:>8} {t_fast * 1e3:>10.2f}ms {brute_s:>12}  {fast}")


if __name__ == "__main__":
    main()
