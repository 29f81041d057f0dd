"""Measure how board size and tariff grow with the instance size n = variables + clauses.

usage: python3 scripts/measure_growth.py [--max-k 12] [--seed 0] [--random 20]

Two families are reduced: implication chains (x1 or not x2), (x2 or not x3), ...
and seeded random planar formulas.  The script prints one row per instance
and the least-squares exponents of board cells and tariff against n.
"""
import argparse
import random
import time

from wallqueens.acceptance import growth_exponent
from wallqueens.reduce import Formula, NonPlanar, reduce


def chain(k: int) -> Formula:
    return Formula(k + 1, tuple((i, -(i + 1)) for i in range(1, k + 1)))


def random_formula(rng: random.Random, nvars: int, nclauses: int) -> Formula:
    clauses = []
    for _ in range(nclauses):
        vs = rng.sample(range(1, nvars + 1), min(nvars, rng.randint(1, 3)))
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return Formula(nvars, tuple(clauses))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-k", type=int, default=12, help="longest implication chain")
    ap.add_argument("--random", type=int, default=20, help="number of random formulas")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    formulas = [chain(k) for k in range(1, args.max_k + 1)]
    while len(formulas) < args.max_k + args.random:
        nv = rng.randint(2, 8)
        formulas.append(random_formula(rng, nv, rng.randint(1, 2 * nv)))
    cells, tariffs = [], []
    print(f"{'n':>4} {'plan':>8} {'cells':>9} {'m':>7} {'secs':>6}")
    for f in formulas:
        t0 = time.perf_counter()
        try:
            out = reduce(f)
        except NonPlanar:
            continue
        n = len(f.used_variables()) + len(f.clauses)
        c = out.board.width * out.board.height
        cells.append((n, c))
        tariffs.append((n, out.tariff))
        plan = f"{out.plan.width}x{out.plan.height}"
        print(f"{n:4d} {plan:>8} {c:9d} {out.tariff:7d} {time.perf_counter() - t0:6.2f}")
    print(f"cells grow like n^{growth_exponent(cells):.2f}; tariff grows like n^{growth_exponent(tariffs):.2f}")


if __name__ == "__main__":
    main()
