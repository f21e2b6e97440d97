#!/usr/bin/env python3
"""Audit the enumeration and index machinery on random bimatrix games.

For each sampled nondegenerate game: every enumerated equilibrium must verify
exactly, the count must be odd, and the determinant indices must sum to +1.
Exits nonzero on the first violation.
"""

import argparse
import random
import sys
from fractions import Fraction

from sigsolve.equilibrium import enumerate_extreme_equilibria, is_equilibrium
from sigsolve.indices import equilibrium_index
from sigsolve.normalform import BimatrixGame


def random_bimatrix(rng: random.Random, rows: int, cols: int) -> BimatrixGame:
    u1 = rng.sample(range(1000), rows * cols)
    u2 = rng.sample(range(1000), rows * cols)
    cells = tuple(
        tuple((Fraction(u1[r * cols + c]), Fraction(u2[r * cols + c])) for c in range(cols))
        for r in range(rows)
    )
    return BimatrixGame(
        row_labels=tuple(f"r{i}" for i in range(rows)),
        col_labels=tuple(f"c{j}" for j in range(cols)),
        cells=cells,
    )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--games", type=int, default=100)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--max-size", type=int, default=4)
    args = parser.parse_args()

    rng = random.Random(args.seed)
    audited = 0
    skipped = 0
    counts: dict[int, int] = {}
    while audited < args.games:
        gamma = random_bimatrix(rng, rng.randint(2, args.max_size), rng.randint(2, args.max_size))
        result = enumerate_extreme_equilibria(gamma)
        if result.degenerate:
            skipped += 1
            continue
        total_index = 0
        for eq in result:
            if not is_equilibrium(gamma, (eq.row_mix, eq.col_mix)).ok:
                print(f"FAIL: non-equilibrium enumerated in game {audited}")
                return 1
            total_index += equilibrium_index(gamma, eq).value
        if len(result) % 2 == 0:
            print(f"FAIL: even equilibrium count {len(result)} in game {audited}")
            return 1
        if total_index != 1:
            print(f"FAIL: index sum {total_index} in game {audited}")
            return 1
        counts[len(result)] = counts.get(len(result), 0) + 1
        audited += 1
    print(f"audited {audited} games ({skipped} degenerate draws skipped)")
    for count in sorted(counts):
        print(f"  {counts[count]:>4} games with {count} equilibria")
    print("all equilibria exact, counts odd, index sums +1")
    return 0


if __name__ == "__main__":
    sys.exit(main())
