"""Shared test utilities: random game generation and an independent
brute-force equilibrium oracle built on sympy (deliberately not the package's
own linear algebra)."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

import sympy

from sigsolve.equilibrium import enumerate_extreme_equilibria
from sigsolve.normalform import BimatrixGame

F = Fraction

# Golden payoff pairs (sender, receiver-before-cost) for the beer-quiche
# tables, keyed by the classic row labels; columns are BB, BQ, QB, QQ.
TABLE_ONE = {
    "FF": ((F("0.9"), F("0.1")), (F(1), F("0.1")), (F(0), F("0.1")), (F("0.1"), F("0.1"))),
    "FN": ((F("2.9"), F("0.9")), (F("2.8"), F(1)), (F("0.2"), F(0)), (F("0.1"), F("0.1"))),
    "NF": ((F("0.9"), F("0.1")), (F("1.2"), F(0)), (F("1.8"), F(1)), (F("2.1"), F("0.9"))),
    "NN": ((F("2.9"), F("0.9")), (F(3), F("0.9")), (F(2), F("0.9")), (F("2.1"), F("0.9"))),
}

# Monitored game rows: (payoff row, pays-the-cost flag). The CNFN row is
# derived from the strategic-equivalence rule (it must equal CFFN); the
# classic printed table disagrees with itself there.
TABLE_TWO = {}
for _default in "FN":
    for _qb, _row in TABLE_ONE.items():
        TABLE_TWO[f"C{_default}{_qb}"] = (_row, True)
for _quiche in "FN":
    for _beer in "FN":
        TABLE_TWO[f"0F{_quiche}{_beer}"] = (TABLE_ONE["FF"], False)
        TABLE_TWO[f"0N{_quiche}{_beer}"] = (TABLE_ONE["NN"], False)

# Reduced monitored game. The C*FF row equals its class members CFFF/CNFF
# cell for cell (the printed reduced table carries a stray 1-c at C*FF/QB
# where the class members and the game rules force 0.1-c).
TABLE_THREE = {
    "C*FF": (TABLE_ONE["FF"], True),
    "C*FN": (TABLE_ONE["FN"], True),
    "C*NF": (TABLE_ONE["NF"], True),
    "C*NN": (TABLE_ONE["NN"], True),
    "0F**": (TABLE_ONE["FF"], False),
    "0N**": (TABLE_ONE["NN"], False),
}


def random_bimatrix(rng: random.Random, rows: int, cols: int) -> BimatrixGame:
    """Integer payoffs drawn without replacement per player, so no ties."""
    u1 = rng.sample(range(1000), rows * cols)
    u2 = rng.sample(range(1000), rows * cols)
    cells = tuple(
        tuple((F(u1[r * cols + c]), F(u2[r * cols + c])) for c in range(cols))
        for r in range(rows)
    )
    return BimatrixGame(
        row_labels=tuple(f"r{i}" for i in range(rows)),
        col_labels=tuple(f"c{j}" for j in range(cols)),
        cells=cells,
    )


def random_nondegenerate_games(count: int, seed: int, max_size: int = 4):
    """Yield `count` games whose best-response polytopes have simple vertices."""
    rng = random.Random(seed)
    produced = 0
    while produced < count:
        rows = rng.randint(2, max_size)
        cols = rng.randint(2, max_size)
        gamma = random_bimatrix(rng, rows, cols)
        result = enumerate_extreme_equilibria(gamma)
        if result.degenerate:
            continue
        produced += 1
        yield gamma, result


def _to_sympy(value: Fraction):
    return sympy.Rational(value.numerator, value.denominator)


def brute_force_equilibria(gamma: BimatrixGame) -> set:
    """All equilibria with equal-size supports, via sympy linear solves.

    Complete for nondegenerate games, where every equilibrium has equal
    support sizes and each support pair admits at most one solution.
    """
    m, n = gamma.shape
    A = [[_to_sympy(gamma.receiver_payoff(i, j)) for j in range(n)] for i in range(m)]
    B = [[_to_sympy(gamma.sender_payoff(i, j)) for j in range(n)] for i in range(m)]
    found = set()
    for size in range(1, min(m, n) + 1):
        for I in itertools.combinations(range(m), size):
            for J in itertools.combinations(range(n), size):
                # x on I keeps the column player indifferent across J
                rows = [[B[i][j] for i in I] + [sympy.Integer(-1)] for j in J]
                rows.append([sympy.Integer(1)] * size + [sympy.Integer(0)])
                rhs = [sympy.Integer(0)] * size + [sympy.Integer(1)]
                try:
                    x_sol = sympy.Matrix(rows).solve(sympy.Matrix(rhs))
                except Exception:
                    continue
                cols = [[A[i][j] for j in J] + [sympy.Integer(-1)] for i in I]
                cols.append([sympy.Integer(1)] * size + [sympy.Integer(0)])
                try:
                    y_sol = sympy.Matrix(cols).solve(sympy.Matrix(rhs))
                except Exception:
                    continue
                xs = list(x_sol[:size])
                ys = list(y_sol[:size])
                if any(v <= 0 for v in xs) or any(v <= 0 for v in ys):
                    continue
                x_full = [sympy.Integer(0)] * m
                y_full = [sympy.Integer(0)] * n
                for idx, i in enumerate(I):
                    x_full[i] = xs[idx]
                for idx, j in enumerate(J):
                    y_full[j] = ys[idx]
                best_row = max(sum(A[i][j] * y_full[j] for j in range(n)) for i in range(m))
                best_col = max(sum(B[i][j] * x_full[i] for i in range(m)) for j in range(n))
                if any(sum(A[i][j] * y_full[j] for j in range(n)) != best_row for i in I):
                    continue
                if any(sum(B[i][j] * x_full[i] for i in range(m)) != best_col for j in J):
                    continue
                key = (
                    tuple(F(int(v.p), int(v.q)) for v in x_full),
                    tuple(F(int(v.p), int(v.q)) for v in y_full),
                )
                found.add(key)
    return found
