"""Ready-made games used across tests, scripts, and documentation."""

from __future__ import annotations

from fractions import Fraction

from .game import SignalingGame
from .normalform import BimatrixGame

F = Fraction

BEER_QUICHE_TEXT = """\
types: S:9/10 W:1/10
messages: B Q
actions: F N
payoffs:
S B F 1 0
S B N 3 1
S Q F 0 0
S Q N 2 1
W B F 0 1
W B N 2 0
W Q F 1 1
W Q N 3 0
"""


def beer_quiche() -> SignalingGame:
    """Strong/weak sender signals through breakfast; the receiver duels or not.

    The sender gains 1 for her type's favorite breakfast (beer when strong,
    quiche when weak) and 2 for avoiding a duel. The receiver gains 1 for
    dueling the weak type or leaving the strong type alone.
    """
    payoff = {
        ("S", "B", "F"): (F(1), F(0)),
        ("S", "B", "N"): (F(3), F(1)),
        ("S", "Q", "F"): (F(0), F(0)),
        ("S", "Q", "N"): (F(2), F(1)),
        ("W", "B", "F"): (F(0), F(1)),
        ("W", "B", "N"): (F(2), F(0)),
        ("W", "Q", "F"): (F(1), F(1)),
        ("W", "Q", "N"): (F(3), F(0)),
    }
    return SignalingGame(
        types=("S", "W"),
        messages=("B", "Q"),
        actions=("F", "N"),
        prior={"S": F(9, 10), "W": F(1, 10)},
        payoff=payoff,
    )


def matching_pennies() -> BimatrixGame:
    """Row wants to match, column wants to mismatch; unique mixed equilibrium."""
    cells = (
        ((F(-1), F(1)), (F(1), F(-1))),
        ((F(1), F(-1)), (F(-1), F(1))),
    )
    return BimatrixGame(row_labels=("H", "T"), col_labels=("h", "t"), cells=cells)


def coordination_2x2() -> BimatrixGame:
    """Two strict pure equilibria on the diagonal plus one mixed equilibrium."""
    cells = (
        ((F(3), F(3)), (F(0), F(1))),
        ((F(1), F(0)), (F(2), F(2))),
    )
    return BimatrixGame(row_labels=("A", "B"), col_labels=("a", "b"), cells=cells)
