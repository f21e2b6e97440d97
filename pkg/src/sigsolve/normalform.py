"""Normal forms: the base bimatrix game, its costly-monitoring variant, pure
reduction by strategic equivalence, the zero-cost embedding, and pure-strategy
dominance.

Orientation convention used throughout the package: the receiver picks rows,
the sender picks columns, and each cell stores (sender payoff, receiver
payoff).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .game import (
    ReceiverStrategy,
    ReceiverStrategyC,
    SenderStrategy,
    SignalingGame,
)

ZERO = Fraction(0)

Cell = tuple[Fraction, Fraction]

MONITOR = "monitor"
NO_MONITOR = "no-monitor"


@dataclass(frozen=True)
class CostMeta:
    """Monitoring cost and the per-row monitor flag of an SGCM normal form."""

    cost: Fraction
    monitor_flags: tuple[bool, ...]


@dataclass(frozen=True)
class BimatrixGame:
    row_labels: tuple[object, ...]
    col_labels: tuple[object, ...]
    cells: tuple[tuple[Cell, ...], ...]
    cost_meta: CostMeta | None = None

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_labels), len(self.col_labels)

    def sender_payoff(self, row: int, col: int) -> Fraction:
        return self.cells[row][col][0]

    def receiver_payoff(self, row: int, col: int) -> Fraction:
        return self.cells[row][col][1]

    def sender_matrix(self) -> list[list[Fraction]]:
        return [[cell[0] for cell in row] for row in self.cells]

    def receiver_matrix(self) -> list[list[Fraction]]:
        return [[cell[1] for cell in row] for row in self.cells]


@dataclass(frozen=True)
class StrategyClass:
    """A set of strategically equivalent strategies collapsed to one row/column.

    `representative` is the lexicographically least underlying strategy, with
    nested classes flattened. `partition` tags receiver classes of an SGCM by
    their monitor bit; it is None for other classes (including zero-cost games
    where the two partitions merge).
    """

    representative: object
    members: tuple[object, ...]
    side: str
    partition: str | None = None

    @property
    def label(self) -> str:
        rep = self.representative
        if self.partition == MONITOR and isinstance(rep, ReceiverStrategyC):
            return f"1{''.join(rep.on_message)}*"
        if self.partition == NO_MONITOR and isinstance(rep, ReceiverStrategyC):
            return f"0{'*' * len(rep.on_message)}{rep.default}"
        return label_of(rep)


@dataclass(frozen=True)
class EmbedMap:
    """How zero-cost receiver classes sit inside the base game.

    Monitoring classes are in bijection with the base receiver strategies;
    non-monitoring classes duplicate the message-independent (constant) ones.
    """

    monitor_to_base: dict[StrategyClass, object]
    duplicate_to_base: dict[StrategyClass, object]

    def map_row(self, label: object) -> object:
        if label in self.monitor_to_base:
            return self.monitor_to_base[label]
        if label in self.duplicate_to_base:
            return self.duplicate_to_base[label]
        raise KeyError(f"no embedding recorded for {label}")


@dataclass(frozen=True)
class Elimination:
    side: str
    eliminated: object
    dominator: object
    round: int


def label_of(obj: object) -> str:
    return getattr(obj, "label", str(obj))


def deep_representative(label: object) -> object:
    while isinstance(label, StrategyClass):
        label = label.representative
    return label


def strategy_spaces(game: SignalingGame) -> tuple[tuple[SenderStrategy, ...], tuple[ReceiverStrategy, ...]]:
    """All pure strategies of both players in lexicographic order."""
    senders = tuple(
        SenderStrategy(messages=combo)
        for combo in itertools.product(game.messages, repeat=len(game.types))
    )
    receivers = tuple(
        ReceiverStrategy(actions=combo)
        for combo in itertools.product(game.actions, repeat=len(game.messages))
    )
    return senders, receivers


def strategy_spaces_c(game: SignalingGame) -> tuple[ReceiverStrategyC, ...]:
    """Receiver strategies of the monitored game: (bit, per-message actions, default)."""
    return tuple(
        ReceiverStrategyC(monitor=bit, on_message=combo, default=default)
        for bit in (0, 1)
        for combo in itertools.product(game.actions, repeat=len(game.messages))
        for default in game.actions
    )


def build_normal_form(game: SignalingGame) -> BimatrixGame:
    """Expected-payoff bimatrix of the base signaling game."""
    senders, receivers = strategy_spaces(game)
    msg_index = {m: i for i, m in enumerate(game.messages)}
    cells = []
    for s2 in receivers:
        row = []
        for s1 in senders:
            u1 = u2 = ZERO
            for ti, t in enumerate(game.types):
                m = s1.messages[ti]
                a = s2.actions[msg_index[m]]
                p1, p2 = game.payoff[(t, m, a)]
                u1 += game.prior[t] * p1
                u2 += game.prior[t] * p2
            row.append((u1, u2))
        cells.append(tuple(row))
    return BimatrixGame(row_labels=receivers, col_labels=senders, cells=tuple(cells))


def build_sgcm_normal_form(game: SignalingGame, cost: Fraction) -> BimatrixGame:
    """Bimatrix of the monitored game; the receiver pays `cost` on monitoring rows."""
    if cost < 0:
        raise ValueError(f"monitoring cost must be nonnegative, got {cost}")
    senders, _ = strategy_spaces(game)
    receivers = strategy_spaces_c(game)
    msg_index = {m: i for i, m in enumerate(game.messages)}
    cells = []
    for s2 in receivers:
        row = []
        for s1 in senders:
            u1 = u2 = ZERO
            for ti, t in enumerate(game.types):
                m = s1.messages[ti]
                a = s2.on_message[msg_index[m]] if s2.monitor else s2.default
                p1, p2 = game.payoff[(t, m, a)]
                u1 += game.prior[t] * p1
                u2 += game.prior[t] * p2
            row.append((u1, u2 - cost * s2.monitor))
        cells.append(tuple(row))
    meta = CostMeta(cost=cost, monitor_flags=tuple(bool(s2.monitor) for s2 in receivers))
    return BimatrixGame(row_labels=tuple(receivers), col_labels=senders, cells=tuple(cells), cost_meta=meta)


def with_cost(gamma: BimatrixGame, new_cost: Fraction) -> BimatrixGame:
    """Reprice an SGCM form at a different cost; only monitoring rows change."""
    if gamma.cost_meta is None:
        raise ValueError("game carries no cost metadata")
    if new_cost < 0:
        raise ValueError(f"monitoring cost must be nonnegative, got {new_cost}")
    delta = gamma.cost_meta.cost - new_cost
    cells = tuple(
        tuple((u1, u2 + delta) if flag else (u1, u2) for (u1, u2) in row)
        for row, flag in zip(gamma.cells, gamma.cost_meta.monitor_flags)
    )
    meta = CostMeta(cost=new_cost, monitor_flags=gamma.cost_meta.monitor_flags)
    return BimatrixGame(gamma.row_labels, gamma.col_labels, cells, meta)


def _group_equal(vectors: list[tuple]) -> list[list[int]]:
    groups: dict[tuple, list[int]] = {}
    for idx, vec in enumerate(vectors):
        groups.setdefault(vec, []).append(idx)
    # preserve first-appearance order
    seen: list[list[int]] = []
    order: dict[tuple, int] = {}
    for idx, vec in enumerate(vectors):
        if vec not in order:
            order[vec] = len(seen)
            seen.append(groups[vec])
    return seen


def _partition_tag(gamma: BimatrixGame, member_indices: list[int]) -> str | None:
    if gamma.cost_meta is None:
        return None
    flags = {gamma.cost_meta.monitor_flags[i] for i in member_indices}
    if flags == {True}:
        return MONITOR
    if flags == {False}:
        return NO_MONITOR
    return None


def reduce_normal_form(gamma: BimatrixGame) -> tuple[BimatrixGame, tuple[StrategyClass, ...]]:
    """Collapse strategically equivalent strategies on both sides.

    Two strategies merge exactly when their payoff vectors for both players
    coincide against every opponent strategy. Returns the reduced game (its
    labels are StrategyClass instances) together with all classes, rows first.
    """
    row_vectors = [tuple(row) for row in gamma.cells]
    col_vectors = [tuple(gamma.cells[r][c] for r in range(len(gamma.row_labels))) for c in range(len(gamma.col_labels))]
    row_groups = _group_equal(row_vectors)
    col_groups = _group_equal(col_vectors)

    row_classes = tuple(
        StrategyClass(
            representative=deep_representative(gamma.row_labels[group[0]]),
            members=tuple(gamma.row_labels[i] for i in group),
            side="row",
            partition=_partition_tag(gamma, group),
        )
        for group in row_groups
    )
    col_classes = tuple(
        StrategyClass(
            representative=deep_representative(gamma.col_labels[group[0]]),
            members=tuple(gamma.col_labels[i] for i in group),
            side="col",
        )
        for group in col_groups
    )
    cells = tuple(
        tuple(gamma.cells[rg[0]][cg[0]] for cg in col_groups) for rg in row_groups
    )
    meta = None
    if gamma.cost_meta is not None:
        meta = CostMeta(
            cost=gamma.cost_meta.cost,
            monitor_flags=tuple(gamma.cost_meta.monitor_flags[g[0]] for g in row_groups),
        )
    reduced = BimatrixGame(row_labels=row_classes, col_labels=col_classes, cells=cells, cost_meta=meta)
    return reduced, row_classes + col_classes


def reduced_sgcm_at_zero(game: SignalingGame, reference_cost: Fraction = Fraction(1, 20)) -> BimatrixGame:
    """The reduced monitored form with its class structure frozen at a positive
    cost, then repriced at cost zero.

    At cost zero this game is no longer purely reduced: each non-monitoring
    class duplicates the constant monitoring class with the same action.
    """
    if reference_cost <= 0:
        raise ValueError("reference cost must be positive")
    reduced, _ = reduce_normal_form(build_sgcm_normal_form(game, reference_cost))
    return with_cost(reduced, ZERO)


def embed_map(gamma0: BimatrixGame, gamma: BimatrixGame) -> EmbedMap:
    """Match every receiver class of the zero-cost reduced SGCM form to the
    base receiver strategy with the identical payoff column.

    Raises ValueError when a class has no matching base strategy or when the
    monitoring classes fail to be in bijection with the base strategies; both
    signal a construction bug or a mismatched game pair.
    """
    if gamma0.cost_meta is None or gamma0.cost_meta.cost != 0:
        raise ValueError("first argument must be an SGCM form evaluated at cost zero")
    n_rows0, n_cols0 = gamma0.shape
    n_rows, _ = gamma.shape
    # align sender columns by their underlying strategies (the zero-cost form
    # may have merged payoff-equal sender columns into classes)
    base_col_of = {deep_representative(lbl): j for j, lbl in enumerate(gamma.col_labels)}
    try:
        col_map = [base_col_of[deep_representative(lbl)] for lbl in gamma0.col_labels]
    except KeyError as exc:
        raise ValueError(f"sender strategy {exc} missing from the base form") from exc

    base_rows: dict[tuple, object] = {}
    for r in range(n_rows):
        key = tuple(gamma.cells[r][col_map[c]] for c in range(n_cols0))
        base_rows.setdefault(key, gamma.row_labels[r])
    monitor_to_base: dict[StrategyClass, object] = {}
    duplicate_to_base: dict[StrategyClass, object] = {}
    for r, lbl in enumerate(gamma0.row_labels):
        if not isinstance(lbl, StrategyClass) or lbl.partition is None:
            raise ValueError(f"row {label_of(lbl)} carries no monitor partition tag")
        column = tuple(gamma0.cells[r])
        base = base_rows.get(column)
        if base is None:
            raise ValueError(f"no base strategy matches the payoffs of class {lbl.label}")
        if lbl.partition == MONITOR:
            monitor_to_base[lbl] = base
        else:
            duplicate_to_base[lbl] = base
    images = list(monitor_to_base.values())
    if len(set(images)) != len(images) or set(images) != set(gamma.row_labels):
        raise ValueError("monitoring classes are not in bijection with the base receiver strategies")
    return EmbedMap(monitor_to_base=monitor_to_base, duplicate_to_base=duplicate_to_base)


def _dominates(a: Sequence[Fraction], b: Sequence[Fraction], mode: str) -> bool:
    """Does payoff vector a dominate b?"""
    if mode == "strict":
        return all(x > y for x, y in zip(a, b))
    return all(x >= y for x, y in zip(a, b)) and any(x > y for x, y in zip(a, b))


def dominance_filter(
    gamma: BimatrixGame, mode: str = "strict", iterate: bool = False
) -> tuple[BimatrixGame, tuple[Elimination, ...]]:
    """Remove pure strategies dominated by another pure strategy.

    Each round marks every strategy dominated by some strategy alive at the
    round's start (the recorded dominator is the first such in label order),
    removes them all, and repeats when `iterate` is set.
    """
    if mode not in ("strict", "weak"):
        raise ValueError(f"unknown dominance mode {mode!r}")
    rows = list(range(len(gamma.row_labels)))
    cols = list(range(len(gamma.col_labels)))
    trace: list[Elimination] = []
    round_no = 0
    while True:
        round_no += 1
        row_payoff = {r: [gamma.receiver_payoff(r, c) for c in cols] for r in rows}
        col_payoff = {c: [gamma.sender_payoff(r, c) for r in rows] for c in cols}
        doomed_rows = {}
        for r in rows:
            for other in rows:
                if other != r and _dominates(row_payoff[other], row_payoff[r], mode):
                    doomed_rows[r] = other
                    break
        doomed_cols = {}
        for c in cols:
            for other in cols:
                if other != c and _dominates(col_payoff[other], col_payoff[c], mode):
                    doomed_cols[c] = other
                    break
        if not doomed_rows and not doomed_cols:
            break
        for r, dom in doomed_rows.items():
            trace.append(Elimination("row", gamma.row_labels[r], gamma.row_labels[dom], round_no))
        for c, dom in doomed_cols.items():
            trace.append(Elimination("col", gamma.col_labels[c], gamma.col_labels[dom], round_no))
        rows = [r for r in rows if r not in doomed_rows]
        cols = [c for c in cols if c not in doomed_cols]
        if not iterate:
            break
    meta = None
    if gamma.cost_meta is not None:
        meta = CostMeta(gamma.cost_meta.cost, tuple(gamma.cost_meta.monitor_flags[r] for r in rows))
    filtered = BimatrixGame(
        row_labels=tuple(gamma.row_labels[r] for r in rows),
        col_labels=tuple(gamma.col_labels[c] for c in cols),
        cells=tuple(tuple(gamma.cells[r][c] for c in cols) for r in rows),
        cost_meta=meta,
    )
    return filtered, tuple(trace)
