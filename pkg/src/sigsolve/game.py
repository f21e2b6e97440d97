"""Core model: signaling games, strategies, plays, and outcomes.

A signaling game couples a typed sender (player 1, picks a message after
learning her type) with a receiver (player 2, picks an action). The costly
monitoring variant gives the receiver a prior binary choice: pay a cost to
observe the message, or act on a message-independent default.

All probabilities and payoffs are Fractions; every operation here is a pure
function over immutable values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Union

from .rational import sqrt_decimal

Play = tuple[str, str, str]
PlayC = tuple[str, str, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class SignalingGame:
    """Types, messages, actions, the prior over types, and the payoff table.

    `payoff[(t, m, a)]` is the pair (sender payoff, receiver payoff). Label
    tuples keep their declared order; that order drives every enumeration.
    """

    types: tuple[str, ...]
    messages: tuple[str, ...]
    actions: tuple[str, ...]
    prior: Mapping[str, Fraction]
    payoff: Mapping[tuple[str, str, str], tuple[Fraction, Fraction]]


@dataclass(frozen=True, order=True)
class SenderStrategy:
    """A message per type, aligned with the game's declared type order."""

    messages: tuple[str, ...]

    @property
    def label(self) -> str:
        return "".join(self.messages) if all(len(m) == 1 for m in self.messages) else ",".join(self.messages)


@dataclass(frozen=True, order=True)
class ReceiverStrategy:
    """An action per message, aligned with the declared message order."""

    actions: tuple[str, ...]

    @property
    def label(self) -> str:
        return "".join(self.actions) if all(len(a) == 1 for a in self.actions) else ",".join(self.actions)


@dataclass(frozen=True, order=True)
class ReceiverStrategyC:
    """Receiver strategy in the monitored game.

    `monitor` is the binary choice to pay the cost, `on_message` the action
    taken after each observed message, `default` the action when the message
    went unobserved. Payoffs never depend on `on_message` when monitor=0 and
    never on `default` when monitor=1.
    """

    monitor: int
    on_message: tuple[str, ...]
    default: str

    @property
    def label(self) -> str:
        return f"{self.monitor}{''.join(self.on_message)}{self.default}"


ReceiverLike = Union[ReceiverStrategy, ReceiverStrategyC]


@dataclass(frozen=True)
class MixedProfile:
    """Mixed strategies for both players; weights are exact and sum to one."""

    sender: Mapping[SenderStrategy, Fraction]
    receiver: Mapping[ReceiverLike, Fraction]


@dataclass(frozen=True)
class Outcome:
    """Probability distribution over plays, zeros included.

    `monitored` outcomes live on (type, message, monitor bit, action)
    quadruples, plain ones on (type, message, action) triples.
    """

    masses: Mapping[tuple, Fraction]
    monitored: bool

    def support(self) -> tuple:
        return tuple(play for play, mass in self.masses.items() if mass > 0)

    def total(self) -> Fraction:
        return sum(self.masses.values(), ZERO)


@dataclass(frozen=True)
class DistanceResult:
    squared: Fraction
    approx: str


def validate_game(game: SignalingGame) -> list[str]:
    """Report every violated invariant; an empty list means the game is valid."""
    problems: list[str] = []
    for name, labels in (("types", game.types), ("messages", game.messages), ("actions", game.actions)):
        if not labels:
            problems.append(f"{name} empty")
        if len(set(labels)) != len(labels):
            problems.append(f"{name} contain duplicates")
    if set(game.prior) != set(game.types):
        problems.append("prior keys do not match the type list")
    else:
        total = sum(game.prior.values(), ZERO)
        if total != 1:
            problems.append(f"prior sums to {total}")
        for t in game.types:
            if game.prior[t] <= 0:
                problems.append(f"prior of {t} is {game.prior[t]}, must be positive")
    expected = {(t, m, a) for t in game.types for m in game.messages for a in game.actions}
    missing = expected - set(game.payoff)
    extra = set(game.payoff) - expected
    for key in sorted(missing):
        problems.append(f"payoff missing for {key}")
    for key in sorted(extra):
        problems.append(f"payoff defined for unknown triple {key}")
    return problems


def enumerate_plays(game: SignalingGame, monitored: bool = False) -> list[tuple]:
    """All plays in lexicographic order of the declared labels."""
    if monitored:
        return [
            (t, m, bit, a)
            for t in game.types
            for m in game.messages
            for bit in (0, 1)
            for a in game.actions
        ]
    return [(t, m, a) for t in game.types for m in game.messages for a in game.actions]


def _check_weights(weights: Mapping, side: str) -> None:
    total = sum(weights.values(), ZERO)
    if total != 1:
        raise ValueError(f"{side} weights sum to {total}, expected 1")
    for strat, w in weights.items():
        if w < 0:
            raise ValueError(f"{side} weight for {strat} is negative")


def _check_profile(game: SignalingGame, profile: MixedProfile, monitored: bool) -> None:
    _check_weights(profile.sender, "sender")
    _check_weights(profile.receiver, "receiver")
    for s1 in profile.sender:
        if len(s1.messages) != len(game.types) or any(m not in game.messages for m in s1.messages):
            raise ValueError(f"sender strategy {s1} does not fit the game")
    for s2 in profile.receiver:
        if monitored:
            if not isinstance(s2, ReceiverStrategyC):
                raise ValueError("monitored outcome requested but receiver strategy lacks a monitor bit")
            ok = (
                s2.monitor in (0, 1)
                and len(s2.on_message) == len(game.messages)
                and all(a in game.actions for a in s2.on_message)
                and s2.default in game.actions
            )
        else:
            ok = isinstance(s2, ReceiverStrategy) and len(s2.actions) == len(game.messages) and all(
                a in game.actions for a in s2.actions
            )
        if not ok:
            raise ValueError(f"receiver strategy {s2} does not fit the game")


def outcome_of_profile(game: SignalingGame, profile: MixedProfile, monitored: bool = False) -> Outcome:
    """Distribution over plays induced by a mixed profile."""
    _check_profile(game, profile, monitored)
    msg_index = {m: i for i, m in enumerate(game.messages)}
    masses: dict[tuple, Fraction] = {play: ZERO for play in enumerate_plays(game, monitored)}
    for ti, t in enumerate(game.types):
        p = game.prior[t]
        for s1, w1 in profile.sender.items():
            if w1 == 0:
                continue
            m = s1.messages[ti]
            for s2, w2 in profile.receiver.items():
                if w2 == 0:
                    continue
                if monitored:
                    if s2.monitor:
                        masses[(t, m, 1, s2.on_message[msg_index[m]])] += p * w1 * w2
                    else:
                        masses[(t, m, 0, s2.default)] += p * w1 * w2
                else:
                    masses[(t, m, s2.actions[msg_index[m]])] += p * w1 * w2
    return Outcome(masses=masses, monitored=monitored)


def project_outcome(mu_c: Outcome) -> Outcome:
    """Sum out the monitor bit: mass(t,m,a) = mass(t,m,0,a) + mass(t,m,1,a)."""
    if not mu_c.monitored:
        raise ValueError("projection applies to monitored outcomes only")
    masses: dict[tuple, Fraction] = {}
    for (t, m, _bit, a), mass in mu_c.masses.items():
        key = (t, m, a)
        masses[key] = masses.get(key, ZERO) + mass
    return Outcome(masses=masses, monitored=False)


def outcome_distance(a: Outcome, b: Outcome) -> DistanceResult:
    """Exact squared Euclidean distance plus a decimal rendering of its root."""
    if set(a.masses) != set(b.masses):
        raise ValueError("outcomes are defined over different play sets")
    squared = sum(((a.masses[p] - b.masses[p]) ** 2 for p in a.masses), ZERO)
    return DistanceResult(squared=squared, approx=sqrt_decimal(squared))


def classify_outcome(game: SignalingGame, mu: Outcome) -> str:
    """'pooling' | 'separating' | 'hybrid', judged from per-type message supports."""
    if mu.monitored:
        raise ValueError("classify projected outcomes, not monitored ones")
    supports: dict[str, set[str]] = {t: set() for t in game.types}
    for (t, m, _a), mass in mu.masses.items():
        if mass > 0:
            supports[t].add(m)
    used = set().union(*supports.values()) if supports else set()
    if len(used) == 1:
        return "pooling"
    pairs = itertools.combinations(game.types, 2)
    if all(not (supports[t1] & supports[t2]) for t1, t2 in pairs):
        return "separating"
    return "hybrid"


def expected_payoffs(game: SignalingGame, mu: Outcome, cost: Fraction = ZERO) -> tuple[Fraction, Fraction]:
    """Expected (sender, receiver) payoffs under an outcome.

    For monitored outcomes the receiver pays `cost` whenever the monitor bit
    is set.
    """
    u1 = u2 = ZERO
    for play, mass in mu.masses.items():
        if mass == 0:
            continue
        if mu.monitored:
            t, m, bit, a = play
            base1, base2 = game.payoff[(t, m, a)]
            u1 += mass * base1
            u2 += mass * (base2 - cost * bit)
        else:
            t, m, a = play
            base1, base2 = game.payoff[(t, m, a)]
            u1 += mass * base1
            u2 += mass * base2
    return u1, u2
