from fractions import Fraction as F

import pytest

from sigsolve.catalog import beer_quiche
from sigsolve.cli import render_label
from sigsolve.game import SignalingGame
from sigsolve.sweep import (
    NoSurvivalError,
    SweepConfig,
    UnknownComponentError,
    component_ids,
    cost_sweep,
    distance_scaling,
    evaluate_cost,
    resolve_base_component,
    survival_threshold,
    verify_theorem_bound,
)

BEER = "C0"
QUICHE = "C1"


@pytest.fixture(scope="module")
def game():
    return beer_quiche()


@pytest.fixture(scope="module")
def beer_base(game):
    return resolve_base_component(game, BEER)


def test_component_id_assignment(game):
    base = resolve_base_component(game, BEER)
    assert component_ids(base.components) == ["C0", "C1"]
    assert render_label(base.component.col_support()[0], True) == "BB"
    assert base.payoffs == (F(29, 10), F(9, 10))


def test_unknown_component_rejected(game):
    with pytest.raises(UnknownComponentError):
        resolve_base_component(game, "C7")


def test_sweep_record_at_one_twentieth(game, beer_base):
    record = evaluate_cost(game, beer_base, F(1, 20))
    assert record.found
    assert record.monitor_probability == F(1, 2)
    assert record.payoffs == (F(29, 10), F(9, 10))
    senders = [render_label(l, True) for l in record.sender_support]
    assert senders == ["BB", "BQ"]
    # pooling weight follows the cost exactly
    assert record.nearest.col_mix[0] == 1 - 10 * F(1, 20)


def test_sweep_record_at_one_fifth(game, beer_base):
    record = evaluate_cost(game, beer_base, F(1, 5))
    assert not record.found
    assert record.payoffs == (F(3), F(9, 10))
    assert record.monitor_probability == 0
    assert [render_label(l, True) for l in record.sender_support] == ["BQ"]
    assert [render_label(l, True) for l in record.receiver_support] == ["0N**"]


def test_distance_shrinks_towards_zero_cost(game, beer_base):
    small = evaluate_cost(game, beer_base, F(1, 100))
    smaller = evaluate_cost(game, beer_base, F(1, 1000))
    assert smaller.squared_distance < small.squared_distance
    assert small.squared_distance == F(3, 2) * F(1, 100) ** 2
    assert smaller.squared_distance == F(3, 2) * F(1, 1000) ** 2


def test_sweep_grid_and_invariants(game):
    cfg = SweepConfig(c_min=F(0), c_max=F(1, 16), steps=5, base_component_id=BEER)
    records = cost_sweep(game, cfg)
    assert [r.c for r in records] == sorted(r.c for r in records)
    assert len(records) == 5
    for r in records:
        assert 0 < r.c < F(1, 10)
        assert r.found
        assert r.monitor_probability == F(1, 2)
        assert r.payoffs == (F(29, 10), F(9, 10))
        assert r.nearest.col_mix[0] == 1 - 10 * r.c
        assert r.squared_distance == F(3, 2) * r.c * r.c


def test_distance_scaling_constant(game):
    cfg = SweepConfig(c_min=F(0), c_max=F(1, 100), steps=3, base_component_id=BEER)
    report = distance_scaling(cost_sweep(game, cfg))
    assert report.constant == F(3, 2)
    assert [c for c, _ in report.ratios] == [F(1, 400), F(1, 200), F(1, 100)]


def test_threshold_brackets_one_tenth(game):
    result = survival_threshold(game, BEER)
    assert result.first_failing is not None
    assert result.bracket_width <= F(1, 1000)
    assert result.last_surviving <= F(1, 10) <= result.first_failing


def test_quiche_component_never_survives(game):
    with pytest.raises(NoSurvivalError) as err:
        survival_threshold(game, QUICHE)
    assert all(not record.found for record in err.value.records)


def message_blind_receiver_game():
    """One type only, so the receiver's best reply never depends on the
    message: monitoring is worthless and the base equilibrium replicates at
    every cost through the never-monitor strategy."""
    payoff = {
        ("t", "m1", "good"): (F(2), F(1)),
        ("t", "m1", "bad"): (F(2), F(0)),
        ("t", "m2", "good"): (F(1), F(1)),
        ("t", "m2", "bad"): (F(1), F(0)),
    }
    return SignalingGame(
        types=("t",),
        messages=("m1", "m2"),
        actions=("good", "bad"),
        prior={"t": F(1)},
        payoff=payoff,
    )


def test_message_blind_receiver_survives_every_cost():
    game = message_blind_receiver_game()
    base = resolve_base_component(game, "C0")
    assert len(base.components) == 1
    result = survival_threshold(game, "C0", c_max=F(4))
    assert result.first_failing is None
    assert result.last_surviving == F(4)


def test_theorem_bound_for_beer_component(game):
    evidence = verify_theorem_bound(game, BEER, F(1, 20))
    assert not evidence.index_warning
    assert evidence.index_result.value == 1
    assert evidence.c_epsilon is not None and evidence.c_epsilon > 0
    for record in evidence.records:
        if record.c < evidence.c_epsilon:
            assert record.squared_distance < F(1, 20) ** 2


def test_theorem_bound_fails_for_quiche_component(game):
    evidence = verify_theorem_bound(game, QUICHE, F(1, 20))
    assert evidence.index_warning
    assert evidence.index_result.value == 0
    assert evidence.c_epsilon is None


def test_theorem_bound_trivial_for_huge_epsilon(game):
    evidence = verify_theorem_bound(game, BEER, F(50), steps=4)
    assert evidence.c_epsilon == F(1, 4)


def test_threshold_honors_custom_tolerance(game):
    result = survival_threshold(game, BEER, bracket_tolerance=F(1, 64))
    assert result.bracket_width <= F(1, 64)
    assert result.last_surviving <= F(1, 10) <= result.first_failing
