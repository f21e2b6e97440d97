from fractions import Fraction as F

import pytest

from helpers import random_nondegenerate_games

from sigsolve.catalog import coordination_2x2, matching_pennies
from sigsolve.cli import render_label
from sigsolve.equilibrium import enumerate_extreme_equilibria, solve_components
from sigsolve.indices import (
    DegenerateEquilibriumError,
    PerturbationConfig,
    component_index,
    duplicate_containment_check,
    equilibrium_index,
    index_sum_check,
)
from sigsolve.normalform import BimatrixGame, EmbedMap, build_normal_form, embed_map, reduced_sgcm_at_zero

CFG = PerturbationConfig()


def test_matching_pennies_index_is_plus_one():
    gamma = matching_pennies()
    eq = enumerate_extreme_equilibria(gamma).equilibria[0]
    result = equilibrium_index(gamma, eq)
    assert result.value == 1
    assert result.method == "determinant"


def test_coordination_indices_sum_to_plus_one():
    gamma = coordination_2x2()
    values = {}
    for eq in enumerate_extreme_equilibria(gamma):
        k = sum(1 for w in eq.row_mix if w > 0)
        values[k] = values.get(k, []) + [equilibrium_index(gamma, eq).value]
    assert values[1] == [1, 1]
    assert values[2] == [-1]


def test_pure_strict_equilibria_always_get_plus_one():
    for gamma, result in random_nondegenerate_games(12, seed=11):
        for eq in result:
            supports = sum(1 for w in eq.row_mix if w > 0)
            if supports == 1 and sum(1 for w in eq.col_mix if w > 0) == 1:
                assert equilibrium_index(gamma, eq).value == 1


def test_unequal_supports_rejected(beerquiche):
    gamma = build_normal_form(beerquiche)
    segment_end = next(
        eq
        for eq in enumerate_extreme_equilibria(gamma)
        if sum(1 for w in eq.row_mix if w > 0) == 2
    )
    with pytest.raises(DegenerateEquilibriumError):
        equilibrium_index(gamma, segment_end)


def test_component_indices_of_beer_quiche(beerquiche):
    gamma = build_normal_form(beerquiche)
    components = solve_components(gamma)
    by_sender = {
        render_label(c.col_support()[0], True): component_index(gamma, c, CFG)
        for c in components
    }
    assert by_sender["BB"].value == 1
    assert by_sender["QQ"].value == 0
    for result in by_sender.values():
        assert result.agreement == 1
        assert result.replications == CFG.replications
        assert not result.indeterminate


def test_singleton_component_matches_determinant_index():
    gamma = matching_pennies()
    component = solve_components(gamma)[0]
    fast = component_index(gamma, component, CFG)
    sampled = component_index(gamma, component, CFG, method="perturbation")
    eq = component.extremes[0]
    assert fast.value == sampled.value == equilibrium_index(gamma, eq).value == 1


def test_index_sum_check_beer_quiche(beerquiche):
    report = index_sum_check(build_normal_form(beerquiche))
    assert report.total == 1
    assert report.ok
    assert sorted(r.value for r in report.per_component) == [0, 1]


def test_index_sum_check_matching_pennies():
    report = index_sum_check(matching_pennies())
    assert report.total == 1 and report.ok


def test_index_sum_on_random_games():
    for gamma, result in random_nondegenerate_games(15, seed=23, max_size=3):
        total = sum(equilibrium_index(gamma, eq).value for eq in result)
        assert total == 1


def test_component_index_invariant_under_receiver_payoff_shift(beerquiche):
    gamma = build_normal_form(beerquiche)
    shifted = BimatrixGame(
        gamma.row_labels,
        gamma.col_labels,
        tuple(tuple((u1, u2 + 5) for (u1, u2) in row) for row in gamma.cells),
    )
    for comp, comp_shifted in zip(solve_components(gamma), solve_components(shifted)):
        a = component_index(gamma, comp, CFG)
        b = component_index(shifted, comp_shifted, CFG)
        assert a.value == b.value


def test_duplicate_containment_for_beer_quiche(beerquiche):
    gamma0 = reduced_sgcm_at_zero(beerquiche)
    base = build_normal_form(beerquiche)
    report = duplicate_containment_check(gamma0, base, embed_map(gamma0, base), CFG)
    assert report.ok
    assert len(report.entries) == 1  # only the beer component carries index
    entry = report.entries[0]
    assert entry.duplicate_index.value == 1
    assert entry.base_index.value == 1
    assert {render_label(l, True) for l in entry.image_rows} == {"FN", "NN"}
    assert {render_label(l, True) for l in entry.image_cols} == {"BB"}


def test_perturbation_magnitude_below_grid_rejected():
    gamma = matching_pennies()
    component = solve_components(gamma)[0]
    cfg = PerturbationConfig(magnitude=F(1, 10**7))
    with pytest.raises(ValueError):
        component_index(gamma, component, cfg, method="perturbation")


def test_perturbation_config_validation():
    with pytest.raises(ValueError):
        PerturbationConfig(replications=0)
    with pytest.raises(ValueError):
        PerturbationConfig(magnitude=F(0))


def test_duplicate_containment_for_synthetic_duplicate_row():
    # unique strict equilibrium (top, left) plus an exact copy of the top row
    base_cells = (
        ((F(5), F(5)), (F(1), F(4))),
        ((F(4), F(0)), (F(2), F(1))),
    )
    base = BimatrixGame(("top", "bottom"), ("left", "right"), base_cells)
    dup_cells = base_cells + (base_cells[0],)
    duplicated = BimatrixGame(("top", "bottom", "copy"), ("left", "right"), dup_cells)
    embedding = EmbedMap(
        monitor_to_base={"top": "top", "bottom": "bottom"},
        duplicate_to_base={"copy": "top"},
    )
    report = duplicate_containment_check(duplicated, base, embedding, CFG)
    assert report.ok
    assert len(report.entries) == 1
    assert report.entries[0].image_rows == ("top",)
