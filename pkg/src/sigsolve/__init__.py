"""sigsolve: exact toolkit for signaling games with costly monitoring.

Builds the normal forms of a signaling game and of its costly-monitoring
variant, enumerates all extreme Nash equilibria exactly, groups them into
components with integer indices, and sweeps the monitoring cost to check
which pooling components survive small costs close to their original outcome.
"""

from .catalog import beer_quiche, coordination_2x2, matching_pennies
from .game import (
    MixedProfile,
    Outcome,
    ReceiverStrategy,
    ReceiverStrategyC,
    SenderStrategy,
    SignalingGame,
    classify_outcome,
    enumerate_plays,
    expected_payoffs,
    outcome_distance,
    outcome_of_profile,
    project_outcome,
    validate_game,
)
from .normalform import (
    BimatrixGame,
    EmbedMap,
    StrategyClass,
    build_normal_form,
    build_sgcm_normal_form,
    dominance_filter,
    embed_map,
    reduce_normal_form,
    reduced_sgcm_at_zero,
    strategy_spaces,
    strategy_spaces_c,
    with_cost,
)
from .equilibrium import (
    Component,
    MixedEquilibrium,
    NashSubset,
    component_outcome,
    enumerate_extreme_equilibria,
    group_components,
    is_equilibrium,
    maximal_nash_subsets,
    solve_components,
)
from .indices import (
    IndexResult,
    PerturbationConfig,
    component_index,
    duplicate_containment_check,
    equilibrium_index,
    index_sum_check,
)
from .sweep import (
    SweepConfig,
    SweepRecord,
    ThresholdResult,
    cost_sweep,
    distance_scaling,
    survival_threshold,
    verify_theorem_bound,
)

__version__ = "0.1.0"
