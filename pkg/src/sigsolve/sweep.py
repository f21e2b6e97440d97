"""Cost sweeps: track the equilibrium nearest a base component as the
monitoring cost varies, locate the survival threshold, and collect the
epsilon-closeness evidence for nonzero-index components.

Survival at cost c means the reduced monitored form has an equilibrium whose
expected payoffs exactly equal the base component's payoffs. Along a family
of equilibria that converges to the component as the cost vanishes, on-path
indifference pins the payoffs to the component values, and the family
disappears exactly at the threshold cost, so this criterion is both exact and
bisectable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .equilibrium import (
    Component,
    MixedEquilibrium,
    component_outcome,
    enumerate_extreme_equilibria,
    profile_of_equilibrium,
    solve_components,
)
from .game import Outcome, SignalingGame, outcome_distance, outcome_of_profile, project_outcome
from .indices import IndexResult, PerturbationConfig, component_index
from .normalform import (
    MONITOR,
    BimatrixGame,
    build_normal_form,
    build_sgcm_normal_form,
    reduce_normal_form,
)
from .rational import sqrt_decimal

ZERO = Fraction(0)


class NoSurvivalError(RuntimeError):
    """No cost on the initial grid kept the component's payoffs alive."""

    def __init__(self, message: str, records: tuple["SweepRecord", ...]):
        super().__init__(message)
        self.records = records


class UnknownComponentError(ValueError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    c_min: Fraction
    c_max: Fraction
    steps: int
    base_component_id: str
    epsilon: Fraction | None = None

    def __post_init__(self):
        if not (0 <= self.c_min < self.c_max):
            raise ValueError("need 0 <= c_min < c_max")
        if self.steps < 1:
            raise ValueError("need at least one step")

    def grid(self) -> list[Fraction]:
        """Halving grid from c_max down, floored at c_min, ascending order."""
        values = [self.c_max / 2**i for i in range(self.steps)]
        return sorted(v for v in values if v >= self.c_min)


@dataclass(frozen=True)
class SweepRecord:
    c: Fraction
    found: bool
    nearest: MixedEquilibrium | None
    monitor_probability: Fraction
    projected_outcome: Outcome
    squared_distance: Fraction
    payoffs: tuple[Fraction, Fraction]
    sender_support: tuple[object, ...]
    receiver_support: tuple[object, ...]

    @property
    def distance_decimal(self) -> str:
        return sqrt_decimal(self.squared_distance)


@dataclass(frozen=True)
class ThresholdResult:
    last_surviving: Fraction
    first_failing: Fraction | None

    @property
    def bracket_width(self) -> Fraction | None:
        if self.first_failing is None:
            return None
        return self.first_failing - self.last_surviving


@dataclass(frozen=True)
class TheoremEvidence:
    c_epsilon: Fraction | None
    epsilon: Fraction
    records: tuple[SweepRecord, ...]
    index_result: IndexResult
    index_warning: bool


@dataclass(frozen=True)
class ScalingReport:
    """Squared distance divided by c^2 at every sampled cost."""

    ratios: tuple[tuple[Fraction, Fraction], ...]
    constant: Fraction | None


@dataclass(frozen=True)
class BaseContext:
    gamma: BimatrixGame
    components: tuple[Component, ...]
    component_id: str
    component: Component
    outcome: Outcome
    payoffs: tuple[Fraction, Fraction]


def component_ids(components: tuple[Component, ...]) -> list[str]:
    return [f"C{i}" for i in range(len(components))]


def resolve_base_component(game: SignalingGame, component_id: str) -> BaseContext:
    """Look up a base-game component by its deterministic id."""
    gamma = build_normal_form(game)
    components = solve_components(gamma)
    ids = component_ids(components)
    if component_id not in ids:
        raise UnknownComponentError(f"unknown component id {component_id!r}; known: {', '.join(ids)}")
    component = components[ids.index(component_id)]
    report = component_outcome(game, component)
    if not report.constant:
        raise ValueError(f"component {component_id} has no constant outcome; the game is not generic")
    return BaseContext(
        gamma=gamma,
        components=components,
        component_id=component_id,
        component=component,
        outcome=report.outcome,
        payoffs=report.payoffs,
    )


def evaluate_cost(game: SignalingGame, base: BaseContext, cost: Fraction) -> SweepRecord:
    """Solve the reduced monitored form at one cost and face it off against
    the base component's outcome."""
    reduced, _ = reduce_normal_form(build_sgcm_normal_form(game, cost))
    equilibria = enumerate_extreme_equilibria(reduced)
    best = None
    found = False
    for eq in equilibria:
        projected = project_outcome(
            outcome_of_profile(game, profile_of_equilibrium(reduced, eq), monitored=True)
        )
        squared = outcome_distance(projected, base.outcome).squared
        key = (squared, eq.sort_key())
        if best is None or key < best[0]:
            best = (key, eq, projected, squared)
        if eq.payoffs == base.payoffs:
            found = True
    _, eq, projected, squared = best
    monitor_probability = sum(
        (
            eq.row_mix[i]
            for i, label in enumerate(reduced.row_labels)
            if getattr(label, "partition", None) == MONITOR
        ),
        ZERO,
    )
    sender_support = tuple(
        label for j, label in enumerate(reduced.col_labels) if eq.col_mix[j] > 0
    )
    receiver_support = tuple(
        label for i, label in enumerate(reduced.row_labels) if eq.row_mix[i] > 0
    )
    return SweepRecord(
        c=cost,
        found=found,
        nearest=eq,
        monitor_probability=monitor_probability,
        projected_outcome=projected,
        squared_distance=squared,
        payoffs=eq.payoffs,
        sender_support=sender_support,
        receiver_support=receiver_support,
    )


def cost_sweep(game: SignalingGame, cfg: SweepConfig) -> list[SweepRecord]:
    """One record per grid cost, ascending."""
    base = resolve_base_component(game, cfg.base_component_id)
    return [evaluate_cost(game, base, c) for c in cfg.grid()]


def survival_threshold(
    game: SignalingGame,
    base_component_id: str,
    bracket_tolerance: Fraction = Fraction(1, 1000),
    c_max: Fraction = Fraction(1, 4),
    grid_steps: int = 12,
) -> ThresholdResult:
    """Bisect the cost at which the component's payoffs stop being supported.

    Scans a halving grid for a surviving/failing pair first. A component that
    survives the whole grid (monitoring may simply be worthless) is reported
    with an open bracket; one that never survives raises NoSurvivalError with
    the grid records attached.
    """
    base = resolve_base_component(game, base_component_id)
    grid = [c_max / 2**i for i in range(grid_steps)]
    records = []
    surviving = None
    failing = None
    for c in grid:  # descending
        record = evaluate_cost(game, base, c)
        records.append(record)
        if record.found:
            surviving = c
            break
        failing = c
    if surviving is None:
        raise NoSurvivalError(
            f"component {base_component_id} survives at no sampled cost", tuple(records)
        )
    if failing is None:
        return ThresholdResult(last_surviving=surviving, first_failing=None)
    lo, hi = surviving, failing
    while hi - lo > bracket_tolerance:
        mid = (lo + hi) / 2
        if evaluate_cost(game, base, mid).found:
            lo = mid
        else:
            hi = mid
    return ThresholdResult(last_surviving=lo, first_failing=hi)


def verify_theorem_bound(
    game: SignalingGame,
    base_component_id: str,
    epsilon: Fraction,
    c_max: Fraction = Fraction(1, 4),
    steps: int = 10,
    index_cfg: PerturbationConfig = PerturbationConfig(),
) -> TheoremEvidence:
    """Largest grid cost below which every sampled cost stays epsilon-close.

    Closeness is exact: squared distance < epsilon^2. The bound only carries
    the survival guarantee for components of non-zero index, so the component
    index is computed and a warning is flagged otherwise.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    base = resolve_base_component(game, base_component_id)
    index_result = component_index(base.gamma, base.component, index_cfg)
    index_warning = index_result.value == 0 or index_result.indeterminate
    cfg = SweepConfig(c_min=ZERO, c_max=c_max, steps=steps, base_component_id=base_component_id)
    records = [evaluate_cost(game, base, c) for c in cfg.grid()]
    target = epsilon * epsilon
    c_epsilon = None
    for candidate in (r.c for r in records):  # ascending, so the last hit is the max
        below = [r for r in records if r.c < candidate]
        if below and all(r.squared_distance < target for r in below):
            c_epsilon = candidate
    return TheoremEvidence(
        c_epsilon=c_epsilon,
        epsilon=epsilon,
        records=tuple(records),
        index_result=index_result,
        index_warning=index_warning,
    )


def distance_scaling(records: list[SweepRecord]) -> ScalingReport:
    """How the squared outcome distance of the surviving family scales with
    the squared cost; records where the component already failed are ignored."""
    ratios = tuple(
        (r.c, r.squared_distance / (r.c * r.c)) for r in records if r.c > 0 and r.found
    )
    values = {ratio for _, ratio in ratios}
    constant = values.pop() if len(values) == 1 else None
    return ScalingReport(ratios=ratios, constant=constant)
