"""Equilibrium and component indices.

Regular equilibria get the determinant index: the sign of the product of the
two support-restricted payoff determinants (payoffs shifted positive), times
(-1)^(k+1) for support size k. The sign convention makes every pure strict
equilibrium +1 and the indices of a nondegenerate game sum to +1.

Components get a sampling index: perturb all payoffs by small rationals,
re-enumerate, and sum the determinant indices of the perturbed equilibria
that stay within a max-norm ball around the component. Components with
non-zero index are essential, so the replication sums agree for small enough
perturbations; disagreement is reported, never papered over.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .equilibrium import (
    Component,
    MixedEquilibrium,
    enumerate_extreme_equilibria,
    solve_components,
)
from .linalg import determinant, linf_distance_to_hull
from .normalform import BimatrixGame, EmbedMap, deep_representative

ZERO = Fraction(0)
ONE = Fraction(1)


class DegenerateEquilibriumError(ValueError):
    """Raised when the determinant index is asked about a non-regular equilibrium."""


@dataclass(frozen=True)
class PerturbationConfig:
    """Sampling parameters for the component index.

    `magnitude` bounds each payoff perturbation, `neighborhood` is the
    max-norm radius around the component within which perturbed equilibria
    are attributed to it, `replications` the number of independent draws.
    """

    magnitude: Fraction = Fraction(1, 1000)
    neighborhood: Fraction = Fraction(1, 20)
    replications: int = 20
    seed: int = 1729

    def __post_init__(self):
        if self.magnitude <= 0 or self.neighborhood <= 0 or self.replications < 1:
            raise ValueError("perturbation config out of range")


@dataclass(frozen=True)
class IndexResult:
    value: int
    method: str
    replications: int
    agreement: Fraction
    config: PerturbationConfig | None = None

    @property
    def indeterminate(self) -> bool:
        return self.agreement != 1


@dataclass(frozen=True)
class IndexSumReport:
    per_component: tuple[IndexResult, ...]
    total: int
    ok: bool


@dataclass(frozen=True)
class ContainmentEntry:
    duplicate_index: IndexResult
    image_rows: tuple[object, ...]
    image_cols: tuple[object, ...]
    base_index: IndexResult | None
    contained: bool


@dataclass(frozen=True)
class ContainmentReport:
    entries: tuple[ContainmentEntry, ...]
    ok: bool


def _positive_shift(matrix):
    low = min(min(row) for row in matrix)
    shift = ONE - low
    return [[v + shift for v in row] for row in matrix]


def equilibrium_index(gamma: BimatrixGame, eq: MixedEquilibrium) -> IndexResult:
    """Determinant index of a regular equilibrium.

    Regularity is enforced: equal support sizes, best-response sets equal to
    the supports, and nonsingular support-restricted payoff blocks.
    """
    m, n = gamma.shape
    rows = [i for i in range(m) if eq.row_mix[i] > 0]
    cols = [j for j in range(n) if eq.col_mix[j] > 0]
    if len(rows) != len(cols):
        raise DegenerateEquilibriumError(
            f"support sizes differ ({len(rows)} rows vs {len(cols)} cols); use component_index"
        )
    receiver = gamma.receiver_matrix()
    sender = gamma.sender_matrix()
    row_values = [sum(receiver[i][j] * eq.col_mix[j] for j in range(n)) for i in range(m)]
    col_values = [sum(sender[i][j] * eq.row_mix[i] for i in range(m)) for j in range(n)]
    if set(rows) != {i for i in range(m) if row_values[i] == max(row_values)}:
        raise DegenerateEquilibriumError("row best responses extend beyond the support")
    if set(cols) != {j for j in range(n) if col_values[j] == max(col_values)}:
        raise DegenerateEquilibriumError("col best responses extend beyond the support")
    rec_pos = _positive_shift(receiver)
    sen_pos = _positive_shift(sender)
    det_receiver = determinant([[rec_pos[i][j] for j in cols] for i in rows])
    det_sender = determinant([[sen_pos[i][j] for j in cols] for i in rows])
    if det_receiver == 0 or det_sender == 0:
        raise DegenerateEquilibriumError("singular support-restricted payoff block")
    sign = 1 if det_receiver * det_sender > 0 else -1
    value = sign * (-1 if len(rows) % 2 == 0 else 1)
    return IndexResult(value=value, method="determinant", replications=0, agreement=ONE)


def _distance_to_component(eq: MixedEquilibrium, component: Component) -> Fraction:
    best = None
    for subset in component.subsets:
        d_row = linf_distance_to_hull(eq.row_mix, subset.row_face)
        d_col = linf_distance_to_hull(eq.col_mix, subset.col_face)
        dist = max(d_row, d_col)
        if best is None or dist < best:
            best = dist
    return best


def _perturbed_game(gamma: BimatrixGame, rng: random.Random, magnitude: Fraction) -> BimatrixGame:
    scale = 10**6
    bound = int(magnitude * scale)
    if bound < 1:
        raise ValueError("magnitude below the 1/10^6 perturbation grid")
    cells = tuple(
        tuple(
            (
                u1 + Fraction(rng.randint(-bound, bound), scale),
                u2 + Fraction(rng.randint(-bound, bound), scale),
            )
            for (u1, u2) in row
        )
        for row in gamma.cells
    )
    return BimatrixGame(gamma.row_labels, gamma.col_labels, cells, gamma.cost_meta)


def component_index(
    gamma: BimatrixGame,
    component: Component,
    cfg: PerturbationConfig = PerturbationConfig(),
    method: str = "auto",
) -> IndexResult:
    """Index of a component, by determinant when it is a single regular
    equilibrium (unless `method='perturbation'` forces sampling)."""
    if method not in ("auto", "perturbation"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto" and len(component.extremes) == 1:
        try:
            return equilibrium_index(gamma, component.extremes[0])
        except DegenerateEquilibriumError:
            pass

    sums = []
    for rep in range(cfg.replications):
        total = None
        for attempt in range(16):
            rng = random.Random(f"{cfg.seed}:{rep}:{attempt}")
            perturbed = _perturbed_game(gamma, rng, cfg.magnitude)
            result = enumerate_extreme_equilibria(perturbed)
            if result.degenerate:
                continue
            try:
                total = sum(
                    equilibrium_index(perturbed, eq).value
                    for eq in result
                    if _distance_to_component(eq, component) <= cfg.neighborhood
                )
            except DegenerateEquilibriumError:
                continue
            break
        if total is None:
            raise RuntimeError("all perturbation draws hit degenerate games; lower the magnitude")
        sums.append(total)
    counts = Counter(sums)
    value, hits = max(counts.items(), key=lambda item: (item[1], -abs(item[0])))
    return IndexResult(
        value=value,
        method="perturbation",
        replications=cfg.replications,
        agreement=Fraction(hits, cfg.replications),
        config=cfg,
    )


def index_sum_check(gamma: BimatrixGame, cfg: PerturbationConfig = PerturbationConfig()) -> IndexSumReport:
    """Component indices must sum to +1 over the whole game."""
    components = solve_components(gamma)
    results = tuple(component_index(gamma, comp, cfg) for comp in components)
    total = sum(r.value for r in results)
    ok = total == 1 and all(not r.indeterminate for r in results)
    return IndexSumReport(per_component=results, total=total, ok=ok)


def duplicate_containment_check(
    gamma0: BimatrixGame,
    gamma_base: BimatrixGame,
    embedding: EmbedMap,
    cfg: PerturbationConfig = PerturbationConfig(),
) -> ContainmentReport:
    """Every non-zero-index component of the duplicate-strategy game must map
    onto a non-zero-index component of the base game.

    The image of a component is the set of base strategies reached by mapping
    its row support through the embedding (columns map by representative).
    """
    base_components = solve_components(gamma_base)
    base_results = [component_index(gamma_base, comp, cfg) for comp in base_components]
    entries = []
    for comp in solve_components(gamma0):
        result = component_index(gamma0, comp, cfg)
        if result.value == 0 and not result.indeterminate:
            continue
        image_rows = tuple(sorted({embedding.map_row(lbl) for lbl in comp.row_support()}, key=repr))
        image_cols = tuple(
            sorted({deep_representative(lbl) for lbl in comp.col_support()}, key=repr)
        )
        match = None
        match_result = None
        for base_comp, base_result in zip(base_components, base_results):
            rows = tuple(sorted(set(base_comp.row_support()), key=repr))
            cols = tuple(sorted({deep_representative(l) for l in base_comp.col_support()}, key=repr))
            if rows == image_rows and cols == image_cols:
                match = base_comp
                match_result = base_result
                break
        contained = match is not None and match_result.value != 0
        entries.append(
            ContainmentEntry(
                duplicate_index=result,
                image_rows=image_rows,
                image_cols=image_cols,
                base_index=match_result,
                contained=contained,
            )
        )
    return ContainmentReport(entries=tuple(entries), ok=all(e.contained for e in entries))
