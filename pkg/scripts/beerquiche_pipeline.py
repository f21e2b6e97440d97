#!/usr/bin/env python3
"""End-to-end beer-quiche run: tables, components, indices, cost sweep,
survival threshold, and the small-cost closeness bound.

Writes the sweep CSV next to the chosen output directory and prints every
table and report to stdout. Deterministic for a fixed seed.
"""

import argparse
from fractions import Fraction
from pathlib import Path

from sigsolve.catalog import beer_quiche
from sigsolve.cli import render_table, write_sweep_csv
from sigsolve.equilibrium import component_outcome, solve_components
from sigsolve.indices import PerturbationConfig, component_index, duplicate_containment_check
from sigsolve.normalform import (
    build_normal_form,
    build_sgcm_normal_form,
    embed_map,
    reduce_normal_form,
    reduced_sgcm_at_zero,
)
from sigsolve.rational import format_rational
from sigsolve.sweep import (
    SweepConfig,
    component_ids,
    cost_sweep,
    distance_scaling,
    survival_threshold,
    verify_theorem_bound,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default=".", help="where to write sweep.csv")
    parser.add_argument("--seed", type=int, default=PerturbationConfig().seed)
    parser.add_argument("--cost", default="1/20", help="showcase cost for the reduced table")
    args = parser.parse_args()

    game = beer_quiche()
    cost = Fraction(args.cost)
    cfg = PerturbationConfig(seed=args.seed)

    print("== base normal form ==")
    gamma = build_normal_form(game)
    print(render_table(gamma, classic=True))

    print(f"\n== reduced monitored form at c={args.cost} ==")
    reduced, _ = reduce_normal_form(build_sgcm_normal_form(game, cost))
    print(render_table(reduced, classic=True, symbolic=True))

    print("\n== components of the base game ==")
    components = solve_components(gamma)
    for cid, comp in zip(component_ids(components), components):
        report = component_outcome(game, comp)
        index = component_index(gamma, comp, cfg)
        outcome = " + ".join(
            f"{format_rational(m)}*({','.join(p)})"
            for p, m in report.outcome.masses.items()
            if m > 0
        )
        print(
            f"{cid}: {report.classification}, outcome {outcome}, payoffs "
            f"({format_rational(report.payoffs[0])}, {format_rational(report.payoffs[1])}), "
            f"index {index.value:+d} (agreement {index.agreement})"
        )

    print("\n== zero-cost duplicate containment ==")
    gamma0 = reduced_sgcm_at_zero(game)
    containment = duplicate_containment_check(gamma0, gamma, embed_map(gamma0, gamma), cfg)
    for entry in containment.entries:
        print(
            f"duplicate-game index {entry.duplicate_index.value:+d} maps onto base index "
            f"{entry.base_index.value:+d}: {'contained' if entry.contained else 'MISSING'}"
        )

    print("\n== cost sweep toward zero ==")
    sweep_cfg = SweepConfig(
        c_min=Fraction(0), c_max=Fraction(1, 8), steps=8, base_component_id="C0"
    )
    records = cost_sweep(game, sweep_cfg)
    out_path = Path(args.out_dir) / "sweep.csv"
    write_sweep_csv(records, str(out_path), classic=True)
    for rec in records:
        print(
            f"c={format_rational(rec.c):>7}: found={int(rec.found)} monitor={format_rational(rec.monitor_probability):>3} "
            f"distance={rec.distance_decimal}"
        )
    scaling = distance_scaling(records)
    print(f"squared distance / c^2 = {scaling.constant}")
    print(f"sweep written to {out_path}")

    print("\n== survival threshold of the beer component ==")
    threshold = survival_threshold(game, "C0")
    print(
        f"bracket [{format_rational(threshold.last_surviving)}, "
        f"{format_rational(threshold.first_failing)}], width {format_rational(threshold.bracket_width)}"
    )

    print("\n== closeness bound at epsilon = 1/20 ==")
    evidence = verify_theorem_bound(game, "C0", Fraction(1, 20), index_cfg=cfg)
    print(f"c_epsilon = {format_rational(evidence.c_epsilon)}")


if __name__ == "__main__":
    main()
