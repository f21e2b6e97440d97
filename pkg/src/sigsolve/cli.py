"""Command line front end: game files, table rendering, and the pipeline.

Game file format (line oriented, '#' starts a comment, rationals are 'p/q'
or integers):

    types: S:9/10 W:1/10
    messages: B Q
    actions: F N
    payoffs:
    S B F 1 0
    ...

Subcommands: validate, nf, sgcm, solve, sweep, threshold, theorem.
Exit status: 0 success, 1 computation failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from fractions import Fraction

from .equilibrium import component_outcome, enumerate_extreme_equilibria, solve_components
from .game import (
    Outcome,
    ReceiverStrategy,
    ReceiverStrategyC,
    SignalingGame,
    validate_game,
)
from .indices import PerturbationConfig, component_index
from .normalform import (
    MONITOR,
    NO_MONITOR,
    BimatrixGame,
    StrategyClass,
    build_normal_form,
    build_sgcm_normal_form,
    label_of,
    reduce_normal_form,
)
from .rational import format_compact, format_rational, parse_rational
from .sweep import (
    NoSurvivalError,
    SweepConfig,
    SweepRecord,
    UnknownComponentError,
    component_ids,
    cost_sweep,
    distance_scaling,
    survival_threshold,
    verify_theorem_bound,
)


class GameFileError(ValueError):
    pass


class GameFileSyntaxError(GameFileError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class GameFileSemanticError(GameFileError):
    pass


@dataclass(frozen=True)
class CommandResult:
    status: int
    text: str
    summary: dict


def parse_game_file(text: str) -> SignalingGame:
    """Parse the line-oriented game format, preserving declaration order."""
    types: list[str] = []
    prior: dict[str, Fraction] = {}
    messages: list[str] = []
    actions: list[str] = []
    payoff: dict[tuple[str, str, str], tuple[Fraction, Fraction]] = {}
    in_payoffs = False
    seen: set[str] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not in_payoffs:
            if ":" not in line:
                raise GameFileSyntaxError(line_no, f"expected a 'section:' header, got {line!r}")
            head, _, rest = line.partition(":")
            head = head.strip()
            if head in seen:
                raise GameFileSyntaxError(line_no, f"duplicate section {head!r}")
            seen.add(head)
            if head == "types":
                for entry in rest.split():
                    label, sep, value = entry.partition(":")
                    if not sep:
                        raise GameFileSyntaxError(line_no, f"type entry {entry!r} needs label:probability")
                    try:
                        prob = parse_rational(value)
                    except ValueError as exc:
                        raise GameFileSyntaxError(line_no, str(exc)) from exc
                    types.append(label)
                    prior[label] = prob
            elif head == "messages":
                messages.extend(rest.split())
            elif head == "actions":
                actions.extend(rest.split())
            elif head == "payoffs":
                if rest.strip():
                    raise GameFileSyntaxError(line_no, "payoffs section header takes no values")
                in_payoffs = True
            else:
                raise GameFileSyntaxError(line_no, f"unknown section {head!r}")
        else:
            parts = line.split()
            if len(parts) != 5:
                raise GameFileSyntaxError(line_no, f"payoff line needs 'type message action u1 u2', got {line!r}")
            t, m, a, raw1, raw2 = parts
            try:
                u1, u2 = parse_rational(raw1), parse_rational(raw2)
            except ValueError as exc:
                raise GameFileSyntaxError(line_no, str(exc)) from exc
            if (t, m, a) in payoff:
                raise GameFileSemanticError(f"payoff for {(t, m, a)} given twice")
            payoff[(t, m, a)] = (u1, u2)
    for name, values in (("types", types), ("messages", messages), ("actions", actions)):
        if not values:
            raise GameFileSemanticError(f"{name} section missing or empty")
    game = SignalingGame(
        types=tuple(types),
        messages=tuple(messages),
        actions=tuple(actions),
        prior=prior,
        payoff=payoff,
    )
    problems = validate_game(game)
    if problems:
        raise GameFileSemanticError("; ".join(problems))
    return game


def serialize_game(game: SignalingGame) -> str:
    """Canonical text form; parse(serialize(g)) reproduces g exactly."""
    lines = [
        "types: " + " ".join(f"{t}:{format_rational(game.prior[t])}" for t in game.types),
        "messages: " + " ".join(game.messages),
        "actions: " + " ".join(game.actions),
        "payoffs:",
    ]
    for t in game.types:
        for m in game.messages:
            for a in game.actions:
                u1, u2 = game.payoff[(t, m, a)]
                lines.append(f"{t} {m} {a} {format_rational(u1)} {format_rational(u2)}")
    return "\n".join(lines) + "\n"


def load_game(path: str) -> SignalingGame:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_game_file(handle.read())


# --- label rendering -------------------------------------------------------

_CLASSIC_SHAPE = (("S", "W"), ("B", "Q"), ("F", "N"))


def _classic_labels(game: SignalingGame) -> bool:
    return (game.types, game.messages, game.actions) == _CLASSIC_SHAPE


def render_label(label: object, classic: bool) -> str:
    """Receiver labels in the classic beer-quiche convention when asked.

    That convention lists the quiche action before the beer action, with the
    unmonitored default squeezed between the monitor flag and the action
    pair; canonical labels elsewhere.
    """
    if not classic:
        return label_of(label)
    if isinstance(label, ReceiverStrategy):
        beer, quiche = label.actions
        return f"{quiche}{beer}"
    if isinstance(label, ReceiverStrategyC):
        beer, quiche = label.on_message
        flag = "C" if label.monitor else "0"
        return f"{flag}{label.default}{quiche}{beer}"
    if isinstance(label, StrategyClass):
        rep = label.representative
        if label.partition == MONITOR and isinstance(rep, ReceiverStrategyC):
            beer, quiche = rep.on_message
            return f"C*{quiche}{beer}"
        if label.partition == NO_MONITOR and isinstance(rep, ReceiverStrategyC):
            return f"0{rep.default}**"
        return render_label(rep, classic)
    return label_of(label)


def render_table(gamma: BimatrixGame, classic: bool, symbolic: bool = False) -> str:
    """Aligned grid of (sender, receiver) payoff cells."""
    col_names = [render_label(lbl, classic) for lbl in gamma.col_labels]
    row_names = [render_label(lbl, classic) for lbl in gamma.row_labels]
    rows = []
    for i in range(len(gamma.row_labels)):
        cells = []
        for j in range(len(gamma.col_labels)):
            u1, u2 = gamma.cells[i][j]
            if symbolic and gamma.cost_meta is not None and gamma.cost_meta.monitor_flags[i]:
                base = u2 + gamma.cost_meta.cost
                shown = "-c" if base == 0 else f"{format_compact(base)}-c"
                cells.append(f"({format_compact(u1)}, {shown})")
            else:
                cells.append(f"({format_compact(u1)}, {format_compact(u2)})")
        rows.append(cells)
    widths = [
        max(len(col_names[j]), max(len(rows[i][j]) for i in range(len(rows))))
        for j in range(len(col_names))
    ]
    name_width = max(len(name) for name in row_names)
    lines = [" " * name_width + "  " + "  ".join(n.rjust(widths[j]) for j, n in enumerate(col_names))]
    for name, cells in zip(row_names, rows):
        lines.append(name.ljust(name_width) + "  " + "  ".join(c.rjust(widths[j]) for j, c in enumerate(cells)))
    return "\n".join(lines)


def render_mix(mix, labels, classic: bool) -> str:
    parts = [
        f"{format_rational(w)}*{render_label(lbl, classic)}"
        for lbl, w in zip(labels, mix)
        if w > 0
    ]
    return " + ".join(parts)


def render_outcome(outcome: Outcome) -> str:
    parts = []
    for play, mass in outcome.masses.items():
        if mass > 0:
            parts.append(f"{format_rational(mass)}*({','.join(str(x) for x in play)})")
    return " + ".join(parts)


def write_sweep_csv(records: list[SweepRecord], path: str, classic: bool = False) -> None:
    """Header plus one row per cost; rationals as 'p/q', roots to 12 digits."""
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            [
                "c",
                "found",
                "monitor_prob",
                "squared_distance",
                "distance_decimal",
                "u1",
                "u2",
                "sender_support",
                "receiver_support",
            ]
        )
        for rec in records:
            writer.writerow(
                [
                    format_rational(rec.c),
                    "1" if rec.found else "0",
                    format_rational(rec.monitor_probability),
                    format_rational(rec.squared_distance),
                    rec.distance_decimal,
                    format_rational(rec.payoffs[0]),
                    format_rational(rec.payoffs[1]),
                    "+".join(render_label(l, classic) for l in rec.sender_support),
                    "+".join(render_label(l, classic) for l in rec.receiver_support),
                ]
            )


# --- subcommands -----------------------------------------------------------


def _cmd_validate(args) -> CommandResult:
    try:
        game = load_game(args.game)
    except GameFileError as exc:
        return CommandResult(1, f"invalid: {exc}", {"ok": False, "error": str(exc)})
    return CommandResult(0, "ok", {"ok": True, "types": list(game.types)})


def _cmd_nf(args) -> CommandResult:
    game = load_game(args.game)
    classic = _classic_labels(game)
    gamma = build_normal_form(game)
    lines = []
    if args.reduce:
        gamma, classes = reduce_normal_form(gamma)
        lines.append(f"reduced normal form ({len(gamma.row_labels)}x{len(gamma.col_labels)})")
    else:
        lines.append(f"normal form ({len(gamma.row_labels)}x{len(gamma.col_labels)})")
    lines.append(render_table(gamma, classic))
    return CommandResult(0, "\n".join(lines), {"rows": len(gamma.row_labels), "cols": len(gamma.col_labels)})


def _cmd_sgcm(args) -> CommandResult:
    game = load_game(args.game)
    classic = _classic_labels(game)
    cost = parse_rational(args.cost)
    gamma = build_sgcm_normal_form(game, cost)
    lines = []
    if args.reduce:
        gamma, classes = reduce_normal_form(gamma)
        lines.append(f"reduced monitored normal form at c={format_rational(cost)} ({len(gamma.row_labels)} rows)")
        for cls in classes:
            if cls.side == "row":
                members = ", ".join(render_label(m, classic) for m in cls.members)
                lines.append(f"  class {render_label(cls, classic)} <- {members}")
    else:
        lines.append(f"monitored normal form at c={format_rational(cost)} ({len(gamma.row_labels)} rows)")
    lines.append(render_table(gamma, classic, symbolic=args.symbolic))
    return CommandResult(0, "\n".join(lines), {"rows": len(gamma.row_labels), "cost": str(cost)})


def _cmd_solve(args) -> CommandResult:
    game = load_game(args.game)
    classic = _classic_labels(game)
    cost = parse_rational(args.cost) if args.cost is not None else None
    if cost is None:
        gamma = build_normal_form(game)
    else:
        gamma, _ = reduce_normal_form(build_sgcm_normal_form(game, cost))
    lines = []
    summary: dict = {"cost": str(cost) if cost is not None else None}
    equilibria = enumerate_extreme_equilibria(gamma)
    lines.append(f"extreme equilibria: {len(equilibria)}")
    for k, eq in enumerate(equilibria):
        lines.append(
            f"  E{k}: sender {render_mix(eq.col_mix, gamma.col_labels, classic)}"
            f" | receiver {render_mix(eq.row_mix, gamma.row_labels, classic)}"
            f" | payoffs ({format_rational(eq.payoffs[0])}, {format_rational(eq.payoffs[1])})"
        )
    if args.components or args.index:
        components = solve_components(gamma)
        ids = component_ids(components)
        summary["components"] = len(components)
        cfg = PerturbationConfig(seed=args.seed)
        total = 0
        indices = []
        for cid, comp in zip(ids, components):
            report = component_outcome(game, comp, projection=cost is not None, cost=cost or Fraction(0))
            lines.append(f"component {cid}:")
            lines.append(f"  sender support: {', '.join(render_label(l, classic) for l in comp.col_support())}")
            lines.append(f"  receiver support: {', '.join(render_label(l, classic) for l in comp.row_support())}")
            if report.constant:
                lines.append(f"  outcome: {render_outcome(report.outcome)}")
                if report.classification:
                    lines.append(f"  classification: {report.classification}")
                lines.append(
                    f"  payoffs: ({format_rational(report.payoffs[0])}, {format_rational(report.payoffs[1])})"
                )
            else:
                lines.append("  outcome: NOT CONSTANT (game is not generic)")
            if args.index:
                result = component_index(gamma, comp, cfg)
                indices.append(result.value)
                total += result.value
                flag = " INDETERMINATE" if result.indeterminate else ""
                lines.append(
                    f"  index: {result.value:+d} ({result.method}, R={result.replications},"
                    f" agreement={result.agreement}, seed={cfg.seed}){flag}"
                )
        if args.index:
            lines.append(f"index sum: {total:+d} ({'ok' if total == 1 else 'UNEXPECTED'})")
            summary["indices"] = indices
            summary["index_sum"] = total
    return CommandResult(0, "\n".join(lines), summary)


def _cmd_sweep(args) -> CommandResult:
    game = load_game(args.game)
    classic = _classic_labels(game)
    cfg = SweepConfig(
        c_min=parse_rational(args.cmin),
        c_max=parse_rational(args.cmax),
        steps=args.steps,
        base_component_id=args.component,
    )
    records = cost_sweep(game, cfg)
    write_sweep_csv(records, args.out, classic)
    lines = [f"wrote {len(records)} records to {args.out}"]
    scaling = distance_scaling(records)
    if scaling.constant is not None:
        lines.append(f"distance scaling: squared_distance = {format_rational(scaling.constant)} * c^2")
        if args.check_coefficient is not None:
            expected = parse_rational(args.check_coefficient)
            if scaling.constant == expected:
                lines.append(f"scaling coefficient matches {format_rational(expected)}")
            else:
                lines.append(
                    "DISCREPANCY: measured squared-distance coefficient "
                    f"{format_rational(scaling.constant)} differs from the stated {format_rational(expected)}"
                )
    else:
        lines.append("distance scaling: not a constant multiple of c^2 over this grid")
    summary = {
        "records": len(records),
        "out": args.out,
        "scaling_constant": str(scaling.constant) if scaling.constant is not None else None,
    }
    return CommandResult(0, "\n".join(lines), summary)


def _cmd_threshold(args) -> CommandResult:
    game = load_game(args.game)
    try:
        result = survival_threshold(
            game,
            args.component,
            bracket_tolerance=parse_rational(args.tolerance),
        )
    except NoSurvivalError as exc:
        lines = [str(exc)]
        for rec in exc.records:
            lines.append(
                f"  c={format_rational(rec.c)}: payoffs ({format_rational(rec.payoffs[0])},"
                f" {format_rational(rec.payoffs[1])}), squared distance {format_rational(rec.squared_distance)}"
            )
        return CommandResult(1, "\n".join(lines), {"survives": False})
    if result.first_failing is None:
        text = f"survives the whole grid; last checked cost {format_rational(result.last_surviving)}"
    else:
        text = (
            f"last surviving c = {format_rational(result.last_surviving)}\n"
            f"first failing c = {format_rational(result.first_failing)}\n"
            f"bracket width = {format_rational(result.bracket_width)}"
        )
    summary = {
        "last_surviving": str(result.last_surviving),
        "first_failing": str(result.first_failing) if result.first_failing is not None else None,
    }
    return CommandResult(0, text, summary)


def _cmd_theorem(args) -> CommandResult:
    game = load_game(args.game)
    evidence = verify_theorem_bound(
        game,
        args.component,
        parse_rational(args.epsilon),
        index_cfg=PerturbationConfig(seed=args.seed),
    )
    lines = [
        f"component index: {evidence.index_result.value:+d}"
        f" (agreement={evidence.index_result.agreement}, seed={args.seed})"
    ]
    if evidence.index_warning:
        lines.append("warning: zero or indeterminate index; no survival guarantee applies")
    if evidence.c_epsilon is None:
        lines.append(f"no cost bound found: sampled costs violate distance < {args.epsilon}")
        status = 0 if evidence.index_warning else 1
    else:
        lines.append(f"c_epsilon = {format_rational(evidence.c_epsilon)}")
        status = 0
    for rec in evidence.records:
        marker = "pass" if rec.squared_distance < parse_rational(args.epsilon) ** 2 else "fail"
        lines.append(
            f"  c={format_rational(rec.c)}: distance {rec.distance_decimal} [{marker}]"
        )
    summary = {
        "c_epsilon": str(evidence.c_epsilon) if evidence.c_epsilon is not None else None,
        "index": evidence.index_result.value,
    }
    return CommandResult(status, "\n".join(lines), summary)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sigsolve", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a game file against the model invariants")
    p.add_argument("game")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("nf", help="normal form table")
    p.add_argument("game")
    p.add_argument("--reduce", action="store_true")
    p.set_defaults(func=_cmd_nf)

    p = sub.add_parser("sgcm", help="monitored normal form table at a cost")
    p.add_argument("game")
    p.add_argument("--cost", required=True, help="monitoring cost, e.g. 1/20")
    p.add_argument("--reduce", action="store_true")
    p.add_argument("--symbolic", action="store_true", help="show monitoring rows as 'base-c'")
    p.set_defaults(func=_cmd_sgcm)

    p = sub.add_parser("solve", help="enumerate equilibria, components, indices")
    p.add_argument("game")
    p.add_argument("--cost", help="solve the reduced monitored form at this cost")
    p.add_argument("--components", action="store_true")
    p.add_argument("--index", action="store_true")
    p.add_argument("--seed", type=int, default=PerturbationConfig().seed)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("sweep", help="cost sweep against a base component")
    p.add_argument("game")
    p.add_argument("--component", required=True)
    p.add_argument("--cmin", required=True)
    p.add_argument("--cmax", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--check-coefficient", help="flag a discrepancy unless squared_distance/c^2 equals this")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("threshold", help="bisect the survival threshold of a component")
    p.add_argument("game")
    p.add_argument("--component", required=True)
    p.add_argument("--tolerance", default="1/1000")
    p.set_defaults(func=_cmd_threshold)

    p = sub.add_parser("theorem", help="epsilon-closeness evidence for small costs")
    p.add_argument("game")
    p.add_argument("--component", required=True)
    p.add_argument("--epsilon", required=True)
    p.add_argument("--seed", type=int, default=PerturbationConfig().seed)
    p.set_defaults(func=_cmd_theorem)
    return parser


def run_command(argv: list[str]) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        return CommandResult(code, "", {"error": "usage"} if code else {})
    try:
        return args.func(args)
    except UnknownComponentError as exc:
        return CommandResult(2, f"usage error: {exc}", {"error": str(exc)})
    except GameFileError as exc:
        return CommandResult(1, f"game file error: {exc}", {"error": str(exc)})
    except (ValueError, OSError) as exc:
        return CommandResult(1, f"error: {exc}", {"error": str(exc)})


def main(argv: list[str] | None = None) -> int:
    result = run_command(sys.argv[1:] if argv is None else argv)
    if result.text:
        print(result.text)
    return result.status


if __name__ == "__main__":
    sys.exit(main())
