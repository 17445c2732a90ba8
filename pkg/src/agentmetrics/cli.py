"""Command-line pipeline: simulate -> evaluate -> analyze / report.

Exit codes: 0 success; 2 usage or input-validation problems (bad flags,
missing or malformed input files, degenerate data); 3 I/O failures while
reading or writing otherwise-valid paths.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import aggregate as agg
from . import charts, report, stats
from .defaults import DEFAULT_WEIGHTS
from .errors import AgentMetricsError, DegenerateDataError
from .records import TaskRecord, read_task_csv, validate_record
from .simulator import Mode, SimConfig, default_config, generate, generate_adaptability, load_config

_MODE_CHOICES = tuple(m.value for m in Mode)

# Metrics analyzed per agent-x-domain cell (attribute names on MetricCell).
CELL_METRICS = ("gcr", "aix", "dtt_mean", "ces", "mtr", "tdi_norm", "oas", "crs", "cqi")
# Metrics with a per-task reading, for --unit tasks.
TASK_METRICS = ("gcr", "dtt", "oas")
# Metrics whose agent pairs get effect sizes.
EFFECT_METRICS = ("gcr", "dtt_mean", "oas")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="agentmetrics",
        description="Simulate, score and analyze AI-agent task executions.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p_sim = sub.add_parser("simulate", help="generate a synthetic task dataset")
    p_sim.add_argument("--config", type=Path, help="YAML config file (defaults to built-in study setup)")
    p_sim.add_argument("--seed", type=int, help="override the config seed")
    p_sim.add_argument("--mode", choices=_MODE_CHOICES, help="override the calibration mode")
    p_sim.add_argument("--out", type=Path, default=Path("out"), help="output directory (default: out)")
    p_sim.set_defaults(func=_cmd_simulate)

    p_eval = sub.add_parser("evaluate", help="compute all metrics from a task-level CSV")
    p_eval.add_argument("--data", type=Path, required=True, help="task-level CSV file")
    p_eval.add_argument("--config", type=Path, help="YAML config for domain KPI/cost settings")
    p_eval.add_argument("--out", type=Path, default=Path("out"), help="output directory (default: out)")
    p_eval.add_argument("--baseline-dtt", type=float, help="human baseline task time in seconds")
    p_eval.add_argument("--baseline-ces", type=float, help="baseline resource units per success")
    p_eval.set_defaults(func=_cmd_evaluate)

    p_an = sub.add_parser("analyze", help="run the statistical comparison suite")
    p_an.add_argument("--data", type=Path, required=True, help="task-level CSV file")
    p_an.add_argument("--config", type=Path, help="YAML config for domain KPI/cost settings")
    p_an.add_argument("--out", type=Path, default=Path("out"), help="output directory (default: out)")
    p_an.add_argument(
        "--unit",
        choices=("cells", "tasks"),
        default="cells",
        help="ANOVA sampling unit: domain cells (default) or individual tasks",
    )
    p_an.add_argument("--alpha", type=float, default=0.05, help="significance level (default: 0.05)")
    p_an.set_defaults(func=_cmd_analyze)

    p_rep = sub.add_parser("report", help="render tables and charts from evaluated datasets")
    p_rep.add_argument("--data", type=Path, required=True, help="directory holding the dataset CSVs")
    p_rep.add_argument("--out", type=Path, default=Path("report"), help="output directory (default: report)")
    p_rep.add_argument(
        "--format",
        choices=("txt", "csv", "svg", "all"),
        default="all",
        help="which outputs to produce (default: all)",
    )
    p_rep.set_defaults(func=_cmd_report)
    return parser


def _load_effective_config(args: argparse.Namespace) -> SimConfig:
    from dataclasses import replace

    config = load_config(args.config) if args.config else default_config()
    seed = getattr(args, "seed", None)
    if seed is not None:
        config = replace(config, seed=seed)
    mode = getattr(args, "mode", None)
    if mode is not None:
        config = replace(config, mode=Mode(mode))
    return config


def _cmd_simulate(args: argparse.Namespace) -> int:
    config = _load_effective_config(args)
    config.validate()
    records = generate(config)
    adaptability = generate_adaptability(config)
    args.out.mkdir(parents=True, exist_ok=True)
    task_path = args.out / report.TASK_FILE
    adapt_path = args.out / report.ADAPTABILITY_FILE
    from .records import write_task_csv

    n = write_task_csv(records, task_path)
    report.write_adaptability_csv(adaptability, adapt_path)
    print(f"seed: {config.seed}")
    print(f"mode: {config.mode.value}")
    print(f"wrote {n} task records -> {task_path}")
    print(f"wrote {len(adaptability)} adaptability cells -> {adapt_path}")
    return 0


def _read_valid_records(path: Path) -> list[TaskRecord]:
    records = read_task_csv(path)
    if not records:
        raise AgentMetricsError(f"{path}: no task records")
    problems = []
    for record in records:
        for violation in validate_record(record):
            problems.append(f"task {record.task_id}: {violation}")
            if len(problems) >= 10:
                break
        if len(problems) >= 10:
            break
    if problems:
        raise AgentMetricsError(f"{path}: invalid records:\n  " + "\n  ".join(problems))
    return records


def _build_cells(records: Sequence[TaskRecord], config: SimConfig):
    domain_map = {d.name: d for d in config.domains}
    groups = agg.group_records(records)
    unknown = sorted({d for _, d in groups if d not in domain_map})
    if unknown:
        raise AgentMetricsError(
            f"records reference domains with no KPI configuration: {unknown} "
            "(provide them via --config)"
        )
    cells = [
        agg.aggregate_cell(cell_records, config.cost_model, DEFAULT_WEIGHTS, domain_map[domain])
        for (_, domain), cell_records in groups.items()
    ]
    return cells, domain_map


def _overall_rows(cells) -> list[agg.OverallRow]:
    agents = list(dict.fromkeys(c.agent for c in cells))
    rows = []
    for agent in agents:
        mine = [c for c in cells if c.agent == agent]
        counts = {c.domain: c.n_tasks for c in mine}
        rows.append(agg.aggregate_overall(mine, counts))
    return rows


def _cmd_evaluate(args: argparse.Namespace) -> int:
    records = _read_valid_records(args.data)
    config = _load_effective_config(args)
    cells, domain_map = _build_cells(records, config)
    overall = _overall_rows(cells)
    business = agg.business_rows(cells, domain_map)

    args.out.mkdir(parents=True, exist_ok=True)
    report.write_aggregate_csv(cells, args.out / report.AGGREGATE_FILE)
    report.write_overall_csv(overall, args.out / report.OVERALL_FILE)
    report.write_business_csv(business, args.out / report.BUSINESS_FILE)

    print(f"evaluated {len(records)} tasks into {len(cells)} agent x domain cells")
    print()
    print("== Overall metrics by agent (task-count weighted) ==")
    print()
    print(
        report.render_text_table(
            ["Agent", "GCR %", "AIx", "DTT s", "CES", "MTR %", "OAS", "CRS %", "CQI"],
            [
                [
                    r.agent,
                    f"{r.gcr:.2f}",
                    f"{r.aix:.4f}",
                    f"{r.dtt_mean:.2f}",
                    f"{r.ces:.2f}",
                    f"{r.mtr:.2f}",
                    f"{r.oas:.2f}",
                    f"{r.crs:.2f}",
                    f"{r.cqi:.2f}",
                ]
                for r in overall
            ],
        )
    )
    if args.baseline_dtt is not None:
        if args.baseline_dtt <= 0:
            raise AgentMetricsError("--baseline-dtt must be > 0")
        for r in overall:
            print(f"time efficiency vs {args.baseline_dtt:.0f}s baseline: {r.agent} {args.baseline_dtt / r.dtt_mean:.2f}x")
    if args.baseline_ces is not None:
        if args.baseline_ces <= 0:
            raise AgentMetricsError("--baseline-ces must be > 0")
        for r in overall:
            print(f"cost efficiency vs {args.baseline_ces:.0f}-unit baseline: {r.agent} {args.baseline_ces / r.ces:.2f}x")
    print(f"wrote {report.AGGREGATE_FILE}, {report.OVERALL_FILE}, {report.BUSINESS_FILE} -> {args.out}")
    return 0


def _task_metric_groups(records: Sequence[TaskRecord], metric: str) -> dict[str, list[float]]:
    groups: dict[str, list[float]] = {}
    for r in records:
        if metric == "gcr":
            value = 100.0 if r.success else 0.0
        elif metric == "dtt":
            value = (r.t_end_s - r.t_start_s) - r.human_wait_s
        else:  # oas: mean of the rater panel, when present
            if not r.rater_scores:
                continue
            value = sum(sum(s.as_tuple()) / 4.0 for s in r.rater_scores) / len(r.rater_scores)
        groups.setdefault(r.agent, []).append(value)
    return groups


def _cell_metric_groups(cells, metric: str) -> dict[str, list[float]]:
    groups: dict[str, list[float]] = {}
    for cell in cells:
        value = getattr(cell, metric)
        if value is None:
            continue
        groups.setdefault(cell.agent, []).append(float(value))
    return groups


def _cmd_analyze(args: argparse.Namespace) -> int:
    records = _read_valid_records(args.data)
    agents = list(dict.fromkeys(r.agent for r in records))
    if len(agents) < 2:
        raise AgentMetricsError("analysis needs tasks from at least two agents")
    config = _load_effective_config(args)
    cells, _ = _build_cells(records, config)
    args.out.mkdir(parents=True, exist_ok=True)

    metric_names = CELL_METRICS if args.unit == "cells" else TASK_METRICS
    anova_rows: list[list[str]] = []
    tukey_rows: list[list[str]] = []
    effect_rows: list[list[str]] = []
    skipped: list[str] = []
    for metric in metric_names:
        if args.unit == "cells":
            groups = _cell_metric_groups(cells, metric)
        else:
            groups = _task_metric_groups(records, metric)
        groups = {k: v for k, v in groups.items() if len(v) >= 2}
        if len(groups) < 2:
            skipped.append(metric)
            continue
        try:
            result = stats.one_way_anova(list(groups.values()))
        except DegenerateDataError:
            skipped.append(metric)
            continue
        anova_rows.append(
            [
                metric,
                f"{result.ss_between:.6f}",
                f"{result.ss_within:.6f}",
                str(result.df_between),
                str(result.df_within),
                f"{result.f_stat:.6f}",
                f"{result.p_value:.6g}",
                "1" if result.p_value < args.alpha else "0",
            ]
        )
        for pair in stats.tukey_hsd(groups, alpha=args.alpha):
            tukey_rows.append(
                [
                    metric,
                    pair.group_a,
                    pair.group_b,
                    f"{pair.mean_diff:.6f}",
                    f"{pair.q_stat:.6f}",
                    f"{pair.p_value:.6g}",
                    "1" if pair.significant else "0",
                ]
            )
        if metric in EFFECT_METRICS or metric in ("dtt",):
            names = list(groups)
            for i in range(len(names)):
                for j in range(i + 1, len(names)):
                    effect = stats.cohens_d(groups[names[i]], groups[names[j]])
                    effect_rows.append(
                        [metric, names[i], names[j], f"{effect.d:.6f}", effect.magnitude]
                    )

    wilson_rows = []
    success_table = []
    for agent in agents:
        mine = [r for r in records if r.agent == agent]
        successes = sum(1 for r in mine if r.success)
        interval = stats.wilson_interval(successes, len(mine))
        wilson_rows.append(
            [agent, str(successes), str(len(mine)), f"{interval.low:.6f}", f"{interval.high:.6f}"]
        )
        success_table.append([successes, len(mine) - successes])
    chi2 = stats.chi_square_independence(success_table)

    corr_cells = [c for c in cells if all(getattr(c, m) is not None for m in CELL_METRICS)]
    matrix = None
    if len(corr_cells) >= 2:
        columns = {m: [float(getattr(c, m)) for c in corr_cells] for m in CELL_METRICS}
        try:
            matrix = stats.pearson_matrix(columns)
        except DegenerateDataError as exc:
            skipped.append(f"correlation ({exc})")

    def write_rows(name: str, header: Sequence[str], rows: Sequence[Sequence[str]]) -> None:
        import csv

        with open(args.out / name, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(header)
            writer.writerows(rows)

    write_rows(
        "stats_anova.csv",
        ["metric", "ss_between", "ss_within", "df_between", "df_within", "f_stat", "p_value", "significant"],
        anova_rows,
    )
    write_rows(
        "stats_tukey.csv",
        ["metric", "group_a", "group_b", "mean_diff", "q_stat", "p_value", "significant"],
        tukey_rows,
    )
    write_rows(
        "stats_effect_sizes.csv",
        ["metric", "agent_a", "agent_b", "cohens_d", "magnitude"],
        effect_rows,
    )
    write_rows("stats_wilson.csv", ["agent", "successes", "n", "low", "high"], wilson_rows)
    write_rows(
        "stats_chi_square.csv",
        ["chi2", "df", "p_value"],
        [[f"{chi2.chi2:.6f}", str(chi2.df), f"{chi2.p_value:.6g}"]],
    )
    if matrix is not None:
        write_rows(
            "stats_correlation.csv",
            ["metric", *matrix.labels],
            [
                [label, *(f"{v:.6f}" for v in row)]
                for label, row in zip(matrix.labels, matrix.values)
            ],
        )

    print(f"analysis unit: {args.unit} ({len(records)} tasks, {len(cells)} cells)")
    print()
    print(
        report.render_text_table(
            ["Metric", "F", "p", f"significant at {args.alpha:g}"],
            [[r[0], r[5], r[6], "yes" if r[7] == "1" else "no"] for r in anova_rows],
        )
    )
    significant_pairs = [r for r in tukey_rows if r[6] == "1"]
    print(f"Tukey HSD: {len(significant_pairs)} of {len(tukey_rows)} agent pairs differ at alpha={args.alpha:g}")
    print()
    print(
        report.render_text_table(
            ["Agent", "Successes", "N", "Wilson low", "Wilson high"],
            wilson_rows,
        )
    )
    print(f"success x agent chi-square: chi2={chi2.chi2:.4f} df={chi2.df} p={chi2.p_value:.6g}")
    if skipped:
        print(f"skipped (insufficient or constant data): {', '.join(skipped)}")
    print(f"wrote stats_*.csv -> {args.out}")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    data_dir: Path = args.data
    needed = {
        report.AGGREGATE_FILE: report.read_aggregate_csv,
        report.OVERALL_FILE: report.read_overall_csv,
        report.ADAPTABILITY_FILE: report.read_adaptability_csv,
        report.BUSINESS_FILE: report.read_business_csv,
    }
    missing = [name for name in needed if not (data_dir / name).is_file()]
    if missing:
        raise AgentMetricsError(
            f"{data_dir}: missing input files: {', '.join(missing)} "
            "(run the simulate and evaluate steps first)"
        )
    cells = report.read_aggregate_csv(data_dir / report.AGGREGATE_FILE)
    overall = report.read_overall_csv(data_dir / report.OVERALL_FILE)
    adaptability = report.read_adaptability_csv(data_dir / report.ADAPTABILITY_FILE)
    business = report.read_business_csv(data_dir / report.BUSINESS_FILE)

    args.out.mkdir(parents=True, exist_ok=True)
    written: list[str] = []

    if args.format in ("txt", "all"):
        text = report.tables_report(overall, cells, adaptability, business)
        path = args.out / "report_tables.txt"
        path.write_text(text)
        written.append(path.name)
        print(text)

    if args.format in ("csv", "svg", "all"):
        datasets = charts.all_chart_data(cells, overall, adaptability)
        for dataset in datasets:
            if args.format in ("csv", "all"):
                charts.write_chart_csv(dataset, args.out / dataset.csv_name())
                written.append(dataset.csv_name())
            if args.format in ("svg", "all"):
                charts.render_chart_svg(dataset, args.out / dataset.svg_name())
                written.append(dataset.svg_name())

    print(f"wrote {len(written)} report files -> {args.out}")
    return 0


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return int(args.func(args))
    except FileNotFoundError as exc:
        missing = exc.filename if exc.filename else exc
        print(f"error: file not found: {missing}", file=sys.stderr)
        return 2
    except AgentMetricsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
