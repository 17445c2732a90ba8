"""Dataset export/import in the published five-file layout, plus text tables.

File layout written by :func:`export_datasets` into an output directory:

========================== ============================================
data_task_level.csv        one row per task (canonical record schema)
data_aggregate_metrics.csv one row per agent x domain cell
data_overall_metrics.csv   one row per agent (task-count weighted)
data_adaptability.csv      zero-shot vs few-shot completion per cell
data_business_impact.csv   KPI/monetary/cost/BIE/ROI per cell
========================== ============================================

Numeric formatting is fixed: two decimals for percents, dollars, scores and
seconds; four decimals for unit-interval ratios and indices. Import helpers
parse the files back, so export -> import -> export is byte-identical.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .aggregate import BusinessRow, OverallRow
from .errors import InvalidInputError
from .records import AdaptabilityCell, MetricCell, TaskRecord, write_task_csv

TASK_FILE = "data_task_level.csv"
AGGREGATE_FILE = "data_aggregate_metrics.csv"
OVERALL_FILE = "data_overall_metrics.csv"
ADAPTABILITY_FILE = "data_adaptability.csv"
BUSINESS_FILE = "data_business_impact.csv"

DATASET_FILES = (TASK_FILE, AGGREGATE_FILE, OVERALL_FILE, ADAPTABILITY_FILE, BUSINESS_FILE)

_METRIC_COLUMNS: tuple[tuple[str, str], ...] = (
    # (column, format kind): pct/score/seconds/dollars print at 2 decimals,
    # unit-interval ratios and indices at 4
    ("gcr", "2"),
    ("aix", "4"),
    ("aix_weighted", "4"),
    ("dtt_mean", "2"),
    ("dtt_median", "2"),
    ("dtt_p95", "2"),
    ("ces", "2"),
    ("mtr", "2"),
    ("tdi_raw", "4"),
    ("tdi_norm", "4"),
    ("oas", "2"),
    ("oas_weighted", "2"),
    ("crs", "2"),
    ("cqi", "2"),
    ("op_cost", "2"),
    ("kpi_monetary", "2"),
    ("bie", "2"),
    ("roi", "2"),
)

AGGREGATE_HEADER = ("agent", "domain", "n_tasks", "n_success") + tuple(c for c, _ in _METRIC_COLUMNS)
OVERALL_HEADER = ("agent", "n_tasks", "n_success") + tuple(c for c, _ in _METRIC_COLUMNS)
ADAPTABILITY_HEADER = ("agent", "domain", "gcr_zero_shot", "gcr_few_shot", "ad", "ar")
BUSINESS_HEADER = ("agent", "domain", "kpi_value", "monetary_value", "op_cost", "bie", "roi")


def _fmt(value: float | None, kind: str) -> str:
    if value is None:
        return ""
    return f"{value:.2f}" if kind == "2" else f"{value:.4f}"


def _parse_optional(raw: str) -> float | None:
    return None if raw == "" else float(raw)


def _metric_values(row: MetricCell | OverallRow) -> list[str]:
    return [_fmt(getattr(row, column), kind) for column, kind in _METRIC_COLUMNS]


def _write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def write_aggregate_csv(cells: Sequence[MetricCell], path: str | Path) -> None:
    _write_csv(
        Path(path),
        AGGREGATE_HEADER,
        ([c.agent, c.domain, str(c.n_tasks), str(c.n_success), *_metric_values(c)] for c in cells),
    )


def write_overall_csv(rows: Sequence[OverallRow], path: str | Path) -> None:
    _write_csv(
        Path(path),
        OVERALL_HEADER,
        ([r.agent, str(r.n_tasks), str(r.n_success), *_metric_values(r)] for r in rows),
    )


def write_adaptability_csv(cells: Sequence[AdaptabilityCell], path: str | Path) -> None:
    _write_csv(
        Path(path),
        ADAPTABILITY_HEADER,
        (
            [
                c.agent,
                c.domain,
                _fmt(c.gcr_zero_shot, "4"),
                _fmt(c.gcr_few_shot, "4"),
                _fmt(c.ad, "4"),
                _fmt(c.ar, "2"),
            ]
            for c in cells
        ),
    )


def write_business_csv(rows: Sequence[BusinessRow], path: str | Path) -> None:
    _write_csv(
        Path(path),
        BUSINESS_HEADER,
        (
            [
                r.agent,
                r.domain,
                _fmt(r.kpi_value, "2"),
                _fmt(r.monetary_value, "2"),
                _fmt(r.op_cost, "2"),
                _fmt(r.bie, "2"),
                _fmt(r.roi, "2"),
            ]
            for r in rows
        ),
    )


def export_datasets(
    records: Sequence[TaskRecord],
    cells: Sequence[MetricCell],
    overall: Sequence[OverallRow],
    adaptability: Sequence[AdaptabilityCell],
    business: Sequence[BusinessRow],
    out_dir: str | Path,
) -> dict[str, int]:
    """Write all five dataset files; returns row counts per file name."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    counts = {TASK_FILE: write_task_csv(records, out / TASK_FILE)}
    write_aggregate_csv(cells, out / AGGREGATE_FILE)
    counts[AGGREGATE_FILE] = len(cells)
    write_overall_csv(overall, out / OVERALL_FILE)
    counts[OVERALL_FILE] = len(overall)
    write_adaptability_csv(adaptability, out / ADAPTABILITY_FILE)
    counts[ADAPTABILITY_FILE] = len(adaptability)
    write_business_csv(business, out / BUSINESS_FILE)
    counts[BUSINESS_FILE] = len(business)
    return counts


def _read_csv(path: str | Path, expected_header: Sequence[str]) -> list[dict[str, str]]:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InvalidInputError(f"{path}: empty file") from None
        if tuple(header) != tuple(expected_header):
            raise InvalidInputError(f"{path}: unexpected header {header!r}")
        rows = []
        for i, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise InvalidInputError(f"{path}: line {i}: expected {len(header)} columns")
            rows.append(dict(zip(header, row)))
    return rows


def read_aggregate_csv(path: str | Path) -> list[MetricCell]:
    cells = []
    for row in _read_csv(path, AGGREGATE_HEADER):
        try:
            cells.append(
                MetricCell(
                    agent=row["agent"],
                    domain=row["domain"],
                    n_tasks=int(row["n_tasks"]),
                    n_success=int(row["n_success"]),
                    **{
                        column: _parse_optional(row[column])  # type: ignore[arg-type]
                        for column, _ in _METRIC_COLUMNS
                    },
                )
            )
        except ValueError as exc:
            raise InvalidInputError(f"{path}: bad aggregate row {row['agent']}/{row['domain']}: {exc}") from None
    return cells


def read_overall_csv(path: str | Path) -> list[OverallRow]:
    rows = []
    for row in _read_csv(path, OVERALL_HEADER):
        try:
            rows.append(
                OverallRow(
                    agent=row["agent"],
                    n_tasks=int(row["n_tasks"]),
                    n_success=int(row["n_success"]),
                    **{
                        column: _parse_optional(row[column])  # type: ignore[arg-type]
                        for column, _ in _METRIC_COLUMNS
                    },
                )
            )
        except ValueError as exc:
            raise InvalidInputError(f"{path}: bad overall row {row['agent']}: {exc}") from None
    return rows


def read_adaptability_csv(path: str | Path) -> list[AdaptabilityCell]:
    cells = []
    for row in _read_csv(path, ADAPTABILITY_HEADER):
        try:
            cells.append(
                AdaptabilityCell(
                    agent=row["agent"],
                    domain=row["domain"],
                    gcr_zero_shot=float(row["gcr_zero_shot"]),
                    gcr_few_shot=float(row["gcr_few_shot"]),
                    ad=float(row["ad"]),
                    ar=_parse_optional(row["ar"]),
                )
            )
        except ValueError as exc:
            raise InvalidInputError(f"{path}: bad adaptability row: {exc}") from None
    return cells


def read_business_csv(path: str | Path) -> list[BusinessRow]:
    rows = []
    for row in _read_csv(path, BUSINESS_HEADER):
        try:
            rows.append(
                BusinessRow(
                    agent=row["agent"],
                    domain=row["domain"],
                    kpi_value=float(row["kpi_value"]),
                    monetary_value=float(row["monetary_value"]),
                    op_cost=float(row["op_cost"]),
                    bie=float(row["bie"]),
                    roi=float(row["roi"]),
                )
            )
        except ValueError as exc:
            raise InvalidInputError(f"{path}: bad business row: {exc}") from None
    return rows


# ---------------------------------------------------------------------------
# Aligned plain-text tables


def render_text_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    """Fixed-width table: first column left-aligned, the rest right-aligned."""
    table = [list(headers)] + [list(r) for r in rows]
    widths = [max(len(row[i]) for row in table) for i in range(len(headers))]
    lines = []
    for r, row in enumerate(table):
        cells = [
            row[i].ljust(widths[i]) if i == 0 else row[i].rjust(widths[i])
            for i in range(len(row))
        ]
        lines.append("  ".join(cells).rstrip())
        if r == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"


def tables_report(
    overall: Sequence[OverallRow],
    cells: Sequence[MetricCell],
    adaptability: Sequence[AdaptabilityCell],
    business: Sequence[BusinessRow],
) -> str:
    """The four study tables as one aligned plain-text report."""
    sections = []

    sections.append("== Overall metrics by agent (task-count weighted) ==\n")
    sections.append(
        render_text_table(
            ["Agent", "GCR %", "AIx", "DTT s", "CES", "MTR %", "TDI", "OAS", "CRS %", "CQI"],
            [
                [
                    r.agent,
                    _fmt(r.gcr, "2"),
                    _fmt(r.aix, "4"),
                    _fmt(r.dtt_mean, "2"),
                    _fmt(r.ces, "2"),
                    _fmt(r.mtr, "2"),
                    _fmt(r.tdi_norm, "4"),
                    _fmt(r.oas, "2"),
                    _fmt(r.crs, "2"),
                    _fmt(r.cqi, "2"),
                ]
                for r in overall
            ],
        )
    )

    sections.append("\n== Core metrics by agent and domain ==\n")
    sections.append(
        render_text_table(
            ["Agent", "Domain", "GCR %", "AIx", "DTT s", "OAS"],
            [
                [
                    c.agent,
                    c.domain,
                    _fmt(c.gcr, "2"),
                    _fmt(c.aix, "4"),
                    _fmt(c.dtt_mean, "2"),
                    _fmt(c.oas, "2"),
                ]
                for c in cells
            ],
        )
    )

    sections.append("\n== Adaptability: zero-shot vs few-shot completion ==\n")
    sections.append(
        render_text_table(
            ["Agent", "Domain", "Zero-shot", "Few-shot", "Delta", "Rate %"],
            [
                [
                    a.agent,
                    a.domain,
                    _fmt(a.gcr_zero_shot, "4"),
                    _fmt(a.gcr_few_shot, "4"),
                    _fmt(a.ad, "4"),
                    _fmt(a.ar, "2") if a.ar is not None else "n/a",
                ]
                for a in adaptability
            ],
        )
    )

    sections.append("\n== Business impact by agent and domain ==\n")
    sections.append(
        render_text_table(
            ["Agent", "Domain", "KPI", "Monetary $", "Op cost $", "BIE", "ROI %"],
            [
                [
                    b.agent,
                    b.domain,
                    _fmt(b.kpi_value, "2"),
                    _fmt(b.monetary_value, "2"),
                    _fmt(b.op_cost, "2"),
                    _fmt(b.bie, "2"),
                    _fmt(b.roi, "2"),
                ]
                for b in business
            ],
        )
    )
    return "".join(sections)
