"""Chart datasets and figure rendering for the report pipeline.

Each chart exists in two forms: a small delimited dataset (what the figure
plots, exactly) and an SVG rendered from the same numbers with matplotlib.
Keeping the dataset primary makes every figure auditable and the SVG output
reproducible: fixed hash salt, no embedded creation date.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Sequence

from .aggregate import OverallRow
from .errors import IncompleteGridError, InvalidInputError
from .records import AdaptabilityCell, MetricCell

SVG_HASH_SALT = "agentmetrics"


class ChartKind(Enum):
    RADAR = "radar"
    GCR_HEATMAP = "gcr-heatmap"
    AIX_DTT_SCATTER = "aix-dtt-scatter"
    CES_BARS = "ces-bars"
    RESILIENCE_BARS = "resilience-bars"
    ADAPTABILITY_LINES = "adaptability-lines"
    BIE_BARS = "bie-bars"
    ROI_BARS = "roi-bars"


# Radar axes: (label, OverallRow attribute, invert). Lower DTT/CES is better,
# so those two axes are flipped before min-max scaling.
RADAR_AXES: tuple[tuple[str, str, bool], ...] = (
    ("gcr", "gcr", False),
    ("aix", "aix", False),
    ("dtt", "dtt_mean", True),
    ("ces", "ces", True),
    ("mtr", "mtr", False),
    ("tdi", "tdi_norm", False),
    ("oas", "oas", False),
    ("crs", "crs", False),
    ("cqi", "cqi", False),
)


@dataclass(frozen=True)
class ChartDataset:
    """The numbers behind one figure, in plottable row form."""

    kind: ChartKind
    title: str
    columns: tuple[str, ...]
    rows: tuple[tuple[str | float, ...], ...]

    def csv_name(self) -> str:
        return f"chart_{self.kind.value.replace('-', '_')}.csv"

    def svg_name(self) -> str:
        return f"chart_{self.kind.value.replace('-', '_')}.svg"


def minmax_normalized(values: Sequence[float], invert: bool = False) -> list[float]:
    """Scale to [0, 1]; a constant series maps to all ones (no spread to rank)."""
    lo, hi = min(values), max(values)
    if hi == lo:
        return [1.0] * len(values)
    if invert:
        return [(hi - v) / (hi - lo) for v in values]
    return [(v - lo) / (hi - lo) for v in values]


def _seen_order(items: Sequence[str]) -> list[str]:
    return list(dict.fromkeys(items))


def _grid_index(cells: Sequence[MetricCell]) -> tuple[list[str], list[str], dict[tuple[str, str], MetricCell]]:
    agents = _seen_order([c.agent for c in cells])
    domains = _seen_order([c.domain for c in cells])
    index: dict[tuple[str, str], MetricCell] = {}
    for cell in cells:
        key = (cell.agent, cell.domain)
        if key in index:
            raise InvalidInputError(f"duplicate cell {cell.agent}/{cell.domain}")
        index[key] = cell
    missing = [
        f"{a}/{d}" for a in agents for d in domains if (a, d) not in index
    ]
    if missing:
        raise IncompleteGridError(
            f"agent x domain grid is incomplete; missing cells: {', '.join(missing)}"
        )
    return agents, domains, index


def chart_data(
    cells: Sequence[MetricCell],
    overall: Sequence[OverallRow],
    kind: ChartKind,
    adaptability: Sequence[AdaptabilityCell] | None = None,
) -> ChartDataset:
    """Build the dataset for one chart kind from already-aggregated inputs."""
    if kind is ChartKind.RADAR:
        if not overall:
            raise InvalidInputError("radar chart needs at least one overall row")
        axes = []
        for _, attr, invert in RADAR_AXES:
            raw = [getattr(r, attr) for r in overall]
            if any(v is None for v in raw):
                raise InvalidInputError(f"radar chart: metric {attr} missing for some agent")
            axes.append(minmax_normalized(raw, invert=invert))
        rows = tuple(
            (row.agent, *(axes[j][i] for j in range(len(RADAR_AXES))))
            for i, row in enumerate(overall)
        )
        return ChartDataset(
            kind,
            "Normalized metric profile by agent (min-max, time/cost inverted)",
            ("agent",) + tuple(label for label, _, _ in RADAR_AXES),
            rows,
        )

    if kind is ChartKind.GCR_HEATMAP:
        agents, domains, index = _grid_index(cells)
        rows = tuple(
            (agent, *(index[(agent, domain)].gcr for domain in domains))
            for agent in agents
        )
        return ChartDataset(
            kind,
            "Goal completion rate (%) by agent and domain",
            ("agent",) + tuple(domains),
            rows,
        )

    if kind is ChartKind.AIX_DTT_SCATTER:
        if not overall:
            raise InvalidInputError("scatter chart needs at least one overall row")
        rows = tuple((r.agent, r.aix, r.dtt_mean) for r in overall)
        return ChartDataset(
            kind,
            "Autonomy vs mean task time by agent",
            ("agent", "aix", "dtt_mean_s"),
            rows,
        )

    if kind is ChartKind.CES_BARS:
        if not overall:
            raise InvalidInputError("bar chart needs at least one overall row")
        rows = tuple((r.agent, r.ces) for r in overall)
        return ChartDataset(
            kind,
            "Cost efficiency (resource units per success) by agent",
            ("agent", "ces"),
            rows,
        )

    if kind is ChartKind.RESILIENCE_BARS:
        if not overall:
            raise InvalidInputError("bar chart needs at least one overall row")
        rows = tuple((r.agent, r.mtr, r.crs) for r in overall)
        return ChartDataset(
            kind,
            "Error recovery and long-chain completion (%) by agent",
            ("agent", "mtr", "crs"),
            rows,
        )

    if kind is ChartKind.ADAPTABILITY_LINES:
        if not adaptability:
            raise InvalidInputError("adaptability chart needs zero/few-shot cells")
        agents = _seen_order([c.agent for c in adaptability])
        rows = []
        for agent in agents:
            mine = [c for c in adaptability if c.agent == agent]
            rows.append(
                (
                    agent,
                    sum(c.gcr_zero_shot for c in mine) / len(mine),
                    sum(c.gcr_few_shot for c in mine) / len(mine),
                )
            )
        return ChartDataset(
            kind,
            "Zero-shot to few-shot completion lift by agent (domain mean)",
            ("agent", "gcr_zero_shot", "gcr_few_shot"),
            tuple(rows),
        )

    if kind in (ChartKind.BIE_BARS, ChartKind.ROI_BARS):
        agents, domains, index = _grid_index(cells)
        attr = "bie" if kind is ChartKind.BIE_BARS else "roi"
        rows = tuple(
            (domain, *(getattr(index[(agent, domain)], attr) for agent in agents))
            for domain in domains
        )
        title = (
            "Business impact efficiency (value per cost dollar) by domain and agent"
            if kind is ChartKind.BIE_BARS
            else "Return on investment (%) by domain and agent"
        )
        return ChartDataset(kind, title, ("domain",) + tuple(agents), rows)

    raise InvalidInputError(f"unknown chart kind: {kind!r}")


def all_chart_data(
    cells: Sequence[MetricCell],
    overall: Sequence[OverallRow],
    adaptability: Sequence[AdaptabilityCell] | None = None,
) -> list[ChartDataset]:
    return [chart_data(cells, overall, kind, adaptability) for kind in ChartKind]


def write_chart_csv(dataset: ChartDataset, path: str | Path) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(dataset.columns)
        for row in dataset.rows:
            writer.writerow(
                [cell if isinstance(cell, str) else f"{cell:.4f}" for cell in row]
            )


# ---------------------------------------------------------------------------
# SVG rendering


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    # Reproducible output: fixed clip-path id salt, no creation timestamp.
    plt.rcParams["svg.hashsalt"] = SVG_HASH_SALT
    return plt


def _save(fig, path: str | Path) -> None:
    fig.savefig(path, format="svg", metadata={"Date": None})


def _floats(row: Sequence[str | float]) -> list[float]:
    return [float(v) for v in row[1:]]  # type: ignore[arg-type]


def render_chart_svg(dataset: ChartDataset, path: str | Path) -> None:
    """Render one chart dataset to an SVG file."""
    plt = _pyplot()
    fig = None
    try:
        if dataset.kind is ChartKind.RADAR:
            n_axes = len(dataset.columns) - 1
            angles = [2.0 * math.pi * i / n_axes for i in range(n_axes)]
            fig, ax = plt.subplots(figsize=(6.5, 6.5), subplot_kw={"polar": True})
            for row in dataset.rows:
                values = _floats(row)
                ax.plot(angles + angles[:1], values + values[:1], label=str(row[0]))
                ax.fill(angles + angles[:1], values + values[:1], alpha=0.08)
            ax.set_xticks(angles)
            ax.set_xticklabels(dataset.columns[1:])
            ax.set_ylim(0.0, 1.05)
            ax.legend(loc="upper right", bbox_to_anchor=(1.25, 1.1))
        elif dataset.kind is ChartKind.GCR_HEATMAP:
            matrix = [_floats(row) for row in dataset.rows]
            fig, ax = plt.subplots(figsize=(7.5, 4.5))
            image = ax.imshow(matrix, cmap="viridis", aspect="auto")
            ax.set_xticks(range(len(dataset.columns) - 1), dataset.columns[1:], rotation=30, ha="right")
            ax.set_yticks(range(len(dataset.rows)), [str(r[0]) for r in dataset.rows])
            for i, row in enumerate(matrix):
                for j, value in enumerate(row):
                    ax.text(j, i, f"{value:.1f}", ha="center", va="center", fontsize=8)
            fig.colorbar(image, ax=ax, label="GCR (%)")
        elif dataset.kind is ChartKind.AIX_DTT_SCATTER:
            fig, ax = plt.subplots(figsize=(6.5, 5.0))
            for row in dataset.rows:
                x, y = _floats(row)
                ax.scatter([x], [y], s=60)
                ax.annotate(str(row[0]), (x, y), textcoords="offset points", xytext=(6, 4))
            ax.set_xlabel("Autonomy index")
            ax.set_ylabel("Mean task time (s)")
        elif dataset.kind in (ChartKind.CES_BARS, ChartKind.RESILIENCE_BARS, ChartKind.ADAPTABILITY_LINES):
            labels = [str(r[0]) for r in dataset.rows]
            fig, ax = plt.subplots(figsize=(6.5, 4.5))
            if dataset.kind is ChartKind.CES_BARS:
                ax.bar(labels, [_floats(r)[0] for r in dataset.rows])
                ax.set_ylabel("Resource units per success")
            elif dataset.kind is ChartKind.RESILIENCE_BARS:
                width = 0.38
                xs = range(len(labels))
                ax.bar([x - width / 2 for x in xs], [_floats(r)[0] for r in dataset.rows], width, label="error recovery")
                ax.bar([x + width / 2 for x in xs], [_floats(r)[1] for r in dataset.rows], width, label="long-chain completion")
                ax.set_xticks(list(xs), labels)
                ax.set_ylabel("%")
                ax.legend()
            else:
                for row in dataset.rows:
                    zero, few = _floats(row)
                    ax.plot([0, 1], [zero, few], marker="o", label=str(row[0]))
                ax.set_xticks([0, 1], ["zero-shot", "few-shot"])
                ax.set_ylabel("Goal completion rate")
                ax.legend()
        elif dataset.kind in (ChartKind.BIE_BARS, ChartKind.ROI_BARS):
            domains = [str(r[0]) for r in dataset.rows]
            agents = dataset.columns[1:]
            fig, ax = plt.subplots(figsize=(8.0, 4.5))
            width = 0.8 / len(agents)
            for j, agent in enumerate(agents):
                xs = [i + (j - (len(agents) - 1) / 2) * width for i in range(len(domains))]
                ax.bar(xs, [_floats(r)[j] for r in dataset.rows], width, label=agent)
            ax.set_xticks(range(len(domains)), domains, rotation=20, ha="right")
            ax.set_ylabel("Value per cost $" if dataset.kind is ChartKind.BIE_BARS else "ROI (%)")
            ax.legend()
        else:  # pragma: no cover - exhaustive over ChartKind
            raise InvalidInputError(f"unknown chart kind: {dataset.kind!r}")
        ax.set_title(dataset.title, fontsize=10)
        fig.tight_layout()
        _save(fig, path)
    finally:
        if fig is not None:
            plt.close(fig)
