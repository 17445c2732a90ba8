"""Aggregation of task records into per-cell and per-agent metric rows."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import AgentMetricsError, EmptySliceError, IncompleteGridError
from .metrics import (
    aix_weighted,
    bie,
    ces,
    crs,
    cqi,
    dtt_summary,
    gcr,
    kpi_to_monetary,
    mtr,
    oas,
    oas_weighted,
    operational_cost,
    record_aix,
    roi,
    tdi,
    tdi_normalize,
)
from .records import (
    ComplexityWeights,
    CostModel,
    DomainConfig,
    MetricCell,
    TaskRecord,
)


@dataclass(frozen=True)
class OverallRow:
    """Task-count-weighted roll-up of one agent's domain cells."""

    agent: str
    n_tasks: int
    n_success: int
    gcr: float
    aix: float
    aix_weighted: float
    dtt_mean: float
    dtt_median: float
    dtt_p95: float
    ces: float
    mtr: float
    tdi_raw: float | None
    tdi_norm: float | None
    oas: float
    oas_weighted: float
    crs: float
    cqi: float
    op_cost: float
    kpi_monetary: float
    bie: float
    roi: float


@dataclass(frozen=True)
class BusinessRow:
    """Economic view of one cell: KPI value, dollars, cost and ratios."""

    agent: str
    domain: str
    kpi_value: float  # native domain units
    monetary_value: float
    op_cost: float
    bie: float
    roi: float


def aggregate_cell(
    records: Sequence[TaskRecord],
    cost_model: CostModel,
    weights: ComplexityWeights,
    domain_cfg: DomainConfig,
) -> MetricCell:
    """Compute every metric for one agent x domain slice of records."""
    if not records:
        raise EmptySliceError("aggregate_cell: empty cell")
    agent = records[0].agent
    domain = records[0].domain
    try:
        return _aggregate_cell(records, cost_model, weights, domain_cfg, agent, domain)
    except AgentMetricsError as exc:
        raise type(exc)(f"cell {agent}/{domain}: {exc}") from exc


def _aggregate_cell(
    records: Sequence[TaskRecord],
    cost_model: CostModel,
    weights: ComplexityWeights,
    domain_cfg: DomainConfig,
    agent: str,
    domain: str,
) -> MetricCell:
    timing = dtt_summary(records)
    events = [e for r in records for e in r.tool_events]
    tdi_raw = tdi(events) if events else None
    tdi_norm = tdi_normalize(tdi_raw) if tdi_raw is not None else None

    # one evaluator score per (record, rater): the rater's plain dimension mean
    rater_means = [
        sum(rater.as_tuple()) / 4.0
        for r in records
        if r.rater_scores is not None
        for rater in r.rater_scores
    ]
    weighted_panels = [
        oas_weighted(r.rater_scores) for r in records if r.rater_scores is not None
    ]
    if not rater_means:
        raise EmptySliceError("no rater panels present")
    sessions = [r.collab_scores for r in records if r.collab_scores is not None]

    op_cost = operational_cost(records, cost_model)
    kpi_native = sum(r.kpi_contribution for r in records)
    kpi_monetary = kpi_to_monetary(domain_cfg, kpi_native)

    return MetricCell(
        agent=agent,
        domain=domain,
        n_tasks=len(records),
        n_success=sum(1 for r in records if r.success),
        gcr=gcr(records),
        aix=sum(record_aix(r) for r in records) / len(records),
        aix_weighted=aix_weighted(records, weights),
        dtt_mean=timing.mean,
        dtt_median=timing.median,
        dtt_p95=timing.p95,
        ces=ces(records, cost_model),
        mtr=mtr(records),
        tdi_raw=tdi_raw,
        tdi_norm=tdi_norm,
        oas=oas(rater_means),
        oas_weighted=sum(weighted_panels) / len(weighted_panels),
        crs=crs(records),
        cqi=cqi(sessions),
        op_cost=op_cost,
        kpi_monetary=kpi_monetary,
        bie=bie(kpi_monetary, op_cost),
        roi=roi(kpi_monetary, op_cost),
    )


def group_records(records: Sequence[TaskRecord]) -> dict[tuple[str, str], list[TaskRecord]]:
    """Group records by (agent, domain), preserving first-seen order."""
    out: dict[tuple[str, str], list[TaskRecord]] = {}
    for r in records:
        out.setdefault((r.agent, r.domain), []).append(r)
    return out


def _weighted(pairs: list[tuple[float, float]]) -> float:
    total_w = sum(w for _, w in pairs)
    return sum(v * w for v, w in pairs) / total_w


def aggregate_overall(cells: Sequence[MetricCell], counts: Mapping[str, int]) -> OverallRow:
    """Weight one agent's domain cells into an overall row.

    Every metric is weighted by the domain task counts except CES, which is
    weighted by per-cell successful-task counts (its natural denominator).
    Requires exactly one cell for every domain in ``counts``.
    """
    if not cells:
        raise EmptySliceError("aggregate_overall: no cells")
    agents = {c.agent for c in cells}
    if len(agents) != 1:
        raise IncompleteGridError(f"aggregate_overall: cells span multiple agents: {sorted(agents)}")
    agent = cells[0].agent
    by_domain = {c.domain: c for c in cells}
    missing = [d for d in counts if d not in by_domain]
    if missing:
        raise IncompleteGridError(f"aggregate_overall: {agent} is missing domain cells: {missing}")
    extra = [d for d in by_domain if d not in counts]
    if extra:
        raise IncompleteGridError(f"aggregate_overall: {agent} has cells outside the grid: {extra}")

    ordered = [by_domain[d] for d in counts]
    w = [float(counts[c.domain]) for c in ordered]

    def mean_of(attr: str) -> float:
        return _weighted([(getattr(c, attr), wt) for c, wt in zip(ordered, w)])

    ces_pairs = [(c.ces, float(c.n_success)) for c in ordered]
    if all(weight == 0 for _, weight in ces_pairs):
        ces_pairs = [(c.ces, wt) for c, wt in zip(ordered, w)]
    tdi_pairs = [
        (c.tdi_raw, wt) for c, wt in zip(ordered, w) if c.tdi_raw is not None
    ]
    tdi_raw = _weighted(tdi_pairs) if tdi_pairs else None

    return OverallRow(
        agent=agent,
        n_tasks=sum(c.n_tasks for c in ordered),
        n_success=sum(c.n_success for c in ordered),
        gcr=mean_of("gcr"),
        aix=mean_of("aix"),
        aix_weighted=mean_of("aix_weighted"),
        dtt_mean=mean_of("dtt_mean"),
        dtt_median=mean_of("dtt_median"),
        dtt_p95=mean_of("dtt_p95"),
        ces=_weighted(ces_pairs),
        mtr=mean_of("mtr"),
        tdi_raw=tdi_raw,
        tdi_norm=tdi_normalize(tdi_raw) if tdi_raw is not None else None,
        oas=mean_of("oas"),
        oas_weighted=mean_of("oas_weighted"),
        crs=mean_of("crs"),
        cqi=mean_of("cqi"),
        op_cost=mean_of("op_cost"),
        kpi_monetary=mean_of("kpi_monetary"),
        bie=mean_of("bie"),
        roi=mean_of("roi"),
    )


def business_rows(
    cells: Sequence[MetricCell], domains: Mapping[str, DomainConfig]
) -> list[BusinessRow]:
    """Economic summary per cell; KPI restated in native domain units."""
    rows = []
    for cell in cells:
        cfg = domains.get(cell.domain)
        conversion = cfg.kpi_conversion if cfg is not None else 1.0
        kpi_value = cell.kpi_monetary / conversion if conversion > 0 else cell.kpi_monetary
        rows.append(
            BusinessRow(
                agent=cell.agent,
                domain=cell.domain,
                kpi_value=kpi_value,
                monetary_value=cell.kpi_monetary,
                op_cost=cell.op_cost,
                bie=cell.bie,
                roi=cell.roi,
            )
        )
    return rows
