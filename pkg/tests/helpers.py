"""Shared builders for tests: record factories, reference rows, oracles."""

from __future__ import annotations

import math

from agentmetrics.aggregate import OverallRow
from agentmetrics.defaults import DOMAIN_CONFIGS, REFERENCE_CELLS, REFERENCE_OVERALL
from agentmetrics.records import (
    ChainOutcome,
    CollabScores,
    ErrorType,
    Interventions,
    MetricCell,
    RaterScores,
    TaskRecord,
    ToolEvent,
    ToolUseOutcome,
    chain_level_for,
)


def make_chain(
    total_steps: int = 4,
    *,
    had_initial_error: bool = False,
    error_type: ErrorType | None = None,
    self_recovered: bool = False,
    chain_success: bool = True,
    chain_len: int | None = None,
) -> ChainOutcome:
    if chain_len is None:
        chain_len = total_steps
    if had_initial_error and error_type is None:
        error_type = ErrorType.INTERMEDIATE_STEP_FAILURE
    return ChainOutcome(
        is_multistep=total_steps >= 2,
        had_initial_error=had_initial_error,
        error_type=error_type,
        self_recovered=self_recovered,
        chain_len=chain_len,
        complexity_level=chain_level_for(chain_len),
        chain_success=chain_success,
    )


def make_record(
    task_id: str = "t-0001",
    agent: str = "ReAct",
    domain: str = "Healthcare",
    success: bool = True,
    total_steps: int = 4,
    interventions: Interventions = Interventions(),
    t_start_s: float = 0.0,
    t_end_s: float = 300.0,
    human_wait_s: float = 0.0,
    tokens: int = 1000,
    api_calls: int = 1,
    tool_events: tuple[ToolEvent, ...] = (ToolEvent(ToolUseOutcome.OPTIMAL_USE),),
    rater_scores: tuple[RaterScores, ...] | None = (
        RaterScores(8, 8, 8, 8),
        RaterScores(8, 8, 8, 8),
        RaterScores(8, 8, 8, 8),
    ),
    collab_scores: CollabScores | None = CollabScores(4, 4, 4, 4, 4),
    chain: ChainOutcome | None = None,
    kpi_contribution: float = 0.0,
) -> TaskRecord:
    """A valid record with every field overridable; chain defaults mirror steps."""
    if chain is None:
        chain = make_chain(total_steps, chain_success=success)
    return TaskRecord(
        task_id=task_id,
        agent=agent,
        domain=domain,
        success=success,
        total_steps=total_steps,
        interventions=interventions,
        t_start_s=t_start_s,
        t_end_s=t_end_s,
        human_wait_s=human_wait_s,
        tokens=tokens,
        api_calls=api_calls,
        tool_events=tool_events,
        rater_scores=rater_scores,
        collab_scores=collab_scores,
        chain=chain,
        kpi_contribution=kpi_contribution,
    )


# Published agreement-study examples used as oracle fixtures.
#
# FLEISS_EXAMPLE: 10 subjects rated by 14 raters into 5 categories
# (category counts per subject); kappa rounds to 0.210.
FLEISS_EXAMPLE = (
    (0, 0, 0, 0, 14),
    (0, 2, 6, 4, 2),
    (0, 0, 3, 5, 6),
    (0, 3, 9, 2, 0),
    (2, 2, 8, 1, 1),
    (7, 7, 0, 0, 0),
    (3, 2, 6, 3, 0),
    (2, 5, 3, 2, 2),
    (6, 5, 2, 1, 0),
    (0, 2, 2, 3, 7),
)

# KRIPPENDORFF_EXAMPLE: 4 observers x 12 units (None = not coded); the final
# unit carries a single rating and drops out as unpairable. Interval alpha
# rounds to 0.849, nominal to 0.743.
KRIPPENDORFF_EXAMPLE = (
    (1, 2, 3, 3, 2, 1, 4, 1, 2, None, None, None),
    (1, 2, 3, 3, 2, 2, 4, 1, 2, 5, None, 3),
    (None, 3, 3, 3, 2, 3, 4, 2, 2, 5, 1, None),
    (1, 2, 3, 3, 2, 4, 4, 1, 2, 5, 1, None),
)


def krippendorff_units(matrix=KRIPPENDORFF_EXAMPLE):
    """Transpose the observer x unit matrix into per-unit value lists."""
    return [list(col) for col in zip(*matrix)]


def anova_brute_force(groups):
    """Definition-level sum-of-squares decomposition (independent oracle)."""
    all_values = [v for g in groups for v in g]
    grand = sum(all_values) / len(all_values)
    ss_between = 0.0
    ss_within = 0.0
    for g in groups:
        mean = sum(g) / len(g)
        ss_between += len(g) * (mean - grand) ** 2
        ss_within += sum((v - mean) ** 2 for v in g)
    ss_total = sum((v - grand) ** 2 for v in all_values)
    df_b = len(groups) - 1
    df_w = len(all_values) - len(groups)
    f = (ss_between / df_b) / (ss_within / df_w) if ss_within > 0 else math.inf
    return ss_between, ss_within, ss_total, f


def reference_cell(agent: str, domain: str) -> MetricCell:
    """A full cell row with the published gcr/aix/dtt/oas and neutral filler."""
    ref = REFERENCE_CELLS[(agent, domain)]
    n = DOMAIN_CONFIGS[domain].task_count
    return MetricCell(
        agent=agent,
        domain=domain,
        n_tasks=n,
        n_success=round(ref["gcr"] / 100.0 * n),
        gcr=ref["gcr"],
        aix=ref["aix"],
        aix_weighted=ref["aix"],
        dtt_mean=ref["dtt"],
        dtt_median=ref["dtt"],
        dtt_p95=1.4 * ref["dtt"],
        ces=2500.0,
        mtr=25.0,
        tdi_raw=0.2,
        tdi_norm=0.6,
        oas=ref["oas"],
        oas_weighted=ref["oas"],
        crs=70.0,
        cqi=4.0,
        op_cost=100.0,
        kpi_monetary=5000.0,
        bie=50.0,
        roi=4900.0,
    )


def reference_overall_row(agent: str) -> OverallRow:
    """An overall row carrying the published per-agent metric values."""
    ref = REFERENCE_OVERALL[agent]
    return OverallRow(
        agent=agent,
        n_tasks=750,
        n_success=round(ref["gcr"] / 100.0 * 750),
        gcr=ref["gcr"],
        aix=ref["aix"],
        aix_weighted=ref["aix"],
        dtt_mean=ref["dtt"],
        dtt_median=ref["dtt"],
        dtt_p95=1.4 * ref["dtt"],
        ces=ref["ces"],
        mtr=ref["mtr"],
        tdi_raw=2.0 * ref["tdi_norm"] - 1.0,
        tdi_norm=ref["tdi_norm"],
        oas=ref["oas"],
        oas_weighted=ref["oas"],
        crs=ref["crs"],
        cqi=ref["cqi"],
        op_cost=100.0,
        kpi_monetary=5000.0,
        bie=50.0,
        roi=4900.0,
    )
