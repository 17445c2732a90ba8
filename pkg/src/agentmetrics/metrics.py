"""Task-agnostic evaluation metrics computed from task-level records.

All functions are pure and operate on :class:`~agentmetrics.records.TaskRecord`
slices (or plain scalars where noted). Percentages are returned on a 0-100
scale, indices on their natural scales:

===============  =========================================================
gcr              goal completion rate, percent of successful tasks
aix              autonomy index, 1 - interventions/steps (per task)
aix_weighted     complexity-weighted autonomy across a slice
dtt              net task duration in seconds (wall clock minus human wait)
ces              resources consumed per successful task
tdi              mean tool-selection rubric score in [-1, 1]
oas              mean rater output score in [1, 10]
cqi              mean collaboration score in [1, 5]
mtr              percent of multi-step tasks recovered from an initial error
crs              percent of long chains (>= 3 hops) completed correctly
adaptability     few-shot minus zero-shot completion delta (and rate)
===============  =========================================================

Monetary figures (operational cost, KPI conversion) are accumulated in exact
decimal arithmetic so totals do not depend on float summation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from typing import Sequence

from .errors import (
    DegenerateBaselineError,
    DivideByZeroError,
    EmptySliceError,
    InvalidInputError,
    NoSuccessesError,
)
from .records import (
    ComplexityWeights,
    CostModel,
    DomainConfig,
    RaterScores,
    TaskRecord,
    ToolEvent,
)

#: Rater dimension weights: correctness, completeness, relevance, presentation.
OAS_WEIGHTS: tuple[float, float, float, float] = (0.4, 0.3, 0.2, 0.1)


@dataclass(frozen=True)
class DttSummary:
    """Distribution summary of net task durations (seconds)."""

    mean: float
    median: float
    p95: float
    efficiency: float | None = None  # baseline / agent mean, when a baseline is given


@dataclass(frozen=True)
class AdaptabilityResult:
    ad: float
    ar: float | None  # percent, None when not requested


def gcr(records: Sequence[TaskRecord]) -> float:
    """Goal completion rate: 100 * successes / records."""
    if not records:
        raise EmptySliceError("gcr: no records in slice")
    return 100.0 * sum(1 for r in records if r.success) / len(records)


def aix(total_steps: int, interventions: int) -> float:
    """Autonomy index for one task: 1 - interventions / total_steps."""
    if total_steps < 1:
        raise InvalidInputError(f"aix: total_steps must be >= 1, got {total_steps}")
    if interventions < 0 or interventions > total_steps:
        raise InvalidInputError(
            f"aix: interventions must be in [0, total_steps], got {interventions}"
        )
    return 1.0 - interventions / total_steps


def record_aix(record: TaskRecord) -> float:
    """Autonomy index of one record (all intervention kinds counted equally)."""
    return aix(record.total_steps, record.interventions.total)


def aix_weighted(
    records: Sequence[TaskRecord], weights: ComplexityWeights = ComplexityWeights()
) -> float:
    """Complexity-weighted mean autonomy index over a slice."""
    if not records:
        raise EmptySliceError("aix_weighted: no records in slice")
    total_w = 0.0
    acc = 0.0
    for r in records:
        w = weights.weight_for(r.total_steps)
        acc += w * record_aix(r)
        total_w += w
    return acc / total_w


def dtt(record: TaskRecord) -> float:
    """Net duration in seconds: (t_end - t_start) - human_wait."""
    span = record.t_end_s - record.t_start_s
    if span < 0:
        raise InvalidInputError(f"dtt: negative span for task {record.task_id}")
    value = span - record.human_wait_s
    if value < 0:
        raise InvalidInputError(
            f"dtt: human wait exceeds wall-clock span for task {record.task_id}"
        )
    return value


def _median(sorted_values: Sequence[float]) -> float:
    n = len(sorted_values)
    mid = n // 2
    if n % 2:
        return sorted_values[mid]
    return (sorted_values[mid - 1] + sorted_values[mid]) / 2.0


def _p95(sorted_values: Sequence[float]) -> float:
    # nearest-rank: the ceil(0.95 n)-th order statistic
    rank = math.ceil(0.95 * len(sorted_values))
    return sorted_values[rank - 1]


def dtt_summary(records: Sequence[TaskRecord], baseline_s: float | None = None) -> DttSummary:
    """Mean/median/p95 of net durations; adds baseline/mean efficiency if given."""
    if not records:
        raise EmptySliceError("dtt_summary: no records in slice")
    values = sorted(dtt(r) for r in records)
    mean = sum(values) / len(values)
    efficiency = None
    if baseline_s is not None:
        if baseline_s <= 0:
            raise DegenerateBaselineError(f"dtt_summary: baseline must be > 0, got {baseline_s}")
        efficiency = baseline_s / mean if mean > 0 else math.inf
    return DttSummary(mean=mean, median=_median(values), p95=_p95(values), efficiency=efficiency)


def resource_units(record: TaskRecord, cost_model: CostModel = CostModel()) -> float:
    """Token-equivalent resource units consumed by one task."""
    return record.tokens + record.api_calls * cost_model.token_equivalent


def ces(records: Sequence[TaskRecord], cost_model: CostModel = CostModel()) -> float:
    """Cost-efficiency score: resource units per successful task.

    Only successful tasks enter both numerator and denominator; resources
    burned by failed tasks are an operational-cost concern, not an efficiency
    one.
    """
    if not records:
        raise EmptySliceError("ces: no records in slice")
    successes = [r for r in records if r.success]
    if not successes:
        raise NoSuccessesError("ces: slice has no successful tasks")
    total = sum(resource_units(r, cost_model) for r in successes)
    return total / len(successes)


def tdi(events: Sequence[ToolEvent]) -> float:
    """Tool-use discernment index: mean rubric score over opportunities."""
    if not events:
        raise EmptySliceError("tdi: no tool-use opportunities")
    return sum(e.score for e in events) / len(events)


def tdi_normalize(raw: float) -> float:
    """Map a raw discernment score from [-1, 1] onto [0, 1]."""
    if not (-1.0 <= raw <= 1.0):
        raise InvalidInputError(f"tdi_normalize: raw score must be in [-1, 1], got {raw}")
    return (raw + 1.0) / 2.0


def oas(scores: Sequence[float]) -> float:
    """Output accuracy score: mean of 1-10 evaluator scores."""
    if not scores:
        raise EmptySliceError("oas: no evaluator scores")
    for s in scores:
        if not (1.0 <= s <= 10.0):
            raise InvalidInputError(f"oas: scores must be in [1, 10], got {s}")
    return sum(scores) / len(scores)


def oas_weighted(
    panel: Sequence[RaterScores],
    weights: tuple[float, float, float, float] = OAS_WEIGHTS,
) -> float:
    """Dimension-weighted output score, averaged across the rater panel."""
    if not panel:
        raise EmptySliceError("oas_weighted: empty rater panel")
    if len(weights) != 4:
        raise InvalidInputError("oas_weighted: need one weight per dimension")
    total_w = sum(weights)
    if total_w <= 0:
        raise InvalidInputError("oas_weighted: weights must sum to a positive value")
    per_rater = [
        sum(w * s for w, s in zip(weights, rater.as_tuple())) / total_w for rater in panel
    ]
    return sum(per_rater) / len(per_rater)


def cqi(sessions: Sequence[object]) -> float:
    """Collaboration quality index: mean over all dimension scores of all sessions."""
    if not sessions:
        raise EmptySliceError("cqi: no collaboration sessions")
    scores: list[float] = []
    for session in sessions:
        scores.extend(session.as_tuple())  # type: ignore[attr-defined]
    for s in scores:
        if not (1.0 <= s <= 5.0):
            raise InvalidInputError(f"cqi: scores must be in [1, 5], got {s}")
    return sum(scores) / len(scores)


def mtr(records: Sequence[TaskRecord]) -> float:
    """Multi-step resilience: percent of multi-step tasks that hit an initial
    error, recovered without help, and still succeeded."""
    multistep = [r for r in records if r.chain.is_multistep]
    if not multistep:
        raise EmptySliceError("mtr: no multi-step records in slice")
    resilient = sum(
        1
        for r in multistep
        if r.chain.had_initial_error and r.chain.self_recovered and r.success
    )
    return 100.0 * resilient / len(multistep)


def crs(records: Sequence[TaskRecord], min_steps: int = 3) -> float:
    """Chain reliability: percent of chains with >= min_steps hops that completed."""
    chains = [r for r in records if r.chain.chain_len >= min_steps]
    if not chains:
        raise EmptySliceError(f"crs: no chains with >= {min_steps} steps in slice")
    return 100.0 * sum(1 for r in chains if r.chain.chain_success) / len(chains)


def adaptability(
    zero_shot_gcr: float, few_shot_gcr: float, *, rate: bool = True
) -> AdaptabilityResult:
    """Few-shot adaptability delta (proportions in [0, 1]) and relative rate."""
    for name, value in (("zero_shot_gcr", zero_shot_gcr), ("few_shot_gcr", few_shot_gcr)):
        if not (0.0 <= value <= 1.0):
            raise InvalidInputError(f"adaptability: {name} must be in [0, 1], got {value}")
    ad = few_shot_gcr - zero_shot_gcr
    ar: float | None = None
    if rate:
        if zero_shot_gcr == 0:
            raise DegenerateBaselineError(
                "adaptability: relative rate undefined for a zero-shot baseline of 0"
            )
        ar = 100.0 * ad / zero_shot_gcr
    return AdaptabilityResult(ad=ad, ar=ar)


def _dec(value: float) -> Decimal:
    return Decimal(str(value))


def operational_cost(records: Sequence[TaskRecord], cost_model: CostModel = CostModel()) -> float:
    """Total dollars spent on tokens, API calls and human interventions.

    Accumulated in decimal arithmetic; the result is exact at cent precision
    regardless of record order.
    """
    token_price = _dec(cost_model.token_price)
    api_price = _dec(cost_model.api_call_price)
    iv_price = _dec(cost_model.intervention_price)
    total = Decimal(0)
    for r in records:
        if r.tokens < 0 or r.api_calls < 0:
            raise InvalidInputError(f"operational_cost: negative counts on task {r.task_id}")
        total += r.tokens * token_price + r.api_calls * api_price + r.interventions.total * iv_price
    return float(total)


def kpi_to_monetary(domain: DomainConfig, kpi_value: float) -> float:
    """Convert a native-unit KPI value to dollars via the domain conversion."""
    if kpi_value < 0:
        raise InvalidInputError(f"kpi_to_monetary: KPI value must be >= 0, got {kpi_value}")
    return float(_dec(kpi_value) * _dec(domain.kpi_conversion))


def bie(kpi_monetary: float, op_cost: float) -> float:
    """Business impact efficiency: KPI dollars generated per operational dollar."""
    if op_cost == 0:
        raise DivideByZeroError("bie: operational cost is zero")
    return kpi_monetary / op_cost


def roi(kpi_monetary: float, op_cost: float) -> float:
    """Return on investment, percent: 100 * (KPI dollars - cost) / cost."""
    if op_cost == 0:
        raise DivideByZeroError("roi: operational cost is zero")
    return 100.0 * (kpi_monetary - op_cost) / op_cost
