"""Task-level record types, validation and the canonical CSV schema.

A :class:`TaskRecord` captures everything observed about one task execution:
outcome, step/intervention counts, timing, resource usage, tool-use events,
rater panels, collaboration scores, the multi-step chain outcome and the KPI
contribution. Records are immutable value objects; ``validate_record`` is the
single total checker (it reports violations, it never raises).

The module also fixes the canonical task-level CSV layout used by every
pipeline stage. The CSV stores tool usage as ``(tool_opps, tool_score_sum)``;
parsing reconstructs a canonical event list with the same length and score
sum, so CSV -> record -> CSV is byte-stable and record -> CSV -> record is
exact for canonical event lists (everything the simulator emits).
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import InvalidInputError

# Canonical agent / domain labels. Both axes are open: records may carry any
# label, these are just the built-in study grid.
AGENTS: tuple[str, ...] = ("ReAct", "CoT", "ToolAugmented", "Hybrid")
DOMAINS: tuple[str, ...] = ("Healthcare", "Finance", "Marketing", "Legal", "CustomerService")


class ToolUseOutcome(Enum):
    """Per-opportunity tool-selection outcome and its rubric score."""

    OPTIMAL_USE = "optimal_use"
    MISUSE = "misuse"
    IGNORED_BETTER_TOOL = "ignored_better_tool"
    NO_TOOL_NEEDED = "no_tool_needed"

    @property
    def score(self) -> float:
        return _OUTCOME_SCORES[self]


_OUTCOME_SCORES = {
    ToolUseOutcome.OPTIMAL_USE: 1.0,
    ToolUseOutcome.MISUSE: -1.0,
    ToolUseOutcome.IGNORED_BETTER_TOOL: -0.5,
    ToolUseOutcome.NO_TOOL_NEEDED: 0.0,
}


class ErrorType(Enum):
    """Initial-error category for multi-step tasks."""

    AMBIGUOUS_INPUT = "ambiguous_input"
    INTERMEDIATE_STEP_FAILURE = "intermediate_step_failure"
    TOOL_API_ERROR = "tool_api_error"
    CONTEXT_LOSS = "context_loss"


class ChainLevel(Enum):
    """Complexity band of a reasoning chain (defined for chains of >= 3 steps)."""

    L1 = "L1"  # 3-5 steps
    L2 = "L2"  # 6-10 steps
    L3 = "L3"  # 11+ steps


def chain_level_for(chain_len: int) -> ChainLevel | None:
    """Band for a chain length; ``None`` below the 3-step threshold."""
    if chain_len < 3:
        return None
    if chain_len <= 5:
        return ChainLevel.L1
    if chain_len <= 10:
        return ChainLevel.L2
    return ChainLevel.L3


class KpiUnit(Enum):
    DOLLARS = "dollars"
    PERCENTAGE_POINTS = "percentage_points"
    HOURS = "hours"


@dataclass(frozen=True)
class ToolEvent:
    """One tool-use opportunity; the score is fully determined by the outcome."""

    outcome: ToolUseOutcome

    @property
    def score(self) -> float:
        return self.outcome.score


@dataclass(frozen=True)
class Interventions:
    """Human intervention counts by kind."""

    clarification: int = 0
    error_correction: int = 0
    approval_gate: int = 0

    @property
    def total(self) -> int:
        return self.clarification + self.error_correction + self.approval_gate


@dataclass(frozen=True)
class RaterScores:
    """One rater's 1-10 scores on the four output-quality dimensions."""

    correctness: int
    completeness: int
    relevance: int
    presentation: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.correctness, self.completeness, self.relevance, self.presentation)


@dataclass(frozen=True)
class CollabScores:
    """1-5 collaboration-session scores across the five interaction dimensions."""

    communication: int
    responsiveness: int
    context_retention: int
    suggestion_quality: int
    satisfaction: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (
            self.communication,
            self.responsiveness,
            self.context_retention,
            self.suggestion_quality,
            self.satisfaction,
        )


@dataclass(frozen=True)
class ChainOutcome:
    """Multi-step execution outcome of a task's reasoning chain."""

    is_multistep: bool
    had_initial_error: bool
    error_type: ErrorType | None
    self_recovered: bool
    chain_len: int
    complexity_level: ChainLevel | None
    chain_success: bool


@dataclass(frozen=True)
class TaskRecord:
    """Complete observation of a single task execution."""

    task_id: str
    agent: str
    domain: str
    success: bool
    total_steps: int
    interventions: Interventions
    t_start_s: float
    t_end_s: float
    human_wait_s: float
    tokens: int
    api_calls: int
    tool_events: tuple[ToolEvent, ...]
    rater_scores: tuple[RaterScores, ...] | None
    collab_scores: CollabScores | None
    chain: ChainOutcome
    kpi_contribution: float


@dataclass(frozen=True)
class CostModel:
    """Unit prices used to convert resource usage into operational dollars.

    ``token_equivalent`` is the number of tokens one API call is counted as in
    the resource-efficiency numerator (it does not affect dollar cost).
    """

    token_price: float = 0.00002
    api_call_price: float = 0.01
    intervention_price: float = 5.0
    token_equivalent: int = 1000


@dataclass(frozen=True)
class ComplexityWeights:
    """Step-count complexity weights for weighted autonomy aggregation."""

    simple_max: int = 5
    moderate_max: int = 15
    simple: float = 1.0
    moderate: float = 1.5
    advanced: float = 2.0

    def weight_for(self, total_steps: int) -> float:
        if total_steps <= self.simple_max:
            return self.simple
        if total_steps <= self.moderate_max:
            return self.moderate
        return self.advanced


@dataclass(frozen=True)
class DomainConfig:
    """Per-domain generation and KPI-conversion settings.

    ``offsets`` are additive adjustments to rate-like targets (gcr, aix, ...);
    ``factors`` are multiplicative adjustments to scale-like targets (dtt,
    ces). Metrics not present default to neutral (0.0 / 1.0).
    """

    name: str
    task_count: int
    kpi_unit: KpiUnit
    kpi_conversion: float  # dollars per native KPI unit
    kpi_per_success: float = 0.0  # native KPI units contributed per successful task
    offsets: Mapping[str, float] = field(default_factory=dict)
    factors: Mapping[str, float] = field(default_factory=dict)

    def offset(self, metric: str) -> float:
        return self.offsets.get(metric, 0.0)

    def factor(self, metric: str) -> float:
        return self.factors.get(metric, 1.0)


@dataclass(frozen=True)
class AgentProfile:
    """Per-agent (mean, std) generation parameters keyed by metric name.

    Keys used by the simulator: gcr, aix, dtt, ces, mtr, tdi, oas, crs, cqi,
    ad. Rates (gcr, aix, mtr, crs, ad) and the event-mixture tdi are realised
    through count distributions, so only their means are consumed; dtt, ces,
    oas and cqi consume both mean and std.
    """

    name: str
    means: Mapping[str, float]
    stds: Mapping[str, float]

    def mean(self, metric: str) -> float:
        return self.means[metric]

    def std(self, metric: str) -> float:
        return self.stds.get(metric, 0.0)


@dataclass(frozen=True)
class MetricCell:
    """All computed metrics for one agent x domain slice of records."""

    agent: str
    domain: str
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
class AdaptabilityCell:
    """Zero-shot vs few-shot goal-completion comparison for one cell."""

    agent: str
    domain: str
    gcr_zero_shot: float
    gcr_few_shot: float
    ad: float
    ar: float | None  # percent; None when the zero-shot baseline is 0


# ---------------------------------------------------------------------------
# Validation


def _check_range(out: list[str], name: str, value: float, lo: float, hi: float) -> None:
    if not (lo <= value <= hi):
        out.append(f"{name}: must be in [{lo}, {hi}], got {value}")


def validate_record(record: TaskRecord) -> list[str]:
    """Return one ``"field: rule"`` entry per violated invariant (never raises)."""
    v: list[str] = []
    if not record.task_id:
        v.append("task_id: must be non-empty")
    if not record.agent:
        v.append("agent: must be non-empty")
    if not record.domain:
        v.append("domain: must be non-empty")
    if record.total_steps < 1:
        v.append(f"total_steps: must be >= 1, got {record.total_steps}")
    iv = record.interventions
    for kind in ("clarification", "error_correction", "approval_gate"):
        if getattr(iv, kind) < 0:
            v.append(f"interventions.{kind}: must be >= 0")
    if iv.total > record.total_steps:
        v.append(
            f"interventions: total ({iv.total}) must not exceed total_steps ({record.total_steps})"
        )
    if record.t_end_s < record.t_start_s:
        v.append(f"t_end_s: must be >= t_start_s ({record.t_end_s} < {record.t_start_s})")
    if record.human_wait_s < 0:
        v.append("human_wait_s: must be >= 0")
    elif record.human_wait_s > record.t_end_s - record.t_start_s:
        v.append("human_wait_s: must not exceed the task wall-clock span")
    if record.tokens < 0:
        v.append("tokens: must be >= 0")
    if record.api_calls < 0:
        v.append("api_calls: must be >= 0")
    if record.rater_scores is not None:
        if len(record.rater_scores) != 3:
            v.append(f"rater_scores: panel must have exactly 3 raters, got {len(record.rater_scores)}")
        for i, rater in enumerate(record.rater_scores, start=1):
            for dim, score in zip(("correctness", "completeness", "relevance", "presentation"), rater.as_tuple()):
                _check_range(v, f"rater_scores[r{i}].{dim}", score, 1, 10)
    if record.collab_scores is not None:
        for dim, score in zip(
            ("communication", "responsiveness", "context_retention", "suggestion_quality", "satisfaction"),
            record.collab_scores.as_tuple(),
        ):
            _check_range(v, f"collab_scores.{dim}", score, 1, 5)
    chain = record.chain
    if chain.chain_len < 0:
        v.append("chain.chain_len: must be >= 0")
    if chain.self_recovered and not chain.had_initial_error:
        v.append("chain.self_recovered: requires chain.had_initial_error")
    expected_level = chain_level_for(chain.chain_len)
    if chain.complexity_level is not expected_level:
        want = expected_level.value if expected_level else "absent"
        got = chain.complexity_level.value if chain.complexity_level else "absent"
        v.append(
            f"chain.complexity_level: must be {want} for chain_len {chain.chain_len}, got {got}"
        )
    return v


# ---------------------------------------------------------------------------
# Canonical CSV schema

CSV_HEADER: tuple[str, ...] = (
    "task_id",
    "agent",
    "domain",
    "success",
    "total_steps",
    "iv_clarify",
    "iv_correct",
    "iv_approve",
    "t_start_s",
    "t_end_s",
    "human_wait_s",
    "tokens",
    "api_calls",
    "tool_opps",
    "tool_score_sum",
    "r1_correct",
    "r1_complete",
    "r1_relevant",
    "r1_present",
    "r2_correct",
    "r2_complete",
    "r2_relevant",
    "r2_present",
    "r3_correct",
    "r3_complete",
    "r3_relevant",
    "r3_present",
    "cq_comm",
    "cq_resp",
    "cq_ctx",
    "cq_sugg",
    "cq_sat",
    "is_multistep",
    "had_error",
    "error_type",
    "self_recovered",
    "chain_len",
    "chain_level",
    "chain_success",
    "kpi_contribution",
)


def canonical_tool_events(opportunities: int, score_sum: float) -> tuple[ToolEvent, ...]:
    """Deterministic event list with the given length and rubric score sum.

    Decomposes in fixed outcome order (optimal, misuse, ignored, no-tool).
    Raises :class:`InvalidInputError` when no outcome multiset can realise the
    pair (sum out of range, not a half-step multiple, or parity infeasible).
    """
    if opportunities < 0:
        raise InvalidInputError(f"tool_opps must be >= 0, got {opportunities}")
    half_units = score_sum * 2.0
    s = round(half_units)
    if abs(half_units - s) > 1e-9:
        raise InvalidInputError(f"tool_score_sum must be a multiple of 0.5, got {score_sum}")
    ignored = abs(s) % 2  # one -0.5 event fixes odd half-unit parity
    rest = s + ignored
    optimal = rest // 2 if rest > 0 else 0
    misuse = -rest // 2 if rest < 0 else 0
    neutral = opportunities - optimal - misuse - ignored
    if neutral < 0:
        raise InvalidInputError(
            f"tool_score_sum {score_sum} is not achievable with {opportunities} opportunities"
        )
    return (
        (ToolEvent(ToolUseOutcome.OPTIMAL_USE),) * int(optimal)
        + (ToolEvent(ToolUseOutcome.MISUSE),) * int(misuse)
        + (ToolEvent(ToolUseOutcome.IGNORED_BETTER_TOOL),) * int(ignored)
        + (ToolEvent(ToolUseOutcome.NO_TOOL_NEEDED),) * int(neutral)
    )


def _fmt_float(value: float) -> str:
    # repr round-trips exactly; avoid 'nan'/'inf' leaking into datasets
    if not math.isfinite(value):
        raise InvalidInputError(f"non-finite value cannot be serialised: {value}")
    return repr(float(value))


def _fmt_bool(value: bool) -> str:
    return "1" if value else "0"


def record_to_row(record: TaskRecord) -> list[str]:
    """Serialise one record into the canonical CSV column order."""
    raters = record.rater_scores
    rater_cols = (
        [str(s) for rater in raters for s in rater.as_tuple()] if raters is not None else [""] * 12
    )
    collab = record.collab_scores
    collab_cols = [str(s) for s in collab.as_tuple()] if collab is not None else [""] * 5
    chain = record.chain
    return [
        record.task_id,
        record.agent,
        record.domain,
        _fmt_bool(record.success),
        str(record.total_steps),
        str(record.interventions.clarification),
        str(record.interventions.error_correction),
        str(record.interventions.approval_gate),
        _fmt_float(record.t_start_s),
        _fmt_float(record.t_end_s),
        _fmt_float(record.human_wait_s),
        str(record.tokens),
        str(record.api_calls),
        str(len(record.tool_events)),
        _fmt_float(sum(e.score for e in record.tool_events)),
        *rater_cols,
        *collab_cols,
        _fmt_bool(chain.is_multistep),
        _fmt_bool(chain.had_initial_error),
        chain.error_type.value if chain.error_type is not None else "",
        _fmt_bool(chain.self_recovered),
        str(chain.chain_len),
        chain.complexity_level.value if chain.complexity_level is not None else "",
        _fmt_bool(chain.chain_success),
        _fmt_float(record.kpi_contribution),
    ]


class _RowReader:
    """Cursor over one CSV row that raises contextual parse errors."""

    def __init__(self, row: Sequence[str], line_no: int | None):
        self.row = row
        self.line_no = line_no
        self.col = 0

    def fail(self, name: str, message: str) -> InvalidInputError:
        where = f"line {self.line_no}, " if self.line_no is not None else ""
        return InvalidInputError(f"{where}column '{name}': {message}")

    def take(self, name: str) -> str:
        value = self.row[self.col]
        self.col += 1
        del name
        return value

    def take_int(self, name: str) -> int:
        raw = self.take(name)
        try:
            return int(raw)
        except ValueError:
            raise self.fail(name, f"expected integer, got {raw!r}") from None

    def take_float(self, name: str) -> float:
        raw = self.take(name)
        try:
            value = float(raw)
        except ValueError:
            raise self.fail(name, f"expected number, got {raw!r}") from None
        if not math.isfinite(value):
            raise self.fail(name, f"expected finite number, got {raw!r}")
        return value

    def take_bool(self, name: str) -> bool:
        raw = self.take(name)
        if raw in ("1", "0"):
            return raw == "1"
        raise self.fail(name, f"expected 0 or 1, got {raw!r}")

    def take_optional_int(self, name: str) -> int | None:
        raw = self.take(name)
        if raw == "":
            return None
        try:
            return int(raw)
        except ValueError:
            raise self.fail(name, f"expected integer or empty, got {raw!r}") from None


def record_from_row(row: Sequence[str], line_no: int | None = None) -> TaskRecord:
    """Parse one canonical CSV row; raises :class:`InvalidInputError` with context."""
    if len(row) != len(CSV_HEADER):
        where = f"line {line_no}: " if line_no is not None else ""
        raise InvalidInputError(
            f"{where}expected {len(CSV_HEADER)} columns, got {len(row)}"
        )
    r = _RowReader(row, line_no)
    task_id = r.take("task_id")
    agent = r.take("agent")
    domain = r.take("domain")
    success = r.take_bool("success")
    total_steps = r.take_int("total_steps")
    interventions = Interventions(
        clarification=r.take_int("iv_clarify"),
        error_correction=r.take_int("iv_correct"),
        approval_gate=r.take_int("iv_approve"),
    )
    t_start_s = r.take_float("t_start_s")
    t_end_s = r.take_float("t_end_s")
    human_wait_s = r.take_float("human_wait_s")
    tokens = r.take_int("tokens")
    api_calls = r.take_int("api_calls")
    tool_opps = r.take_int("tool_opps")
    tool_score_sum = r.take_float("tool_score_sum")
    try:
        tool_events = canonical_tool_events(tool_opps, tool_score_sum)
    except InvalidInputError as exc:
        raise r.fail("tool_score_sum", str(exc)) from None

    rater_raw = [r.take_optional_int(f"r{i}_{dim}") for i in (1, 2, 3) for dim in ("correct", "complete", "relevant", "present")]
    if all(s is None for s in rater_raw):
        rater_scores = None
    elif any(s is None for s in rater_raw):
        raise r.fail("r1_correct..r3_present", "rater panel must be fully present or fully empty")
    else:
        rater_scores = tuple(
            RaterScores(*rater_raw[i : i + 4]) for i in range(0, 12, 4)  # type: ignore[misc]
        )

    collab_raw = [r.take_optional_int(f"cq_{d}") for d in ("comm", "resp", "ctx", "sugg", "sat")]
    if all(s is None for s in collab_raw):
        collab_scores = None
    elif any(s is None for s in collab_raw):
        raise r.fail("cq_comm..cq_sat", "collaboration scores must be fully present or fully empty")
    else:
        collab_scores = CollabScores(*collab_raw)  # type: ignore[arg-type]

    is_multistep = r.take_bool("is_multistep")
    had_error = r.take_bool("had_error")
    error_raw = r.take("error_type")
    if error_raw == "":
        error_type = None
    else:
        try:
            error_type = ErrorType(error_raw)
        except ValueError:
            raise r.fail("error_type", f"unknown error type {error_raw!r}") from None
    self_recovered = r.take_bool("self_recovered")
    chain_len = r.take_int("chain_len")
    level_raw = r.take("chain_level")
    if level_raw == "":
        complexity_level = None
    else:
        try:
            complexity_level = ChainLevel(level_raw)
        except ValueError:
            raise r.fail("chain_level", f"unknown chain level {level_raw!r}") from None
    chain_success = r.take_bool("chain_success")
    kpi_contribution = r.take_float("kpi_contribution")

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
        chain=ChainOutcome(
            is_multistep=is_multistep,
            had_initial_error=had_error,
            error_type=error_type,
            self_recovered=self_recovered,
            chain_len=chain_len,
            complexity_level=complexity_level,
            chain_success=chain_success,
        ),
        kpi_contribution=kpi_contribution,
    )


def write_task_csv(records: Iterable[TaskRecord], path: str | Path) -> int:
    """Write records in canonical order; returns the number of rows written."""
    count = 0
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_HEADER)
        for record in records:
            writer.writerow(record_to_row(record))
            count += 1
    return count


def read_task_csv(path: str | Path) -> list[TaskRecord]:
    """Read a canonical task-level CSV; raises :class:`InvalidInputError` on bad rows."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise InvalidInputError(f"{path}: empty file, expected task-level CSV header") from None
        if tuple(header) != CSV_HEADER:
            raise InvalidInputError(
                f"{path}: unexpected header; expected canonical task-level schema"
            )
        return [record_from_row(row, line_no=i) for i, row in enumerate(reader, start=2)]
