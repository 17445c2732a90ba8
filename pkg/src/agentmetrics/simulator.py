"""Deterministic synthetic task-record generation with two calibration modes.

Each agent x domain cell is generated from its own child random stream keyed
by ``(seed, agent, domain)`` (Philox via numpy's SeedSequence), so a cell's
records are identical whether it is generated alone or as part of the full
grid, and independent of iteration order.

Calibration modes:

* ``parametric`` ("appendix-d"): a cell's effective target for each metric is
  the agent profile mean adjusted by the domain modifier — additive offsets
  for rate-like metrics (gcr, aix, ...), multiplicative factors for
  scale-like ones (dtt, ces).
* ``calibrated`` ("table-calibrated"): targets are read per cell from the
  built-in reference grid (gcr/aix/dtt/oas per cell; ces/mtr/tdi/crs/cqi per
  agent; adaptability and business KPI totals per cell).

Per-record observables are reverse-engineered from the targets: success
counts are quota-drawn at the target rate (floor plus a Bernoulli remainder,
then randomly placed), interventions are binomial in the step count at rate
1 - aix, durations and resource units are clamped normals, tool-use events an
outcome mixture with mean equal to the target discernment score, rater and
collaboration scores discretised normals. Hard dependencies hold by
construction: success is drawn first, resources attach to every record while
the efficiency metric reads only successes, self-recovery implies an initial
error, and chain fields satisfy the record invariants.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np
import yaml

from . import defaults
from .errors import CalibrationError, InvalidInputError
from .metrics import adaptability
from .records import (
    AdaptabilityCell,
    AgentProfile,
    ChainOutcome,
    CollabScores,
    CostModel,
    DomainConfig,
    ErrorType,
    Interventions,
    KpiUnit,
    RaterScores,
    TaskRecord,
    canonical_tool_events,
    chain_level_for,
)

#: Conditional probability that a task recovers unaided from an initial error.
RECOVERY_RATE = 0.75
#: Probability that a step presents a tool-use opportunity.
TOOL_OPPORTUNITY_RATE = 0.5
#: Mix of intervention kinds (clarification, error correction, approval gate).
INTERVENTION_MIX = (0.40, 0.35, 0.25)
#: Relative spread used for calibrated-mode durations and resource draws.
DTT_REL_STD = 0.25
CES_REL_STD = 0.18
#: Rater / collaboration score spread and KPI contribution jitter.
OAS_STD = 0.8
CQI_STD = 0.6
KPI_JITTER = 0.15

_ERROR_TYPES = tuple(ErrorType)


class Mode(Enum):
    """Calibration mode; values match the CLI flag spelling."""

    PARAMETRIC = "appendix-d"
    CALIBRATED = "table-calibrated"


@dataclass(frozen=True)
class SimConfig:
    """Full generation setup: grid, mode, seed, cost model and step mix."""

    seed: int = defaults.DEFAULT_SEED
    mode: Mode = Mode.CALIBRATED
    agents: tuple[AgentProfile, ...] = field(default_factory=defaults.default_agents)
    domains: tuple[DomainConfig, ...] = field(default_factory=defaults.default_domains)
    cost_model: CostModel = field(default_factory=CostModel)
    complexity_mix: tuple[float, float, float] = defaults.DEFAULT_COMPLEXITY_MIX

    def validate(self) -> None:
        """Raise :class:`InvalidInputError` on an unusable configuration."""
        if not self.agents:
            raise InvalidInputError("config: need at least one agent")
        if not self.domains:
            raise InvalidInputError("config: need at least one domain")
        names = [a.name for a in self.agents]
        if len(set(names)) != len(names):
            raise InvalidInputError("config: duplicate agent names")
        dnames = [d.name for d in self.domains]
        if len(set(dnames)) != len(dnames):
            raise InvalidInputError("config: duplicate domain names")
        for domain in self.domains:
            if domain.task_count < 1:
                raise InvalidInputError(f"config: domain {domain.name}: task_count must be >= 1")
            if domain.kpi_conversion < 0:
                raise InvalidInputError(f"config: domain {domain.name}: kpi_conversion must be >= 0")
        if len(self.complexity_mix) != 3 or any(p < 0 for p in self.complexity_mix):
            raise InvalidInputError("config: complexity_mix needs three non-negative shares")
        if abs(sum(self.complexity_mix) - 1.0) > 1e-9:
            raise InvalidInputError("config: complexity_mix must sum to 1")

    @property
    def total_tasks(self) -> int:
        return len(self.agents) * sum(d.task_count for d in self.domains)


def default_config(seed: int | None = None, mode: Mode = Mode.CALIBRATED) -> SimConfig:
    """The built-in study setup (4 agents x 5 domains, 3000 tasks)."""
    cfg = SimConfig(mode=mode)
    if seed is not None:
        cfg = replace(cfg, seed=seed)
    return cfg


# ---------------------------------------------------------------------------
# Config file handling (YAML; see configs/default.yaml for the schema)


def _require_mapping(node: object, what: str) -> Mapping:
    if not isinstance(node, Mapping):
        raise InvalidInputError(f"config: {what} must be a mapping")
    return node


def _float_map(node: object, what: str) -> dict[str, float]:
    out = {}
    for key, value in _require_mapping(node, what).items():
        try:
            out[str(key)] = float(value)
        except (TypeError, ValueError):
            raise InvalidInputError(f"config: {what}.{key} must be numeric") from None
    return out


def config_from_mapping(data: Mapping) -> SimConfig:
    """Build a :class:`SimConfig` from parsed config-file data.

    Omitted sections fall back to the built-in defaults, so a config file can
    override just a seed or a single agent block.
    """
    data = _require_mapping(data, "document root")
    unknown = set(data) - {"seed", "mode", "agents", "domains", "cost_model", "complexity_mix"}
    if unknown:
        raise InvalidInputError(f"config: unknown top-level keys: {sorted(unknown)}")
    kwargs: dict = {}
    if "seed" in data:
        try:
            kwargs["seed"] = int(data["seed"])
        except (TypeError, ValueError):
            raise InvalidInputError("config: seed must be an integer") from None
    if "mode" in data:
        try:
            kwargs["mode"] = Mode(str(data["mode"]))
        except ValueError:
            raise InvalidInputError(
                f"config: mode must be one of {[m.value for m in Mode]}, got {data['mode']!r}"
            ) from None
    if "complexity_mix" in data:
        mix = data["complexity_mix"]
        if not isinstance(mix, Sequence) or isinstance(mix, (str, bytes)):
            raise InvalidInputError("config: complexity_mix must be a list of three shares")
        kwargs["complexity_mix"] = tuple(float(p) for p in mix)
    if "cost_model" in data:
        cm = _float_map(data["cost_model"], "cost_model")
        unknown = set(cm) - {"token_price", "api_call_price", "intervention_price", "token_equivalent"}
        if unknown:
            raise InvalidInputError(f"config: unknown cost_model keys: {sorted(unknown)}")
        base = CostModel()
        kwargs["cost_model"] = CostModel(
            token_price=cm.get("token_price", base.token_price),
            api_call_price=cm.get("api_call_price", base.api_call_price),
            intervention_price=cm.get("intervention_price", base.intervention_price),
            token_equivalent=int(cm.get("token_equivalent", base.token_equivalent)),
        )
    if "agents" in data:
        agents = []
        if not isinstance(data["agents"], Sequence):
            raise InvalidInputError("config: agents must be a list")
        for i, node in enumerate(data["agents"]):
            node = _require_mapping(node, f"agents[{i}]")
            if "name" not in node:
                raise InvalidInputError(f"config: agents[{i}] needs a name")
            agents.append(
                AgentProfile(
                    name=str(node["name"]),
                    means=_float_map(node.get("means", {}), f"agents[{i}].means"),
                    stds=_float_map(node.get("stds", {}), f"agents[{i}].stds"),
                )
            )
        kwargs["agents"] = tuple(agents)
    if "domains" in data:
        domains = []
        if not isinstance(data["domains"], Sequence):
            raise InvalidInputError("config: domains must be a list")
        for i, node in enumerate(data["domains"]):
            node = _require_mapping(node, f"domains[{i}]")
            if "name" not in node:
                raise InvalidInputError(f"config: domains[{i}] needs a name")
            try:
                unit = KpiUnit(str(node.get("kpi_unit", "dollars")))
            except ValueError:
                raise InvalidInputError(
                    f"config: domains[{i}].kpi_unit must be one of {[u.value for u in KpiUnit]}"
                ) from None
            try:
                domains.append(
                    DomainConfig(
                        name=str(node["name"]),
                        task_count=int(node.get("task_count", 100)),
                        kpi_unit=unit,
                        kpi_conversion=float(node.get("kpi_conversion", 1.0)),
                        kpi_per_success=float(node.get("kpi_per_success", 0.0)),
                        offsets=_float_map(node.get("offsets", {}), f"domains[{i}].offsets"),
                        factors=_float_map(node.get("factors", {}), f"domains[{i}].factors"),
                    )
                )
            except (TypeError, ValueError):
                raise InvalidInputError(f"config: domains[{i}] has non-numeric fields") from None
        kwargs["domains"] = tuple(domains)
    config = SimConfig(**kwargs)
    config.validate()
    return config


def load_config(path: str | Path) -> SimConfig:
    """Parse a YAML config file into a validated :class:`SimConfig`."""
    try:
        with open(path) as fh:
            data = yaml.safe_load(fh)
    except yaml.YAMLError as exc:
        raise InvalidInputError(f"config: {path}: not valid YAML: {exc}") from None
    if data is None:
        data = {}
    return config_from_mapping(data)


# ---------------------------------------------------------------------------
# Random streams


def _label_key(label: str) -> int:
    # stable across runs and platforms (unlike hash())
    return int.from_bytes(hashlib.sha256(label.encode("utf-8")).digest()[:8], "big")


def substream(
    seed: int, agent_id: str, domain_id: str, purpose: str = "tasks"
) -> np.random.Generator:
    """Deterministic child stream for one cell, independent of iteration order."""
    entropy = (seed & 0xFFFFFFFFFFFFFFFF, _label_key(agent_id), _label_key(domain_id), _label_key(purpose))
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(entropy)))


# ---------------------------------------------------------------------------
# Target resolution


def _cell_name(agent: str, domain: str) -> str:
    return f"{agent}/{domain}"


def _parametric_targets(profile: AgentProfile, domain: DomainConfig) -> dict[str, float]:
    out = {}
    for metric in ("gcr", "aix", "dtt", "ces", "mtr", "tdi", "oas", "crs", "cqi"):
        if metric not in profile.means:
            raise CalibrationError(
                f"{_cell_name(profile.name, domain.name)}: profile has no mean for '{metric}'"
            )
        out[metric] = (profile.mean(metric) + domain.offset(metric)) * domain.factor(metric)
    out["dtt_std"] = profile.std("dtt") * domain.factor("dtt")
    out["ces_std"] = profile.std("ces") * domain.factor("ces")
    out["kpi_total"] = None  # drawn per success from domain.kpi_per_success
    return out


def _calibrated_targets(profile: AgentProfile, domain: DomainConfig) -> dict[str, float]:
    cell = (profile.name, domain.name)
    if cell not in defaults.REFERENCE_CELLS:
        raise CalibrationError(
            f"{_cell_name(*cell)}: no reference targets for this cell; "
            "use the parametric mode for custom grids"
        )
    ref_cell = defaults.REFERENCE_CELLS[cell]
    ref_overall = defaults.REFERENCE_OVERALL[profile.name]
    out = {
        "gcr": ref_cell["gcr"] / 100.0,
        "aix": ref_cell["aix"],
        "dtt": ref_cell["dtt"],
        "oas": ref_cell["oas"],
        "ces": ref_overall["ces"],
        "mtr": ref_overall["mtr"] / 100.0,
        "tdi": 2.0 * ref_overall["tdi_norm"] - 1.0,
        "crs": ref_overall["crs"] / 100.0,
        "cqi": ref_overall["cqi"],
        "dtt_std": DTT_REL_STD * ref_cell["dtt"],
        "ces_std": CES_REL_STD * ref_overall["ces"],
        "kpi_total": defaults.REFERENCE_BUSINESS[cell]["kpi"],
    }
    return out


def _check_targets(cell: str, t: Mapping[str, float]) -> None:
    checks = (
        ("gcr", 0.0, 1.0),
        ("aix", 0.0, 1.0),
        ("mtr", 0.0, 1.0),
        ("crs", 0.0, 1.0),
        ("tdi", -1.0, 1.0),
        ("oas", 1.0, 10.0),
        ("cqi", 1.0, 5.0),
    )
    for metric, lo, hi in checks:
        if not (lo <= t[metric] <= hi):
            raise CalibrationError(
                f"{cell}: target {metric}={t[metric]:.4f} outside legal range [{lo}, {hi}]"
            )
    if t["dtt"] <= 0:
        raise CalibrationError(f"{cell}: target dtt={t['dtt']:.2f} must be positive")
    if t["ces"] < 0:
        raise CalibrationError(f"{cell}: target ces={t['ces']:.2f} must be non-negative")
    if t["mtr"] > 0 and t["gcr"] == 0:
        raise CalibrationError(f"{cell}: resilience target requires a nonzero completion rate")
    if t["gcr"] > 0 and t["mtr"] / (RECOVERY_RATE * t["gcr"]) > 1.0:
        raise CalibrationError(
            f"{cell}: resilience target {t['mtr']:.3f} infeasible at completion rate {t['gcr']:.3f}"
        )


def cell_targets(config: SimConfig, profile: AgentProfile, domain: DomainConfig) -> dict[str, float]:
    """Effective per-metric targets for one cell under the configured mode."""
    if config.mode is Mode.PARAMETRIC:
        targets = _parametric_targets(profile, domain)
    else:
        targets = _calibrated_targets(profile, domain)
    _check_targets(_cell_name(profile.name, domain.name), targets)
    return targets


# ---------------------------------------------------------------------------
# Generation


def _quota_count(rng: np.random.Generator, rate: float, n: int) -> int:
    """floor(rate*n) plus a Bernoulli remainder: exact expectation, minimal spread."""
    raw = rate * n
    k = int(math.floor(raw + 1e-9))
    frac = raw - k
    if frac > 1e-9 and rng.random() < frac:
        k += 1
    return min(k, n)


def _tool_outcome_probs(tdi_target: float) -> np.ndarray:
    """Outcome mixture (optimal, misuse, ignored, none) with mean == target.

    Interpolates between a zero-mean base mixture and the all-optimal /
    all-misuse extremes.
    """
    base = np.array([0.15, 0.10, 0.10, 0.65])  # mean 0.15 - 0.10 - 0.05 = 0
    if tdi_target >= 0:
        extreme = np.array([1.0, 0.0, 0.0, 0.0])
        w = tdi_target
    else:
        extreme = np.array([0.0, 1.0, 0.0, 0.0])
        w = -tdi_target
    return (1 - w) * base + w * extreme


def _split_interventions(rng: np.random.Generator, totals: np.ndarray) -> np.ndarray:
    """Split per-record intervention totals into the three kinds."""
    p_clar, p_corr, _ = INTERVENTION_MIX
    clar = rng.binomial(totals, p_clar)
    rest = totals - clar
    corr = rng.binomial(rest, p_corr / (1.0 - p_clar))
    appr = rest - corr
    return np.stack([clar, corr, appr], axis=1)


def generate_cell(
    config: SimConfig, profile: AgentProfile, domain: DomainConfig
) -> list[TaskRecord]:
    """Generate all records for one agent x domain cell from its own stream."""
    targets = cell_targets(config, profile, domain)
    n = domain.task_count
    rng = substream(config.seed, profile.name, domain.name)
    te = config.cost_model.token_equivalent

    # step counts from the three complexity bands
    bands = rng.choice(3, size=n, p=np.asarray(config.complexity_mix))
    step_options = np.stack(
        [rng.integers(1, 6, n), rng.integers(6, 16, n), rng.integers(16, 26, n)]
    )
    steps = step_options[bands, np.arange(n)]

    # outcome quota first; everything downstream may condition on it
    n_success = _quota_count(rng, targets["gcr"], n)
    success = np.zeros(n, dtype=bool)
    success[rng.permutation(n)[:n_success]] = True

    iv_totals = rng.binomial(steps, min(max(1.0 - targets["aix"], 0.0), 1.0))
    iv_split = _split_interventions(rng, iv_totals)

    dtt_vals = np.maximum(rng.normal(targets["dtt"], targets["dtt_std"], n), 1.0)
    waits = rng.uniform(0.0, 60.0, n)
    t_start = np.arange(n, dtype=float) * 1000.0
    t_end = t_start + dtt_vals + waits

    resources = np.maximum(rng.normal(targets["ces"], targets["ces_std"], n), 0.0)
    resources = np.rint(resources).astype(np.int64)
    api_calls = np.minimum(rng.poisson(2.0, n), resources // te)
    tokens = resources - api_calls * te

    opps = rng.binomial(steps, TOOL_OPPORTUNITY_RATE)
    probs = _tool_outcome_probs(targets["tdi"])
    outcome_counts = np.vstack([rng.multinomial(k, probs) for k in opps])
    score_sums = outcome_counts @ np.array([1.0, -1.0, -0.5, 0.0])

    rater_vals = np.clip(np.rint(rng.normal(targets["oas"], OAS_STD, (n, 3, 4))), 1, 10).astype(int)
    collab_vals = np.clip(np.rint(rng.normal(targets["cqi"], CQI_STD, (n, 5))), 1, 5).astype(int)

    multistep = steps >= 2
    if targets["gcr"] > 0:
        error_rate = min(targets["mtr"] / (RECOVERY_RATE * targets["gcr"]), 1.0)
    else:
        error_rate = 0.0
    had_error = multistep & (rng.random(n) < error_rate)
    recovered = had_error & (rng.random(n) < RECOVERY_RATE)
    error_kinds = rng.integers(0, len(_ERROR_TYPES), n)
    chain_success = np.where(steps >= 3, rng.random(n) < targets["crs"], success)

    kpi = np.zeros(n)
    if n_success:
        jitter = np.maximum(1.0 + rng.normal(0.0, KPI_JITTER, n_success), 0.0)
        if targets["kpi_total"] is not None:
            total = targets["kpi_total"]
            weight_sum = jitter.sum()
            per = total * jitter / weight_sum if weight_sum > 0 else np.full(n_success, total / n_success)
        else:
            per = domain.kpi_per_success * jitter
        kpi[success] = per

    records = []
    for i in range(n):
        records.append(
            TaskRecord(
                task_id=f"{profile.name}-{domain.name}-{i + 1:04d}",
                agent=profile.name,
                domain=domain.name,
                success=bool(success[i]),
                total_steps=int(steps[i]),
                interventions=Interventions(
                    clarification=int(iv_split[i, 0]),
                    error_correction=int(iv_split[i, 1]),
                    approval_gate=int(iv_split[i, 2]),
                ),
                t_start_s=float(t_start[i]),
                t_end_s=float(t_end[i]),
                human_wait_s=float(waits[i]),
                tokens=int(tokens[i]),
                api_calls=int(api_calls[i]),
                tool_events=canonical_tool_events(int(opps[i]), float(score_sums[i])),
                rater_scores=tuple(RaterScores(*map(int, rater_vals[i, r])) for r in range(3)),
                collab_scores=CollabScores(*map(int, collab_vals[i])),
                chain=ChainOutcome(
                    is_multistep=bool(multistep[i]),
                    had_initial_error=bool(had_error[i]),
                    error_type=_ERROR_TYPES[error_kinds[i]] if had_error[i] else None,
                    self_recovered=bool(recovered[i]),
                    chain_len=int(steps[i]),
                    complexity_level=chain_level_for(int(steps[i])),
                    chain_success=bool(chain_success[i]),
                ),
                kpi_contribution=float(kpi[i]),
            )
        )
    return records


def generate(config: SimConfig) -> list[TaskRecord]:
    """Generate the full grid (every agent x domain cell, in config order)."""
    config.validate()
    records: list[TaskRecord] = []
    for profile in config.agents:
        for domain in config.domains:
            records.extend(generate_cell(config, profile, domain))
    return records


def _adaptability_targets(
    config: SimConfig, profile: AgentProfile, domain: DomainConfig
) -> tuple[float, float]:
    cell = (profile.name, domain.name)
    name = _cell_name(*cell)
    if config.mode is Mode.CALIBRATED:
        if cell not in defaults.REFERENCE_ADAPTABILITY:
            raise CalibrationError(f"{name}: no reference adaptability targets for this cell")
        ref = defaults.REFERENCE_ADAPTABILITY[cell]
        zero, few = ref["zero"], ref["few"]
    else:
        if "ad" not in profile.means:
            raise CalibrationError(f"{name}: profile has no mean for 'ad'")
        gcr_eff = (profile.mean("gcr") + domain.offset("gcr")) * domain.factor("gcr")
        delta = profile.mean("ad")
        # place the effective completion rate midway between the two regimes
        few = min(1.0, max(0.0, gcr_eff + delta / 2.0))
        zero = min(1.0, max(0.0, few - delta))
    if not (0.0 <= zero <= 1.0 and 0.0 <= few <= 1.0):
        raise CalibrationError(f"{name}: adaptability targets outside [0, 1]")
    return zero, few


def generate_adaptability(config: SimConfig, n_test: int = 50) -> list[AdaptabilityCell]:
    """Measure zero-shot vs few-shot completion on held-out test batches."""
    config.validate()
    if n_test < 1:
        raise InvalidInputError(f"generate_adaptability: n_test must be >= 1, got {n_test}")
    cells = []
    for profile in config.agents:
        for domain in config.domains:
            zero_t, few_t = _adaptability_targets(config, profile, domain)
            rng = substream(config.seed, profile.name, domain.name, purpose="adaptability")
            zero_measured = _quota_count(rng, zero_t, n_test) / n_test
            few_measured = _quota_count(rng, few_t, n_test) / n_test
            result = adaptability(zero_measured, few_measured, rate=zero_measured > 0)
            cells.append(
                AdaptabilityCell(
                    agent=profile.name,
                    domain=domain.name,
                    gcr_zero_shot=zero_measured,
                    gcr_few_shot=few_measured,
                    ad=result.ad,
                    ar=result.ar,
                )
            )
    return cells
