"""Metric formulas: published worked examples, error contracts and properties."""

from __future__ import annotations

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from agentmetrics import metrics
from agentmetrics.defaults import DOMAIN_CONFIGS
from agentmetrics.errors import (
    DegenerateBaselineError,
    DivideByZeroError,
    EmptySliceError,
    InvalidInputError,
    NoSuccessesError,
)
from agentmetrics.records import (
    CollabScores,
    ComplexityWeights,
    CostModel,
    DomainConfig,
    Interventions,
    KpiUnit,
    RaterScores,
    ToolEvent,
    ToolUseOutcome,
    canonical_tool_events,
)
from helpers import make_chain, make_record

# ---------------------------------------------------------------------------
# worked examples (exact to 1e-9)

TOL = 1e-9


def test_gcr_example_84_of_100():
    records = [make_record(task_id=f"t{i}", success=i < 84) for i in range(100)]
    assert math.isclose(metrics.gcr(records), 84.0, abs_tol=TOL)


def test_aix_example_5_of_50_steps():
    assert math.isclose(metrics.aix(50, 5), 0.9, abs_tol=TOL)


def test_dtt_example_45_minutes():
    record = make_record(t_start_s=0.0, t_end_s=3600.0, human_wait_s=900.0)
    assert math.isclose(metrics.dtt(record), 2700.0, abs_tol=TOL)


def test_ces_example_400_units_per_success():
    # 2000 tokens + 20 calls at a 100-token equivalent across 10 successes
    records = [
        make_record(task_id=f"t{i}", tokens=200, api_calls=2, success=True) for i in range(10)
    ]
    cm = CostModel(token_equivalent=100)
    assert math.isclose(metrics.ces(records, cm), 400.0, abs_tol=TOL)


def test_tdi_example_6_points_over_10_opportunities():
    events = canonical_tool_events(10, 6.0)
    assert math.isclose(metrics.tdi(events), 0.6, abs_tol=TOL)


def test_oas_example_mean_8_2():
    assert math.isclose(metrics.oas([9, 8, 9, 7, 8]), 8.2, abs_tol=TOL)


def test_oas_weighted_example_7_9():
    panel = (RaterScores(8, 9, 7, 6),)
    assert math.isclose(metrics.oas_weighted(panel), 7.9, abs_tol=TOL)


def test_cqi_example_mean_4():
    sessions = [
        CollabScores(4, 4, 4, 4, 4),
        CollabScores(5, 5, 5, 5, 5),
        CollabScores(3, 3, 3, 3, 3),
    ]
    assert math.isclose(metrics.cqi(sessions), 4.0, abs_tol=TOL)


def test_mtr_example_30_of_40():
    records = [
        make_record(
            task_id=f"t{i}",
            total_steps=5,
            success=i < 30,
            chain=make_chain(
                5, had_initial_error=True, self_recovered=i < 30, chain_success=i < 30
            ),
        )
        for i in range(40)
    ]
    assert math.isclose(metrics.mtr(records), 75.0, abs_tol=TOL)


def test_crs_example_42_of_50():
    records = [
        make_record(task_id=f"t{i}", total_steps=4, chain=make_chain(4, chain_success=i < 42))
        for i in range(50)
    ]
    assert math.isclose(metrics.crs(records), 84.0, abs_tol=TOL)


def test_adaptability_example_25_points():
    result = metrics.adaptability(0.60, 0.85)
    assert math.isclose(result.ad, 0.25, abs_tol=TOL)
    assert math.isclose(result.ar, 100.0 * 0.25 / 0.60, abs_tol=TOL)


def test_bie_example_50_per_dollar():
    assert math.isclose(metrics.bie(15000.0, 300.0), 50.0, abs_tol=TOL)


def test_roi_example_4900_percent():
    assert math.isclose(metrics.roi(15000.0, 300.0), 4900.0, abs_tol=TOL)


def test_operational_cost_example_57_dollars():
    record = make_record(
        tokens=100_000, api_calls=500, total_steps=20,
        interventions=Interventions(4, 3, 3),
        chain=make_chain(20),
    )
    assert math.isclose(metrics.operational_cost([record]), 57.0, abs_tol=TOL)


def test_operational_cost_single_components():
    assert metrics.operational_cost([]) == 0.0
    only_tokens = make_record(tokens=1_000_000, api_calls=0)
    assert math.isclose(metrics.operational_cost([only_tokens]), 20.0, abs_tol=TOL)


def test_aix_weighted_example_two_thirds():
    light = make_record(task_id="a", total_steps=3, interventions=Interventions())
    heavy = make_record(
        task_id="b", total_steps=20, interventions=Interventions(10, 0, 0),
        chain=make_chain(20),
    )
    assert math.isclose(metrics.aix_weighted([light, heavy]), 2.0 / 3.0, abs_tol=TOL)


def test_dtt_efficiency_example_2x():
    records = [make_record(t_start_s=0.0, t_end_s=3600.0, human_wait_s=900.0)]
    summary = metrics.dtt_summary(records, baseline_s=5400.0)
    assert math.isclose(summary.efficiency, 2.0, abs_tol=TOL)


def test_kpi_conversion_examples():
    finance = DOMAIN_CONFIGS["Finance"]
    assert math.isclose(metrics.kpi_to_monetary(finance, 14.4), 14400.0, abs_tol=TOL)
    legal = DOMAIN_CONFIGS["Legal"]
    assert math.isclose(metrics.kpi_to_monetary(legal, 33.0), 4950.0, abs_tol=TOL)
    healthcare = DOMAIN_CONFIGS["Healthcare"]
    assert math.isclose(metrics.kpi_to_monetary(healthcare, 12240.0), 12240.0, abs_tol=TOL)


def test_dtt_summary_percentile_nearest_rank():
    records = [
        make_record(task_id=f"t{i}", t_start_s=0.0, t_end_s=float(i), human_wait_s=0.0)
        for i in range(1, 21)
    ]
    summary = metrics.dtt_summary(records)
    assert summary.p95 == 19.0  # ceil(0.95 * 20) = 19th order statistic
    assert summary.median == 10.5
    assert math.isclose(summary.mean, 10.5, abs_tol=TOL)


# ---------------------------------------------------------------------------
# error contracts


def test_empty_slices_raise():
    with pytest.raises(EmptySliceError):
        metrics.gcr([])
    with pytest.raises(EmptySliceError):
        metrics.aix_weighted([])
    with pytest.raises(EmptySliceError):
        metrics.dtt_summary([])
    with pytest.raises(EmptySliceError):
        metrics.ces([])
    with pytest.raises(EmptySliceError):
        metrics.tdi([])
    with pytest.raises(EmptySliceError):
        metrics.oas([])
    with pytest.raises(EmptySliceError):
        metrics.oas_weighted([])
    with pytest.raises(EmptySliceError):
        metrics.cqi([])


def test_mtr_requires_multistep_records():
    single = make_record(total_steps=1, chain=make_chain(1))
    with pytest.raises(EmptySliceError):
        metrics.mtr([single])


def test_crs_requires_long_chains():
    short = make_record(total_steps=2, chain=make_chain(2))
    with pytest.raises(EmptySliceError):
        metrics.crs([short])


def test_ces_requires_a_success():
    failures = [make_record(task_id=f"t{i}", success=False) for i in range(3)]
    with pytest.raises(NoSuccessesError):
        metrics.ces(failures)


def test_aix_rejects_bad_inputs():
    with pytest.raises(InvalidInputError):
        metrics.aix(0, 0)
    with pytest.raises(InvalidInputError):
        metrics.aix(10, 11)
    with pytest.raises(InvalidInputError):
        metrics.aix(10, -1)


def test_dtt_rejects_inconsistent_times():
    with pytest.raises(InvalidInputError):
        metrics.dtt(make_record(t_start_s=10.0, t_end_s=5.0))
    with pytest.raises(InvalidInputError):
        metrics.dtt(make_record(t_start_s=0.0, t_end_s=5.0, human_wait_s=6.0))


def test_score_range_rejection():
    with pytest.raises(InvalidInputError):
        metrics.oas([11])
    with pytest.raises(InvalidInputError):
        metrics.oas([0.5])
    with pytest.raises(InvalidInputError):
        metrics.cqi([CollabScores(4, 4, 4, 4, 4), CollabScores(0, 4, 4, 4, 4)])
    with pytest.raises(InvalidInputError):
        metrics.tdi_normalize(1.5)


def test_adaptability_edge_cases():
    with pytest.raises(DegenerateBaselineError):
        metrics.adaptability(0.0, 0.5)
    no_rate = metrics.adaptability(0.0, 0.5, rate=False)
    assert no_rate.ad == 0.5 and no_rate.ar is None
    unchanged = metrics.adaptability(0.4, 0.4)
    assert unchanged.ad == 0.0 and unchanged.ar == 0.0
    with pytest.raises(InvalidInputError):
        metrics.adaptability(-0.1, 0.5)
    with pytest.raises(InvalidInputError):
        metrics.adaptability(0.5, 1.2)


def test_zero_cost_rejected():
    with pytest.raises(DivideByZeroError):
        metrics.bie(100.0, 0.0)
    with pytest.raises(DivideByZeroError):
        metrics.roi(100.0, 0.0)


def test_zero_baseline_rejected():
    with pytest.raises(DegenerateBaselineError):
        metrics.dtt_summary([make_record()], baseline_s=0.0)


def test_negative_kpi_rejected():
    with pytest.raises(InvalidInputError):
        metrics.kpi_to_monetary(DOMAIN_CONFIGS["Finance"], -1.0)


# ---------------------------------------------------------------------------
# properties


@given(st.lists(st.booleans(), min_size=1, max_size=200))
def test_gcr_matches_fold_and_is_permutation_invariant(flags):
    records = [make_record(task_id=f"t{i}", success=f) for i, f in enumerate(flags)]
    expected = 100.0 * sum(flags) / len(flags)
    assert math.isclose(metrics.gcr(records), expected, abs_tol=1e-12)
    assert math.isclose(metrics.gcr(list(reversed(records))), expected, abs_tol=1e-12)
    assert 0.0 <= metrics.gcr(records) <= 100.0


@given(st.lists(st.floats(1, 10), min_size=1, max_size=60))
def test_oas_fold_oracle(scores):
    acc = 0.0
    for s in scores:
        acc += s
    assert math.isclose(metrics.oas(scores), acc / len(scores), rel_tol=1e-12)
    assert 1.0 <= metrics.oas(scores) <= 10.0 + 1e-12


@given(st.lists(st.tuples(*([st.integers(1, 5)] * 5)), min_size=1, max_size=40))
def test_cqi_fold_oracle_and_range(rows):
    sessions = [CollabScores(*row) for row in rows]
    flat = [s for row in rows for s in row]
    assert math.isclose(metrics.cqi(sessions), sum(flat) / len(flat), rel_tol=1e-12)
    assert 1.0 <= metrics.cqi(sessions) <= 5.0
    assert math.isclose(metrics.cqi(list(reversed(sessions))), metrics.cqi(sessions), rel_tol=1e-12)


@given(
    st.lists(st.sampled_from(list(ToolUseOutcome)), min_size=1, max_size=50),
)
def test_tdi_range_and_normalization(outcomes):
    events = [ToolEvent(o) for o in outcomes]
    raw = metrics.tdi(events)
    assert -1.0 <= raw <= 1.0
    norm = metrics.tdi_normalize(raw)
    assert 0.0 <= norm <= 1.0
    assert math.isclose(norm, (raw + 1.0) / 2.0, abs_tol=1e-15)


@given(st.floats(-1, 1), st.floats(-1, 1))
def test_tdi_normalize_monotone_and_strict_above_epsilon(a, b):
    na, nb = metrics.tdi_normalize(a), metrics.tdi_normalize(b)
    if a == b:
        assert na == nb
    elif a < b:
        assert na <= nb
        if b - a > 1e-9:  # strict once the gap survives float quantization
            assert na < nb


@given(
    st.lists(st.tuples(st.integers(1, 30), st.integers(0, 30)), min_size=1, max_size=50)
)
def test_aix_weighted_uniform_equals_mean(pairs):
    records = [
        make_record(
            task_id=f"t{i}",
            total_steps=steps,
            interventions=Interventions(min(iv, steps), 0, 0),
            chain=make_chain(steps),
        )
        for i, (steps, iv) in enumerate(pairs)
    ]
    uniform = ComplexityWeights(simple=1.0, moderate=1.0, advanced=1.0)
    plain_mean = sum(metrics.record_aix(r) for r in records) / len(records)
    assert math.isclose(metrics.aix_weighted(records, uniform), plain_mean, rel_tol=1e-12)
    weighted = metrics.aix_weighted(records)
    assert 0.0 <= weighted <= 1.0


@given(
    st.lists(st.tuples(st.booleans(), st.integers(0, 10**5), st.integers(0, 50)), min_size=1, max_size=40),
    st.integers(0, 10**4),
)
def test_ces_monotonicity(rows, extra):
    records = [
        make_record(task_id=f"t{i}", success=s, tokens=tok, api_calls=calls)
        for i, (s, tok, calls) in enumerate(rows)
    ]
    successes = [r for r in records if r.success]
    if not successes:
        with pytest.raises(NoSuccessesError):
            metrics.ces(records)
        return
    base = metrics.ces(records)
    # adding resources to a successful task never lowers the score
    import dataclasses

    bumped = [
        dataclasses.replace(r, tokens=r.tokens + extra) if r is successes[0] else r
        for r in records
    ]
    assert metrics.ces(bumped) >= base - 1e-9
    # adding a zero-resource success never raises it
    widened = records + [make_record(task_id="zero", success=True, tokens=0, api_calls=0)]
    assert metrics.ces(widened) <= base + 1e-9


@given(st.floats(0.01, 10**7), st.floats(0.01, 10**6))
def test_roi_is_affine_in_bie(value, cost):
    assert math.isclose(
        metrics.roi(value, cost), 100.0 * (metrics.bie(value, cost) - 1.0), rel_tol=1e-9
    )


@given(st.lists(st.booleans(), min_size=1, max_size=30))
def test_mtr_counts_only_fully_resilient(recovered_flags):
    records = []
    for i, rec in enumerate(recovered_flags):
        records.append(
            make_record(
                task_id=f"t{i}",
                total_steps=4,
                success=rec,
                chain=make_chain(
                    4, had_initial_error=True, self_recovered=rec, chain_success=rec
                ),
            )
        )
    expected = 100.0 * sum(recovered_flags) / len(recovered_flags)
    assert math.isclose(metrics.mtr(records), expected, abs_tol=1e-9)
    assert 0.0 <= metrics.mtr(records) <= 100.0


@given(st.integers(0, 40), st.integers(0, 40))
def test_crs_threshold_partition(n_long, n_short):
    records = [
        make_record(task_id=f"l{i}", total_steps=3, chain=make_chain(3, chain_success=True))
        for i in range(n_long)
    ] + [
        make_record(task_id=f"s{i}", total_steps=2, chain=make_chain(2, chain_success=False))
        for i in range(n_short)
    ]
    if n_long == 0:
        if records:
            with pytest.raises(EmptySliceError):
                metrics.crs(records)
        return
    assert metrics.crs(records) == 100.0


def test_operational_cost_order_independent():
    records = [
        make_record(task_id=f"t{i}", tokens=333 + i, api_calls=i % 7,
                    interventions=Interventions(i % 3, 0, 0), total_steps=10,
                    chain=make_chain(10))
        for i in range(50)
    ]
    forward = metrics.operational_cost(records)
    backward = metrics.operational_cost(list(reversed(records)))
    assert forward == backward
