"""Shared fixtures plus the acceptance-criteria summary printed after a run."""

from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from agentmetrics.aggregate import aggregate_cell, business_rows, group_records
from agentmetrics.defaults import DEFAULT_WEIGHTS, DOMAIN_CONFIGS
from agentmetrics.simulator import default_config, generate, generate_adaptability

settings.register_profile(
    "suite",
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

# criterion id -> [title, all tests passed so far]
_ACCEPTANCE: dict[str, list] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "criterion(cid, title): ties a test to one acceptance criterion for the summary",
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    cid, title = marker.args
    entry = _ACCEPTANCE.setdefault(cid, [title, True])
    if rep.when == "call":
        entry[1] = entry[1] and rep.passed
    elif rep.failed:  # setup/teardown error also fails the criterion
        entry[1] = False


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_ACCEPTANCE):
        title, ok = _ACCEPTANCE[cid]
        terminalreporter.write_line(f"criterion {cid} ({title}): {'PASS' if ok else 'FAIL'}")


@pytest.fixture(scope="session")
def sim_config():
    return default_config()


@pytest.fixture(scope="session")
def sim_records(sim_config):
    return generate(sim_config)


@pytest.fixture(scope="session")
def sim_cells(sim_config, sim_records):
    return [
        aggregate_cell(rs, sim_config.cost_model, DEFAULT_WEIGHTS, DOMAIN_CONFIGS[domain])
        for (_, domain), rs in group_records(sim_records).items()
    ]


@pytest.fixture(scope="session")
def sim_overall(sim_cells):
    from agentmetrics.aggregate import aggregate_overall

    rows = []
    for agent in dict.fromkeys(c.agent for c in sim_cells):
        mine = [c for c in sim_cells if c.agent == agent]
        rows.append(aggregate_overall(mine, {c.domain: c.n_tasks for c in mine}))
    return rows


@pytest.fixture(scope="session")
def sim_adaptability(sim_config):
    return generate_adaptability(sim_config)


@pytest.fixture(scope="session")
def sim_business(sim_cells):
    return business_rows(sim_cells, DOMAIN_CONFIGS)
