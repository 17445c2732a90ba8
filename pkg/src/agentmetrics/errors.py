"""Shared exception taxonomy for metric, statistics, simulation and report code.

Every computational routine in this package raises one of these instead of a
bare ValueError/ZeroDivisionError so callers (and the CLI) can map failures to
meaningful messages and exit codes.
"""

from __future__ import annotations


class AgentMetricsError(ValueError):
    """Base class for all domain errors raised by this package."""


class EmptySliceError(AgentMetricsError):
    """A metric was asked to summarise an empty selection of records."""


class InvalidInputError(AgentMetricsError):
    """An input value is outside its documented domain."""


class NoSuccessesError(AgentMetricsError):
    """A per-success metric was computed over a slice with zero successes."""


class DegenerateBaselineError(AgentMetricsError):
    """A ratio against a baseline was requested with a zero/absent baseline."""


class DivideByZeroError(AgentMetricsError):
    """A ratio metric was computed against a zero denominator."""


class DegenerateDataError(AgentMetricsError):
    """A statistical routine received data with no usable variation."""


class CalibrationError(AgentMetricsError):
    """The simulator could not reach a target with a feasible configuration."""


class IncompleteGridError(AgentMetricsError):
    """A report routine needs the full agent-by-domain grid and parts are missing."""
