"""Task-level evaluation toolkit for AI agents.

Computes goal completion, autonomy, timing, cost, tool-use, resilience,
collaboration and business-impact metrics from task execution records;
generates deterministic synthetic datasets for benchmarking; and ships a
statistical comparison suite plus a table/chart report pipeline.
"""

from .aggregate import (
    BusinessRow,
    OverallRow,
    aggregate_cell,
    aggregate_overall,
    business_rows,
    group_records,
)
from .errors import (
    AgentMetricsError,
    CalibrationError,
    DegenerateBaselineError,
    DegenerateDataError,
    DivideByZeroError,
    EmptySliceError,
    IncompleteGridError,
    InvalidInputError,
    NoSuccessesError,
)
from .metrics import (
    AdaptabilityResult,
    DttSummary,
    adaptability,
    aix,
    aix_weighted,
    bie,
    ces,
    cqi,
    crs,
    dtt,
    dtt_summary,
    gcr,
    kpi_to_monetary,
    mtr,
    oas,
    oas_weighted,
    operational_cost,
    record_aix,
    resource_units,
    roi,
    tdi,
    tdi_normalize,
)
from .records import (
    AdaptabilityCell,
    AgentProfile,
    ChainLevel,
    ChainOutcome,
    CollabScores,
    ComplexityWeights,
    CostModel,
    DomainConfig,
    ErrorType,
    Interventions,
    KpiUnit,
    MetricCell,
    RaterScores,
    TaskRecord,
    ToolEvent,
    ToolUseOutcome,
    chain_level_for,
    read_task_csv,
    validate_record,
    write_task_csv,
)
from .simulator import (
    Mode,
    SimConfig,
    default_config,
    generate,
    generate_adaptability,
    load_config,
)
from .stats import (
    AnovaResult,
    Chi2Result,
    CorrelationMatrix,
    EffectSize,
    TukeyPair,
    WilsonInterval,
    chi_square_independence,
    cohens_d,
    fleiss_kappa,
    fleiss_kappa_from_counts,
    krippendorff_alpha,
    one_way_anova,
    pearson_matrix,
    tukey_hsd,
    wilson_interval,
)

__version__ = "0.1.0"

__all__ = [
    "AdaptabilityCell",
    "AdaptabilityResult",
    "AgentMetricsError",
    "AgentProfile",
    "AnovaResult",
    "BusinessRow",
    "CalibrationError",
    "ChainLevel",
    "ChainOutcome",
    "Chi2Result",
    "CollabScores",
    "ComplexityWeights",
    "CorrelationMatrix",
    "CostModel",
    "DegenerateBaselineError",
    "DegenerateDataError",
    "DivideByZeroError",
    "DomainConfig",
    "DttSummary",
    "EffectSize",
    "EmptySliceError",
    "ErrorType",
    "IncompleteGridError",
    "Interventions",
    "InvalidInputError",
    "KpiUnit",
    "MetricCell",
    "Mode",
    "NoSuccessesError",
    "OverallRow",
    "RaterScores",
    "SimConfig",
    "TaskRecord",
    "ToolEvent",
    "ToolUseOutcome",
    "TukeyPair",
    "WilsonInterval",
    "adaptability",
    "aggregate_cell",
    "aggregate_overall",
    "aix",
    "aix_weighted",
    "bie",
    "business_rows",
    "ces",
    "chain_level_for",
    "chi_square_independence",
    "cohens_d",
    "cqi",
    "crs",
    "default_config",
    "dtt",
    "dtt_summary",
    "fleiss_kappa",
    "fleiss_kappa_from_counts",
    "gcr",
    "generate",
    "generate_adaptability",
    "group_records",
    "kpi_to_monetary",
    "krippendorff_alpha",
    "load_config",
    "mtr",
    "oas",
    "oas_weighted",
    "one_way_anova",
    "operational_cost",
    "pearson_matrix",
    "read_task_csv",
    "record_aix",
    "resource_units",
    "roi",
    "tdi",
    "tdi_normalize",
    "tukey_hsd",
    "validate_record",
    "wilson_interval",
    "write_task_csv",
]
