from ._core import (
    CorrelationResult,
    Error,
    FrequencyTable,
    IngestReport,
    MetricSuite,
    SweepRow,
    TableSummary,
    analyze_json,
    brillouin_h,
    correlate_metric_vs_richness,
    e_var,
    fisher_ci,
    generate,
    ingest_file,
    load_table,
    mcintosh_e,
    merge,
    metric_suite,
    pearson_r,
    r_p_value,
    richness_sweep,
    save_table,
    shannon_h,
    shannon_j,
    simpson_lambda,
    summarize,
    table_to_csv,
    top_fraction,
)

__version__ = "0.1.0"

__all__ = [
    "CorrelationResult",
    "Error",
    "FrequencyTable",
    "IngestReport",
    "MetricSuite",
    "SweepRow",
    "TableSummary",
    "analyze_json",
    "brillouin_h",
    "correlate_metric_vs_richness",
    "e_var",
    "fisher_ci",
    "generate",
    "ingest_file",
    "load_table",
    "mcintosh_e",
    "merge",
    "metric_suite",
    "pearson_r",
    "r_p_value",
    "richness_sweep",
    "save_table",
    "shannon_h",
    "shannon_j",
    "simpson_lambda",
    "summarize",
    "table_to_csv",
    "top_fraction",
]
