#pragma once

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tdn/freqtable.hpp"
#include "tdn/metrics.hpp"

namespace tdn {

inline constexpr int kReportSchemaVersion = 1;

struct AnalysisRow {
    SubsampleSpec spec;
    MetricSuite suite;
};

/// One dataset's summary plus the metric suite at each requested retention
/// fraction. This is the unit the renderers and the correlation pooling
/// work from.
struct AnalysisReport {
    std::string dataset_name;
    TableSummary summary;
    std::vector<AnalysisRow> rows;
};

AnalysisReport analyze_table(const FrequencyTable& table, std::string dataset_name,
                             std::span<const SubsampleSpec> specs);

/// Stable-keyed JSON form. Optional metrics are omitted, never null, and
/// simpson_lambda additionally appears pre-scaled by 1e4 for display use.
nlohmann::ordered_json report_to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const nlohmann::json& j);

std::string render_json(const AnalysisReport& report);
std::string render_csv(const AnalysisReport& report);
std::string render_table(const AnalysisReport& report);

/// Metrics that can stand on the y side of a correlation.
enum class MetricField { shannon_h, simpson_lambda, e_var };

std::string_view to_string(MetricField field);
MetricField metric_field_from_string(std::string_view name);

/// One (retained richness, metric) observation per report row, in report
/// then row order. Retained richness is ceil(fraction * R) of that
/// report's full richness.
std::vector<std::pair<double, double>> pool_richness_metric(
    std::span<const AnalysisReport> reports, MetricField field);

}  // namespace tdn
