#pragma once

#include <optional>

#include "tdn/freqtable.hpp"

namespace tdn {

/// All indices for one table, computed in a single pass over the counts.
/// Fields that are undefined for a single contributor are left absent
/// rather than set to NaN.
struct MetricSuite {
    double shannon_h = 0.0;
    std::optional<double> shannon_j;    // absent when R = 1
    double brillouin_h = 0.0;
    double simpson_lambda = 0.0;        // raw concentration in [0, 1]
    std::optional<double> mcintosh_e;   // absent when R = 1
    double e_var = 0.0;
};

/// Proportion base for a table taken as a whole population.
inline ProportionContext full_context(const FrequencyTable& t) {
    return ProportionContext{t.total()};
}

/// Shannon entropy -sum p_j ln p_j, natural log. The context supplies the
/// proportion denominator; under truncation it exceeds the table's own total.
double shannon_h(const FrequencyTable& table, const ProportionContext& ctx);
double shannon_h(const FrequencyTable& table);

/// Pielou evenness H / ln R. Undefined for a single contributor. Under a
/// truncated context the ratio can exceed 1; it is reported as computed.
double shannon_j(const FrequencyTable& table, const ProportionContext& ctx);
double shannon_j(const FrequencyTable& table);

/// Brillouin index (ln N! - sum ln t_j!) / N over the table's raw counts.
/// Takes no proportion context by design.
double brillouin_h(const FrequencyTable& table);

/// Simpson concentration sum p_j^2; identical to the Herfindahl-Hirschman
/// index. Reported raw; scale by 1e4 only at the presentation layer.
double simpson_lambda(const FrequencyTable& table, const ProportionContext& ctx);
double simpson_lambda(const FrequencyTable& table);

/// McIntosh evenness (N - U) / (N - N/sqrt(R)) with U = sqrt(sum t_j^2),
/// over raw counts. Undefined for a single contributor.
double mcintosh_e(const FrequencyTable& table);

/// E_var = 1 - (2/pi) arctan(population variance of ln p_j). The variance
/// of ln p is invariant under the proportion base, so this is computed from
/// the counts alone and is exactly 1 when all counts are equal.
double e_var(const FrequencyTable& table);

MetricSuite metric_suite(const FrequencyTable& table, const ProportionContext& ctx);
MetricSuite metric_suite(const FrequencyTable& table);
MetricSuite metric_suite(const Subpopulation& sub);

}  // namespace tdn
