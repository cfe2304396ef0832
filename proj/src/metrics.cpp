#include "tdn/metrics.hpp"

#include <cmath>

#include "tdn/kahan.hpp"

namespace tdn {

namespace {

void require_nonempty(const FrequencyTable& t, const char* op) {
    if (t.empty()) throw EmptyTableError(std::string(op) + ": empty table");
}

void require_context(const FrequencyTable& t, const ProportionContext& ctx) {
    if (ctx.denominator == 0) throw Error("proportion denominator is zero");
    if (ctx.denominator < t.total()) {
        throw Error("proportion denominator smaller than the table total");
    }
}

// sum t_j ln t_j, the only floating part of the entropy.
double sum_t_log_t(const FrequencyTable& t) {
    KahanSum s;
    for (const auto& [id, count] : t.counts()) {
        const auto c = static_cast<double>(count);
        s.add(c * std::log(c));
    }
    return s.value();
}

// sum t_j^2 exactly; counts are integers, so the dominant term of Simpson
// and McIntosh carries no rounding at all.
unsigned __int128 sum_sq(const FrequencyTable& t) {
    unsigned __int128 s = 0;
    for (const auto& [id, count] : t.counts()) {
        s += static_cast<unsigned __int128>(count) * count;
    }
    return s;
}

}  // namespace

double shannon_h(const FrequencyTable& table, const ProportionContext& ctx) {
    require_nonempty(table, "shannon_h");
    require_context(table, ctx);
    // -sum (t/D) ln(t/D) rearranged to (T ln D - sum t ln t) / D: the log of
    // the denominator is taken once instead of once per contributor.
    const auto d = static_cast<double>(ctx.denominator);
    const auto total = static_cast<double>(table.total());
    const double h = (total * std::log(d) - sum_t_log_t(table)) / d;
    return h < 0.0 ? 0.0 : h;  // clamp -0.0 style residue for uniform tables
}

double shannon_h(const FrequencyTable& table) {
    return shannon_h(table, full_context(table));
}

double shannon_j(const FrequencyTable& table, const ProportionContext& ctx) {
    require_nonempty(table, "shannon_j");
    if (table.richness() < 2) {
        throw UndefinedForSingletonError("shannon_j needs at least two contributors");
    }
    return shannon_h(table, ctx) / std::log(static_cast<double>(table.richness()));
}

double shannon_j(const FrequencyTable& table) {
    return shannon_j(table, full_context(table));
}

double brillouin_h(const FrequencyTable& table) {
    require_nonempty(table, "brillouin_h");
    const auto n = static_cast<double>(table.total());
    KahanSum log_fact;
    for (const auto& [id, count] : table.counts()) {
        log_fact.add(std::lgamma(static_cast<double>(count) + 1.0));
    }
    const double h = (std::lgamma(n + 1.0) - log_fact.value()) / n;
    return h < 0.0 ? 0.0 : h;
}

double simpson_lambda(const FrequencyTable& table, const ProportionContext& ctx) {
    require_nonempty(table, "simpson_lambda");
    require_context(table, ctx);
    const auto d = static_cast<double>(ctx.denominator);
    return static_cast<double>(sum_sq(table)) / (d * d);
}

double simpson_lambda(const FrequencyTable& table) {
    return simpson_lambda(table, full_context(table));
}

double mcintosh_e(const FrequencyTable& table) {
    require_nonempty(table, "mcintosh_e");
    if (table.richness() < 2) {
        throw UndefinedForSingletonError("mcintosh_e needs at least two contributors");
    }
    const auto n = static_cast<double>(table.total());
    const auto r = static_cast<double>(table.richness());
    const double u = std::sqrt(static_cast<double>(sum_sq(table)));
    return (n - u) / (n - n / std::sqrt(r));
}

double e_var(const FrequencyTable& table) {
    require_nonempty(table, "e_var");
    // var(ln p) == var(ln t): the proportion base only shifts every term.
    const auto& counts = table.counts();
    const std::uint64_t first = counts.begin()->second;
    bool all_equal = true;
    for (const auto& [id, count] : counts) {
        if (count != first) {
            all_equal = false;
            break;
        }
    }
    if (all_equal) return 1.0;  // perfectly even, exactly

    const auto r = static_cast<double>(table.richness());
    KahanSum mean_sum;
    for (const auto& [id, count] : counts) {
        mean_sum.add(std::log(static_cast<double>(count)));
    }
    const double mean = mean_sum.value() / r;
    KahanSum sq;
    for (const auto& [id, count] : counts) {
        const double dev = std::log(static_cast<double>(count)) - mean;
        sq.add(dev * dev);
    }
    const double variance = sq.value() / r;
    return 1.0 - (2.0 / M_PI) * std::atan(variance);
}

MetricSuite metric_suite(const FrequencyTable& table, const ProportionContext& ctx) {
    require_nonempty(table, "metric_suite");
    MetricSuite m;
    m.shannon_h = shannon_h(table, ctx);
    m.brillouin_h = brillouin_h(table);
    m.simpson_lambda = simpson_lambda(table, ctx);
    m.e_var = e_var(table);
    if (table.richness() > 1) {
        m.shannon_j = shannon_j(table, ctx);
        m.mcintosh_e = mcintosh_e(table);
    }
    return m;
}

MetricSuite metric_suite(const FrequencyTable& table) {
    return metric_suite(table, full_context(table));
}

MetricSuite metric_suite(const Subpopulation& sub) {
    return metric_suite(sub.table, sub.context);
}

}  // namespace tdn
