#include "tdn/report.hpp"

#include <cstdio>
#include <sstream>

namespace tdn {

namespace {

// Shortest round-trip representation, the same one the JSON layer emits.
std::string num(double x) { return nlohmann::json(x).dump(); }

// Fixed 6-significant-digit rendering for the human-readable table.
std::string num6(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

}  // namespace

AnalysisReport analyze_table(const FrequencyTable& table, std::string dataset_name,
                             std::span<const SubsampleSpec> specs) {
    AnalysisReport report;
    report.dataset_name = std::move(dataset_name);
    report.summary = summarize(table);
    report.rows.reserve(specs.size());
    for (const auto& spec : specs) {
        for (const auto& row : report.rows) {
            if (row.spec.numerator() == spec.numerator() &&
                row.spec.denominator() == spec.denominator()) {
                throw Error("duplicate retention fraction requested");
            }
        }
        report.rows.push_back(AnalysisRow{spec, metric_suite(top_fraction(table, spec))});
    }
    return report;
}

nlohmann::ordered_json report_to_json(const AnalysisReport& report) {
    nlohmann::ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["dataset_name"] = report.dataset_name;
    j["summary"] = {
        {"n", report.summary.total},
        {"richness", report.summary.richness},
        {"mean_p", report.summary.mean_proportion},
        {"sd_p", report.summary.sd_proportion},
    };
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json r;
        r["fraction"] = row.spec.fraction();
        r["mode"] = std::string(to_string(row.spec.mode()));
        r["shannon_h"] = row.suite.shannon_h;
        if (row.suite.shannon_j) r["shannon_j"] = *row.suite.shannon_j;
        r["brillouin_h"] = row.suite.brillouin_h;
        r["simpson_lambda"] = row.suite.simpson_lambda;
        r["simpson_lambda_e4"] = row.suite.simpson_lambda * 1e4;
        if (row.suite.mcintosh_e) r["mcintosh_e"] = *row.suite.mcintosh_e;
        r["e_var"] = row.suite.e_var;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

AnalysisReport report_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("schema_version")) {
        throw Error("not an analysis report");
    }
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) {
        throw Error("unsupported report schema_version");
    }
    AnalysisReport report;
    report.dataset_name = j.at("dataset_name").get<std::string>();
    const auto& s = j.at("summary");
    report.summary.total = s.at("n").get<std::uint64_t>();
    report.summary.richness = s.at("richness").get<std::uint64_t>();
    report.summary.mean_proportion = s.at("mean_p").get<double>();
    report.summary.sd_proportion = s.at("sd_p").get<double>();
    for (const auto& r : j.at("rows")) {
        const auto mode = subsample_mode_from_string(r.at("mode").get<std::string>());
        AnalysisRow row{SubsampleSpec::from_double(r.at("fraction").get<double>(), mode),
                        MetricSuite{}};
        row.suite.shannon_h = r.at("shannon_h").get<double>();
        if (r.contains("shannon_j")) row.suite.shannon_j = r.at("shannon_j").get<double>();
        row.suite.brillouin_h = r.at("brillouin_h").get<double>();
        row.suite.simpson_lambda = r.at("simpson_lambda").get<double>();
        if (r.contains("mcintosh_e")) row.suite.mcintosh_e = r.at("mcintosh_e").get<double>();
        row.suite.e_var = r.at("e_var").get<double>();
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::string render_json(const AnalysisReport& report) {
    return report_to_json(report).dump(2) + "\n";
}

std::string render_csv(const AnalysisReport& report) {
    std::ostringstream out;
    out << "fraction,mode,shannon_h,shannon_j,brillouin_h,"
           "simpson_lambda,simpson_lambda_e4,mcintosh_e,e_var\n";
    for (const auto& row : report.rows) {
        out << num(row.spec.fraction()) << ','
            << to_string(row.spec.mode()) << ',' << num(row.suite.shannon_h) << ','
            << (row.suite.shannon_j ? num(*row.suite.shannon_j) : "") << ','
            << num(row.suite.brillouin_h) << ',' << num(row.suite.simpson_lambda)
            << ',' << num(row.suite.simpson_lambda * 1e4) << ','
            << (row.suite.mcintosh_e ? num(*row.suite.mcintosh_e) : "") << ','
            << num(row.suite.e_var) << '\n';
    }
    return out.str();
}

std::string render_table(const AnalysisReport& report) {
    std::ostringstream out;
    out << "dataset: " << report.dataset_name << "\n"
        << "n: " << report.summary.total << "  richness: " << report.summary.richness
        << "  mean_p: " << num6(report.summary.mean_proportion)
        << "  sd_p: " << num6(report.summary.sd_proportion) << "\n";

    static constexpr const char* kHeaders[] = {
        "fraction", "mode", "shannon_h", "lambda_x1e4", "e_var",
        "shannon_j", "brillouin_h", "mcintosh_e"};
    std::vector<std::vector<std::string>> cells;
    cells.emplace_back(std::begin(kHeaders), std::end(kHeaders));
    for (const auto& row : report.rows) {
        cells.push_back({num6(row.spec.fraction()),
                         std::string(to_string(row.spec.mode())),
                         num6(row.suite.shannon_h),
                         num6(row.suite.simpson_lambda * 1e4),
                         num6(row.suite.e_var),
                         row.suite.shannon_j ? num6(*row.suite.shannon_j) : "-",
                         num6(row.suite.brillouin_h),
                         row.suite.mcintosh_e ? num6(*row.suite.mcintosh_e) : "-"});
    }
    std::vector<std::size_t> widths(cells[0].size(), 0);
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            widths[c] = std::max(widths[c], row[c].size());
        }
    }
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out << "  ";
            out << pad(row[c], c + 1 < row.size() ? widths[c] : row[c].size());
        }
        out << "\n";
    }
    return out.str();
}

std::string_view to_string(MetricField field) {
    switch (field) {
        case MetricField::shannon_h: return "shannon_h";
        case MetricField::simpson_lambda: return "simpson_lambda";
        case MetricField::e_var: return "e_var";
    }
    return "shannon_h";
}

MetricField metric_field_from_string(std::string_view name) {
    if (name == "shannon_h") return MetricField::shannon_h;
    if (name == "simpson_lambda") return MetricField::simpson_lambda;
    if (name == "e_var") return MetricField::e_var;
    throw Error("unknown metric field '" + std::string(name) + "'");
}

std::vector<std::pair<double, double>> pool_richness_metric(
    std::span<const AnalysisReport> reports, MetricField field) {
    std::vector<std::pair<double, double>> obs;
    for (const auto& report : reports) {
        for (const auto& row : report.rows) {
            const auto retained = row.spec.retained_count(report.summary.richness);
            double y = 0.0;
            switch (field) {
                case MetricField::shannon_h: y = row.suite.shannon_h; break;
                case MetricField::simpson_lambda: y = row.suite.simpson_lambda; break;
                case MetricField::e_var: y = row.suite.e_var; break;
            }
            obs.emplace_back(static_cast<double>(retained), y);
        }
    }
    return obs;
}

}  // namespace tdn
