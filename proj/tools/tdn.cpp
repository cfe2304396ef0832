#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tdn/ingest.hpp"
#include "tdn/report.hpp"
#include "tdn/simulate.hpp"
#include "tdn/stats.hpp"

namespace {

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw tdn::Error("cannot write '" + out_path + "'");
    out << text;
    out.flush();
    if (!out) throw tdn::Error("failed while writing '" + out_path + "'");
}

std::vector<tdn::SubsampleSpec> parse_fractions(const std::string& csv,
                                                tdn::SubsampleMode mode) {
    std::vector<tdn::SubsampleSpec> specs;
    std::string item;
    std::istringstream in(csv);
    while (std::getline(in, item, ',')) {
        auto spec = tdn::SubsampleSpec::parse(item, mode);
        for (const auto& seen : specs) {
            if (seen.numerator() == spec.numerator() &&
                seen.denominator() == spec.denominator()) {
                throw tdn::Error("fraction '" + item + "' repeats");
            }
        }
        specs.push_back(spec);
    }
    if (specs.empty()) throw tdn::Error("no fractions given");
    return specs;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Diversity and evenness metrics over contributor frequency tables"};
    app.require_subcommand(1);

    // ingest
    std::string ingest_input, ingest_id_path, ingest_on_malformed = "skip", ingest_out;
    auto* ingest = app.add_subcommand(
        "ingest", "Count contributors in a JSONL stream and write a frequency table");
    ingest->add_option("--input", ingest_input, "JSONL file, plain or gzip")->required();
    ingest->add_option("--id-path", ingest_id_path,
                       "dot path to the contributor id, e.g. user.id_str")
        ->required();
    ingest->add_option("--on-malformed", ingest_on_malformed,
                       "what to do with unusable lines")
        ->check(CLI::IsMember({"skip", "abort"}));
    ingest->add_option("--out", ingest_out, "output frequency table (CSV)")->required();

    // analyze
    std::string an_freq, an_fractions = "1.0,0.2,0.1", an_mode = "truncated";
    std::string an_format = "json", an_name, an_out = "-";
    auto* analyze = app.add_subcommand(
        "analyze", "Compute the metric suite at one or more retention fractions");
    analyze->add_option("--freq", an_freq, "frequency table (CSV)")->required();
    analyze->add_option("--fractions", an_fractions,
                        "comma-separated retention fractions in (0, 1]");
    analyze->add_option("--mode", an_mode, "proportion base after subsampling")
        ->check(CLI::IsMember({"truncated", "renormalized"}));
    analyze->add_option("--format", an_format, "output format")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    analyze->add_option("--name", an_name, "dataset name (default: input stem)");
    analyze->add_option("--out", an_out, "output path, '-' for stdout");

    // correlate
    std::vector<std::string> co_reports;
    std::string co_x = "richness", co_y;
    auto* correlate = app.add_subcommand(
        "correlate", "Pool analysis reports and correlate a metric with richness");
    correlate->add_option("--reports", co_reports, "analysis reports (JSON)")
        ->required()
        ->expected(-1);
    correlate->add_option("--x", co_x, "x variable")->check(CLI::IsMember({"richness"}));
    correlate->add_option("--y", co_y, "y metric")
        ->required()
        ->check(CLI::IsMember({"shannon_h", "simpson_lambda", "e_var"}));

    // simulate
    std::string sim_model, sim_out;
    std::uint64_t sim_richness = 0, sim_individuals = 0, sim_seed = 0;
    double sim_param = 0.0;
    auto* simulate = app.add_subcommand(
        "simulate", "Generate a synthetic frequency table from an abundance model");
    simulate->add_option("--model", sim_model, "abundance model")
        ->required()
        ->check(CLI::IsMember({"uniform", "geometric", "zipf", "lognormal"}));
    simulate->add_option("--richness", sim_richness, "contributors requested")->required();
    simulate->add_option("--param", sim_param,
                         "model parameter (geometric ratio, zipf exponent, sigma)");
    simulate->add_option("--individuals", sim_individuals, "contributions to apportion")
        ->required();
    simulate->add_option("--seed", sim_seed, "seed for lognormal draws");
    simulate->add_option("--out", sim_out, "output frequency table (CSV)")->required();

    try {
        app.parse(argc, argv);

        if (*ingest) {
            tdn::IngestConfig config;
            config.id_path = ingest_id_path;
            config.on_malformed = ingest_on_malformed == "abort"
                                      ? tdn::OnMalformed::abort
                                      : tdn::OnMalformed::skip_and_count;
            const tdn::IngestReport report = tdn::ingest_file(ingest_input, config);
            std::cerr << "ingest: read=" << report.records_read
                      << " counted=" << report.records_counted
                      << " skipped=" << report.records_skipped
                      << " contributors=" << report.table.richness() << "\n";
            if (report.table.empty()) {
                throw tdn::Error("no usable records; refusing to write an empty table");
            }
            tdn::save_table(report.table, ingest_out);
        } else if (*analyze) {
            const auto mode = tdn::subsample_mode_from_string(an_mode);
            std::vector<tdn::SubsampleSpec> specs;
            try {
                specs = parse_fractions(an_fractions, mode);
            } catch (const tdn::Error& e) {
                throw CLI::ValidationError("--fractions", e.what());
            }
            const tdn::FrequencyTable table = tdn::load_table(an_freq);
            if (an_name.empty()) {
                an_name = std::filesystem::path(an_freq).stem().string();
            }
            const tdn::AnalysisReport report = tdn::analyze_table(table, an_name, specs);
            if (an_format == "json") {
                write_output(tdn::render_json(report), an_out);
            } else if (an_format == "csv") {
                write_output(tdn::render_csv(report), an_out);
            } else {
                write_output(tdn::render_table(report), an_out);
            }
        } else if (*correlate) {
            const tdn::MetricField field = tdn::metric_field_from_string(co_y);
            std::vector<tdn::AnalysisReport> reports;
            for (const auto& path : co_reports) {
                std::ifstream in(path, std::ios::binary);
                if (!in) throw tdn::Error("cannot open '" + path + "'");
                nlohmann::json j;
                try {
                    j = nlohmann::json::parse(in);
                } catch (const nlohmann::json::exception& e) {
                    throw tdn::Error("'" + path + "' is not valid JSON: " + e.what());
                }
                reports.push_back(tdn::report_from_json(j));
            }
            const auto obs = tdn::pool_richness_metric(reports, field);
            const tdn::CorrelationResult result = tdn::correlate_metric_vs_richness(obs);
            nlohmann::ordered_json j;
            j["x"] = co_x;
            j["y"] = co_y;
            j["n"] = result.n;
            j["r"] = result.r;
            j["ci_low"] = result.ci.low;
            j["ci_high"] = result.ci.high;
            j["p_value"] = result.p_value;
            std::cout << j.dump(2) << "\n";
        } else if (*simulate) {
            tdn::PopulationSpec spec;
            spec.model = tdn::abundance_model_from_string(sim_model);
            spec.richness = sim_richness;
            spec.param = sim_param;
            spec.individuals = sim_individuals;
            spec.seed = sim_seed;
            tdn::save_table(tdn::generate(spec), sim_out);
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const tdn::InvalidSpecError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tdn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
