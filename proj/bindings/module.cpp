#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "tdn/freqtable.hpp"
#include "tdn/ingest.hpp"
#include "tdn/metrics.hpp"
#include "tdn/report.hpp"
#include "tdn/simulate.hpp"
#include "tdn/stats.hpp"

namespace py = pybind11;

namespace {

// Accept either a decimal string ("0.2") or a number for fractions.
tdn::SubsampleSpec spec_from(const py::object& fraction, const std::string& mode) {
    const auto m = tdn::subsample_mode_from_string(mode);
    if (py::isinstance<py::str>(fraction)) {
        return tdn::SubsampleSpec::parse(fraction.cast<std::string>(), m);
    }
    return tdn::SubsampleSpec::from_double(fraction.cast<double>(), m);
}

std::vector<tdn::SubsampleSpec> specs_from(const py::sequence& fractions,
                                           const std::string& mode) {
    std::vector<tdn::SubsampleSpec> specs;
    for (const auto& f : fractions) {
        specs.push_back(spec_from(py::reinterpret_borrow<py::object>(f), mode));
    }
    return specs;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Diversity and evenness metrics over contributor frequency tables";

    py::register_exception<tdn::Error>(m, "Error");

    py::class_<tdn::FrequencyTable>(m, "FrequencyTable")
        .def_static("from_counts", &tdn::FrequencyTable::from_counts, py::arg("pairs"),
                    "Build from a list of (contributor_id, count) pairs")
        .def_property_readonly("total", &tdn::FrequencyTable::total)
        .def_property_readonly("richness", &tdn::FrequencyTable::richness)
        .def("counts", [](const tdn::FrequencyTable& t) { return t.counts(); })
        .def("__len__", &tdn::FrequencyTable::richness)
        .def("__eq__",
             [](const tdn::FrequencyTable& a, const tdn::FrequencyTable& b) {
                 return a == b;
             })
        .def("__repr__", [](const tdn::FrequencyTable& t) {
            return "FrequencyTable(richness=" + std::to_string(t.richness()) +
                   ", total=" + std::to_string(t.total()) + ")";
        });

    py::class_<tdn::TableSummary>(m, "TableSummary")
        .def_readonly("total", &tdn::TableSummary::total)
        .def_readonly("richness", &tdn::TableSummary::richness)
        .def_readonly("mean_proportion", &tdn::TableSummary::mean_proportion)
        .def_readonly("sd_proportion", &tdn::TableSummary::sd_proportion);

    py::class_<tdn::MetricSuite>(m, "MetricSuite")
        .def_readonly("shannon_h", &tdn::MetricSuite::shannon_h)
        .def_readonly("shannon_j", &tdn::MetricSuite::shannon_j)
        .def_readonly("brillouin_h", &tdn::MetricSuite::brillouin_h)
        .def_readonly("simpson_lambda", &tdn::MetricSuite::simpson_lambda)
        .def_readonly("mcintosh_e", &tdn::MetricSuite::mcintosh_e)
        .def_readonly("e_var", &tdn::MetricSuite::e_var);

    py::class_<tdn::CorrelationResult>(m, "CorrelationResult")
        .def_readonly("r", &tdn::CorrelationResult::r)
        .def_readonly("n", &tdn::CorrelationResult::n)
        .def_property_readonly("ci_low",
                               [](const tdn::CorrelationResult& c) { return c.ci.low; })
        .def_property_readonly("ci_high",
                               [](const tdn::CorrelationResult& c) { return c.ci.high; })
        .def_readonly("p_value", &tdn::CorrelationResult::p_value);

    py::class_<tdn::IngestReport>(m, "IngestReport")
        .def_readonly("records_read", &tdn::IngestReport::records_read)
        .def_readonly("records_counted", &tdn::IngestReport::records_counted)
        .def_readonly("records_skipped", &tdn::IngestReport::records_skipped)
        .def_readonly("table", &tdn::IngestReport::table);

    py::class_<tdn::SweepRow>(m, "SweepRow")
        .def_readonly("richness", &tdn::SweepRow::richness)
        .def_readonly("seed", &tdn::SweepRow::seed)
        .def_readonly("suite", &tdn::SweepRow::suite);

    m.def("merge", &tdn::merge, py::arg("a"), py::arg("b"));
    m.def("summarize", &tdn::summarize, py::arg("table"));

    m.def(
        "top_fraction",
        [](const tdn::FrequencyTable& t, const py::object& fraction,
           const std::string& mode) {
            const auto sub = tdn::top_fraction(t, spec_from(fraction, mode));
            return py::make_tuple(sub.table, sub.context.denominator);
        },
        py::arg("table"), py::arg("fraction"), py::arg("mode") = "truncated",
        "Returns (retained_table, proportion_denominator)");

    m.def("shannon_h",
          [](const tdn::FrequencyTable& t) { return tdn::shannon_h(t); });
    m.def("shannon_j",
          [](const tdn::FrequencyTable& t) { return tdn::shannon_j(t); });
    m.def("brillouin_h", &tdn::brillouin_h);
    m.def("simpson_lambda",
          [](const tdn::FrequencyTable& t) { return tdn::simpson_lambda(t); });
    m.def("mcintosh_e", &tdn::mcintosh_e);
    m.def("e_var", &tdn::e_var);

    m.def(
        "metric_suite",
        [](const tdn::FrequencyTable& t, const py::object& fraction,
           const std::string& mode) {
            return tdn::metric_suite(tdn::top_fraction(t, spec_from(fraction, mode)));
        },
        py::arg("table"), py::arg("fraction") = 1.0, py::arg("mode") = "truncated");

    m.def(
        "pearson_r",
        [](const std::vector<double>& xs, const std::vector<double>& ys) {
            return tdn::pearson_r(xs, ys);
        },
        py::arg("xs"), py::arg("ys"));
    m.def(
        "fisher_ci",
        [](double r, int n, double level) {
            const auto ci = tdn::fisher_ci(r, n, level);
            return py::make_tuple(ci.low, ci.high);
        },
        py::arg("r"), py::arg("n"), py::arg("level") = 0.95);
    m.def("r_p_value", &tdn::r_p_value, py::arg("r"), py::arg("n"));
    m.def(
        "correlate_metric_vs_richness",
        [](const std::vector<std::pair<double, double>>& obs) {
            return tdn::correlate_metric_vs_richness(obs);
        },
        py::arg("richness_metric"));

    m.def(
        "generate",
        [](const std::string& model, std::uint64_t richness, double param,
           std::uint64_t individuals, std::uint64_t seed) {
            tdn::PopulationSpec spec;
            spec.model = tdn::abundance_model_from_string(model);
            spec.richness = richness;
            spec.param = param;
            spec.individuals = individuals;
            spec.seed = seed;
            return tdn::generate(spec);
        },
        py::arg("model"), py::arg("richness"), py::arg("param") = 0.0,
        py::arg("individuals") = 1, py::arg("seed") = 0);

    m.def(
        "richness_sweep",
        [](const std::string& model, double param, double individuals_per_contributor,
           const std::vector<std::uint64_t>& richness_values,
           const std::vector<std::uint64_t>& seeds) {
            return tdn::richness_sweep(tdn::abundance_model_from_string(model), param,
                                       individuals_per_contributor, richness_values,
                                       seeds);
        },
        py::arg("model"), py::arg("param"), py::arg("individuals_per_contributor"),
        py::arg("richness_values"), py::arg("seeds"));

    m.def(
        "ingest_file",
        [](const std::filesystem::path& path, const std::string& id_path,
           const std::string& on_malformed) {
            tdn::IngestConfig config;
            config.id_path = id_path;
            config.on_malformed = on_malformed == "abort"
                                      ? tdn::OnMalformed::abort
                                      : tdn::OnMalformed::skip_and_count;
            return tdn::ingest_file(path, config);
        },
        py::arg("path"), py::arg("id_path"), py::arg("on_malformed") = "skip");

    m.def("load_table", &tdn::load_table, py::arg("path"));
    m.def("save_table", &tdn::save_table, py::arg("table"), py::arg("path"));
    m.def("table_to_csv", &tdn::table_to_csv, py::arg("table"));

    m.def(
        "analyze_json",
        [](const tdn::FrequencyTable& t, const std::string& name,
           const py::sequence& fractions, const std::string& mode) {
            return tdn::render_json(tdn::analyze_table(t, name, specs_from(fractions, mode)));
        },
        py::arg("table"), py::arg("name"), py::arg("fractions"),
        py::arg("mode") = "truncated",
        "Full analysis report rendered as a JSON string");
}
