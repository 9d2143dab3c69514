#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "clemens/experiment.hpp"
#include "clemens/linalg.hpp"

namespace py = pybind11;
using namespace clemens;

namespace {

IncidenceSample load_sample(const std::string& text) { return sample_from_json(Json::parse(text)); }

ExperimentConfig make_config(const std::vector<int>& degrees, int trials, std::uint64_t seed, const std::string& suites,
                             long precision_bits, const std::string& center, int jobs) {
    ExperimentConfig cfg;
    cfg.degrees = degrees;
    cfg.trials_per_degree = trials;
    cfg.seed = seed;
    cfg.suites = parse_suites(suites);
    cfg.precision_bits = precision_bits;
    cfg.center = parse_center(center);
    cfg.jobs = jobs;
    cfg.validate();
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_clemens_lab, m) {
    m.doc() = "Exact and high-precision checks for rational curves on quintic threefolds";

    auto error = py::register_exception<Error>(m, "ClemensError", PyExc_ValueError);
    py::register_exception<DegeneracyError>(m, "DegeneracyError", error.ptr());

    m.def(
        "sample",
        [](int degree, std::uint64_t seed, bool special, const std::string& center, long height) {
            const IncidenceSample s = special ? sample_special(degree, seed, parse_center(center), height)
                                              : sample_incidence(degree, seed, false, height);
            return to_json(s).dump();
        },
        py::arg("degree"), py::arg("seed"), py::arg("special") = false, py::arg("center") = "incidence",
        py::arg("height") = kDefaultHeight, "IncidenceSample as a JSON string.");

    m.def(
        "verify",
        [](const std::vector<int>& degrees, int trials, std::uint64_t seed, const std::string& suites,
           long precision_bits, const std::string& center, int jobs) {
            const ExperimentConfig cfg = make_config(degrees, trials, seed, suites, precision_bits, center, jobs);
            std::vector<TrialReport> reports;
            {
                py::gil_scoped_release release;
                reports = run_suite(cfg);
            }
            return py::make_tuple(report_json(cfg, reports).dump(), exit_code(cfg, reports));
        },
        py::arg("degrees"), py::arg("trials"), py::arg("seed") = kDefaultSeed, py::arg("suites") = "all",
        py::arg("precision_bits") = kDefaultPrecision, py::arg("center") = "incidence", py::arg("jobs") = 1,
        "Runs the seeded suites; returns (report JSON, exit code).");

    m.def(
        "verify_sample",
        [](const std::string& sample, const std::string& suites) {
            ExperimentConfig cfg;
            cfg.suites = parse_suites(suites);
            const IncidenceSample s = load_sample(sample);
            cfg.degrees = {s.d};
            cfg.trials_per_degree = 1;
            const TrialReport r = run_on_sample(cfg, s);
            return report_json(cfg, {r}).dump();
        },
        py::arg("sample"), py::arg("suites") = "ladder,clemens,crosscheck");

    m.def("csv_from_report", [](const std::string& report) { return csv_from_report(Json::parse(report)); },
          py::arg("report"));

    m.def(
        "ladder_ranks",
        [](const std::string& sample) {
            const LadderResult l = run_ladder(load_sample(sample), 0);
            return py::make_tuple(l.rank_single, l.rank_pencil, l.rank_plane);
        },
        py::arg("sample"));

    m.def(
        "h0_profile",
        [](const std::string& sample) {
            const IncidenceSample s = load_sample(sample);
            return h0_profile(s.c, s.combined());
        },
        py::arg("sample"));

    m.def(
        "splitting_type_tx",
        [](const std::string& sample) {
            const IncidenceSample s = load_sample(sample);
            return splitting_type_TX(s.c, s.combined()).summands;
        },
        py::arg("sample"));

    m.def(
        "normal_splitting",
        [](const std::string& sample) {
            const IncidenceSample s = load_sample(sample);
            return normal_splitting(s.c, s.combined()).summands;
        },
        py::arg("sample"));

    m.def(
        "exact_rank",
        [](const std::vector<std::vector<std::string>>& rows) {
            if (rows.empty()) return 0;
            QMatrix q(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), Rational());
            for (size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].size() != rows[0].size()) throw Error("exact_rank: ragged rows");
                for (size_t j = 0; j < rows[i].size(); ++j) {
                    q(static_cast<int>(i), static_cast<int>(j)) = Rational::parse(rows[i][j]);
                }
            }
            return exact_rank(q);
        },
        py::arg("rows"), "Exact rank of a matrix of rational strings such as \"3/4\".");
}
