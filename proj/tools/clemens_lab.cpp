// Command-line harness: sample, verify, report.

#include <cstdlib>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "clemens/experiment.hpp"

using namespace clemens;

namespace {

std::vector<int> parse_degrees(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw Error("invalid degree '" + item + "'");
        }
    }
    return out;
}

std::uint64_t env_seed(std::uint64_t fallback) {
    const char* s = std::getenv("CLEMENS_LAB_SEED");
    if (!s || !*s) return fallback;
    try {
        return std::stoull(s);
    } catch (const std::exception&) {
        throw Error(std::string("CLEMENS_LAB_SEED is not an unsigned integer: '") + s + "'");
    }
}

void summarize(const std::vector<TrialReport>& reports, std::ostream& os) {
    int ok = 0, failed = 0, degenerate = 0;
    for (const auto& r : reports) {
        if (r.status == kStatusDegenerate) {
            ++degenerate;
        } else if (r.pass) {
            ++ok;
        } else {
            ++failed;
        }
    }
    os << "trials: " << reports.size() << "  pass: " << ok << "  fail: " << failed << "  degenerate: " << degenerate
       << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rational curves on quintic threefolds: seeded verification harness"};
    app.require_subcommand(1);

    std::string degrees = "1,2,3";
    int trials = 20;
    std::uint64_t seed = kDefaultSeed;
    long precision = kDefaultPrecision;
    double rank_tol = 1e-30;
    double residual_tol = 1e-60;
    long height = kDefaultHeight;
    std::string suites = "all";
    std::string out;
    std::string format = "json";
    int jobs = 1;
    bool timing = false;
    std::string center = "incidence";

    auto common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "Master seed (CLEMENS_LAB_SEED overrides)");
        sub->add_option("--out", out, "Output path (stdout if omitted)");
        sub->add_option("--height", height, "Coefficient height bound")->check(CLI::PositiveNumber);
    };

    int sample_degree = 1;
    bool sample_special = false;
    CLI::App* sample = app.add_subcommand("sample", "Emit an incidence sample as JSON");
    common(sample);
    sample->add_option("--degree", sample_degree, "Curve degree")->check(CLI::Range(1, 4));
    sample->add_flag("--special", sample_special, "Use the special pair (f1, f2)");
    sample->add_option("--center", center, "incidence | off-incidence (with --special)");

    std::string sample_path;
    CLI::App* verify = app.add_subcommand("verify", "Run suites on seeded trials or a stored sample");
    common(verify);
    verify->add_option("--degree", degrees, "Comma-separated degrees in {1,2,3,4}");
    verify->add_option("--trials", trials, "Trials per degree")->check(CLI::PositiveNumber);
    verify->add_option("--precision-bits", precision, "Working precision in bits");
    verify->add_option("--rank-tol", rank_tol, "Relative singular-value tolerance");
    verify->add_option("--residual-tol", residual_tol, "delta0 residual tolerance");
    verify->add_option("--suites", suites, "ladder,clemens,specialization,crosscheck or all");
    verify->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    verify->add_option("--jobs", jobs, "Parallel trials")->check(CLI::PositiveNumber);
    verify->add_flag("--timing", timing, "Record wall time per trial (breaks byte-identical reports)");
    verify->add_option("--center", center, "incidence | off-incidence");
    verify->add_option("--sample", sample_path, "Verify a stored sample file instead of seeded trials");

    std::string report_in;
    std::string report_format = "csv";
    CLI::App* report = app.add_subcommand("report", "Re-render a stored JSON report");
    report->add_option("input", report_in, "JSON report")->required();
    report->add_option("--out", out, "Output path (stdout if omitted)");
    report->add_option("--format", report_format, "csv | json (default csv)")->check(CLI::IsMember({"json", "csv"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sample) {
            seed = env_seed(seed);
            const Center c = parse_center(center);
            const IncidenceSample s = sample_special ? clemens::sample_special(sample_degree, seed, c, height)
                                                     : sample_incidence(sample_degree, seed, false, height);
            const std::string text = to_json(s).dump(2) + "\n";
            if (out.empty()) {
                std::cout << text;
            } else {
                write_text_file(out, text);
            }
            return 0;
        }
        if (*verify) {
            ExperimentConfig cfg;
            cfg.degrees = parse_degrees(degrees);
            cfg.trials_per_degree = trials;
            cfg.seed = env_seed(seed);
            cfg.precision_bits = precision;
            cfg.rank_rel_tol = rank_tol;
            cfg.residual_tol = residual_tol;
            cfg.height = height;
            cfg.suites = parse_suites(suites);
            cfg.center = parse_center(center);
            cfg.jobs = jobs;
            cfg.timing = timing;
            std::vector<TrialReport> reports;
            if (!sample_path.empty()) {
                const IncidenceSample s = sample_from_json(read_json_file(sample_path));
                cfg.degrees = {s.d};
                cfg.trials_per_degree = 1;
                cfg.validate();
                reports.push_back(run_on_sample(cfg, s));
            } else {
                reports = run_suite(cfg);
            }
            const Json doc = report_json(cfg, reports);
            const std::string text = format == "json" ? doc.dump(2) + "\n" : csv_from_report(doc);
            if (out.empty()) {
                std::cout << text;
            } else {
                write_text_file(out, text);
            }
            summarize(reports, std::cerr);
            return exit_code(cfg, reports);
        }
        if (*report) {
            const Json doc = read_json_file(report_in);
            const std::string text = report_format == "json" ? doc.dump(2) + "\n" : csv_from_report(doc);
            if (out.empty()) {
                std::cout << text;
            } else {
                write_text_file(out, text);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
