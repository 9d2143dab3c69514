#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "clemens/experiment.hpp"

using namespace clemens;

namespace {

ExperimentConfig small_config(std::vector<Suite> suites, std::vector<int> degrees = {1}, int trials = 3) {
    ExperimentConfig cfg;
    cfg.degrees = std::move(degrees);
    cfg.trials_per_degree = trials;
    cfg.suites = std::move(suites);
    return cfg;
}

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty()) out.push_back(line);
    }
    return out;
}

size_t field_count(const std::string& line) { return static_cast<size_t>(std::count(line.begin(), line.end(), ',')) + 1; }

TrialReport synthetic(int degree, int trial, bool pass, bool degenerate = false) {
    TrialReport r;
    r.degree = degree;
    r.trial = trial;
    r.pass = pass && !degenerate;
    if (degenerate) {
        r.status = kStatusDegenerate;
        r.retry_log = {"repeated_root"};
    }
    return r;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("clemens_test_" + name);
}

}  // namespace

TEST_CASE("suite names") {
    CHECK(parse_suites("all").size() == 4);
    const auto s = parse_suites("ladder,crosscheck");
    REQUIRE(s.size() == 2);
    CHECK(s[0] == Suite::Ladder);
    CHECK(s[1] == Suite::Crosscheck);
    for (Suite x : {Suite::Ladder, Suite::Clemens, Suite::Specialization, Suite::Crosscheck}) {
        CHECK(parse_suite(suite_name(x)) == x);
    }
    CHECK_THROWS_AS(parse_suites("ladder,bogus"), Error);
    CHECK_THROWS_AS(parse_suites(""), Error);
}

TEST_CASE("config validation") {
    CHECK_NOTHROW(ExperimentConfig{}.validate());
    auto bad = [](auto mutate) {
        ExperimentConfig c;
        mutate(c);
        CHECK_THROWS_AS(c.validate(), Error);
    };
    bad([](ExperimentConfig& c) { c.degrees = {5}; });
    bad([](ExperimentConfig& c) { c.degrees = {}; });
    bad([](ExperimentConfig& c) { c.trials_per_degree = 0; });
    bad([](ExperimentConfig& c) { c.precision_bits = 64; });
    bad([](ExperimentConfig& c) { c.rank_rel_tol = 1.5; });
    bad([](ExperimentConfig& c) { c.residual_tol = 0; });
    bad([](ExperimentConfig& c) { c.jobs = 0; });
    bad([](ExperimentConfig& c) { c.rank_rel_tol = 1e-70; });
}

TEST_CASE("ladder suite: d = 1, five trials") {
    const auto reports = run_suite(small_config({Suite::Ladder}, {1}, 5));
    REQUIRE(reports.size() == 5);
    for (const auto& r : reports) {
        REQUIRE(r.ladder);
        CHECK(r.ladder->tangent_dims == std::array<int, 3>{4, 5, 6});
        CHECK(r.pass);
        CHECK(r.resample_count <= kTrialResampleCap);
    }
}

TEST_CASE("clemens suite: normal splitting on every accepted trial") {
    const auto reports = run_suite(small_config({Suite::Clemens}, {1, 2}, 2));
    REQUIRE(reports.size() == 4);
    for (const auto& r : reports) {
        REQUIRE(r.clemens);
        CHECK(r.clemens->normal_splitting == SplittingType{{-1, -1}});
        CHECK(r.clemens->h0_profile.at(0) == 3);
    }
}

TEST_CASE("reports are deterministic and independent of the job count") {
    ExperimentConfig cfg = small_config({Suite::Ladder, Suite::Clemens}, {1, 2}, 2);
    const std::string a = report_json(cfg, run_suite(cfg)).dump(2);
    const std::string b = report_json(cfg, run_suite(cfg)).dump(2);
    cfg.jobs = 3;
    const auto parallel = run_suite(cfg);
    cfg.jobs = 1;
    const std::string c = report_json(cfg, parallel).dump(2);
    CHECK(a == b);
    CHECK(a == c);
    for (size_t k = 1; k < parallel.size(); ++k) {
        CHECK(std::make_pair(parallel[k - 1].degree, parallel[k - 1].trial) <
              std::make_pair(parallel[k].degree, parallel[k].trial));
    }
}

TEST_CASE("different seeds give different samples") {
    ExperimentConfig cfg = small_config({Suite::Ladder}, {1}, 1);
    const auto a = run_suite(cfg);
    cfg.seed += 1;
    const auto b = run_suite(cfg);
    CHECK(a[0].seed != b[0].seed);
}

TEST_CASE("JSON and CSV emission") {
    const ExperimentConfig cfg = small_config({Suite::Ladder, Suite::Clemens}, {1, 2}, 1);
    const auto reports = run_suite(cfg);
    const auto json_path = temp_path("report.json");
    const auto csv_path = temp_path("report.csv");
    emit_report(cfg, reports, json_path.string(), "json");
    emit_report(cfg, reports, csv_path.string(), "csv");

    const Json j = read_json_file(json_path.string());
    CHECK(j == report_json(cfg, reports));
    CHECK(j.at("version") == kReportVersion);
    CHECK(j.at("trials").size() == 2);

    const auto lines = split_lines(csv_from_report(j));
    REQUIRE(lines.size() == 3);
    for (const auto& l : lines) CHECK(field_count(l) == csv_header().size());

    std::filesystem::remove(json_path);
    std::filesystem::remove(csv_path);
    CHECK_THROWS_AS(emit_report(cfg, reports, json_path.string(), "xml"), Error);
}

TEST_CASE("empty report list") {
    const ExperimentConfig cfg;
    const Json j = report_json(cfg, {});
    CHECK(j.at("trials").is_array());
    CHECK(j.at("trials").empty());
    const auto path = temp_path("empty.json");
    emit_report(cfg, {}, path.string(), "json");
    CHECK(read_json_file(path.string()) == j);
    std::filesystem::remove(path);
    CHECK(split_lines(csv_from_report(j)).size() == 1);
}

TEST_CASE("I/O errors name the path") {
    const std::string path = "/nonexistent-dir/report.json";
    try {
        emit_report(ExperimentConfig{}, {}, path, "json");
        FAIL("expected an I/O error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find(path) != std::string::npos);
    }
}

TEST_CASE("exit codes") {
    ExperimentConfig cfg;
    cfg.degrees = {1, 2};
    CHECK(exit_code(cfg, {synthetic(1, 0, true), synthetic(2, 0, true)}) == 0);
    CHECK(exit_code(cfg, {synthetic(1, 0, true), synthetic(2, 0, false)}) == 2);
    // Degenerate trials alone do not fail a claim.
    CHECK(exit_code(cfg, {synthetic(1, 0, true), synthetic(1, 1, false, true), synthetic(2, 0, true)}) == 0);
    CHECK(exit_code(cfg, {synthetic(1, 0, false), synthetic(2, 0, false, true), synthetic(2, 1, false, true)}) == 3);
}

TEST_CASE("degenerate trials carry their predicate in the JSON") {
    const Json j = to_json(synthetic(1, 0, false, true));
    CHECK(j.at("status") == kStatusDegenerate);
    CHECK(j.at("retry_log").at(0) == "repeated_root");
}

TEST_CASE("sample JSON round trip") {
    for (bool special : {false, true}) {
        const IncidenceSample s = sample_incidence(2, 17, special);
        const IncidenceSample r = sample_from_json(Json::parse(to_json(s).dump()));
        CHECK(r.c == s.c);
        CHECK(r.f0 == s.f0);
        CHECK(r.f1 == s.f1);
        CHECK(r.f2 == s.f2);
        CHECK(r.a == s.a);
        CHECK(r.b == s.b);
        CHECK(r.seed == s.seed);
        CHECK(r.special == s.special);
        CHECK(r.pair.has_value() == special);
        if (special) {
            CHECK(r.pair->q == s.pair->q);
            CHECK(r.pair->change == s.pair->change);
        }
        CHECK(incidence_violation(r).empty());
    }
}

TEST_CASE("scalar serialization") {
    CHECK(to_json(Rational(-3, 4)) == "-3/4");
    CHECK(rational_from_json(Json("-6/8")) == Rational(-3, 4));
    const BigComplex z(BigFloat(1.0, 256) / BigFloat(3.0, 256), BigFloat(-2.5, 256));
    const BigComplex w = complex_from_json(to_json(z));
    CHECK(w == z);
    CHECK(w.precision() == 256);
    CHECK(decimal(BigFloat(1.0, 256) / BigFloat(3.0, 256)).find("33333333333333333333") != std::string::npos);
}

TEST_CASE("run_on_sample on a non-special sample drops only the specialization suite") {
    const IncidenceSample s = sample_incidence(1, 3, false);
    const TrialReport r = run_on_sample(small_config({Suite::Ladder, Suite::Clemens, Suite::Specialization}), s);
    CHECK(r.ladder);
    CHECK(r.clemens);
    CHECK_FALSE(r.specialization);
    CHECK(r.pass);
    CHECK_THROWS_AS(run_on_sample(small_config({Suite::Specialization}), s), Error);
}
