#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clemens/bundles.hpp"
#include "clemens/serialize.hpp"
#include "clemens/specialization.hpp"

namespace clemens {

enum class Suite { Ladder, Clemens, Specialization, Crosscheck };

const char* suite_name(Suite s);
Suite parse_suite(const std::string& s);
/// Comma-separated suite names; "all" selects every suite.
std::vector<Suite> parse_suites(const std::string& csv);

inline constexpr std::uint64_t kDefaultSeed = 20240531;
inline constexpr int kTrialResampleCap = 100;
inline constexpr int kReportVersion = 1;

struct ExperimentConfig {
    std::vector<int> degrees{1, 2, 3};
    int trials_per_degree = 20;
    std::uint64_t seed = kDefaultSeed;
    long precision_bits = kDefaultPrecision;
    double rank_rel_tol = 1e-30;
    double residual_tol = 1e-60;
    long height = kDefaultHeight;
    std::vector<Suite> suites{Suite::Ladder, Suite::Clemens, Suite::Specialization, Suite::Crosscheck};
    Center center = Center::Incidence;
    int jobs = 1;
    bool timing = false;

    bool has(Suite s) const;
    /// Throws Error naming the first violated constraint.
    void validate() const;
    SpecOptions spec_options() const;
};

Json to_json(const ExperimentConfig& c);

/// Exact ranks of the single-quintic, pencil and plane incidence Jacobians.
struct LadderResult {
    int rank_single = 0;
    int rank_pencil = 0;
    int rank_plane = 0;
    /// 5d + 5 minus each rank; expected (4, 5, 6).
    std::array<int, 3> tangent_dims{};
    bool pass = false;
};

struct ClemensResult {
    H0Profile h0_profile;
    SplittingType tx_splitting;
    SplittingType normal_splitting;
    bool h1_normal_zero = false;
    bool immersed = false;
    bool birational = false;
    bool profile_monotone = false;
    bool pass = false;
};

struct CrosscheckResult {
    /// dim ker(jacobian_single) - 1 against h0(c* T_X).
    int kernel_dim_single = 0;
    int h0 = 0;
    bool pass_kernel_h0 = false;
    /// Generator gradients against central differences.
    BigFloat derivative_max_rel{kDefaultPrecision};
    int derivative_checks = 0;
    bool pass_derivative = false;
    bool phi_residual_zero = false;
    /// Exact rank of J_L at rational points against its numeric rank at
    /// complex points.
    int rank_JL_exact = 0;
    int rank_JL_numeric = 0;
    bool pass_rank_agree = false;
    std::optional<ChartConsistency> chart;
    bool pass = false;
};

inline constexpr const char* kStatusOk = "ok";
inline constexpr const char* kStatusDegenerate = "FAILED_DEGENERATE";

struct TrialReport {
    std::uint64_t seed = 0;
    int degree = 0;
    int trial = 0;
    std::string status = kStatusOk;
    int resample_count = 0;
    /// Degeneracy predicates that forced a resample, in order.
    std::vector<std::string> retry_log;
    std::optional<LadderResult> ladder;
    std::optional<ClemensResult> clemens;
    std::optional<SpecializationReport> specialization;
    std::optional<CrosscheckResult> crosscheck;
    bool pass = false;
    std::optional<double> wall_seconds;
};

LadderResult run_ladder(const IncidenceSample& s, std::uint64_t seed);
ClemensResult run_clemens(const IncidenceSample& s, std::uint64_t seed);
/// `special` supplies the chart-consistency check when present.
CrosscheckResult run_crosscheck(const IncidenceSample& s, const IncidenceSample* special, const ExperimentConfig& cfg,
                                std::uint64_t seed);

/// One trial at (degree, trial index) with its child seed; resamples on
/// DegeneracyError up to kTrialResampleCap.
TrialReport run_trial(const ExperimentConfig& cfg, int degree, int trial);
/// Suites on a fixed sample (no resampling); specialization needs a special sample.
TrialReport run_on_sample(const ExperimentConfig& cfg, const IncidenceSample& s);
/// All trials, sorted by (degree, trial) regardless of cfg.jobs.
std::vector<TrialReport> run_suite(const ExperimentConfig& cfg);

Json to_json(const TrialReport& r);
/// {"version", "config", "trials"}.
Json report_json(const ExperimentConfig& cfg, const std::vector<TrialReport>& reports);
std::vector<std::string> csv_header();
/// One row per trial of a report document.
std::string csv_from_report(const Json& report);
/// Writes JSON (format "json") or CSV (format "csv") to `path`.
void emit_report(const ExperimentConfig& cfg, const std::vector<TrialReport>& reports, const std::string& path,
                 const std::string& format);

/// 3 if every trial of some degree is degenerate, else 2 if any
/// non-degenerate trial fails a claim, else 0.
int exit_code(const ExperimentConfig& cfg, const std::vector<TrialReport>& reports);

}  // namespace clemens
