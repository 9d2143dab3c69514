#include "clemens/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <map>
#include <sstream>
#include <thread>

namespace clemens {

namespace {

constexpr std::array<Suite, 4> kAllSuites{Suite::Ladder, Suite::Clemens, Suite::Specialization, Suite::Crosscheck};

// Stream tags for child seeds.
enum : std::uint64_t { kTagGeneric = 1, kTagSpecial = 2, kTagPoints = 3, kTagChain = 4, kTagCross = 5 };

constexpr int kDerivativeDirections = 5;
constexpr double kDerivativeStep = 1e-20;
constexpr double kDerivativeTol = 1e-10;
constexpr int kBirationalityTrials = 10;

Json splitting_json(const SplittingType& t) { return t.summands; }

Json profile_json(const H0Profile& p) {
    Json out = Json::object();
    for (const auto& [k, h] : p) out[std::to_string(k)] = h;
    return out;
}

Json complex_list(const std::vector<BigComplex>& v) {
    Json out = Json::array();
    for (const auto& z : v) out.push_back(to_json(z));
    return out;
}

}  // namespace

const char* suite_name(Suite s) {
    switch (s) {
        case Suite::Ladder: return "ladder";
        case Suite::Clemens: return "clemens";
        case Suite::Specialization: return "specialization";
        case Suite::Crosscheck: return "crosscheck";
    }
    return "?";
}

Suite parse_suite(const std::string& s) {
    for (Suite x : kAllSuites) {
        if (s == suite_name(x)) return x;
    }
    throw Error("unknown suite '" + s + "' (expected ladder, clemens, specialization or crosscheck)");
}

std::vector<Suite> parse_suites(const std::string& csv) {
    if (csv == "all") return {kAllSuites.begin(), kAllSuites.end()};
    std::vector<Suite> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const Suite s = parse_suite(item);
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
    }
    if (out.empty()) throw Error("no suites selected");
    std::sort(out.begin(), out.end());
    return out;
}

bool ExperimentConfig::has(Suite s) const { return std::find(suites.begin(), suites.end(), s) != suites.end(); }

void ExperimentConfig::validate() const {
    if (degrees.empty()) throw Error("config: no degrees");
    for (int d : degrees) {
        if (d < 1 || d > 4) throw Error("config: degrees must lie in {1, 2, 3, 4}");
    }
    if (trials_per_degree < 1) throw Error("config: trials must be >= 1");
    if (precision_bits < 128) throw Error("config: precision must be >= 128 bits");
    if (!(rank_rel_tol > 0 && rank_rel_tol < 1)) throw Error("config: rank tolerance must lie in (0, 1)");
    if (!(residual_tol > 0 && residual_tol < 1)) throw Error("config: residual tolerance must lie in (0, 1)");
    if (height < 1) throw Error("config: height must be >= 1");
    if (suites.empty()) throw Error("config: no suites selected");
    if (jobs < 1) throw Error("config: jobs must be >= 1");
    if (has(Suite::Crosscheck) && precision_bits < required_precision(rank_rel_tol)) {
        throw Error("config: precision " + std::to_string(precision_bits) + " bits cannot resolve rank tolerance; need " +
                    std::to_string(required_precision(rank_rel_tol)));
    }
}

SpecOptions ExperimentConfig::spec_options() const {
    SpecOptions o;
    o.precision = precision_bits;
    o.residual_tol = residual_tol;
    o.rank_tol = rank_rel_tol;
    return o;
}

Json to_json(const ExperimentConfig& c) {
    Json suites = Json::array();
    for (Suite s : c.suites) suites.push_back(suite_name(s));
    return Json{{"degrees", c.degrees},
                {"trials_per_degree", c.trials_per_degree},
                {"seed", c.seed},
                {"precision_bits", c.precision_bits},
                {"rank_rel_tol", c.rank_rel_tol},
                {"residual_tol", c.residual_tol},
                {"height", c.height},
                {"suites", std::move(suites)},
                {"center", center_name(c.center)}};
}

// ---------------------------------------------------------------------------

LadderResult run_ladder(const IncidenceSample& s, std::uint64_t seed) {
    const int d = s.d;
    Rng rng(seed);
    const auto pts = random_rational_points(5 * d + 1, rng);
    LadderResult r;
    r.rank_single = exact_rank(jacobian_single(s.c, s.combined()));
    r.rank_pencil = exact_rank(pencil_jacobian(s, pts));
    r.rank_plane = exact_rank(jacobian_J_L(s, pts));
    const int n = s.c.dim();
    r.tangent_dims = {n - r.rank_single, n - r.rank_pencil, n - r.rank_plane};
    r.pass = r.rank_single == 5 * d + 1 && r.rank_pencil == 5 * d && r.rank_plane == 5 * d - 1;
    return r;
}

ClemensResult run_clemens(const IncidenceSample& s, std::uint64_t seed) {
    const QuinticForm f = s.combined();
    ClemensResult r;
    r.h0_profile = h0_profile(s.c, f);
    r.profile_monotone = true;
    for (auto it = std::next(r.h0_profile.begin()); it != r.h0_profile.end(); ++it) {
        const int step = it->second - std::prev(it)->second;
        r.profile_monotone = r.profile_monotone && step >= 0 && step <= 3;
    }
    r.tx_splitting = splitting_from_profile(r.h0_profile, 3, 0);
    r.immersed = immersion_check(s.c);
    r.birational = birationality_probe(s.c, kBirationalityTrials, seed);
    try {
        r.normal_splitting = normal_splitting(s.c, f, r.tx_splitting);
        r.h1_normal_zero = h1_normal_zero(r.normal_splitting);
    } catch (const InternalError&) {
        throw;
    } catch (const Error&) {
        r.h1_normal_zero = false;
    }
    r.pass = r.h0_profile.at(0) == 3 && r.tx_splitting == SplittingType{{2, -1, -1}} &&
             r.normal_splitting == SplittingType{{-1, -1}} && r.h1_normal_zero && r.immersed && r.birational &&
             r.profile_monotone && euler_contained(s.c, f);
    return r;
}

CrosscheckResult run_crosscheck(const IncidenceSample& s, const IncidenceSample* special, const ExperimentConfig& cfg,
                                std::uint64_t seed) {
    const int d = s.d;
    const long prec = cfg.precision_bits;
    Rng rng(seed);
    CrosscheckResult r;
    const QMatrix js = jacobian_single(s.c, s.combined());
    r.kernel_dim_single = s.c.dim() - exact_rank(js);
    r.h0 = sections_dim(s.c, s.combined(), 0);
    r.pass_kernel_h0 = r.kernel_dim_single - 1 == r.h0;

    // Generator gradients against central differences.
    const auto cpts = random_complex_points(5 * d + 1, rng, prec);
    const DetGenerators<BigComplex> gens(s, cpts);
    std::vector<BigComplex> base;
    for (const auto& q : s.c.coefficients()) base.emplace_back(q, prec);
    const BigComplex h(BigFloat(kDerivativeStep, prec), BigFloat(prec));
    const BigComplex two_h = h * BigComplex(2.0, 0.0, prec);
    r.derivative_max_rel = BigFloat(prec);
    for (int i = 3; i <= 5 * d + 1; ++i) {
        const auto jet = gens.jet(i);
        for (int k = 0; k < kDerivativeDirections; ++k) {
            std::vector<BigComplex> v, plus = base, minus = base;
            BigComplex analytic(prec);
            BigFloat scale(prec);
            for (size_t m = 0; m < base.size(); ++m) {
                v.emplace_back(BigFloat(rng.rational(8), prec), BigFloat(rng.rational(8), prec));
                analytic += jet.gradient[m] * v[m];
                scale += abs(jet.gradient[m]) * abs(v[m]);
                plus[m] += h * v[m];
                minus[m] -= h * v[m];
            }
            const BigComplex fd = (gens.value_at(i, plus) - gens.value_at(i, minus)) / two_h;
            BigFloat den = abs(analytic);
            if (den.is_zero()) den = scale;
            const BigFloat rel = den.is_zero() ? abs(fd - analytic) : abs(fd - analytic) / den;
            r.derivative_max_rel = max(r.derivative_max_rel, rel);
            ++r.derivative_checks;
        }
    }
    r.pass_derivative = r.derivative_max_rel < BigFloat(kDerivativeTol, prec);

    const auto qpts = random_rational_points(5 * d + 1, rng);
    r.phi_residual_zero = true;
    for (int i = 3; i <= 5 * d + 1; ++i) r.phi_residual_zero = r.phi_residual_zero && phi_expand(s, qpts, i).residual_zero;

    r.rank_JL_exact = exact_rank(jacobian_J_L(s, qpts));
    r.rank_JL_numeric = numeric_rank(jacobian_J_L(s, cpts), cfg.rank_rel_tol).rank;
    r.pass_rank_agree = r.rank_JL_exact == r.rank_JL_numeric;

    if (special) r.chart = chart_consistency(*special, cfg.spec_options(), rng.next());
    r.pass = r.pass_kernel_h0 && r.pass_derivative && r.phi_residual_zero && r.pass_rank_agree &&
             (!r.chart || r.chart->pass);
    return r;
}

// ---------------------------------------------------------------------------

namespace {

void finish(TrialReport& r, const ExperimentConfig& cfg) {
    if (r.status != kStatusOk) {
        r.pass = false;
        return;
    }
    bool pass = true;
    if (cfg.has(Suite::Ladder)) pass = pass && r.ladder && r.ladder->pass;
    if (cfg.has(Suite::Clemens)) pass = pass && r.clemens && r.clemens->pass;
    if (cfg.has(Suite::Crosscheck)) pass = pass && r.crosscheck && r.crosscheck->pass;
    if (cfg.has(Suite::Specialization)) pass = pass && r.specialization && r.specialization->pass;
    r.pass = pass;
}

void run_suites_on(TrialReport& r, const ExperimentConfig& cfg, const IncidenceSample& generic,
                   const IncidenceSample* special, std::uint64_t seed) {
    if (cfg.has(Suite::Ladder)) r.ladder = run_ladder(generic, mix_seed(seed, kTagPoints));
    if (cfg.has(Suite::Clemens)) r.clemens = run_clemens(generic, mix_seed(seed, kTagPoints, 1));
    if (cfg.has(Suite::Crosscheck)) r.crosscheck = run_crosscheck(generic, special, cfg, mix_seed(seed, kTagCross));
    if (cfg.has(Suite::Specialization)) {
        if (!special || !special->pair) throw Error("specialization suite needs a special sample");
        SpecializationReport rep = verify_specialization_chain(*special, cfg.spec_options(), mix_seed(seed, kTagChain));
        // No arrangement could be built for reasons other than the claims
        // under test: a degenerate draw.
        if (rep.points.empty() && !rep.delta_collapse) {
            throw DegeneracyError(rep.failed_predicate.empty() ? "arrangement" : rep.failed_predicate,
                                  "no usable delta0 arrangement");
        }
        r.specialization = std::move(rep);
    }
}

}  // namespace

TrialReport run_trial(const ExperimentConfig& cfg, int degree, int trial) {
    const auto t0 = std::chrono::steady_clock::now();
    TrialReport r;
    r.degree = degree;
    r.trial = trial;
    r.seed = mix_seed(cfg.seed, static_cast<std::uint64_t>(degree), static_cast<std::uint64_t>(trial));
    const bool need_special = cfg.has(Suite::Specialization) || cfg.has(Suite::Crosscheck);
    for (int attempt = 0;; ++attempt) {
        if (r.resample_count >= kTrialResampleCap) {
            r.status = kStatusDegenerate;
            break;
        }
        r.ladder.reset();
        r.clemens.reset();
        r.crosscheck.reset();
        r.specialization.reset();
        const std::uint64_t a = static_cast<std::uint64_t>(attempt);
        try {
            const IncidenceSample generic = sample_incidence(degree, mix_seed(r.seed, kTagGeneric, a), false, cfg.height);
            r.resample_count += static_cast<int>(generic.retry_log.size());
            r.retry_log.insert(r.retry_log.end(), generic.retry_log.begin(), generic.retry_log.end());
            std::optional<IncidenceSample> special;
            if (need_special) {
                special = sample_special(degree, mix_seed(r.seed, kTagSpecial, a), cfg.center, cfg.height);
                r.resample_count += static_cast<int>(special->retry_log.size());
                r.retry_log.insert(r.retry_log.end(), special->retry_log.begin(), special->retry_log.end());
            }
            run_suites_on(r, cfg, generic, special ? &*special : nullptr, mix_seed(r.seed, a));
            break;
        } catch (const DegeneracyError& e) {
            r.retry_log.push_back(e.predicate());
            ++r.resample_count;
        } catch (const InternalError&) {
            throw;
        } catch (const Error& e) {
            // Sampler resample caps: the draw itself could not be made generic.
            r.retry_log.push_back(std::string("resample_cap: ") + e.what());
            r.status = kStatusDegenerate;
            break;
        }
    }
    r.resample_count = std::min(r.resample_count, kTrialResampleCap);
    finish(r, cfg);
    if (cfg.timing) r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

TrialReport run_on_sample(const ExperimentConfig& cfg, const IncidenceSample& s) {
    const auto t0 = std::chrono::steady_clock::now();
    TrialReport r;
    r.seed = s.seed;
    r.degree = s.d;
    r.retry_log = s.retry_log;
    r.resample_count = static_cast<int>(s.retry_log.size());
    const IncidenceSample* special = s.pair ? &s : nullptr;
    ExperimentConfig c = cfg;
    if (!special) c.suites.erase(std::remove(c.suites.begin(), c.suites.end(), Suite::Specialization), c.suites.end());
    if (c.suites.empty()) throw Error("run_on_sample: the specialization suite needs a special sample");
    try {
        run_suites_on(r, c, s, special, s.seed);
    } catch (const DegeneracyError& e) {
        r.retry_log.push_back(e.predicate());
        r.status = kStatusDegenerate;
    }
    finish(r, c);
    if (cfg.timing) r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::vector<TrialReport> run_suite(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<std::pair<int, int>> tasks;
    for (int d : cfg.degrees) {
        for (int t = 0; t < cfg.trials_per_degree; ++t) tasks.emplace_back(d, t);
    }
    std::vector<TrialReport> out(tasks.size());
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (size_t k = next++; k < tasks.size(); k = next++) {
            try {
                out[k] = run_trial(cfg, tasks[k].first, tasks[k].second);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    const int jobs = std::min<int>(cfg.jobs, static_cast<int>(tasks.size()));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
    std::sort(out.begin(), out.end(), [](const TrialReport& a, const TrialReport& b) {
        return std::pair(a.degree, a.trial) < std::pair(b.degree, b.trial);
    });
    return out;
}

// ---------------------------------------------------------------------------

namespace {

Json spec_json(const SpecializationReport& s) {
    Json ratios = Json::array();
    const long bits[] = {128, 256, 512};
    for (size_t k = 0; k < s.ratio_by_precision.size(); ++k) {
        ratios.push_back(Json{{"bits", k < 3 ? bits[k] : 0},
                              {"offdiag_ratio", decimal(s.ratio_by_precision[k][0])},
                              {"a12_ratio", decimal(s.ratio_by_precision[k][1])}});
    }
    Json j{{"center", s.center},
           {"t1", to_json(s.t1)},
           {"t2", to_json(s.t2)},
           {"points", complex_list(s.points)},
           {"delta", Json::array({to_json(s.delta0), to_json(s.delta1), to_json(s.delta2)})},
           {"delta0_residual", decimal(s.delta0_residual)},
           {"delta_collapse", s.delta_collapse},
           {"delta12_relative", decimal(s.delta12_relative)},
           {"f3_factor_residual", decimal(s.f3_factor_residual)},
           {"diag_min", decimal(s.diag_min)},
           {"offdiag_max", decimal(s.offdiag_max)},
           {"a12_max", decimal(s.a12_max)},
           {"offdiag_ratio", decimal(s.offdiag_ratio)},
           {"a12_ratio", decimal(s.a12_ratio)},
           {"ratio_by_precision", std::move(ratios)},
           {"det_A", to_json(s.det_A)},
           {"det_A_linear", to_json(s.det_A_linear)},
           {"det_chart_jacobian", to_json(s.det_chart_jacobian)},
           {"det_A11", to_json(s.det_A11)},
           {"det_A22", to_json(s.det_A22)},
           {"det_A22_r4", to_json(s.det_A22_r4)},
           {"det_A_normalized", decimal(s.det_A_normalized)},
           {"det_A22_normalized", decimal(s.det_A22_normalized)},
           {"det_A22_r4_normalized", decimal(s.det_A22_r4_normalized)},
           {"block_residual", decimal(s.block_residual)},
           {"chain_residual", decimal(s.chain_residual)},
           {"rank_A22", s.rank_A22}};
    if (s.pencil) {
        const auto& p = *s.pencil;
        j["pencil"] = Json{{"t1", to_json(p.t1)},
                           {"t2", to_json(p.t2)},
                           {"det_B", to_json(p.det_B)},
                           {"det_B_normalized", decimal(p.det_B_normalized)},
                           {"det_Jac4", to_json(p.det_Jac4)},
                           {"det_Jac4_normalized", decimal(p.det_Jac4_normalized)},
                           {"J_f0", to_json(p.J_f0)},
                           {"J_f0_normalized", decimal(p.J_f0_normalized)},
                           {"J_f0_3x3", to_json(p.J_f0_3x3)}};
    } else {
        j["pencil"] = nullptr;
    }
    j["passes"] = Json{{"delta0", s.pass_delta0},
                       {"deltas_generic", s.pass_deltas_generic},
                       {"root_jacobian", s.pass_root_jacobian},
                       {"monotone", s.pass_monotone},
                       {"det_A", s.pass_det_A},
                       {"det_A22", s.pass_det_A22},
                       {"rank_A22", s.pass_rank_A22},
                       {"block_identity", s.pass_block_identity},
                       {"chain_rule", s.pass_chain_rule},
                       {"det_B", s.pass_det_B},
                       {"det_Jac4", s.pass_det_Jac4},
                       {"J_f0", s.pass_J_f0}};
    j["log"] = s.log;
    j["failed_predicate"] = s.failed_predicate;
    j["pass"] = s.pass;
    return j;
}

Json chart_json(const ChartConsistency& c) {
    return Json{{"chain_residual", decimal(c.chain_residual)},
                {"fd_identity_residual", decimal(c.fd_identity_residual)},
                {"offdiag_ratio", decimal(c.offdiag_ratio)},
                {"a12_ratio", decimal(c.a12_ratio)},
                {"identity_root_mismatch", decimal(c.identity_root_mismatch)},
                {"identity_multiset_match", c.identity_multiset_match},
                {"pass_chain_rule", c.pass_chain_rule},
                {"pass_fd", c.pass_fd},
                {"pass_root_jacobian", c.pass_root_jacobian},
                {"pass_identity", c.pass_identity},
                {"pass", c.pass}};
}

}  // namespace

Json to_json(const TrialReport& r) {
    Json j{{"seed", r.seed},       {"degree", r.degree},   {"trial", r.trial},
           {"status", r.status},   {"resample_count", r.resample_count}, {"retry_log", r.retry_log}};
    if (r.ladder) {
        j["ladder"] = Json{{"ranks", {r.ladder->rank_single, r.ladder->rank_pencil, r.ladder->rank_plane}},
                           {"tangent_dims", r.ladder->tangent_dims},
                           {"pass", r.ladder->pass}};
    }
    if (r.clemens) {
        const auto& c = *r.clemens;
        j["clemens"] = Json{{"h0_profile", profile_json(c.h0_profile)},
                            {"tx_splitting", splitting_json(c.tx_splitting)},
                            {"normal_splitting", splitting_json(c.normal_splitting)},
                            {"h1_normal_zero", c.h1_normal_zero},
                            {"immersed", c.immersed},
                            {"birational", c.birational},
                            {"profile_monotone", c.profile_monotone},
                            {"pass", c.pass}};
    }
    if (r.crosscheck) {
        const auto& c = *r.crosscheck;
        j["crosscheck"] = Json{{"kernel_dim_single", c.kernel_dim_single},
                               {"h0", c.h0},
                               {"pass_kernel_h0", c.pass_kernel_h0},
                               {"derivative_max_rel", decimal(c.derivative_max_rel)},
                               {"derivative_checks", c.derivative_checks},
                               {"pass_derivative", c.pass_derivative},
                               {"phi_residual_zero", c.phi_residual_zero},
                               {"rank_JL_exact", c.rank_JL_exact},
                               {"rank_JL_numeric", c.rank_JL_numeric},
                               {"pass_rank_agree", c.pass_rank_agree},
                               {"chart", c.chart ? chart_json(*c.chart) : Json(nullptr)},
                               {"pass", c.pass}};
    }
    if (r.specialization) j["specialization"] = spec_json(*r.specialization);
    j["pass"] = r.pass;
    if (r.wall_seconds) j["wall_seconds"] = *r.wall_seconds;
    return j;
}

Json report_json(const ExperimentConfig& cfg, const std::vector<TrialReport>& reports) {
    Json trials = Json::array();
    for (const auto& r : reports) trials.push_back(to_json(r));
    return Json{{"version", kReportVersion}, {"config", to_json(cfg)}, {"trials", std::move(trials)}};
}

std::vector<std::string> csv_header() {
    return {"seed",          "degree",          "trial",           "status",           "resample_count",
            "pass",          "ladder_pass",     "rank_single",     "rank_pencil",      "rank_plane",
            "clemens_pass",  "h0",              "tx_splitting",    "normal_splitting", "h1_normal_zero",
            "crosscheck_pass", "derivative_max_rel", "phi_residual_zero", "chart_pass", "specialization_pass",
            "delta_collapse", "delta0_residual", "offdiag_ratio",   "a12_ratio",        "det_A_normalized",
            "det_A22_normalized", "block_residual", "chain_residual", "failed_predicate"};
}

namespace {

std::string cell(const Json& j) {
    if (j.is_null()) return "";
    if (j.is_string()) return j.get<std::string>();
    if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
    if (j.is_array()) {
        std::string s;
        for (size_t k = 0; k < j.size(); ++k) s += (k ? " " : "") + cell(j[k]);
        return s;
    }
    return j.dump();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

const Json& at_path(const Json& j, std::initializer_list<const char*> path) {
    static const Json null_json;
    const Json* cur = &j;
    for (const char* key : path) {
        if (!cur->is_object() || !cur->contains(key)) return null_json;
        cur = &(*cur)[key];
    }
    return *cur;
}

}  // namespace

std::string csv_from_report(const Json& report) {
    std::ostringstream out;
    const auto header = csv_header();
    for (size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << "\n";
    for (const auto& t : report.at("trials")) {
        const Json& ranks = at_path(t, {"ladder", "ranks"});
        auto rank = [&](size_t k) { return ranks.is_array() ? cell(ranks[k]) : std::string(); };
        const Json& profile = at_path(t, {"clemens", "h0_profile"});
        const std::vector<std::string> row{
            cell(t.at("seed")),
            cell(t.at("degree")),
            cell(t.at("trial")),
            cell(t.at("status")),
            cell(t.at("resample_count")),
            cell(t.at("pass")),
            cell(at_path(t, {"ladder", "pass"})),
            rank(0),
            rank(1),
            rank(2),
            cell(at_path(t, {"clemens", "pass"})),
            profile.is_object() && profile.contains("0") ? cell(profile["0"]) : "",
            cell(at_path(t, {"clemens", "tx_splitting"})),
            cell(at_path(t, {"clemens", "normal_splitting"})),
            cell(at_path(t, {"clemens", "h1_normal_zero"})),
            cell(at_path(t, {"crosscheck", "pass"})),
            cell(at_path(t, {"crosscheck", "derivative_max_rel"})),
            cell(at_path(t, {"crosscheck", "phi_residual_zero"})),
            cell(at_path(t, {"crosscheck", "chart", "pass"})),
            cell(at_path(t, {"specialization", "pass"})),
            cell(at_path(t, {"specialization", "delta_collapse"})),
            cell(at_path(t, {"specialization", "delta0_residual"})),
            cell(at_path(t, {"specialization", "offdiag_ratio"})),
            cell(at_path(t, {"specialization", "a12_ratio"})),
            cell(at_path(t, {"specialization", "det_A_normalized"})),
            cell(at_path(t, {"specialization", "det_A22_normalized"})),
            cell(at_path(t, {"specialization", "block_residual"})),
            cell(at_path(t, {"specialization", "chain_residual"})),
            cell(at_path(t, {"specialization", "failed_predicate"})),
        };
        for (size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << csv_escape(row[k]);
        out << "\n";
    }
    return out.str();
}

void emit_report(const ExperimentConfig& cfg, const std::vector<TrialReport>& reports, const std::string& path,
                 const std::string& format) {
    const Json j = report_json(cfg, reports);
    if (format == "json") {
        write_text_file(path, j.dump(2) + "\n");
    } else if (format == "csv") {
        write_text_file(path, csv_from_report(j));
    } else {
        throw Error("unknown report format '" + format + "' (expected json or csv)");
    }
}

int exit_code(const ExperimentConfig& cfg, const std::vector<TrialReport>& reports) {
    std::map<int, std::pair<int, int>> per_degree;  // total, degenerate
    bool failed = false;
    for (const auto& r : reports) {
        auto& [total, degenerate] = per_degree[r.degree];
        ++total;
        if (r.status == kStatusDegenerate) {
            ++degenerate;
        } else if (!r.pass) {
            failed = true;
        }
    }
    for (int d : cfg.degrees) {
        const auto it = per_degree.find(d);
        if (it != per_degree.end() && it->second.first > 0 && it->second.first == it->second.second) return 3;
    }
    return failed ? 2 : 0;
}

}  // namespace clemens
