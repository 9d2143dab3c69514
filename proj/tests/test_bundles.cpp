#include <doctest.h>

#include "clemens/bundles.hpp"
#include "clemens/linalg.hpp"
#include "test_helpers.hpp"

using namespace clemens;

namespace {

H0Profile profile_of(const SplittingType& t, int kmin = kProfileMin, int kmax = kProfileMax) {
    H0Profile p;
    for (int k = kmin; k <= kmax; ++k) p[k] = t.h0(k);
    return p;
}

}  // namespace

TEST_CASE("SplittingType arithmetic") {
    const SplittingType t{{2, -1, -1}};
    CHECK(t.degree() == 0);
    CHECK(t.rank() == 3);
    CHECK(t.h0(0) == 3);
    CHECK(t.h0(-1) == 2);
    CHECK(t.h0(-3) == 0);
    CHECK(t.h0(1) == 6);
}

TEST_CASE("sections_dim examples on incidence samples") {
    for (int d = 1; d <= 2; ++d) {
        const IncidenceSample s = sample_incidence(d, 40 + d, false);
        const QuinticForm f = s.combined();
        CHECK(sections_dim(s.c, f, 0) == 3);
        CHECK(sections_dim(s.c, f, -1) == 2);
        for (int k = -6; k <= -4; ++k) CHECK(sections_dim(s.c, f, k) == 0);
    }
}

TEST_CASE("sections_dim requires f to vanish on c") {
    const IncidenceSample s = sample_incidence(1, 1, false);
    CHECK_THROWS_AS(sections_dim(s.c, s.f1, 0), Error);
}

TEST_CASE("h0 profile is monotone with increments bounded by the rank") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const int d = 1 + static_cast<int>(seed % 3);
        const IncidenceSample s = sample_incidence(d, 300 + seed, seed % 2 == 0);
        const H0Profile p = h0_profile(s.c, s.combined());
        CHECK(p.begin()->first == kProfileMin);
        CHECK(p.rbegin()->first == kProfileMax);
        for (int k = kProfileMin; k < kProfileMax; ++k) {
            CHECK(p.at(k + 1) >= p.at(k));
            CHECK(p.at(k + 1) - p.at(k) <= 3);
        }
        const SplittingType tx = splitting_from_profile(p, 3, 0);
        CHECK(profile_of(tx) == p);
    }
}

TEST_CASE("Euler directions satisfy the tangency constraint") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const IncidenceSample s = sample_incidence(1 + static_cast<int>(seed % 3), 400 + seed, false);
        CHECK(euler_contained(s.c, s.combined()));
    }
}

TEST_CASE("h0 at k = 0 agrees with the kernel of the single-quintic Jacobian") {
    for (int d = 1; d <= 3; ++d) {
        const IncidenceSample s = sample_incidence(d, 500 + d, true);
        const QuinticForm f = s.combined();
        const QMatrix j = jacobian_single(s.c, f);
        CHECK(sections_dim(s.c, f, 0) + 1 == j.cols() - exact_rank(j));
    }
}

TEST_CASE("splitting of the pulled-back tangent bundle and the normal bundle") {
    for (int d = 1; d <= 3; ++d) {
        const IncidenceSample s = sample_incidence(d, 600 + d, false);
        const QuinticForm f = s.combined();
        const SplittingType tx = splitting_type_TX(s.c, f);
        CHECK(tx == SplittingType{{2, -1, -1}});
        CHECK(tx.degree() == 0);
        CHECK(tangent_sections_independent(s.c, f));
        const SplittingType n = normal_splitting(s.c, f, tx);
        CHECK(n == SplittingType{{-1, -1}});
        CHECK(n.degree() == -2);
        CHECK(h1_normal_zero(n));
        CHECK(normal_splitting(s.c, f) == n);
    }
}

TEST_CASE("splitting_from_profile recovers synthetic types") {
    const std::vector<SplittingType> types = {
        {{2, -1, -1}}, {{1, 0, -1}}, {{0, 0, 0}}, {{3, -1, -2}}, {{1, 1, -2}}, {{2, 0, -2}},
    };
    for (const auto& t : types) CHECK(splitting_from_profile(profile_of(t), 3, 0) == t);
    CHECK(splitting_from_profile(profile_of(SplittingType{{-1, -1}}), 2, -2) == SplittingType{{-1, -1}});
    CHECK(splitting_from_profile(profile_of(SplittingType{{4, 1}}), 2, 5) == SplittingType{{4, 1}});
}

TEST_CASE("splitting_from_profile rejects inconsistent or ambiguous profiles") {
    CHECK_THROWS_AS(splitting_from_profile({}, 3, 0), Error);
    // Rank one, degree zero has h0(0) = 1.
    CHECK_THROWS_AS(splitting_from_profile({{0, 5}}, 1, 0), Error);
    // A single probe at k = 0 cannot tell (0, 0) from (1, -1).
    CHECK_THROWS_AS(splitting_from_profile({{0, 2}}, 2, 0), Error);
}

TEST_CASE("normal_splitting errors") {
    // Cusp (1 : t^2 : t^3 : 0 : 0) is not immersed at t = 0.
    const RationalCurve cusp = test::curve(3, {{1}, {0, 0, 1}, {0, 0, 0, 1}, {}, {}});
    const auto fs = quintics_through(cusp);
    REQUIRE_FALSE(fs.empty());
    CHECK_THROWS_AS(normal_splitting(cusp, fs.front(), SplittingType{{2, -1, -1}}), Error);

    const IncidenceSample s = sample_incidence(1, 7, false);
    CHECK_THROWS_AS(normal_splitting(s.c, s.combined(), SplittingType{{1, 0, -1}}), Error);
}

TEST_CASE("h1 vanishing criterion") {
    CHECK(h1_normal_zero(SplittingType{{-1, -1}}));
    CHECK(h1_normal_zero(SplittingType{{0, -1}}));
    CHECK_FALSE(h1_normal_zero(SplittingType{{0, -2}}));
    CHECK_FALSE(h1_normal_zero(SplittingType{{1, -3}}));
}
