#include <doctest.h>

#include "clemens/roots.hpp"
#include "clemens/specialization.hpp"
#include "test_helpers.hpp"

using namespace clemens;
using test::tol;

namespace {

constexpr long kPrec = 256;

BigComplex point(double re, double im) { return BigComplex(re, im, kPrec); }

std::vector<BigComplex> transformed_theta(const IncidenceSample& s) {
    const auto cc = transform_curve(s.c, s.pair->change).to_complex(kPrec);
    std::vector<BigComplex> out;
    for (int i = 0; i < 3; ++i) {
        const auto rs = roots(cc[i], kPrec);
        out.insert(out.end(), rs.begin(), rs.end());
    }
    return out;
}

struct Arrangement {
    BigComplex t1, t2, d1, d2;
};

// delta0 = 0 arrangement at an off-incidence sample, deltas normalized.
Arrangement arrange(const IncidenceSample& s) {
    const BigComplex t1 = point(0.375, -0.625);
    const Delta0Solution sol = solve_delta0(s, t1, transformed_theta(s), kPrec);
    const auto ds = deltas(s, t1, sol.t2);
    const BigFloat n = max(abs(ds[1]), abs(ds[2]));
    const BigFloat inv = BigFloat(1.0, kPrec) / n;
    return {t1, sol.t2, ds[1] * inv, ds[2] * inv};
}

BigFloat rel(const BigComplex& a, const BigComplex& b) { return abs(a - b) / max(abs(a), abs(b)); }

}  // namespace

TEST_CASE("identity change: f2 is the single product monomial") {
    QForm q(2);
    q.add_term({2, 0, 0, 0, 0}, Rational(3));
    q.add_term({0, 1, 0, 1, 0}, Rational(-1));
    const SpecialPair p = make_special_pair(identity_change(), q);
    CHECK(p.f2.terms().size() == 1);
    CHECK(p.f2.coeff({1, 1, 1, 1, 1}, Rational()) == Rational(1));
    CHECK(p.f1.terms().size() == 2);
    const RationalCurve c = random_curve(2, kDefaultHeight, 3);
    QPoly prod = c.component(0);
    for (int i = 1; i < kVars; ++i) prod = prod * c.component(i);
    CHECK(pullback(p.f2, c) == prod.with_formal_degree(10));
}

TEST_CASE("special pair expansion check on 20 seeds") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SpecialPair p = special_quintics(seed);
        CHECK(verify_special_pair(p));
        CHECK(p.f1.degree() == 5);
        CHECK(p.f2.degree() == 5);
    }
    LinearChange singular = identity_change();
    singular[4] = singular[3];
    CHECK_THROWS_AS(make_special_pair(singular, QForm::variable(0, Rational(1)) * QForm::variable(1, Rational(1))),
                    Error);
}

TEST_CASE("invert_change is a two-sided inverse") {
    const LinearChange L = special_quintics(9).change;
    const LinearChange Li = invert_change(L);
    for (int i = 0; i < kVars; ++i) {
        for (int j = 0; j < kVars; ++j) {
            Rational a, b;
            for (int k = 0; k < kVars; ++k) {
                a += L[i][k] * Li[k][j];
                b += Li[i][k] * L[k][j];
            }
            CHECK(a == Rational(i == j ? 1 : 0));
            CHECK(b == Rational(i == j ? 1 : 0));
        }
    }
}

TEST_CASE("solve_delta0 at an off-incidence centre") {
    for (int d = 1; d <= 2; ++d) {
        const IncidenceSample s = sample_off_incidence(d, 10 + d);
        const BigComplex t1 = point(0.5, 0.25);
        // t = t1 is a root of the delta0 polynomial.
        const CPoly p = delta0_polynomial(s, t1);
        CHECK(max_relative_residual(p, {t1}) < tol(1e-60));
        const Delta0Solution sol = solve_delta0(s, t1, transformed_theta(s), kPrec);
        CHECK(sol.relative_residual < tol(1e-60));
        CHECK(abs(sol.t2 - t1) > tol(1e-10));
        CHECK(abs(deltas(s, t1, sol.t2)[0]) <= delta_scales(s, t1, sol.t2)[0] * tol(1e-60));
    }
}

TEST_CASE("solve_delta0 rejects f1 = f2") {
    IncidenceSample s = sample_off_incidence(1, 3);
    s.f1 = s.f2;
    try {
        solve_delta0(s, point(0.5, 0.25), {}, kPrec);
        FAIL("expected a degeneracy");
    } catch (const DegeneracyError& e) {
        CHECK(e.predicate() == "delta0_polynomial_zero");
    }
}

TEST_CASE("deltas with f0 duplicated into f1: delta2 vanishes") {
    IncidenceSample s = sample_off_incidence(1, 4);
    s.f1 = s.f0;
    const auto ds = deltas(s, point(0.5, 1.0), point(-1.25, 0.5));
    CHECK(abs(ds[2]).is_zero());
}

TEST_CASE("(delta1, delta2) generic after the arrangement off incidence, 20 seeds") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const IncidenceSample s = sample_off_incidence(1 + static_cast<int>(seed % 2), 100 + seed);
        const BigComplex t1 = point(0.375, -0.625);
        const auto sol = solve_delta0(s, t1, transformed_theta(s), kPrec);
        const auto ds = deltas(s, t1, sol.t2);
        const auto sc = delta_scales(s, t1, sol.t2);
        CHECK(abs(ds[1]) > sc[1] * tol(1e-20));
        CHECK(abs(ds[2]) > sc[2] * tol(1e-20));
    }
}

TEST_CASE("on the incidence variety the cofactor triple is proportional to (1, a, b)") {
    // (f0 + a f1 + b f2) o c = 0 forces delta1 = a delta0 and delta2 = b delta0
    // for every (t1, t2), so delta0 = 0 collapses all three.
    for (int d = 1; d <= 2; ++d) {
        const IncidenceSample s = sample_incidence(d, 200 + d, true);
        const BigComplex t1 = point(0.75, 0.5), t2 = point(-1.5, 0.25);
        const auto ds = deltas(s, t1, t2);
        const BigComplex a(s.a, kPrec), b(s.b, kPrec);
        CHECK(rel(ds[1], ds[0] * a) < tol(1e-60));
        CHECK(rel(ds[2], ds[0] * b) < tol(1e-60));
        const auto sol = solve_delta0(s, t1, transformed_theta(s), kPrec);
        const auto dz = deltas(s, t1, sol.t2);
        const auto sc = delta_scales(s, t1, sol.t2);
        CHECK(abs(dz[1]) < sc[1] * tol(1e-60));
        CHECK(abs(dz[2]) < sc[2] * tol(1e-60));
        // The rows at (t1, t2) are dependent: the generator precondition fails.
        Rng rng(d);
        SamplePoints<BigComplex> pts = random_complex_points(5 * d + 1, rng, kPrec);
        pts.t[0] = t1;
        pts.t[1] = sol.t2;
        const auto dg = DetGenerators<BigComplex>(s, pts).deltas();
        for (const auto& x : dg) CHECK(abs(x) < sc[0] * tol(1e-60));
    }
}

TEST_CASE("build_f3 factorization") {
    const SpecialPair p = special_quintics(4);
    BigFloat residual;
    const CForm f3 = build_f3(point(0.0, 0.0), point(1.0, 0.0), p, &residual);
    CHECK(residual < tol(1e-60));
    const CForm f2 = to_complex(p.f2, kPrec);
    for (const auto& e : monomials(5)) CHECK(abs(f3.coeff(e, BigComplex(kPrec)) - f2.coeff(e, BigComplex(kPrec))).is_zero());
}

TEST_CASE("pullback of f3 has exactly the chart roots and leading coefficient r0 r1 r2 R") {
    for (int d = 1; d <= 3; ++d) {
        const IncidenceSample s = sample_special(d, 30 + d, Center::Incidence);
        const BigComplex d1 = point(0.6, -0.2), d2 = point(-0.3, 0.9);
        const CForm f3 = build_f3(d1, d2, *s.pair);
        const QuasiPolarChart ch = quasi_polar_chart(s.c, *s.pair, d1, d2, kPrec);
        const CPoly p = f3.compose(s.c.to_complex(kPrec));
        CHECK(p.degree() == 5 * d);
        CHECK(rel(p[5 * d], ch.r[0] * ch.r[1] * ch.r[2] * ch.R) < tol(1e-60));
        std::vector<BigComplex> chart_roots = ch.theta;
        chart_roots.insert(chart_roots.end(), ch.gamma.begin(), ch.gamma.end());
        std::vector<BigComplex> direct = roots(p, kPrec);
        REQUIRE(direct.size() == chart_roots.size());
        for (const auto& r : chart_roots) {
            const int k = nearest_index(direct, r);
            CHECK(abs(direct[k] - r) < tol(1e-50));
            direct.erase(direct.begin() + k);
        }
        CHECK(ch.leading_residual() < tol(1e-60));
    }
}

TEST_CASE("quasi-polar identity case reproduces the polar chart") {
    const IncidenceSample s = sample_special(2, 8, Center::Incidence);
    const QuasiPolarChart id = quasi_polar_chart(s.c, *s.pair, point(0, 0), point(1, 0), kPrec);
    const PolarChart polar = polar_chart(s.c, s.pair->change, kPrec);
    std::vector<BigComplex> pool(polar.theta.begin() + 6, polar.theta.end());
    for (const auto& g : id.gamma) {
        const int k = nearest_index(pool, g);
        CHECK(abs(pool[k] - g) < tol(1e-60));
        pool.erase(pool.begin() + k);
    }
    CHECK(pool.empty());
    for (int k = 0; k < 6; ++k) CHECK(abs(id.theta[k] - polar.theta[k]).is_zero());
    CHECK(rel(id.R, polar.r[3] * polar.r[4]) < tol(1e-70));
    // Same Jacobian rows for theta and r0..r3.
    for (int row : {0, 3, 5, 10, 11, 12, 13}) {
        const int prow = row < 6 ? row : row;
        for (int col = 0; col < 15; ++col) CHECK(abs(id.jacobian(row, col) - polar.jacobian(prow, col)) < tol(1e-60));
    }
}

TEST_CASE("chart Jacobian agrees with finite differences") {
    for (int d = 1; d <= 2; ++d) {
        const IncidenceSample s = sample_special(d, 50 + d, Center::Incidence);
        const QuasiPolarChart ch = quasi_polar_chart(s.c, *s.pair, point(0.8, 0.1), point(-0.2, 0.7), kPrec);
        const CMatrix fd = finite_difference_chart_jacobian(ch, BigFloat(1e-20, kPrec));
        const CMatrix p = ch.jacobian * inverse(fd);
        for (int i = 0; i < p.rows(); ++i) {
            for (int j = 0; j < p.cols(); ++j) CHECK(abs(p(i, j) - point(i == j ? 1 : 0, 0)) < tol(1e-10));
        }
        // Coordinates at the centre reproduce the chart.
        std::vector<BigComplex> base;
        for (const auto& q : s.c.coefficients()) base.emplace_back(q, kPrec);
        const auto coords = chart_coordinates_near(ch, base);
        const auto expect = ch.coordinates();
        for (size_t k = 0; k < coords.size(); ++k) CHECK(abs(coords[k] - expect[k]) < tol(1e-60));
    }
}

TEST_CASE("root Jacobian: diagonal block, vanishing off-diagonal, product formula") {
    for (int d = 1; d <= 2; ++d) {
        const IncidenceSample s = sample_special(d, 60 + d, Center::Incidence);
        const BigComplex d1 = point(0.25, 0.5), d2 = point(1, -0.5);
        const QuasiPolarChart ch = quasi_polar_chart(s.c, *s.pair, d1, d2, kPrec);
        const RootJacobian rj = root_jacobian_check(ch, build_f3(d1, d2, *s.pair));
        CHECK(rj.diag_min > tol(1e-30));
        CHECK(rj.offdiag_max / rj.diag_min < tol(1e-20));
        CHECK(rj.a12_max / rj.diag_min < tol(1e-20));
        CHECK(rj.product_formula_residual < tol(1e-50));
    }
}

TEST_CASE("arranged points, blocks and stability of det A off incidence") {
    for (int d = 1; d <= 2; ++d) {
        const IncidenceSample s = sample_off_incidence(d, 70 + d);
        const Arrangement ar = arrange(s);
        const CForm f3 = build_f3(ar.d1, ar.d2, *s.pair);
        const QuasiPolarChart ch = quasi_polar_chart(s.c, *s.pair, ar.d1, ar.d2, kPrec);
        const ArrangedPoints ap = select_tpoints(ch, ar.t1, ar.t2, 1);
        REQUIRE(static_cast<int>(ap.pts.t.size()) == 5 * d + 1);
        CHECK(static_cast<int>(ap.block_order.size()) == 5 * d + 5);
        const CPoly p = f3.compose(s.c.to_complex(kPrec));
        BigFloat pmax(kPrec);
        for (const auto& x : p.coeffs()) pmax = max(pmax, abs(x));
        // t1, t2 and t3..t_{5d} are zeros of f3 o c.
        for (int k = 0; k < 5 * d; ++k) CHECK(abs(p.eval(ap.pts.t[k])) < pmax * tol(1e-50));
        CHECK(abs(p.eval(ap.pts.t[5 * d])) > pmax * tol(1e-10));
        // t1, t2 are not repeated among t3..t_{5d}.
        for (int k = 2; k < 5 * d; ++k) {
            CHECK(abs(ap.pts.t[k] - ar.t1) > tol(1e-30));
            CHECK(abs(ap.pts.t[k] - ar.t2) > tol(1e-30));
        }
        const CMatrix a_lin = matrix_A(s, ap.pts, f3);
        const CMatrix a = a_lin * inverse(reorder_rows(ch.jacobian, ap.block_order));
        const Blocks b = block_decompose(a, d);
        CHECK(b.a11.rows() == 5 * d - 2);
        CHECK(b.a22.rows() == 7);
        CHECK(b.a22.cols() == 7);
        CHECK(max_abs(b.a12) < max_abs(b.a11) * tol(1e-20));
        BigComplex det_a, det_22;
        CHECK(normalized_abs_det(a, &det_a) > tol(1e-20));
        CHECK(normalized_abs_det(b.a22, &det_22) > tol(1e-20));
        CHECK(rel(det_a, determinant(b.a11) * det_22) < tol(1e-10));
        CHECK(numeric_rank(b.a22, 1e-30).rank == 7);
        // Redrawing the free point keeps det A away from zero.
        for (std::uint64_t seed = 2; seed < 12; ++seed) {
            const ArrangedPoints q = select_tpoints(ch, ar.t1, ar.t2, seed);
            CHECK(normalized_abs_det(matrix_A(s, q.pts, f3)) > tol(1e-20));
        }
    }
}

TEST_CASE("block_decompose shapes at d = 1") {
    const CMatrix m(10, 10, BigComplex(kPrec));
    const Blocks b = block_decompose(m, 1);
    CHECK(b.a11.rows() == 3);
    CHECK(b.a11.cols() == 3);
    CHECK(b.a12.cols() == 7);
    CHECK(b.a21.rows() == 7);
    CHECK(b.a22.rows() == 7);
    CHECK_THROWS_AS(block_decompose(CMatrix(9, 9, BigComplex(kPrec)), 1), Error);
}

TEST_CASE("normalized determinant of a matrix with repeated rows is zero") {
    CMatrix m(3, 3, BigComplex(kPrec));
    for (int j = 0; j < 3; ++j) {
        m(0, j) = point(j + 1, 0);
        m(1, j) = point(j + 1, 0);
        m(2, j) = point(0, j);
    }
    CHECK(normalized_abs_det(m).is_zero());
}

TEST_CASE("pencil point metrics and J in two forms") {
    const SpecialPair pair = special_quintics(12);
    for (int d = 1; d <= 2; ++d) {
        Rng rng(d);
        const PencilPoint pp = sample_pencil_point(d, pair, rng, kDefaultHeight);
        CHECK(pullback(pp.f0 + pair.f2 * pp.b, pp.c).is_zero_poly());
        const PencilMetrics m = pencil_metrics(pp, pair, point(0.5, -0.75), kPrec);
        CHECK(m.det_B_normalized > tol(1e-20));
        CHECK(m.det_Jac4_normalized > tol(1e-20));
        CHECK(m.J_f0_normalized > tol(1e-20));
        CHECK(rel(m.J_f0, m.J_f0_3x3) < tol(1e-60));
        // J vanishes when t1 = t2.
        CHECK(abs(j_invariant(pp.f0, pp.c, pair.change, m.t1, m.t1)).is_zero());
    }
}

TEST_CASE("full chain passes off incidence with monotone precision scaling") {
    for (int d = 1; d <= 2; ++d) {
        const IncidenceSample s = sample_off_incidence(d, 90 + d);
        const SpecializationReport r = verify_specialization_chain(s, SpecOptions{}, 7);
        CHECK(r.pass);
        CHECK(r.failed_predicate.empty());
        REQUIRE(r.ratio_by_precision.size() == 3);
        CHECK(r.ratio_by_precision[2][0] < r.ratio_by_precision[0][0]);
        CHECK(r.rank_A22 == 7);
        CHECK(r.det_A22_r4_normalized > tol(1e-20));
    }
}

TEST_CASE("full chain at an incidence centre reports the delta collapse") {
    const IncidenceSample s = sample_special(1, 5, Center::Incidence);
    const SpecializationReport r = verify_specialization_chain(s, SpecOptions{}, 7);
    CHECK_FALSE(r.pass);
    CHECK(r.delta_collapse);
    CHECK(r.failed_predicate == "delta_collapse");
    CHECK(r.delta0_residual < tol(1e-60));
    CHECK(r.delta12_relative < tol(1e-60));
    CHECK(r.pass_delta0);
    CHECK_FALSE(r.pass_deltas_generic);
    // The pencil-point matrices do not depend on the arrangement.
    CHECK(r.pass_det_B);
    CHECK(r.pass_det_Jac4);
    CHECK(r.pass_J_f0);
}

TEST_CASE("chart consistency on incidence samples") {
    for (int d = 1; d <= 2; ++d) {
        const IncidenceSample s = sample_special(d, 110 + d, Center::Incidence);
        const ChartConsistency c = chart_consistency(s, SpecOptions{}, 3);
        CHECK(c.pass_chain_rule);
        CHECK(c.pass_fd);
        CHECK(c.pass_root_jacobian);
        CHECK(c.identity_multiset_match);
        CHECK(c.pass);
    }
}

TEST_CASE("center names round trip") {
    CHECK(parse_center(center_name(Center::Incidence)) == Center::Incidence);
    CHECK(parse_center(center_name(Center::OffIncidence)) == Center::OffIncidence);
    CHECK_THROWS_AS(parse_center("elsewhere"), Error);
}
