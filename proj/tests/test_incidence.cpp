#include <doctest.h>

#include "clemens/incidence.hpp"
#include "clemens/specialization.hpp"
#include "test_helpers.hpp"

using namespace clemens;
using test::curve;
using test::tol;

namespace {

QuinticForm monomial_form(Exponent e, long coef = 1) {
    QuinticForm f(5);
    f.add_term(e, Rational(coef));
    return f;
}

}  // namespace

TEST_CASE("pullback examples") {
    const RationalCurve c = curve(1, {{0, 1}, {1}, {1}, {1}, {1}});
    const QPoly p = pullback(monomial_form({5, 0, 0, 0, 0}), c);
    CHECK(p.formal_degree() == 5);
    CHECK(p.degree() == 5);
    CHECK(p[5] == Rational(1));
}

TEST_CASE("pullback of the product form is the product of the components") {
    const RationalCurve c = random_curve(2, kDefaultHeight, 9);
    const QPoly p = pullback(monomial_form({1, 1, 1, 1, 1}), c);
    QPoly prod = c.component(0);
    for (int i = 1; i < kVars; ++i) prod = prod * c.component(i);
    CHECK(p == prod.with_formal_degree(10));
    CHECK(kQuinticMonomials == static_cast<int>(monomials(5).size()));
}

TEST_CASE("incidence matrix rank and quintics_through dimension") {
    const int expected_kernel[] = {0, 120, 115, 110};
    for (int d = 1; d <= 3; ++d) {
        const RationalCurve c = random_curve(d, kDefaultHeight, 40 + d);
        const QMatrix m = incidence_matrix(c);
        CHECK(m.rows() == 5 * d + 1);
        CHECK(m.cols() == kQuinticMonomials);
        CHECK(exact_rank(m) == 5 * d + 1);
        const auto basis = quintics_through(c);
        CHECK(static_cast<int>(basis.size()) == expected_kernel[d]);
        for (size_t k = 0; k < basis.size(); k += 17) CHECK(pullback(basis[k], c).is_zero_poly());
    }
}

TEST_CASE("sample_incidence invariants") {
    for (int d = 1; d <= 3; ++d) {
        for (bool special : {false, true}) {
            const IncidenceSample s = sample_incidence(d, 500 + d, special);
            CHECK(incidence_violation(s).empty());
            CHECK(pullback(s.combined(), s.c).is_zero_poly());
            CHECK_FALSE(pullback(s.f0, s.c).is_zero_poly());
            CHECK_FALSE(s.a.is_zero());
            CHECK_FALSE(s.b.is_zero());
            CHECK(s.pair.has_value() == special);
        }
    }
}

TEST_CASE("special sample: f2 o c is the product of the transformed components") {
    const IncidenceSample s = sample_incidence(2, 77, true);
    REQUIRE(s.pair);
    const RationalCurve ct = transform_curve(s.c, s.pair->change);
    QPoly prod = ct.component(0);
    for (int i = 1; i < kVars; ++i) prod = prod * ct.component(i);
    CHECK(pullback(s.f2, s.c) == prod.with_formal_degree(10));
}

TEST_CASE("incidence_violation names the failing predicate") {
    IncidenceSample s = sample_incidence(1, 3, false);
    s.a += Rational(1);
    CHECK(incidence_violation(s) == "combination_identity");
}

TEST_CASE("jacobian_single rank and Euler kernel vector") {
    for (int d = 1; d <= 3; ++d) {
        const IncidenceSample s = sample_incidence(d, 60 + d, false);
        const QMatrix j = jacobian_single(s.c, s.combined());
        CHECK(j.rows() == 5 * d + 1);
        CHECK(j.cols() == 5 * d + 5);
        CHECK(exact_rank(j) == 5 * d + 1);
        const auto coeffs = s.c.coefficients();
        for (int r = 0; r < j.rows(); ++r) {
            Rational acc;
            for (int k = 0; k < j.cols(); ++k) acc += j(r, k) * coeffs[k];
            CHECK(acc.is_zero());
        }
    }
}

TEST_CASE("jacobian_single matches a finite difference of the pullback coefficients") {
    // Exact directional derivative oracle: (f o (c + e v) coefficients) is a
    // polynomial in e; its linear term is J v.
    const IncidenceSample s = sample_incidence(1, 12, false);
    const QuinticForm f = s.combined();
    const QMatrix j = jacobian_single(s.c, f);
    Rng rng(5);
    std::vector<Rational> v;
    for (int k = 0; k < s.c.dim(); ++k) v.push_back(rng.rational(5));
    const auto base = s.c.coefficients();
    auto coeffs_at = [&](const Rational& e) {
        std::vector<Rational> x = base;
        for (size_t k = 0; k < x.size(); ++k) x[k] += e * v[k];
        return pullback(f, RationalCurve::from_coefficients(1, x));
    };
    // Differentiating the Lagrange interpolant through six nodes recovers
    // the derivative at 0 of a degree-5 polynomial exactly.
    const long nodes[] = {-2, -1, 0, 1, 2, 3};
    std::vector<QPoly> vals;
    for (long e : nodes) vals.push_back(coeffs_at(Rational(e)));
    for (int r = 0; r < j.rows(); ++r) {
        Rational deriv;
        for (int a = 0; a < 6; ++a) {
            // d/de of the Lagrange basis polynomial L_a at 0.
            Rational denom(1), sum;
            for (int b = 0; b < 6; ++b) {
                if (b != a) denom *= Rational(nodes[a] - nodes[b]);
            }
            for (int b = 0; b < 6; ++b) {
                if (b == a) continue;
                Rational prod(1);
                for (int c = 0; c < 6; ++c) {
                    if (c != a && c != b) prod *= Rational(-nodes[c]);
                }
                sum += prod;
            }
            deriv += vals[a].coeff(r) * sum / denom;
        }
        Rational jv;
        for (int k = 0; k < j.cols(); ++k) jv += j(r, k) * v[k];
        CHECK(jv == deriv);
    }
}

TEST_CASE("determinant generators vanish at c with exact gradients") {
    const IncidenceSample s = sample_incidence(1, 21, false);
    Rng rng(1);
    const auto pts = random_rational_points(6, rng);
    const DetGenerators<Rational> g(s, pts);
    CHECK(g.count() == 4);
    for (int i = 3; i <= 6; ++i) CHECK(g.jet(i).value.is_zero());
    // t_i = t1 makes the generator identically zero.
    SamplePoints<Rational> rep = pts;
    rep.t[2] = rep.t[0];
    const DetGenerators<Rational> gr(s, rep);
    const auto jet = gr.jet(3);
    CHECK(jet.value.is_zero());
    for (const auto& x : jet.gradient) CHECK(x.is_zero());
}

TEST_CASE("determinant generators reject dependent rows") {
    IncidenceSample s = sample_incidence(1, 22, false);
    s.f1 = s.f2;
    Rng rng(2);
    const auto pts = random_rational_points(6, rng);
    // With f1 = f2 every 2x2 minor of the (t1, t2) rows that pairs f1 and f2
    // vanishes, but the rows stay independent through f0.
    CHECK_NOTHROW(DetGenerators<Rational>(s, pts));
    s.f0 = s.f2;
    CHECK_THROWS_AS(DetGenerators<Rational>(s, pts), DegeneracyError);
}

TEST_CASE("rank ladder single / pencil / plane") {
    for (int d = 1; d <= 3; ++d) {
        const IncidenceSample s = sample_incidence(d, 300 + d, false);
        Rng rng(d);
        const auto pts = random_rational_points(5 * d + 1, rng);
        CHECK(exact_rank(jacobian_single(s.c, s.combined())) == 5 * d + 1);
        CHECK(exact_rank(pencil_jacobian(s, pts)) == 5 * d);
        CHECK(exact_rank(jacobian_J_L(s, pts)) == 5 * d - 1);
    }
}

TEST_CASE("J_L rank drops with a repeated point, exact agrees with numeric") {
    const IncidenceSample s = sample_incidence(2, 31, false);
    Rng rng(3);
    auto pts = random_rational_points(11, rng);
    const auto cpts = random_complex_points(11, rng, 256);
    CHECK(numeric_rank(jacobian_J_L(s, cpts), 1e-30).rank == exact_rank(jacobian_J_L(s, pts)));
    pts.t[5] = pts.t[4];
    CHECK(exact_rank(jacobian_J_L(s, pts)) < 9);
}

TEST_CASE("pencil_jacobian rejects a zero quintic") {
    const IncidenceSample s = sample_incidence(1, 4, false);
    Rng rng(4);
    const auto pts = random_rational_points(6, rng);
    CHECK_THROWS_AS(pencil_jacobian(s.c, s.combined(), QuinticForm(5), pts), Error);
}

TEST_CASE("phi expansion residual is exactly zero") {
    for (int d = 1; d <= 2; ++d) {
        const IncidenceSample s = sample_incidence(d, 40 + d, true);
        Rng rng(d);
        const auto pts = random_rational_points(5 * d + 1, rng);
        const DetGenerators<Rational> g(s, pts);
        for (int i = 3; i <= 5 * d + 1; ++i) {
            const auto phi = phi_expand(s, pts, i);
            CHECK(phi.residual_zero);
            CHECK(phi.residual_max.is_zero());
            // delta0 is the 2x2 minor |F2 F1| over (t1, t2).
            CHECK(phi.delta0 == g.deltas()[0]);
        }
    }
}

TEST_CASE("phi expansion with equal columns") {
    IncidenceSample s = sample_incidence(1, 50, false);
    s.f1 = s.f2;
    Rng rng(6);
    const auto pts = random_rational_points(6, rng);
    const auto phi = phi_expand(s, pts, 3);
    CHECK(phi.delta0.is_zero());
    CHECK(phi.residual_zero);
}

TEST_CASE("matrix_A shape and repeated point") {
    const IncidenceSample s = sample_incidence(1, 70, true);
    Rng rng(7);
    auto pts = random_complex_points(6, rng, 256);
    const CForm f3 = to_complex(s.f1, 256) + to_complex(s.f2, 256);
    const CMatrix a = matrix_A(s, pts, f3);
    CHECK(a.rows() == 10);
    CHECK(a.cols() == 10);
    pts.t[3] = pts.t[2];
    CHECK(abs(determinant(matrix_A(s, pts, f3))).is_zero());
}

TEST_CASE("matrix_A nonvanishing is invariant under a linear change of curve coordinates") {
    // A for the transformed sample is A K^{-1}, with K = L (x) I.
    const IncidenceSample s = sample_incidence(1, 71, false);
    const SpecialPair pair = special_quintics(5);
    const LinearChange& L = pair.change;
    const LinearChange Linv = invert_change(L);
    IncidenceSample t = s;
    t.c = transform_curve(s.c, L);
    t.f0 = s.f0.substitute_linear(Linv);
    t.f1 = s.f1.substitute_linear(Linv);
    t.f2 = s.f2.substitute_linear(Linv);
    CHECK(incidence_violation(t).empty());
    Rng rng(8);
    const auto pts = random_complex_points(6, rng, 256);
    const CForm f3 = to_complex(s.f1, 256) * BigComplex(0.5, 0.25, 256) + to_complex(s.f2, 256);
    const CForm f3t = f3.substitute_linear([&] {
        std::array<std::array<BigComplex, kVars>, kVars> m;
        for (int i = 0; i < kVars; ++i) {
            for (int j = 0; j < kVars; ++j) m[i][j] = BigComplex(Linv[i][j], 256);
        }
        return m;
    }());
    const BigComplex da = determinant(matrix_A(s, pts, f3));
    const BigComplex dt = determinant(matrix_A(t, pts, f3t));
    CHECK_FALSE(abs(da).is_zero());
    CHECK_FALSE(abs(dt).is_zero());
    // det(A) = det(A_t) det(K) with det(K) = det(L)^(d+1).
    const BigFloat detL(determinant([&] {
        QMatrix m(kVars, kVars, Rational());
        for (int i = 0; i < kVars; ++i) {
            for (int j = 0; j < kVars; ++j) m(i, j) = L[i][j];
        }
        return m;
    }()), 256);
    const BigComplex expect = dt * BigComplex(detL * detL, BigFloat(256));
    CHECK(abs(da - expect) <= abs(da) * tol(1e-50));
}
