#include <doctest.h>

#include <algorithm>

#include "clemens/curves.hpp"
#include "clemens/linalg.hpp"
#include "clemens/random.hpp"
#include "clemens/roots.hpp"

using namespace clemens;

namespace {

QMatrix random_qmatrix(int r, int c, Rng& rng, long height = 9) {
    QMatrix m(r, c, Rational());
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < c; ++j) m(i, j) = rng.rational(height);
    }
    return m;
}

// Leibniz expansion; independent of the elimination code.
Rational leibniz_det(const QMatrix& m) {
    const int n = m.rows();
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    Rational total;
    do {
        int inversions = 0;
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) inversions += p[i] > p[j];
        }
        Rational term(1);
        for (int i = 0; i < n; ++i) term *= m(i, p[i]);
        total += inversions % 2 ? -term : term;
    } while (std::next_permutation(p.begin(), p.end()));
    return total;
}

QMatrix low_rank(int r, int c, int k, Rng& rng) { return random_qmatrix(r, k, rng) * random_qmatrix(k, c, rng); }

}  // namespace

TEST_CASE("rational arithmetic and parsing") {
    const Rational a(3, 4), b(-5, 6);
    CHECK(a + b == Rational(-1, 12));
    CHECK(a * b == Rational(-5, 8));
    CHECK(a / b == Rational(-9, 10));
    CHECK(Rational::parse("-10/4") == Rational(-5, 2));
    CHECK(Rational(-5, 2).str() == "-5/2");
    CHECK(Rational(7).str() == "7/1");
    CHECK(a > b);
    CHECK_THROWS_AS(a / Rational(0), Error);
}

TEST_CASE("bigfloat hex round trip is exact") {
    Rng rng(11);
    for (int k = 0; k < 20; ++k) {
        const BigFloat x(rng.rational(1000), 256);
        CHECK(BigFloat::parse(x.hex(), 256) == x);
    }
    CHECK(BigFloat(256).hex() == "0");
    CHECK(BigFloat(0.5, 64).decimal(5) == "0.5");
}

TEST_CASE("exact_rank examples") {
    CHECK(exact_rank(QMatrix::identity(3, Rational())) == 3);
    CHECK(exact_rank(QMatrix(4, 6, Rational())) == 0);
}

TEST_CASE("exact_rank of constructed low-rank matrices") {
    Rng rng(2);
    for (int k = 1; k <= 5; ++k) CHECK(exact_rank(low_rank(6, 8, k, rng)) == k);
}

TEST_CASE("exact_rank invariant under row permutation and scaling") {
    Rng rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        QMatrix m = low_rank(5, 7, 1 + trial % 5, rng);
        const int r = exact_rank(m);
        for (int i = 0; i < m.rows(); ++i) {
            auto row = m.row(i);
            const Rational s = rng.nonzero_rational(20);
            for (auto& x : row) x *= s;
            m.set_row(i, row);
        }
        m.swap_rows(0, trial % m.rows());
        m.swap_rows(1, (trial + 2) % m.rows());
        CHECK(exact_rank(m) == r);
    }
}

TEST_CASE("kernel_basis satisfies rank-nullity and annihilates") {
    Rng rng(4);
    const QMatrix m = low_rank(4, 9, 3, rng);
    const auto ker = kernel_basis(m);
    CHECK(static_cast<int>(ker.size()) == 9 - 3);
    for (const auto& v : ker) {
        for (int i = 0; i < m.rows(); ++i) {
            Rational s;
            for (int j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
            CHECK(s.is_zero());
        }
    }
}

TEST_CASE("exact determinant against Leibniz and multiplicativity") {
    Rng rng(5);
    CHECK(determinant(QMatrix::identity(4, Rational())) == Rational(1));
    for (int trial = 0; trial < 10; ++trial) {
        const QMatrix a = random_qmatrix(4, 4, rng);
        const QMatrix b = random_qmatrix(4, 4, rng);
        CHECK(determinant(a) == leibniz_det(a));
        CHECK(determinant(a * b) == determinant(a) * determinant(b));
    }
    QMatrix rep = random_qmatrix(4, 4, rng);
    rep.set_row(2, rep.row(0));
    CHECK(determinant(rep).is_zero());
}

TEST_CASE("complex determinant matches exact determinant") {
    Rng rng(6);
    const QMatrix a = random_qmatrix(5, 5, rng);
    const BigComplex z = determinant(to_complex(a, 256));
    const BigFloat exact(determinant(a), 256);
    CHECK(abs(z - BigComplex(exact, BigFloat(256))) <= abs(exact) * BigFloat(1e-70, 256));
    CHECK(abs(determinant(CMatrix::identity(3, BigComplex(256))) - BigComplex(1.0, 0.0, 256)).is_zero());
}

TEST_CASE("inverse times matrix is identity") {
    Rng rng(7);
    const CMatrix a = to_complex(random_qmatrix(6, 6, rng), 256);
    const CMatrix p = a * inverse(a);
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            CHECK(abs(p(i, j) - BigComplex(i == j ? 1.0 : 0.0, 0.0, 256)) < BigFloat(1e-70, 256));
        }
    }
    CHECK_THROWS_AS(inverse(CMatrix(2, 2, BigComplex(256))), DegeneracyError);
}

TEST_CASE("numeric_rank examples") {
    const auto id = numeric_rank(CMatrix::identity(2, BigComplex(256)), 1e-30);
    CHECK(id.rank == 2);
    CHECK_FALSE(id.gap.is_finite());
    Rng rng(8);
    QMatrix m = random_qmatrix(4, 6, rng);
    m.set_row(3, m.row(1));
    CHECK(numeric_rank(to_complex(m, 256), 1e-30).rank == 3);
}

TEST_CASE("numeric_rank agrees with exact_rank across tolerances") {
    Rng rng(9);
    for (int k = 1; k <= 4; ++k) {
        const QMatrix m = low_rank(5, 6, k, rng);
        for (double tol : {1e-40, 1e-30, 1e-20, 1e-10}) {
            const long prec = std::max<long>(256, required_precision(tol));
            CHECK(numeric_rank(to_complex(m, prec), tol).rank == exact_rank(m));
        }
    }
}

TEST_CASE("numeric_rank refuses insufficient precision") {
    CHECK(required_precision(1e-40) == 266);
    CHECK(required_precision(1e-30) <= 256);
    CHECK_THROWS_AS(numeric_rank(CMatrix::identity(2, BigComplex(128)), 1e-40), Error);
}

TEST_CASE("singular values of a diagonal matrix") {
    CMatrix m(3, 3, BigComplex(256));
    m(0, 0) = BigComplex(3.0, 0.0, 256);
    m(1, 1) = BigComplex(0.0, -5.0, 256);
    m(2, 2) = BigComplex(1.0, 0.0, 256);
    const auto s = singular_values(m);
    REQUIRE(s.size() == 3);
    CHECK(abs(s[0] - BigFloat(5.0, 256)) < BigFloat(1e-70, 256));
    CHECK(abs(s[1] - BigFloat(3.0, 256)) < BigFloat(1e-70, 256));
    CHECK(abs(s[2] - BigFloat(1.0, 256)) < BigFloat(1e-70, 256));
}

TEST_CASE("roots examples") {
    const CPoly p(std::vector<BigComplex>{BigComplex(-1.0, 0.0, 256), BigComplex(256), BigComplex(1.0, 0.0, 256)});
    const auto rs = roots(p, 256);
    REQUIRE(rs.size() == 2);
    CHECK(abs(rs[0] - BigComplex(-1.0, 0.0, 256)) < BigFloat(1e-70, 256));
    CHECK(abs(rs[1] - BigComplex(1.0, 0.0, 256)) < BigFloat(1e-70, 256));
    const CPoly t3 = CPoly::monomial(3, BigComplex(1.0, 0.0, 256));
    CHECK_THROWS_AS(roots(t3, 256), DegeneracyError);
}

TEST_CASE("roots recover planted roots and satisfy Vieta") {
    Rng rng(10);
    for (int n : {2, 5, 10, 15}) {
        std::vector<BigComplex> planted;
        for (int k = 0; k < n; ++k) {
            planted.emplace_back(BigFloat(rng.rational(50), 256), BigFloat(rng.rational(50), 256));
        }
        const BigComplex lead(BigFloat(rng.nonzero_rational(9), 256), BigFloat(256));
        const CPoly p = from_roots(lead, planted);
        const auto rs = roots(p, 256);
        REQUIRE(static_cast<int>(rs.size()) == n);
        CHECK(max_relative_residual(p, rs) < BigFloat(1e-60, 256));
        BigComplex sum(256);
        for (const auto& r : rs) sum += r;
        const BigComplex vieta = -(p[n - 1] / p[n]);
        CHECK(abs(sum - vieta) < BigFloat(1e-60, 256));
        for (const auto& z : planted) CHECK(abs(rs[nearest_index(rs, z)] - z) < BigFloat(1e-50, 256));
    }
}

TEST_CASE("rng is reproducible and bounded") {
    Rng a(42), b(42);
    for (int k = 0; k < 100; ++k) {
        const long x = a.uniform_int(-3, 7);
        CHECK(x == b.uniform_int(-3, 7));
        CHECK(x >= -3);
        CHECK(x <= 7);
    }
    CHECK(mix_seed(1, 2, 3) == mix_seed(1, 2, 3));
    CHECK(mix_seed(1, 2, 3) != mix_seed(1, 3, 2));
}
