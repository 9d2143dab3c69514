#include "clemens/incidence.hpp"

#include <algorithm>
#include <type_traits>

namespace clemens {

const QuinticForm& IncidenceSample::form(int l) const {
    switch (l) {
        case 0: return f0;
        case 1: return f1;
        case 2: return f2;
        default: throw Error("IncidenceSample::form: index must be 0, 1 or 2");
    }
}

QPoly pullback(const QuinticForm& f, const RationalCurve& c) {
    return f.compose(c.components()).with_formal_degree(f.degree() * c.degree());
}

QMatrix incidence_matrix(const RationalCurve& c) {
    const int d = c.degree();
    const auto& mons = monomials(5);
    QMatrix m(5 * d + 1, static_cast<int>(mons.size()), Rational());
    // Powers c_i^e for e <= 5, shared across monomials.
    std::array<std::vector<QPoly>, kVars> pw;
    for (int i = 0; i < kVars; ++i) {
        pw[i].push_back(QPoly::constant(Rational(1)));
        for (int e = 1; e <= 5; ++e) pw[i].push_back(pw[i].back() * c.component(i));
    }
    for (int j = 0; j < static_cast<int>(mons.size()); ++j) {
        QPoly p = QPoly::constant(Rational(1));
        for (int i = 0; i < kVars; ++i) {
            if (mons[j][i]) p = p * pw[i][mons[j][i]];
        }
        for (int k = 0; k <= 5 * d; ++k) m(k, j) = p.coeff(k);
    }
    return m;
}

std::vector<QuinticForm> quintics_through(const RationalCurve& c) {
    const auto& mons = monomials(5);
    std::vector<QuinticForm> out;
    for (const auto& v : kernel_basis(incidence_matrix(c))) {
        QuinticForm f(5);
        for (size_t j = 0; j < mons.size(); ++j) f.add_term(mons[j], v[j]);
        out.push_back(std::move(f));
    }
    return out;
}

QuinticForm random_quintic(Rng& rng, long height) {
    QuinticForm f(5);
    for (const auto& e : monomials(5)) f.add_term(e, rng.rational(height));
    return f;
}

namespace {

bool proportional(const QPoly& a, const QPoly& b) {
    const int n = std::max(a.formal_degree(), b.formal_degree());
    QMatrix m(2, n + 1, Rational());
    for (int k = 0; k <= n; ++k) {
        m(0, k) = a.coeff(k);
        m(1, k) = b.coeff(k);
    }
    return exact_rank(m) < 2;
}

}  // namespace

std::string incidence_violation(const IncidenceSample& s) {
    const QPoly p0 = pullback(s.f0, s.c);
    const QPoly p1 = pullback(s.f1, s.c);
    const QPoly p2 = pullback(s.f2, s.c);
    if (!(p0 + p1 * s.a + p2 * s.b).is_zero_poly()) return "combination_identity";
    if (p0.is_zero_poly()) return "f0_vanishes_on_c";
    if (p1.is_zero_poly()) return "f1_vanishes_on_c";
    if (p2.is_zero_poly()) return "f2_vanishes_on_c";
    if (proportional(p0, p1)) return "pencil_f0_f1";
    if (proportional(p0, p2)) return "pencil_f0_f2";
    return {};
}

IncidenceSample sample_incidence(int d, std::uint64_t seed, bool special, long height) {
    Rng rng(seed);
    std::vector<std::string> log;
    for (int attempt = 0; attempt < kResampleCap; ++attempt) {
        int curve_retries = 0;
        RationalCurve c = random_curve(d, height, rng, &curve_retries);
        for (int k = 0; k < curve_retries; ++k) log.emplace_back("curve_genericity");
        IncidenceSample s{c};
        s.d = d;
        s.seed = seed;
        s.special = special;
        if (special) {
            s.pair = special_quintics(rng.next(), height);
            s.f1 = s.pair->f1;
            s.f2 = s.pair->f2;
        } else {
            s.f1 = random_quintic(rng, height);
            s.f2 = random_quintic(rng, height);
        }
        s.a = rng.nonzero_rational(height);
        s.b = rng.nonzero_rational(height);
        QuinticForm g(5);
        for (const auto& v : quintics_through(c)) g += v * rng.rational(height);
        s.f0 = g - s.f1 * s.a - s.f2 * s.b;
        const std::string bad = incidence_violation(s);
        if (bad.empty()) {
            s.retry_log = std::move(log);
            return s;
        }
        log.push_back(bad);
    }
    throw Error("sample_incidence: resample cap exceeded");
}

BigComplex value_at_coefficients(const QuinticForm& f, int d, const std::vector<BigComplex>& coeffs,
                                 const BigComplex& t) {
    std::array<BigComplex, kVars> pt{BigComplex(t.precision()), BigComplex(t.precision()), BigComplex(t.precision()),
                                     BigComplex(t.precision()), BigComplex(t.precision())};
    for (int i = 0; i < kVars; ++i) {
        BigComplex acc = coeffs[RationalCurve::index(d, i, d)];
        for (int k = d - 1; k >= 0; --k) {
            acc *= t;
            acc += coeffs[RationalCurve::index(d, i, k)];
        }
        pt[i] = std::move(acc);
    }
    return f.eval(pt);
}

QMatrix jacobian_single(const RationalCurve& c, const QuinticForm& f) {
    const int d = c.degree();
    QMatrix j(5 * d + 1, c.dim(), Rational());
    for (int i = 0; i < kVars; ++i) {
        const QPoly p = f.derivative(i).compose(c.components());
        for (int k = 0; k <= 5 * d; ++k) {
            for (int m = 0; m <= d; ++m) j(k, RationalCurve::index(d, i, m)) = p.coeff(k - m);
        }
    }
    return j;
}

SamplePoints<Rational> random_rational_points(int count, Rng& rng) {
    SamplePoints<Rational> out;
    while (static_cast<int>(out.t.size()) < count) {
        Rational q = rng.rational(64);
        if (std::find(out.t.begin(), out.t.end(), q) == out.t.end()) out.t.push_back(std::move(q));
    }
    return out;
}

SamplePoints<BigComplex> random_complex_points(int count, Rng& rng, long prec) {
    SamplePoints<BigComplex> out;
    while (static_cast<int>(out.t.size()) < count) {
        BigComplex z(BigFloat(Rational(rng.uniform_int(-3000, 3000), 1000), prec),
                     BigFloat(Rational(rng.uniform_int(-3000, 3000), 1000), prec));
        bool fresh = true;
        for (const auto& x : out.t) fresh = fresh && !(x == z);
        if (fresh) out.t.push_back(std::move(z));
    }
    return out;
}

BigFloat min_separation(const SamplePoints<BigComplex>& pts) {
    const long prec = pts.t.empty() ? kDefaultPrecision : pts.t[0].precision();
    BigFloat best = BigFloat::infinity(prec);
    for (size_t i = 0; i < pts.t.size(); ++i) {
        for (size_t j = i + 1; j < pts.t.size(); ++j) best = min(best, abs(pts.t[i] - pts.t[j]));
    }
    return best;
}

// ---------------------------------------------------------------------------

namespace {

template <class T>
std::vector<T> axpy(std::vector<T> acc, const T& a, const std::vector<T>& x) {
    for (size_t k = 0; k < acc.size(); ++k) acc[k] += a * x[k];
    return acc;
}

template <class T>
std::vector<T> zeros(size_t n, const T& proto) {
    return std::vector<T>(n, zero_like(proto));
}

template <class T>
T det2(const T& a, const T& b, const T& c, const T& d) {
    return a * d - b * c;
}

// Cofactor C[r][col] of a 3x3 matrix.
template <class T>
T cofactor(const std::array<std::array<T, 3>, 3>& m, int r, int col) {
    int rr[2], cc[2];
    for (int k = 0, n = 0; k < 3; ++k) {
        if (k != r) rr[n++] = k;
    }
    for (int k = 0, n = 0; k < 3; ++k) {
        if (k != col) cc[n++] = k;
    }
    T minor = det2(m[rr[0]][cc[0]], m[rr[0]][cc[1]], m[rr[1]][cc[0]], m[rr[1]][cc[1]]);
    return ((r + col) % 2) ? -minor : minor;
}

}  // namespace

template <class T>
DetGenerators<T>::DetGenerators(const IncidenceSample& s, SamplePoints<T> pts) : s_(&s), pts_(std::move(pts)) {
    if (pts_.t.size() < 3) throw Error("det_generators: need at least three points");
    // Indexed by column: 0 -> f2, 1 -> f1, 2 -> f0.
    df_ = {partials(s.f2), partials(s.f1), partials(s.f0)};
    const auto d = deltas();
    if (is_zero(d[0]) && is_zero(d[1]) && is_zero(d[2])) {
        throw DegeneracyError("dependent_rows", "rows (f2, f1, f0) at t1 and t2 are linearly dependent");
    }
}

template <class T>
std::array<T, 3> DetGenerators<T>::deltas() const {
    const T& t1 = pts_.t[0];
    const T& t2 = pts_.t[1];
    const T F2a = clemens::value_at(s_->f2, s_->c, t1), F1a = clemens::value_at(s_->f1, s_->c, t1),
            F0a = clemens::value_at(s_->f0, s_->c, t1);
    const T F2b = clemens::value_at(s_->f2, s_->c, t2), F1b = clemens::value_at(s_->f1, s_->c, t2),
            F0b = clemens::value_at(s_->f0, s_->c, t2);
    // delta0 = |F2 F1|, delta1 = |F0 F2|, delta2 = |F1 F0| over (t1; t2).
    return {F2a * F1b - F1a * F2b, F0a * F2b - F2a * F0b, F1a * F0b - F0a * F1b};
}

template <class T>
GeneratorJet<T> DetGenerators<T>::jet(int i) const {
    if (i < 3 || i > static_cast<int>(pts_.t.size())) throw Error("det_generators: index out of range");
    const std::array<const T*, 3> rows{&pts_.t[static_cast<size_t>(i) - 1], &pts_.t[0], &pts_.t[1]};
    const std::array<const QForm*, 3> cols{&s_->f2, &s_->f1, &s_->f0};
    std::array<std::array<T, 3>, 3> v{{{zero_like(*rows[0]), zero_like(*rows[0]), zero_like(*rows[0])},
                                       {zero_like(*rows[0]), zero_like(*rows[0]), zero_like(*rows[0])},
                                       {zero_like(*rows[0]), zero_like(*rows[0]), zero_like(*rows[0])}}};
    for (int r = 0; r < 3; ++r) {
        for (int col = 0; col < 3; ++col) v[r][col] = clemens::value_at(*cols[col], s_->c, *rows[r]);
    }
    GeneratorJet<T> out{zero_like(*rows[0]), zeros(static_cast<size_t>(s_->c.dim()), *rows[0])};
    for (int col = 0; col < 3; ++col) out.value += v[0][col] * cofactor(v, 0, col);
    for (int r = 0; r < 3; ++r) {
        for (int col = 0; col < 3; ++col) {
            out.gradient = axpy(std::move(out.gradient), cofactor(v, r, col), value_gradient(df_[col], s_->c, *rows[r]));
        }
    }
    return out;
}

template <class T>
BigComplex DetGenerators<T>::value_at(int i, const std::vector<BigComplex>& coeffs) const {
    const long prec = coeffs.at(0).precision();
    const std::array<BigComplex, 3> rows{to_complex(pts_.t.at(static_cast<size_t>(i) - 1), prec),
                                         to_complex(pts_.t[0], prec), to_complex(pts_.t[1], prec)};
    const std::array<const QForm*, 3> cols{&s_->f2, &s_->f1, &s_->f0};
    std::array<std::array<BigComplex, 3>, 3> v;
    for (int r = 0; r < 3; ++r) {
        for (int col = 0; col < 3; ++col) v[r][col] = value_at_coefficients(*cols[col], s_->d, coeffs, rows[r]);
    }
    BigComplex det(prec);
    for (int col = 0; col < 3; ++col) det += v[0][col] * cofactor(v, 0, col);
    return det;
}

template class DetGenerators<Rational>;
template class DetGenerators<BigComplex>;

template <class T>
Matrix<T> jacobian_J_L(const IncidenceSample& s, const SamplePoints<T>& pts) {
    const int n = 5 * s.d + 1;
    if (static_cast<int>(pts.t.size()) != n) throw Error("jacobian_J_L: expected 5d+1 points");
    const DetGenerators<T> gens(s, pts);
    Matrix<T> j(n - 2, s.c.dim(), zero_like(pts.t[0]));
    for (int i = 3; i <= n; ++i) j.set_row(i - 3, gens.jet(i).gradient);
    return j;
}

template Matrix<Rational> jacobian_J_L(const IncidenceSample&, const SamplePoints<Rational>&);
template Matrix<BigComplex> jacobian_J_L(const IncidenceSample&, const SamplePoints<BigComplex>&);

template <class T>
Matrix<T> pencil_jacobian(const RationalCurve& c, const QuinticForm& f, const QuinticForm& g,
                          const SamplePoints<T>& pts) {
    if (f.is_zero() || g.is_zero()) throw Error("pencil_jacobian: zero quintic");
    const int n = 5 * c.degree() + 1;
    if (static_cast<int>(pts.t.size()) != n) throw Error("pencil_jacobian: expected 5d+1 points");
    const auto df = partials(f);
    const auto dg = partials(g);
    const T& t1 = pts.t[0];
    const T F1 = value_at(f, c, t1);
    const T G1 = value_at(g, c, t1);
    if (is_zero(F1) && is_zero(G1)) throw DegeneracyError("dependent_rows", "pencil row at t1 vanishes");
    const std::vector<T> dF1 = value_gradient(df, c, t1);
    const std::vector<T> dG1 = value_gradient(dg, c, t1);
    Matrix<T> j(n - 1, c.dim(), zero_like(t1));
    for (int i = 1; i < n; ++i) {
        const T& ti = pts.t[i];
        const T Fi = value_at(f, c, ti);
        const T Gi = value_at(g, c, ti);
        // d(F(ti) G(t1) - G(ti) F(t1))
        std::vector<T> row = zeros(static_cast<size_t>(c.dim()), t1);
        row = axpy(std::move(row), G1, value_gradient(df, c, ti));
        row = axpy(std::move(row), Fi, dG1);
        row = axpy(std::move(row), -F1, value_gradient(dg, c, ti));
        row = axpy(std::move(row), -Gi, dF1);
        j.set_row(i - 1, row);
    }
    return j;
}

template <class T>
Matrix<T> pencil_jacobian(const IncidenceSample& s, const SamplePoints<T>& pts) {
    return pencil_jacobian(s.c, s.combined(), s.f2, pts);
}

template Matrix<Rational> pencil_jacobian(const RationalCurve&, const QuinticForm&, const QuinticForm&,
                                          const SamplePoints<Rational>&);
template Matrix<BigComplex> pencil_jacobian(const RationalCurve&, const QuinticForm&, const QuinticForm&,
                                            const SamplePoints<BigComplex>&);
template Matrix<Rational> pencil_jacobian(const IncidenceSample&, const SamplePoints<Rational>&);
template Matrix<BigComplex> pencil_jacobian(const IncidenceSample&, const SamplePoints<BigComplex>&);

template <class T>
PhiExpansion<T> phi_expand(const IncidenceSample& s, const SamplePoints<T>& pts, int i) {
    const int n = static_cast<int>(pts.t.size());
    if (i < 3 || i > n) throw Error("phi_expand: index must satisfy 3 <= i <= 5d+1");
    const std::array<const T*, 3> rows{&pts.t[static_cast<size_t>(i) - 1], &pts.t[0], &pts.t[1]};
    const std::array<const QForm*, 3> cols{&s.f2, &s.f1, &s.f0};
    const T zero = zero_like(pts.t[0]);
    std::array<std::array<T, 3>, 3> v{{{zero, zero, zero}, {zero, zero, zero}, {zero, zero, zero}}};
    std::array<std::array<std::vector<T>, 3>, 3> g;
    for (int r = 0; r < 3; ++r) {
        for (int col = 0; col < 3; ++col) {
            v[r][col] = value_at(*cols[col], s.c, *rows[r]);
            g[r][col] = value_gradient(partials(*cols[col]), s.c, *rows[r]);
        }
    }
    PhiExpansion<T> out{zero, zero, zero, {{{zero, zero}, {zero, zero}, {zero, zero}}}, zero, false};
    out.delta2 = cofactor(v, 0, 0);
    out.delta1 = cofactor(v, 0, 1);
    out.delta0 = cofactor(v, 0, 2);
    // Column col holds f_{2-col}; row r > 0 is t_r.
    for (int r = 1; r < 3; ++r) {
        for (int col = 0; col < 3; ++col) out.h[2 - col][r - 1] = cofactor(v, r, col);
    }
    const size_t dim = static_cast<size_t>(s.c.dim());
    std::vector<T> recomposed = zeros(dim, zero);
    recomposed = axpy(std::move(recomposed), out.delta2, g[0][0]);
    recomposed = axpy(std::move(recomposed), out.delta1, g[0][1]);
    recomposed = axpy(std::move(recomposed), out.delta0, g[0][2]);
    for (int l = 0; l < 3; ++l) {
        for (int j = 0; j < 2; ++j) recomposed = axpy(std::move(recomposed), out.h[l][j], g[j + 1][2 - l]);
    }
    // Direct route: Leibniz expansion, product rule over each permutation term.
    static const int perms[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {0, 2, 1}, {2, 1, 0}, {1, 0, 2}};
    std::vector<T> direct = zeros(dim, zero);
    for (int p = 0; p < 6; ++p) {
        const bool odd = p >= 3;
        for (int r = 0; r < 3; ++r) {
            T coef = one_like(zero);
            for (int rr = 0; rr < 3; ++rr) {
                if (rr != r) coef *= v[rr][perms[p][rr]];
            }
            if (odd) coef = -coef;
            direct = axpy(std::move(direct), coef, g[r][perms[p][r]]);
        }
    }
    bool all_zero = true;
    for (size_t k = 0; k < dim; ++k) {
        const T diff = recomposed[k] - direct[k];
        all_zero = all_zero && is_zero(diff);
        if constexpr (std::is_same_v<T, Rational>) {
            if (abs(diff) > out.residual_max) out.residual_max = abs(diff);
        } else {
            if (abs(diff) > abs(out.residual_max)) out.residual_max = BigComplex(abs(diff), BigFloat(diff.precision()));
        }
    }
    out.residual_zero = all_zero;
    return out;
}

template PhiExpansion<Rational> phi_expand(const IncidenceSample&, const SamplePoints<Rational>&, int);
template PhiExpansion<BigComplex> phi_expand(const IncidenceSample&, const SamplePoints<BigComplex>&, int);

CMatrix matrix_A(const IncidenceSample& s, const SamplePoints<BigComplex>& pts, const CForm& f3) {
    const int d = s.d;
    const int n = 5 * d + 5;
    if (static_cast<int>(pts.t.size()) != 5 * d + 1) throw Error("matrix_A: expected 5d+1 points");
    const long prec = pts.t[0].precision();
    CMatrix a(n, s.c.dim(), BigComplex(prec));
    const auto d3 = partials(f3);
    int row = 0;
    for (int i = 2; i <= 5 * d; ++i) a.set_row(row++, value_gradient(d3, s.c, pts.t[i]));
    for (int l : {2, 1, 0}) {
        const auto dl = partials(s.form(l));
        for (int j = 0; j < 2; ++j) a.set_row(row++, value_gradient(dl, s.c, pts.t[j]));
    }
    return a;
}

}  // namespace clemens
