#include "clemens/specialization.hpp"

#include <algorithm>
#include <cmath>

#include "clemens/roots.hpp"

namespace clemens {

namespace {

BigFloat two_pow(long e, long prec) { return ldexp(BigFloat(1.0, prec), e); }

using ComplexChange = std::array<std::array<BigComplex, kVars>, kVars>;

ComplexChange to_complex(const LinearChange& L, long prec) {
    ComplexChange out;
    for (int i = 0; i < kVars; ++i) {
        for (int j = 0; j < kVars; ++j) out[i][j] = BigComplex(L[i][j], prec);
    }
    return out;
}

QMatrix to_matrix(const LinearChange& L) {
    QMatrix m(kVars, kVars, Rational());
    for (int i = 0; i < kVars; ++i) {
        for (int j = 0; j < kVars; ++j) m(i, j) = L[i][j];
    }
    return m;
}

// Kronecker factor K with K[(i,k),(j,k)] = L[i][j]: c~ coefficients = K c.
CMatrix kron_change(const LinearChange& L, int d, long prec) {
    const int n = kVars * (d + 1);
    CMatrix k(n, n, BigComplex(prec));
    for (int i = 0; i < kVars; ++i) {
        for (int j = 0; j < kVars; ++j) {
            for (int p = 0; p <= d; ++p) k(RationalCurve::index(d, i, p), RationalCurve::index(d, j, p)) = BigComplex(L[i][j], prec);
        }
    }
    return k;
}

// A random parameter with rational real and imaginary parts, so the same
// point can be materialised at any precision.
struct ExactPoint {
    Rational re;
    Rational im;
    BigComplex at(long prec) const { return BigComplex(BigFloat(re, prec), BigFloat(im, prec)); }
};

ExactPoint random_exact_point(Rng& rng) {
    return {Rational(rng.uniform_int(-3000, 3000), 1000), Rational(rng.uniform_int(-3000, 3000), 1000)};
}

std::vector<BigComplex> component_roots(const CPoly& p, int d, long prec, const char* what) {
    if (p.degree() != d) throw DegeneracyError("root_at_infinity", std::string(what) + " drops degree");
    return roots(p, prec);
}

BigFloat relative_gap(const BigComplex& a, const BigComplex& b) {
    const BigFloat den = abs(a);
    if (den.is_zero()) return abs(b);
    return abs(a - b) / den;
}

}  // namespace

const char* center_name(Center c) { return c == Center::Incidence ? "incidence" : "off-incidence"; }

Center parse_center(const std::string& s) {
    if (s == "incidence") return Center::Incidence;
    if (s == "off-incidence") return Center::OffIncidence;
    throw Error("unknown center '" + s + "' (expected incidence or off-incidence)");
}

LinearChange identity_change() {
    LinearChange L;
    for (int i = 0; i < kVars; ++i) {
        for (int j = 0; j < kVars; ++j) L[i][j] = Rational(i == j ? 1 : 0);
    }
    return L;
}

LinearChange invert_change(const LinearChange& change) {
    std::array<std::array<Rational, 2 * kVars>, kVars> a;
    for (int i = 0; i < kVars; ++i) {
        for (int j = 0; j < kVars; ++j) {
            a[i][j] = change[i][j];
            a[i][kVars + j] = Rational(i == j ? 1 : 0);
        }
    }
    for (int c = 0; c < kVars; ++c) {
        int p = c;
        while (p < kVars && a[p][c].is_zero()) ++p;
        if (p == kVars) throw Error("invert_change: singular coordinate change");
        std::swap(a[p], a[c]);
        const Rational inv = Rational(1) / a[c][c];
        for (auto& x : a[c]) x *= inv;
        for (int i = 0; i < kVars; ++i) {
            if (i == c || a[i][c].is_zero()) continue;
            const Rational f = a[i][c];
            for (int j = 0; j < 2 * kVars; ++j) a[i][j] -= f * a[c][j];
        }
    }
    LinearChange out;
    for (int i = 0; i < kVars; ++i) {
        for (int j = 0; j < kVars; ++j) out[i][j] = a[i][kVars + j];
    }
    return out;
}

SpecialPair make_special_pair(const LinearChange& change, const QForm& q) {
    if (q.degree() != 2) throw Error("make_special_pair: q must be quadratic");
    if (determinant(to_matrix(change)).is_zero()) throw Error("make_special_pair: singular coordinate change");
    QForm prod012(3);
    prod012.add_term(Exponent{1, 1, 1, 0, 0}, Rational(1));
    QForm prod(5);
    prod.add_term(Exponent{1, 1, 1, 1, 1}, Rational(1));
    SpecialPair pair;
    pair.q = q;
    pair.change = change;
    pair.f2 = prod.substitute_linear(change);
    pair.f1 = (prod012 * q).substitute_linear(change);
    return pair;
}

SpecialPair special_quintics(std::uint64_t seed, long height) {
    Rng rng(seed);
    LinearChange L;
    for (int attempt = 0;; ++attempt) {
        if (attempt >= kResampleCap) throw Error("special_quintics: resample cap exceeded");
        for (auto& row : L) {
            for (auto& x : row) x = rng.rational(height);
        }
        if (!determinant(to_matrix(L)).is_zero()) break;
    }
    QForm q(2);
    while (q.is_zero()) {
        for (const auto& e : monomials(2)) q.add_term(e, rng.rational(height));
    }
    return make_special_pair(L, q);
}

bool verify_special_pair(const SpecialPair& pair) {
    const LinearChange inv = invert_change(pair.change);
    // Undo the coordinate change and compare with the defining products.
    QForm prod(5);
    prod.add_term(Exponent{1, 1, 1, 1, 1}, Rational(1));
    QForm prod012(3);
    prod012.add_term(Exponent{1, 1, 1, 0, 0}, Rational(1));
    return pair.f2.substitute_linear(inv) == prod && pair.f1.substitute_linear(inv) == prod012 * pair.q;
}

RationalCurve transform_curve(const RationalCurve& c, const LinearChange& change) {
    const int d = c.degree();
    std::array<QPoly, kVars> out{QPoly::zero(d, Rational()), QPoly::zero(d, Rational()), QPoly::zero(d, Rational()),
                                 QPoly::zero(d, Rational()), QPoly::zero(d, Rational())};
    for (int i = 0; i < kVars; ++i) {
        for (int j = 0; j < kVars; ++j) {
            if (!change[i][j].is_zero()) out[i] += c.component(j) * change[i][j];
        }
    }
    return RationalCurve(d, std::move(out));
}

IncidenceSample sample_off_incidence(int d, std::uint64_t seed, long height) {
    IncidenceSample s = sample_incidence(d, seed, true, height);
    Rng rng(mix_seed(seed, 0x0ff1));
    for (int attempt = 0; attempt < kResampleCap; ++attempt) {
        s.f0 = random_quintic(rng, height);
        s.a = Rational(0);
        s.b = Rational(0);
        const QPoly p0 = pullback(s.f0, s.c);
        if (!p0.is_zero_poly()) return s;
        s.retry_log.emplace_back("f0_vanishes_on_c");
    }
    throw Error("sample_off_incidence: resample cap exceeded");
}

IncidenceSample sample_special(int d, std::uint64_t seed, Center center, long height) {
    return center == Center::Incidence ? sample_incidence(d, seed, true, height)
                                       : sample_off_incidence(d, seed, height);
}

// ---------------------------------------------------------------------------

std::array<BigComplex, 3> deltas(const IncidenceSample& s, const BigComplex& t1, const BigComplex& t2) {
    const BigComplex F0a = value_at(s.f0, s.c, t1), F1a = value_at(s.f1, s.c, t1), F2a = value_at(s.f2, s.c, t1);
    const BigComplex F0b = value_at(s.f0, s.c, t2), F1b = value_at(s.f1, s.c, t2), F2b = value_at(s.f2, s.c, t2);
    return {F2a * F1b - F1a * F2b, F0a * F2b - F2a * F0b, F1a * F0b - F0a * F1b};
}

std::array<BigFloat, 3> delta_scales(const IncidenceSample& s, const BigComplex& t1, const BigComplex& t2) {
    const BigFloat F0a = abs(value_at(s.f0, s.c, t1)), F1a = abs(value_at(s.f1, s.c, t1)),
                   F2a = abs(value_at(s.f2, s.c, t1));
    const BigFloat F0b = abs(value_at(s.f0, s.c, t2)), F1b = abs(value_at(s.f1, s.c, t2)),
                   F2b = abs(value_at(s.f2, s.c, t2));
    return {F2a * F1b + F1a * F2b, F0a * F2b + F2a * F0b, F1a * F0b + F0a * F1b};
}

CPoly delta0_polynomial(const IncidenceSample& s, const BigComplex& t1) {
    const long prec = t1.precision();
    const BigComplex F1a = value_at(s.f1, s.c, t1);
    const BigComplex F2a = value_at(s.f2, s.c, t1);
    return to_complex(pullback(s.f1, s.c), prec) * F2a - to_complex(pullback(s.f2, s.c), prec) * F1a;
}

Delta0Solution solve_delta0(const IncidenceSample& s, const BigComplex& t1, const std::vector<BigComplex>& excluded,
                            long prec) {
    const BigComplex t = t1.with_precision(prec);
    const CPoly p = delta0_polynomial(s, t);
    BigFloat scale(prec);
    {
        const BigFloat a = abs(value_at(s.f2, s.c, t));
        const BigFloat b = abs(value_at(s.f1, s.c, t));
        const QPoly p1 = pullback(s.f1, s.c);
        const QPoly p2 = pullback(s.f2, s.c);
        for (const auto& x : p1.coeffs()) scale = max(scale, a * abs(BigFloat(x, prec)));
        for (const auto& x : p2.coeffs()) scale = max(scale, b * abs(BigFloat(x, prec)));
    }
    BigFloat pmax(prec);
    for (const auto& x : p.coeffs()) pmax = max(pmax, abs(x));
    if (pmax.is_zero() || pmax <= scale * two_pow(-prec / 2, prec)) {
        throw DegeneracyError("delta0_polynomial_zero", "F2(t1) F1(t) - F1(t1) F2(t) vanishes identically");
    }
    std::vector<BigComplex> rs = roots(p, prec);
    // Drop the trivial root t = t1.
    rs.erase(rs.begin() + nearest_index(rs, t));
    if (rs.empty()) throw DegeneracyError("delta0_no_root", "no root besides t1");
    const BigFloat floor = two_pow(-prec / 4, prec);
    int best = -1;
    BigFloat best_dist(prec);
    for (int k = 0; k < static_cast<int>(rs.size()); ++k) {
        BigFloat dist = abs(rs[k] - t);
        for (const auto& e : excluded) dist = min(dist, abs(rs[k] - e));
        if (best < 0 || dist > best_dist) {
            best = k;
            best_dist = dist;
        }
    }
    if (!(best_dist > floor)) throw DegeneracyError("delta0_no_root", "every root collides with an excluded point");
    Delta0Solution out{rs[best], BigFloat(prec), best_dist};
    const auto ds = deltas(s, t, out.t2);
    const auto sc = delta_scales(s, t, out.t2);
    out.relative_residual = sc[0].is_zero() ? abs(ds[0]) : abs(ds[0]) / sc[0];
    return out;
}

CForm build_f3(const BigComplex& delta1, const BigComplex& delta2, const SpecialPair& pair, BigFloat* factor_residual) {
    const long prec = std::max(delta1.precision(), delta2.precision());
    CForm f3 = to_complex(pair.f1, prec) * delta1 + to_complex(pair.f2, prec) * delta2;
    // z0 z1 z2 (delta1 q + delta2 z3 z4), then the coordinate change.
    CForm inner = to_complex(pair.q, prec) * delta1;
    CForm z34(2);
    z34.add_term(Exponent{0, 0, 0, 1, 1}, delta2);
    inner += z34;
    CForm z012(3);
    z012.add_term(Exponent{1, 1, 1, 0, 0}, BigComplex(1.0, 0.0, prec));
    const CForm expected = (z012 * inner).substitute_linear(to_complex(pair.change, prec));
    BigFloat worst(prec), scale(prec);
    const BigComplex zero(prec);
    for (const auto& e : monomials(5)) {
        const BigComplex a = f3.coeff(e, zero);
        scale = max(scale, abs(a));
        worst = max(worst, abs(a - expected.coeff(e, zero)));
    }
    const BigFloat rel = scale.is_zero() ? worst : worst / scale;
    if (!(rel <= two_pow(-prec / 2, prec))) {
        throw InternalError("build_f3: f3 does not factor as z0 z1 z2 (delta1 q + delta2 z3 z4)");
    }
    if (factor_residual) *factor_residual = rel;
    return f3;
}

// ---------------------------------------------------------------------------

PolarChart polar_chart(const RationalCurve& c, const LinearChange& change, long prec) {
    const int d = c.degree();
    const int n = c.dim();
    const RationalCurve ct = transform_curve(c, change);
    const auto cc = ct.to_complex(prec);
    PolarChart out;
    CMatrix jt(n, n, BigComplex(prec));
    int row = 0;
    for (int i = 0; i < kVars; ++i) {
        const auto rs = component_roots(cc[i], d, prec, "transformed component");
        const CPoly dp = cc[i].derivative();
        for (const auto& th : rs) {
            const BigComplex dv = dp.eval(th);
            BigComplex tk = one_like(th);
            for (int k = 0; k <= d; ++k) {
                jt(row, RationalCurve::index(d, i, k)) = -(tk / dv);
                tk *= th;
            }
            out.theta.push_back(th);
            ++row;
        }
    }
    for (int i = 0; i < kVars; ++i) {
        out.r[i] = cc[i][d];
        jt(row++, RationalCurve::index(d, i, d)) = BigComplex(1.0, 0.0, prec);
    }
    out.jacobian = jt * kron_change(change, d, prec);
    return out;
}

std::vector<BigComplex> QuasiPolarChart::coordinates() const {
    std::vector<BigComplex> out = theta;
    out.insert(out.end(), gamma.begin(), gamma.end());
    for (int i = 0; i < 4; ++i) out.push_back(r[i]);
    out.push_back(R);
    return out;
}

BigFloat QuasiPolarChart::leading_residual() const {
    std::array<BigComplex, kVars> rr = r;
    const BigComplex expect = to_complex(pair.q, precision).eval(rr) * delta1 + r[3] * r[4] * delta2;
    return abs(R - expect);
}

namespace {

// h coefficients: delta1 q(c~(t)) + delta2 c~3 c~4.
CPoly h_polynomial(const std::array<CPoly, kVars>& ct, const CForm& qc, const BigComplex& delta1,
                   const BigComplex& delta2, int d) {
    CPoly h = qc.compose(ct) * delta1 + (ct[3] * ct[4]) * delta2;
    return h.with_formal_degree(std::max(2 * d, h.degree()));
}

// Gradient of h(c~, t) at t = x with respect to c~ coefficient (i, k).
BigComplex h_weight(const std::array<CForm, kVars>& dq, const std::array<BigComplex, kVars>& z, const BigComplex& delta1,
                    const BigComplex& delta2, int i) {
    BigComplex w = dq[i].eval(z) * delta1;
    if (i == 3) w += z[4] * delta2;
    if (i == 4) w += z[3] * delta2;
    return w;
}

}  // namespace

QuasiPolarChart quasi_polar_chart(const RationalCurve& c, const SpecialPair& pair, const BigComplex& delta1,
                                  const BigComplex& delta2, long prec) {
    const int d = c.degree();
    const int n = c.dim();
    const RationalCurve ct = transform_curve(c, pair.change);
    const auto cc = ct.to_complex(prec);
    const BigComplex d1 = delta1.with_precision(prec);
    const BigComplex d2 = delta2.with_precision(prec);
    const CForm qc = to_complex(pair.q, prec);
    const std::array<CForm, kVars> dq = partials(qc);

    QuasiPolarChart ch{c, ct, pair, d1, d2};
    ch.precision = prec;
    for (int i = 0; i < kVars; ++i) {
        if (cc[i][d].is_zero()) throw DegeneracyError("r_vanishes", "leading coefficient r" + std::to_string(i) + " is zero");
        ch.r[i] = cc[i][d];
    }
    CMatrix jt(n, n, BigComplex(prec));
    int row = 0;
    for (int i = 0; i < 3; ++i) {
        const auto rs = component_roots(cc[i], d, prec, "transformed component");
        const CPoly dp = cc[i].derivative();
        for (const auto& th : rs) {
            const BigComplex dv = dp.eval(th);
            BigComplex tk = one_like(th);
            for (int k = 0; k <= d; ++k) {
                jt(row, RationalCurve::index(d, i, k)) = -(tk / dv);
                tk *= th;
            }
            ch.theta.push_back(th);
            ++row;
        }
    }
    ch.h = h_polynomial(cc, qc, d1, d2, d);
    ch.R = ch.h[2 * d];
    {
        BigFloat hmax(prec);
        for (const auto& x : ch.h.coeffs()) hmax = max(hmax, abs(x));
        if (hmax.is_zero() || abs(ch.R) <= hmax * two_pow(-prec / 4, prec)) {
            throw DegeneracyError("R_vanishes", "leading coefficient of h vanishes");
        }
    }
    ch.gamma = roots(ch.h, prec);
    const CPoly dh = ch.h.derivative();
    for (const auto& g : ch.gamma) {
        std::array<BigComplex, kVars> z{cc[0].eval(g), cc[1].eval(g), cc[2].eval(g), cc[3].eval(g), cc[4].eval(g)};
        const BigComplex dv = dh.eval(g);
        for (int i = 0; i < kVars; ++i) {
            const BigComplex w = h_weight(dq, z, d1, d2, i);
            BigComplex tk = one_like(g);
            for (int k = 0; k <= d; ++k) {
                jt(row, RationalCurve::index(d, i, k)) = -(w * tk / dv);
                tk *= g;
            }
        }
        ++row;
    }
    for (int i = 0; i < 4; ++i) jt(row++, RationalCurve::index(d, i, d)) = BigComplex(1.0, 0.0, prec);
    CMatrix jt4 = jt;
    for (int i = 0; i < kVars; ++i) {
        jt(row, RationalCurve::index(d, i, d)) = h_weight(dq, ch.r, d1, d2, i);
        jt4(row, RationalCurve::index(d, i, d)) = BigComplex(i == 4 ? 1.0 : 0.0, 0.0, prec);
    }

    // All 5d roots of f3 o c must be simple.
    const std::vector<BigComplex> all = [&] {
        std::vector<BigComplex> v = ch.theta;
        v.insert(v.end(), ch.gamma.begin(), ch.gamma.end());
        return v;
    }();
    const BigFloat sep = two_pow(-prec / 4, prec);
    for (size_t a = 0; a < all.size(); ++a) {
        for (size_t b = a + 1; b < all.size(); ++b) {
            if (abs(all[a] - all[b]) < sep * (BigFloat(1.0, prec) + abs(all[a]))) {
                throw DegeneracyError("repeated_chart_root", "theta/gamma roots collide");
            }
        }
    }

    const CMatrix k = kron_change(pair.change, d, prec);
    ch.jacobian = jt * k;
    ch.jacobian_r4 = jt4 * k;
    if (!(normalized_abs_det(ch.jacobian) > two_pow(-prec / 2, prec))) {
        throw DegeneracyError("singular_chart", "quasi-polar chart Jacobian is singular");
    }
    return ch;
}

std::vector<BigComplex> chart_coordinates_near(const QuasiPolarChart& ref, const std::vector<BigComplex>& coeffs) {
    const int d = ref.center.degree();
    const long prec = ref.precision;
    const LinearChange& L = ref.pair.change;
    // Transformed coefficient polynomials.
    std::array<CPoly, kVars> ct{CPoly::zero(d, BigComplex(prec)), CPoly::zero(d, BigComplex(prec)),
                                CPoly::zero(d, BigComplex(prec)), CPoly::zero(d, BigComplex(prec)),
                                CPoly::zero(d, BigComplex(prec))};
    for (int i = 0; i < kVars; ++i) {
        for (int k = 0; k <= d; ++k) {
            BigComplex acc(prec);
            for (int j = 0; j < kVars; ++j) acc += coeffs[RationalCurve::index(d, j, k)] * BigComplex(L[i][j], prec);
            ct[i][k] = acc;
        }
    }
    auto match = [](const std::vector<BigComplex>& reference, std::vector<BigComplex> found) {
        std::vector<BigComplex> out;
        for (const auto& x : reference) {
            const int k = nearest_index(found, x);
            out.push_back(found[k]);
            found.erase(found.begin() + k);
        }
        return out;
    };
    std::vector<BigComplex> out;
    for (int i = 0; i < 3; ++i) {
        const std::vector<BigComplex> ref_i(ref.theta.begin() + i * d, ref.theta.begin() + (i + 1) * d);
        const auto m = match(ref_i, roots(ct[i], prec));
        out.insert(out.end(), m.begin(), m.end());
    }
    const CPoly h = h_polynomial(ct, to_complex(ref.pair.q, prec), ref.delta1, ref.delta2, d);
    const auto g = match(ref.gamma, roots(h, prec));
    out.insert(out.end(), g.begin(), g.end());
    for (int i = 0; i < 4; ++i) out.push_back(ct[i][d]);
    out.push_back(h[2 * d]);
    return out;
}

CMatrix finite_difference_chart_jacobian(const QuasiPolarChart& ref, const BigFloat& step) {
    const int n = ref.dim();
    const long prec = ref.precision;
    std::vector<BigComplex> base;
    for (const auto& q : ref.center.coefficients()) base.emplace_back(q, prec);
    CMatrix j(n, n, BigComplex(prec));
    const BigComplex h(step.with_precision(prec), BigFloat(prec));
    const BigComplex two_h = h * BigComplex(2.0, 0.0, prec);
    for (int col = 0; col < n; ++col) {
        std::vector<BigComplex> plus = base, minus = base;
        plus[col] += h;
        minus[col] -= h;
        const auto cp = chart_coordinates_near(ref, plus);
        const auto cm = chart_coordinates_near(ref, minus);
        for (int row = 0; row < n; ++row) j(row, col) = (cp[row] - cm[row]) / two_h;
    }
    return j;
}

ArrangedPoints select_tpoints(const QuasiPolarChart& chart, const BigComplex& t1, const BigComplex& t2,
                              std::uint64_t seed) {
    const int d = chart.center.degree();
    const long prec = chart.precision;
    ArrangedPoints out;
    out.gamma_t1 = nearest_index(chart.gamma, t1);
    out.gamma_t2 = nearest_index(chart.gamma, t2);
    const BigFloat tol = two_pow(-prec / 4, prec);
    for (const auto& [idx, t] : {std::pair{out.gamma_t1, &t1}, std::pair{out.gamma_t2, &t2}}) {
        if (!(abs(chart.gamma[idx] - *t) <= tol * (BigFloat(1.0, prec) + abs(*t)))) {
            throw DegeneracyError("t_not_gamma", "t1/t2 is not a root of h after the arrangement");
        }
    }
    if (out.gamma_t1 == out.gamma_t2) throw DegeneracyError("t_collision", "t1 and t2 match the same gamma root");
    out.pts.t = {t1.with_precision(prec), t2.with_precision(prec)};
    for (int k = 0; k < 3 * d; ++k) {
        out.pts.t.push_back(chart.theta[k]);
        out.block_order.push_back(k);
    }
    for (int k = 0; k < 2 * d; ++k) {
        if (k == out.gamma_t1 || k == out.gamma_t2) continue;
        out.pts.t.push_back(chart.gamma[k]);
        out.block_order.push_back(3 * d + k);
    }
    out.block_order.push_back(3 * d + out.gamma_t1);
    out.block_order.push_back(3 * d + out.gamma_t2);
    for (int k = 0; k < 5; ++k) out.block_order.push_back(5 * d + k);

    Rng rng(seed);
    const BigFloat min_gap(1e-3, prec);
    for (int attempt = 0;; ++attempt) {
        if (attempt >= kResampleCap) throw DegeneracyError("t_collision", "no free point found");
        const BigComplex z = random_exact_point(rng).at(prec);
        bool ok = true;
        for (const auto& x : out.pts.t) ok = ok && abs(x - z) > min_gap;
        if (ok) {
            out.pts.t.push_back(z);
            break;
        }
    }
    out.min_separation = min_separation(out.pts);
    if (!(out.min_separation > tol)) throw DegeneracyError("t_collision", "sample points collide");
    return out;
}

RootJacobian root_jacobian_check(const QuasiPolarChart& chart, const CForm& f3) {
    const int d = chart.center.degree();
    const long prec = chart.precision;
    std::vector<BigComplex> rts = chart.theta;
    rts.insert(rts.end(), chart.gamma.begin(), chart.gamma.end());
    const auto d3 = partials(f3);
    CMatrix grads(5 * d, chart.dim(), BigComplex(prec));
    for (int k = 0; k < 5 * d; ++k) grads.set_row(k, value_gradient(d3, chart.center, rts[k]));
    const CMatrix a = grads * inverse(chart.jacobian);
    RootJacobian out;
    out.diag_min = BigFloat::infinity(prec);
    out.offdiag_max = BigFloat(prec);
    out.a12_max = BigFloat(prec);
    out.product_formula_residual = BigFloat(prec);
    const BigComplex lead = chart.r[0] * chart.r[1] * chart.r[2] * chart.R;
    for (int i = 0; i < 5 * d; ++i) {
        for (int j = 0; j < 5 * d; ++j) {
            const BigFloat v = abs(a(i, j));
            if (i == j) {
                out.diag_min = min(out.diag_min, v);
            } else {
                out.offdiag_max = max(out.offdiag_max, v);
            }
        }
        for (int j = 5 * d; j < chart.dim(); ++j) out.a12_max = max(out.a12_max, abs(a(i, j)));
        BigComplex expect = -lead;
        for (int m = 0; m < 5 * d; ++m) {
            if (m != i) expect *= rts[i] - rts[m];
        }
        out.product_formula_residual = max(out.product_formula_residual, relative_gap(a(i, i), expect));
    }
    return out;
}

Blocks block_decompose(const CMatrix& a, int d) {
    const int n = 5 * d + 5;
    const int m = 5 * d - 2;
    if (a.rows() != n || a.cols() != n) throw Error("block_decompose: expected a (5d+5) x (5d+5) matrix");
    return {a.block(0, 0, m, m), a.block(0, m, m, 7), a.block(m, 0, 7, m), a.block(m, m, 7, 7)};
}

CMatrix reorder_rows(const CMatrix& jac, const std::vector<int>& order) {
    CMatrix out(static_cast<int>(order.size()), jac.cols(), jac(0, 0));
    for (int i = 0; i < static_cast<int>(order.size()); ++i) out.set_row(i, jac.row(order[i]));
    return out;
}

BigFloat normalized_abs_det(const CMatrix& m, BigComplex* det) {
    const BigComplex dv = determinant(m);
    if (det) *det = dv;
    const BigFloat rn = row_norm_product(m);
    if (rn.is_zero()) return BigFloat(dv.precision());
    return abs(dv) / rn;
}

// ---------------------------------------------------------------------------

PencilPoint sample_pencil_point(int d, const SpecialPair& pair, Rng& rng, long height) {
    for (int attempt = 0; attempt < kResampleCap; ++attempt) {
        RationalCurve c = random_curve(d, height, rng);
        QuinticForm g(5);
        for (const auto& v : quintics_through(c)) g += v * rng.rational(height);
        const Rational b = rng.nonzero_rational(height);
        QuinticForm f0 = g - pair.f2 * b;
        if (pullback(pair.f2, c).is_zero_poly() || pullback(pair.f1, c).is_zero_poly()) continue;
        if (!(pullback(f0, c) + pullback(pair.f2, c) * b).is_zero_poly()) {
            throw InternalError("sample_pencil_point: pencil identity failed");
        }
        return PencilPoint{std::move(c), std::move(f0), b};
    }
    throw Error("sample_pencil_point: resample cap exceeded");
}

BigComplex j_invariant(const QuinticForm& f, const RationalCurve& c, const LinearChange& change, const BigComplex& t1,
                       const BigComplex& t2, BigComplex* three_by_three, BigFloat* scale) {
    const QuinticForm ft = f.substitute_linear(invert_change(change));
    const RationalCurve ct = transform_curve(c, change);
    const auto dft = partials(ft);
    auto weights = [&](const BigComplex& t) {
        const auto z = evaluate(ct, t);
        std::array<BigComplex, 3> w{z[2] * dft[2].eval(z), z[3] * dft[3].eval(z), z[4] * dft[4].eval(z)};
        return w;
    };
    const auto w1 = weights(t1);
    const auto w2 = weights(t2);
    const BigComplex f4a = w1[0] - w1[2], f5a = w1[1] - w1[2];
    const BigComplex f4b = w2[0] - w2[2], f5b = w2[1] - w2[2];
    if (three_by_three) {
        // |1 1 1; w(t1); w(t2)|
        *three_by_three = (w1[1] * w2[2] - w1[2] * w2[1]) - (w1[0] * w2[2] - w1[2] * w2[0]) +
                          (w1[0] * w2[1] - w1[1] * w2[0]);
    }
    if (scale) *scale = abs(f4a * f5b) + abs(f5a * f4b);
    return f4a * f5b - f5a * f4b;
}

PencilMetrics pencil_metrics(const PencilPoint& p, const SpecialPair& pair, const BigComplex& t1, long prec) {
    const int d = p.c.degree();
    IncidenceSample view{p.c};
    view.f0 = p.f0;
    view.f1 = pair.f1;
    view.f2 = pair.f2;
    view.d = d;
    const PolarChart polar = polar_chart(p.c, pair.change, prec);
    const std::vector<BigComplex> excluded(polar.theta.begin(), polar.theta.begin() + 3 * d);
    const Delta0Solution sol = solve_delta0(view, t1, excluded, prec);
    PencilMetrics out{t1.with_precision(prec), sol.t2};
    const CMatrix jinv = inverse(polar.jacobian);
    const std::array<const QuinticForm*, 3> forms{&pair.f2, &pair.f1, &p.f0};
    CMatrix rows(6, p.c.dim(), BigComplex(prec));
    int r = 0;
    for (const auto* f : forms) {
        const auto df = partials(*f);
        rows.set_row(r++, value_gradient(df, p.c, out.t1));
        rows.set_row(r++, value_gradient(df, p.c, out.t2));
    }
    const CMatrix polar_rows = rows * jinv;
    const std::vector<int> b_cols{0, d, 5 * d + 1, 5 * d + 2, 5 * d + 3, 5 * d + 4};
    CMatrix b(6, 6, BigComplex(prec));
    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) b(i, j) = polar_rows(i, b_cols[j]);
    }
    out.det_B_normalized = normalized_abs_det(b, &out.det_B);
    const std::vector<int> j_rows{0, 1, 4, 5};
    const std::vector<int> j_cols{0, 5 * d + 2, 5 * d + 3, 5 * d + 4};
    CMatrix j4(4, 4, BigComplex(prec));
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) j4(i, j) = polar_rows(j_rows[i], j_cols[j]);
    }
    out.det_Jac4_normalized = normalized_abs_det(j4, &out.det_Jac4);
    BigFloat scale(prec);
    out.J_f0 = j_invariant(p.f0, p.c, pair.change, out.t1, out.t2, &out.J_f0_3x3, &scale);
    out.J_f0_normalized = scale.is_zero() ? abs(out.J_f0) : abs(out.J_f0) / scale;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Arranged {
    BigComplex t2;
    std::array<BigComplex, 3> raw_deltas;
    BigFloat delta0_residual;
    BigFloat delta12_relative;
    BigFloat f3_residual;
    ArrangedPoints points;
    Blocks blocks;
    BigComplex det_A, det_A_linear, det_J, det_A11, det_A22, det_A22_r4;
    BigFloat det_A_norm, det_A22_norm, det_A22_r4_norm;
    BigFloat diag_min, offdiag_max, a12_max;
    int rank_A22 = 0;
};

bool collapsed(const BigFloat& rel, long prec) { return rel <= two_pow(-prec / 2, prec); }

// Roots of c~0, c~1, c~2: common zeros of f1 o c and f2 o c.
std::vector<BigComplex> theta_roots(const IncidenceSample& s, long prec) {
    const auto cc = transform_curve(s.c, s.pair->change).to_complex(prec);
    std::vector<BigComplex> out;
    for (int i = 0; i < 3; ++i) {
        const auto rs = component_roots(cc[i], s.d, prec, "transformed component");
        out.insert(out.end(), rs.begin(), rs.end());
    }
    return out;
}

// delta0 arrangement at precision `prec` and everything built on it.
Arranged arranged_chain(const IncidenceSample& s, const ExactPoint& t1e, const SpecOptions& opt, long prec,
                        std::uint64_t seed, bool full) {
    const int d = s.d;
    const SpecialPair& pair = *s.pair;
    const BigComplex t1 = t1e.at(prec);
    const Delta0Solution sol = solve_delta0(s, t1, theta_roots(s, prec), prec);
    const auto ds = deltas(s, t1, sol.t2);
    const auto sc = delta_scales(s, t1, sol.t2);
    Arranged out{sol.t2, ds, sol.relative_residual, max(abs(ds[1]) / sc[1], abs(ds[2]) / sc[2]), BigFloat(prec)};
    if (collapsed(out.delta12_relative, prec)) {
        throw DegeneracyError("delta_collapse", "delta1 and delta2 vanish together with delta0");
    }
    // (delta1, delta2) only matter projectively; unit max-modulus keeps R of order one.
    const BigFloat norm = max(abs(ds[1]), abs(ds[2]));
    const BigComplex d1 = ds[1] * (BigFloat(1.0, prec) / norm);
    const BigComplex d2 = ds[2] * (BigFloat(1.0, prec) / norm);
    const CForm f3 = build_f3(d1, d2, pair, &out.f3_residual);
    const QuasiPolarChart chart = quasi_polar_chart(s.c, pair, d1, d2, prec);
    out.points = select_tpoints(chart, t1, sol.t2, seed);
    const CMatrix a_lin = matrix_A(s, out.points.pts, f3);
    const CMatrix jb = reorder_rows(chart.jacobian, out.points.block_order);
    const CMatrix a = a_lin * inverse(jb);
    out.blocks = block_decompose(a, d);
    const int m = 5 * d - 2;
    out.diag_min = BigFloat::infinity(prec);
    out.offdiag_max = BigFloat(prec);
    out.a12_max = max_abs(out.blocks.a12);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i == j) {
                out.diag_min = min(out.diag_min, abs(out.blocks.a11(i, j)));
            } else {
                out.offdiag_max = max(out.offdiag_max, abs(out.blocks.a11(i, j)));
            }
        }
    }
    if (!full) return out;
    out.det_A_norm = normalized_abs_det(a, &out.det_A);
    out.det_A_linear = determinant(a_lin);
    out.det_J = determinant(jb);
    out.det_A11 = determinant(out.blocks.a11);
    out.det_A22_norm = normalized_abs_det(out.blocks.a22, &out.det_A22);
    const CMatrix a4 = a_lin * inverse(reorder_rows(chart.jacobian_r4, out.points.block_order));
    out.det_A22_r4_norm = normalized_abs_det(block_decompose(a4, d).a22, &out.det_A22_r4);
    if (prec >= required_precision(opt.rank_tol)) out.rank_A22 = numeric_rank(out.blocks.a22, opt.rank_tol).rank;
    return out;
}

BigFloat ratio(const BigFloat& num, const BigFloat& den) {
    if (den.is_zero()) return BigFloat::infinity(num.precision());
    return num / den;
}

}  // namespace

SpecializationReport verify_specialization_chain(const IncidenceSample& s, const SpecOptions& opt, std::uint64_t seed) {
    if (!s.pair) throw Error("verify_specialization_chain: sample has no special pair");
    const long prec = opt.precision;
    const SpecialPair& pair = *s.pair;
    Rng rng(seed);
    SpecializationReport rep;
    rep.center = (s.a.is_zero() && s.b.is_zero()) ? center_name(Center::OffIncidence) : center_name(Center::Incidence);

    std::optional<Arranged> arr;
    ExactPoint t1e{};
    for (int attempt = 0; attempt < opt.t1_attempts && !arr; ++attempt) {
        t1e = random_exact_point(rng);
        try {
            arr = arranged_chain(s, t1e, opt, prec, rng.next(), true);
        } catch (const DegeneracyError& e) {
            rep.log.push_back(e.predicate());
            if (e.predicate() == "delta_collapse") {
                rep.delta_collapse = true;
                // Record what the arrangement produced before giving up.
                const BigComplex t1 = t1e.at(prec);
                rep.t1 = t1;
                try {
                    const auto sol = solve_delta0(s, t1, theta_roots(s, prec), prec);
                    const auto ds = deltas(s, t1, sol.t2);
                    const auto sc = delta_scales(s, t1, sol.t2);
                    rep.t2 = sol.t2;
                    rep.delta0 = ds[0];
                    rep.delta1 = ds[1];
                    rep.delta2 = ds[2];
                    rep.delta0_residual = sol.relative_residual;
                    rep.delta12_relative = max(abs(ds[1]) / sc[1], abs(ds[2]) / sc[2]);
                    rep.pass_delta0 = rep.delta0_residual < BigFloat(opt.residual_tol, prec);
                } catch (const DegeneracyError&) {
                }
            }
        }
    }

    // The pencil-point matrices do not depend on the arrangement at c_g.
    try {
        const PencilPoint pp = sample_pencil_point(s.d, pair, rng, kDefaultHeight);
        rep.pencil = pencil_metrics(pp, pair, random_exact_point(rng).at(prec), prec);
    } catch (const DegeneracyError& e) {
        rep.log.push_back(e.predicate());
    }
    if (rep.pencil) {
        const BigFloat tol(opt.det_tol, prec);
        rep.pass_det_B = rep.pencil->det_B_normalized > tol;
        rep.pass_det_Jac4 = rep.pencil->det_Jac4_normalized > tol;
        rep.pass_J_f0 = rep.pencil->J_f0_normalized > tol;
    }

    if (!arr) {
        rep.failed_predicate = rep.delta_collapse ? "delta_collapse" : (rep.log.empty() ? "unknown" : rep.log.back());
        rep.pass = false;
        return rep;
    }

    rep.t1 = t1e.at(prec);
    rep.t2 = arr->t2;
    rep.points = arr->points.pts.t;
    rep.delta0 = arr->raw_deltas[0];
    rep.delta1 = arr->raw_deltas[1];
    rep.delta2 = arr->raw_deltas[2];
    rep.delta0_residual = arr->delta0_residual;
    rep.delta12_relative = arr->delta12_relative;
    rep.f3_factor_residual = arr->f3_residual;
    rep.diag_min = arr->diag_min;
    rep.offdiag_max = arr->offdiag_max;
    rep.a12_max = arr->a12_max;
    rep.offdiag_ratio = ratio(arr->offdiag_max, arr->diag_min);
    rep.a12_ratio = ratio(arr->a12_max, arr->diag_min);
    rep.det_A = arr->det_A;
    rep.det_A_linear = arr->det_A_linear;
    rep.det_chart_jacobian = arr->det_J;
    rep.det_A11 = arr->det_A11;
    rep.det_A22 = arr->det_A22;
    rep.det_A22_r4 = arr->det_A22_r4;
    rep.det_A_normalized = arr->det_A_norm;
    rep.det_A22_normalized = arr->det_A22_norm;
    rep.det_A22_r4_normalized = arr->det_A22_r4_norm;
    rep.rank_A22 = arr->rank_A22;
    rep.block_residual = relative_gap(arr->det_A, arr->det_A11 * arr->det_A22);
    rep.chain_residual = relative_gap(arr->det_A_linear, arr->det_A * arr->det_J);

    const BigFloat root_jacobian_tol(opt.root_jacobian_tol, prec);
    const BigFloat det_tol(opt.det_tol, prec);
    rep.pass_delta0 = rep.delta0_residual < BigFloat(opt.residual_tol, prec);
    rep.pass_deltas_generic = !collapsed(rep.delta12_relative, prec);
    rep.pass_root_jacobian = rep.offdiag_ratio < root_jacobian_tol && rep.a12_ratio < root_jacobian_tol;
    rep.pass_det_A = rep.det_A_normalized > det_tol;
    rep.pass_det_A22 = rep.det_A22_normalized > det_tol;
    rep.pass_rank_A22 = rep.rank_A22 == 7;
    rep.pass_block_identity = rep.block_residual < BigFloat(opt.block_tol, prec);
    rep.pass_chain_rule = rep.chain_residual < BigFloat(opt.chain_tol, prec);

    if (opt.precision_scaling) {
        rep.pass_monotone = true;
        for (long p : {128L, 256L, 512L}) {
            try {
                const Arranged a = p == prec ? *arr : arranged_chain(s, t1e, opt, p, mix_seed(seed, 0x5ca1e), false);
                rep.ratio_by_precision.push_back({ratio(a.offdiag_max, a.diag_min).with_precision(prec),
                                                  ratio(a.a12_max, a.diag_min).with_precision(prec)});
            } catch (const DegeneracyError& e) {
                rep.log.push_back(std::string("precision_scaling:") + e.predicate());
                rep.pass_monotone = false;
            }
        }
        if (rep.pass_monotone) {
            for (int k = 0; k < 2; ++k) {
                const BigFloat& lo = rep.ratio_by_precision[0][k];
                const BigFloat& mid = rep.ratio_by_precision[1][k];
                const BigFloat& hi = rep.ratio_by_precision[2][k];
                const bool all_zero = lo.is_zero() && mid.is_zero() && hi.is_zero();
                if (!(all_zero || (lo >= mid && mid >= hi && hi < lo))) rep.pass_monotone = false;
            }
        }
    } else {
        rep.pass_monotone = true;
    }

    rep.pass = rep.pass_delta0 && rep.pass_deltas_generic && rep.pass_root_jacobian && rep.pass_monotone &&
               rep.pass_det_A && rep.pass_det_A22 && rep.pass_rank_A22 && rep.pass_block_identity &&
               rep.pass_chain_rule && rep.pass_det_B && rep.pass_det_Jac4 && rep.pass_J_f0;
    if (!rep.pass && rep.failed_predicate.empty()) rep.failed_predicate = "claim_failed";
    return rep;
}

ChartConsistency chart_consistency(const IncidenceSample& s, const SpecOptions& opt, std::uint64_t seed) {
    if (!s.pair) throw Error("chart_consistency: sample has no special pair");
    const int d = s.d;
    const long prec = opt.precision;
    const SpecialPair& pair = *s.pair;
    Rng rng(seed);
    ChartConsistency out;

    // Generic (delta1, delta2) with unit max-modulus.
    const ExactPoint e1 = random_exact_point(rng);
    const ExactPoint e2 = random_exact_point(rng);
    BigComplex d1 = e1.at(prec), d2 = e2.at(prec);
    const BigFloat nrm = max(abs(d1), abs(d2));
    if (nrm.is_zero()) throw DegeneracyError("delta_zero", "random deltas vanished");
    d1 = d1 * (BigFloat(1.0, prec) / nrm);
    d2 = d2 * (BigFloat(1.0, prec) / nrm);
    const CForm f3 = build_f3(d1, d2, pair);
    const QuasiPolarChart chart = quasi_polar_chart(s.c, pair, d1, d2, prec);

    // Chain rule on a matrix A with chart-root sample points.
    SamplePoints<BigComplex> pts;
    pts.t.push_back(random_exact_point(rng).at(prec));
    pts.t.push_back(random_exact_point(rng).at(prec));
    for (int k = 0; k < 3 * d; ++k) pts.t.push_back(chart.theta[k]);
    for (int k = 0; k < 2 * d - 2; ++k) pts.t.push_back(chart.gamma[k]);
    pts.t.push_back(random_exact_point(rng).at(prec));
    if (!(min_separation(pts) > two_pow(-prec / 4, prec))) throw DegeneracyError("t_collision", "sample points collide");
    const CMatrix a_lin = matrix_A(s, pts, f3);
    const CMatrix a_chart = a_lin * inverse(chart.jacobian);
    out.chain_residual = relative_gap(determinant(a_lin), determinant(a_chart) * determinant(chart.jacobian));
    out.pass_chain_rule = out.chain_residual < BigFloat(opt.chain_tol, prec);

    // Finite-difference chart Jacobian: J * J_fd^{-1} = I.
    const CMatrix jfd = finite_difference_chart_jacobian(chart, BigFloat(1e-20, prec));
    const CMatrix prod = chart.jacobian * inverse(jfd);
    out.fd_identity_residual = BigFloat(prec);
    for (int i = 0; i < prod.rows(); ++i) {
        for (int j = 0; j < prod.cols(); ++j) {
            const BigComplex target(i == j ? 1.0 : 0.0, 0.0, prec);
            out.fd_identity_residual = max(out.fd_identity_residual, abs(prod(i, j) - target));
        }
    }
    out.pass_fd = out.fd_identity_residual < BigFloat(1e-10, prec);

    const RootJacobian lm = root_jacobian_check(chart, f3);
    out.offdiag_ratio = ratio(lm.offdiag_max, lm.diag_min);
    out.a12_ratio = ratio(lm.a12_max, lm.diag_min);
    out.pass_root_jacobian = out.offdiag_ratio < BigFloat(opt.root_jacobian_tol, prec) && out.a12_ratio < BigFloat(opt.root_jacobian_tol, prec);

    // Identity case: gamma = roots of c~3 and c~4, R = r3 r4.
    const QuasiPolarChart id = quasi_polar_chart(s.c, pair, BigComplex(0.0, 0.0, prec), BigComplex(1.0, 0.0, prec), prec);
    const auto cc = id.transformed.to_complex(prec);
    std::vector<BigComplex> polar = roots(cc[3], prec);
    const auto p4 = roots(cc[4], prec);
    polar.insert(polar.end(), p4.begin(), p4.end());
    out.identity_root_mismatch = BigFloat(prec);
    std::vector<BigComplex> pool = polar;
    for (const auto& g : id.gamma) {
        const int k = nearest_index(pool, g);
        out.identity_root_mismatch = max(out.identity_root_mismatch, abs(pool[k] - g) / (BigFloat(1.0, prec) + abs(g)));
        pool.erase(pool.begin() + k);
    }
    out.identity_root_mismatch = max(out.identity_root_mismatch, relative_gap(id.r[3] * id.r[4], id.R));
    const BigFloat match_tol = two_pow(-prec / 2, prec);
    out.identity_multiset_match = pool.empty() && id.gamma.size() == polar.size() && out.identity_root_mismatch < match_tol;
    // The theta block of the identity chart equals the polar chart of c~0..c~2.
    bool theta_same = true;
    for (size_t k = 0; k < id.theta.size(); ++k) theta_same = theta_same && id.theta[k] == chart.theta[k];
    out.pass_identity = out.identity_multiset_match && theta_same;

    out.pass = out.pass_chain_rule && out.pass_fd && out.pass_root_jacobian && out.pass_identity;
    return out;
}

}  // namespace clemens
