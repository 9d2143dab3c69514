#include "clemens/roots.hpp"

#include <algorithm>
#include <cmath>

namespace clemens {

namespace {

BigFloat max_coeff(const CPoly& p, long prec) {
    BigFloat m(prec);
    for (const auto& c : p.coeffs()) m = max(m, abs(c));
    return m;
}

// p(z) and p'(z) in one Horner pass.
void eval_with_derivative(const std::vector<BigComplex>& a, const BigComplex& z, BigComplex& p, BigComplex& dp) {
    const int n = static_cast<int>(a.size()) - 1;
    p = a[n];
    dp = zero_like(z);
    for (int k = n - 1; k >= 0; --k) {
        dp *= z;
        dp += p;
        p *= z;
        p += a[k];
    }
}

}  // namespace

std::vector<BigComplex> roots(const CPoly& poly, long precision) {
    if (precision < kMinPrecision) throw Error("roots: precision below 64 bits");
    const int n = poly.degree();
    if (n < 0) throw Error("roots: zero polynomial");
    if (n == 0) return {};
    std::vector<BigComplex> a;
    a.reserve(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) a.push_back(poly[k].with_precision(precision));
    const CPoly p(a);

    BigFloat ratio(precision);
    for (int k = 0; k < n; ++k) ratio = max(ratio, abs(a[k] / a[n]));
    const double radius = 1.0 + std::min(ratio.to_double(), 1e300);

    std::vector<BigComplex> z;
    z.reserve(static_cast<size_t>(n));
    const double two_pi = 6.283185307179586;
    for (int k = 0; k < n; ++k) {
        const double ang = two_pi * k / n + 0.4;
        const double rad = radius * (1.0 + 0.03 * k / n);
        z.emplace_back(rad * std::cos(ang), rad * std::sin(ang), precision);
    }

    const BigFloat step_tol = ldexp(BigFloat(1.0, precision), -(precision - 16));
    std::vector<bool> done(static_cast<size_t>(n), false);
    BigComplex pv(precision), dpv(precision);
    int iter = 0;
    for (; iter < kRootIterationCap; ++iter) {
        bool all_done = true;
        for (int k = 0; k < n; ++k) {
            if (done[k]) continue;
            eval_with_derivative(a, z[k], pv, dpv);
            if (pv.is_zero()) {
                done[k] = true;
                continue;
            }
            if (dpv.is_zero()) {
                all_done = false;
                continue;
            }
            const BigComplex w = pv / dpv;
            BigComplex s(precision);
            for (int j = 0; j < n; ++j) {
                if (j != k) s += one_like(s) / (z[k] - z[j]);
            }
            const BigComplex corr = w / (one_like(w) - w * s);
            z[k] -= corr;
            if (abs(corr) <= step_tol * (BigFloat(1.0, precision) + abs(z[k]))) {
                done[k] = true;
            } else {
                all_done = false;
            }
        }
        if (all_done) break;
    }

    // Newton polish.
    for (int k = 0; k < n; ++k) {
        for (int it = 0; it < 3; ++it) {
            eval_with_derivative(a, z[k], pv, dpv);
            if (pv.is_zero() || dpv.is_zero()) break;
            z[k] -= pv / dpv;
        }
    }

    const BigFloat res = max_relative_residual(p, z);
    const BigFloat bound = ldexp(BigFloat(1.0, precision), -(precision / 2));
    if (!(res < bound)) {
        throw RootNonConvergence("achieved relative residual " + res.decimal(6) + " after " +
                                     std::to_string(iter) + " iterations",
                                 res);
    }

    const BigFloat sep = ldexp(BigFloat(1.0, precision), -(precision / 4));
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (abs(z[i] - z[j]) < sep * (BigFloat(1.0, precision) + abs(z[i]))) {
                throw DegeneracyError("multiple_root", "two roots coincide to working tolerance");
            }
        }
    }
    std::sort(z.begin(), z.end(), lex_less);
    return z;
}

BigFloat max_relative_residual(const CPoly& p, const std::vector<BigComplex>& rs) {
    const long prec = p[0].precision();
    const BigFloat m = max_coeff(p, prec);
    BigFloat worst(prec);
    if (m.is_zero()) return worst;
    for (const auto& r : rs) worst = max(worst, abs(p.eval(r)) / m);
    return worst;
}

int nearest_index(const std::vector<BigComplex>& xs, const BigComplex& z) {
    if (xs.empty()) throw Error("nearest_index: empty list");
    int best = 0;
    BigFloat bd = abs(xs[0] - z);
    for (int i = 1; i < static_cast<int>(xs.size()); ++i) {
        BigFloat d = abs(xs[i] - z);
        if (d < bd) {
            bd = std::move(d);
            best = i;
        }
    }
    return best;
}

}  // namespace clemens
