#include "clemens/curves.hpp"

#include "clemens/roots.hpp"

namespace clemens {

namespace {

bool has_common_projective_root(int d, const std::array<QPoly, kVars>& c) {
    bool any_leading = false;
    for (const auto& p : c) any_leading = any_leading || !p.coeff(d).is_zero();
    if (!any_leading) return true;
    QPoly g = c[0];
    for (int i = 1; i < kVars; ++i) g = gcd(g, c[i]);
    return g.degree() != 0;
}

// Squarefree components with pairwise coprime, exact-degree-d components.
bool distinct_component_roots(int d, const std::array<QPoly, kVars>& c) {
    for (const auto& p : c) {
        if (p.degree() != d) return false;
        if (gcd(p, p.derivative()).degree() != 0) return false;
    }
    for (int i = 0; i < kVars; ++i) {
        for (int j = i + 1; j < kVars; ++j) {
            if (gcd(c[i], c[j]).degree() != 0) return false;
        }
    }
    return true;
}

}  // namespace

RationalCurve::RationalCurve(int d, std::array<QPoly, kVars> components) : d_(d), c_(std::move(components)) {
    if (d < 1) throw Error("RationalCurve: degree must be >= 1");
    for (auto& p : c_) {
        if (p.degree() > d) throw Error("RationalCurve: component degree exceeds d");
        p = p.with_formal_degree(d);
    }
    if (has_common_projective_root(d, c_)) {
        throw DegeneracyError("common_root", "components share a projective root");
    }
}

RationalCurve RationalCurve::from_coefficients(int d, const std::vector<Rational>& coeffs) {
    if (static_cast<int>(coeffs.size()) != kVars * (d + 1)) {
        throw Error("RationalCurve: expected " + std::to_string(kVars * (d + 1)) + " coefficients");
    }
    std::array<QPoly, kVars> comps{QPoly::zero(d, Rational()), QPoly::zero(d, Rational()), QPoly::zero(d, Rational()),
                                   QPoly::zero(d, Rational()), QPoly::zero(d, Rational())};
    for (int i = 0; i < kVars; ++i) {
        for (int k = 0; k <= d; ++k) comps[i][k] = coeffs[index(d, i, k)];
    }
    return RationalCurve(d, std::move(comps));
}

std::vector<Rational> RationalCurve::coefficients() const {
    std::vector<Rational> out(static_cast<size_t>(dim()));
    for (int i = 0; i < kVars; ++i) {
        for (int k = 0; k <= d_; ++k) out[index(d_, i, k)] = c_[i][k];
    }
    return out;
}

std::array<CPoly, kVars> RationalCurve::to_complex(long prec) const {
    return {clemens::to_complex(c_[0], prec), clemens::to_complex(c_[1], prec), clemens::to_complex(c_[2], prec),
            clemens::to_complex(c_[3], prec), clemens::to_complex(c_[4], prec)};
}

RationalCurve random_curve(int d, long height, std::uint64_t seed) {
    Rng rng(seed);
    return random_curve(d, height, rng);
}

RationalCurve random_curve(int d, long height, Rng& rng, int* resamples) {
    if (d < 1) throw Error("random_curve: d must be >= 1");
    if (height < 2) throw Error("random_curve: height must be >= 2");
    for (int attempt = 0; attempt < kResampleCap; ++attempt) {
        std::array<QPoly, kVars> comps{QPoly::zero(d, Rational()), QPoly::zero(d, Rational()),
                                       QPoly::zero(d, Rational()), QPoly::zero(d, Rational()),
                                       QPoly::zero(d, Rational())};
        for (auto& p : comps) {
            for (int k = 0; k <= d; ++k) p[k] = rng.rational(height);
        }
        if (!distinct_component_roots(d, comps) || has_common_projective_root(d, comps)) {
            if (resamples) ++*resamples;
            continue;
        }
        return RationalCurve(d, std::move(comps));
    }
    throw Error("random_curve: resample cap exceeded");
}

std::vector<QPoly> derivative_minors(const RationalCurve& c) {
    const int d = c.degree();
    std::vector<QPoly> out;
    const int fd = std::max(2 * d - 2, 0);
    for (int i = 0; i < kVars; ++i) {
        for (int j = i + 1; j < kVars; ++j) {
            const QPoly& ci = c.component(i);
            const QPoly& cj = c.component(j);
            QPoly m = ci * cj.derivative() - cj * ci.derivative();
            out.push_back(m.with_formal_degree(std::max(fd, m.degree())));
        }
    }
    return out;
}

bool immersion_check(const RationalCurve& c) {
    const int d = c.degree();
    const std::vector<QPoly> minors = derivative_minors(c);
    QPoly g = QPoly::zero(0, Rational());
    bool infinity_ok = false;
    for (const auto& m : minors) {
        g = gcd(g, m);
        if (!m.coeff(2 * d - 2).is_zero()) infinity_ok = true;
    }
    return g.degree() == 0 && infinity_ok;
}

bool birationality_probe(const RationalCurve& c, int trials, std::uint64_t seed) {
    if (trials < 10) throw Error("birationality_probe: trials must be >= 10");
    const int d = c.degree();
    Rng rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        const Rational s = rng.rational(1 << 20);
        const auto cs = evaluate(c, s);
        bool zero_point = true;
        for (const auto& x : cs) zero_point = zero_point && x.is_zero();
        if (zero_point) continue;
        QPoly g = QPoly::zero(0, Rational());
        bool infinity_in_fibre = true;
        for (int i = 0; i < kVars; ++i) {
            for (int j = i + 1; j < kVars; ++j) {
                const QPoly m = c.component(j) * cs[i] - c.component(i) * cs[j];
                g = gcd(g, m);
                if (!m.coeff(d).is_zero()) infinity_in_fibre = false;
            }
        }
        if (infinity_in_fibre) return false;
        // Strip the trivial fibre point t = s (with multiplicity).
        const QPoly lin(std::vector<Rational>{-s, Rational(1)});
        while (g.degree() > 0 && g.eval(s).is_zero()) g = divmod(g, lin).first;
        if (g.degree() > 0) return false;
    }
    return true;
}

RationalCurve reparametrize(const RationalCurve& c, const Rational& alpha, const Rational& beta,
                            const Rational& gamma, const Rational& e) {
    if ((alpha * e - beta * gamma).is_zero()) throw Error("reparametrize: singular Moebius map");
    const int d = c.degree();
    const QPoly num(std::vector<Rational>{beta, alpha});
    const QPoly den(std::vector<Rational>{e, gamma});
    std::vector<QPoly> num_pw{QPoly::constant(Rational(1))};
    std::vector<QPoly> den_pw{QPoly::constant(Rational(1))};
    for (int k = 1; k <= d; ++k) {
        num_pw.push_back(num_pw.back() * num);
        den_pw.push_back(den_pw.back() * den);
    }
    std::array<QPoly, kVars> out{QPoly::zero(d, Rational()), QPoly::zero(d, Rational()), QPoly::zero(d, Rational()),
                                 QPoly::zero(d, Rational()), QPoly::zero(d, Rational())};
    for (int i = 0; i < kVars; ++i) {
        for (int k = 0; k <= d; ++k) {
            out[i] += (num_pw[k] * den_pw[d - k]) * c.component(i)[k];
        }
        out[i] = out[i].with_formal_degree(d);
    }
    return RationalCurve(d, std::move(out));
}

CPoly from_roots(const BigComplex& r, const std::vector<BigComplex>& rs) {
    CPoly p = CPoly::constant(r);
    for (const auto& x : rs) p = p * CPoly(std::vector<BigComplex>{-x, one_like(x)});
    return p;
}

PolarCoordinates polar_coordinates(const RationalCurve& c, long prec) {
    const int d = c.degree();
    PolarCoordinates out;
    out.reconstruction_residual = BigFloat(prec);
    for (int i = 0; i < kVars; ++i) {
        const QPoly& p = c.component(i);
        if (p.degree() != d) throw DegeneracyError("root_at_infinity", "component " + std::to_string(i) + " drops degree");
        out.r[i] = p[d];
        const CPoly pc = clemens::to_complex(p, prec);
        out.theta[i] = roots(pc, prec);
        const CPoly back = from_roots(BigComplex(p[d], prec), out.theta[i]);
        BigFloat scale(prec);
        BigFloat err(prec);
        for (int k = 0; k <= d; ++k) {
            scale = max(scale, abs(pc[k]));
            err = max(err, abs(back[k] - pc[k]));
        }
        out.reconstruction_residual = max(out.reconstruction_residual, err / scale);
    }
    return out;
}

}  // namespace clemens
