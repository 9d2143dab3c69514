#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "clemens/unipoly.hpp"

namespace clemens {

inline constexpr int kVars = 5;
using Exponent = std::array<std::uint8_t, kVars>;

/// "e0e1e2e3e4" key used in sample files, e.g. "20111".
std::string exponent_key(const Exponent& e);
Exponent parse_exponent_key(const std::string& key);
/// All exponent vectors of total degree `deg`, in lexicographic order.
const std::vector<Exponent>& monomials(int deg);

/// Homogeneous form of fixed degree in z0..z4 with sparse coefficients.
/// Zero coefficients are never stored.
template <class S>
class MultiForm {
public:
    using Terms = std::map<Exponent, S>;

    explicit MultiForm(int degree) : degree_(degree) {
        if (degree < 0) throw Error("MultiForm: negative degree");
    }

    int degree() const noexcept { return degree_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    size_t size() const noexcept { return terms_.size(); }

    /// Adds `v` to the coefficient of z^e.
    void add_term(const Exponent& e, const S& v) {
        int s = 0;
        for (auto x : e) s += x;
        if (s != degree_) throw Error("MultiForm: exponent does not match degree");
        if (clemens::is_zero(v)) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, v);
        } else {
            it->second += v;
            if (clemens::is_zero(it->second)) terms_.erase(it);
        }
    }

    /// Coefficient of z^e, or `zero` when absent.
    S coeff(const Exponent& e, const S& zero) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? zero : it->second;
    }

    /// z_i as a linear form.
    static MultiForm variable(int i, const S& one) {
        MultiForm f(1);
        Exponent e{};
        e[i] = 1;
        f.add_term(e, one);
        return f;
    }

    MultiForm& operator+=(const MultiForm& o) {
        check_same_degree(o);
        for (const auto& [e, v] : o.terms_) add_term(e, v);
        return *this;
    }
    MultiForm& operator-=(const MultiForm& o) {
        check_same_degree(o);
        for (const auto& [e, v] : o.terms_) add_term(e, -v);
        return *this;
    }
    MultiForm& operator*=(const S& s) {
        if (clemens::is_zero(s)) {
            terms_.clear();
            return *this;
        }
        for (auto& kv : terms_) kv.second *= s;
        return *this;
    }
    friend MultiForm operator+(MultiForm a, const MultiForm& b) { return a += b; }
    friend MultiForm operator-(MultiForm a, const MultiForm& b) { return a -= b; }
    friend MultiForm operator*(MultiForm a, const S& s) { return a *= s; }
    friend MultiForm operator*(const MultiForm& a, const MultiForm& b) {
        MultiForm r(a.degree_ + b.degree_);
        for (const auto& [ea, va] : a.terms_) {
            for (const auto& [eb, vb] : b.terms_) {
                Exponent e;
                for (int i = 0; i < kVars; ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
                r.add_term(e, va * vb);
            }
        }
        return r;
    }
    friend bool operator==(const MultiForm& a, const MultiForm& b) {
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    /// d/dz_i.
    MultiForm derivative(int i) const {
        MultiForm r(degree_ > 0 ? degree_ - 1 : 0);
        if (degree_ == 0) return r;
        for (const auto& [e, v] : terms_) {
            if (e[i] == 0) continue;
            Exponent f = e;
            f[i] = static_cast<std::uint8_t>(f[i] - 1);
            r.add_term(f, v * from_int(e[i], v));
        }
        return r;
    }

    /// Value at a point; T may be S or (for rational forms) BigComplex.
    template <class T>
    T eval(const std::array<T, kVars>& z) const {
        T acc = zero_like(z[0]);
        if (terms_.empty()) return acc;
        // Powers z_i^k for k <= degree.
        std::vector<std::vector<T>> pw(kVars);
        for (int i = 0; i < kVars; ++i) {
            pw[i].reserve(static_cast<size_t>(degree_) + 1);
            pw[i].push_back(one_like(z[i]));
            for (int k = 1; k <= degree_; ++k) pw[i].push_back(pw[i].back() * z[i]);
        }
        for (const auto& [e, v] : terms_) {
            T m = lift(v, z[0]);
            for (int i = 0; i < kVars; ++i) {
                if (e[i]) m *= pw[i][e[i]];
            }
            acc += m;
        }
        return acc;
    }

    /// Exact composition f(p0(t), ..., p4(t)); formal degree = degree * max formal degree.
    template <class T>
    UniPoly<T> compose(const std::array<UniPoly<T>, kVars>& p) const {
        int fd = 0;
        for (const auto& x : p) fd = std::max(fd, x.formal_degree());
        const T proto = zero_like(p[0][0]);
        UniPoly<T> out = UniPoly<T>::zero(degree_ * fd, proto);
        if (terms_.empty()) return out;
        std::vector<std::vector<UniPoly<T>>> pw(kVars);
        for (int i = 0; i < kVars; ++i) {
            pw[i].push_back(UniPoly<T>::constant(one_like(proto)));
            for (int k = 1; k <= degree_; ++k) pw[i].push_back(pw[i].back() * p[i]);
        }
        for (const auto& [e, v] : terms_) {
            UniPoly<T> m = UniPoly<T>::constant(lift(v, proto));
            for (int i = 0; i < kVars; ++i) {
                if (e[i]) m = m * pw[i][e[i]];
            }
            out += m;
        }
        return out.with_formal_degree(degree_ * fd);
    }

    /// f(L z), where (L z)_i = sum_j L[i][j] z_j.
    MultiForm substitute_linear(const std::array<std::array<S, kVars>, kVars>& L) const {
        MultiForm r(degree_);
        if (terms_.empty()) return r;
        const S& proto = terms_.begin()->second;
        std::array<MultiForm, kVars> lin{MultiForm(1), MultiForm(1), MultiForm(1), MultiForm(1), MultiForm(1)};
        for (int i = 0; i < kVars; ++i) {
            for (int j = 0; j < kVars; ++j) lin[i] += variable(j, one_like(proto)) * L[i][j];
        }
        std::vector<std::vector<MultiForm>> pw(kVars);
        for (int i = 0; i < kVars; ++i) {
            MultiForm one(0);
            one.add_term(Exponent{}, one_like(proto));
            pw[i].push_back(one);
            for (int k = 1; k <= degree_; ++k) pw[i].push_back(pw[i].back() * lin[i]);
        }
        for (const auto& [e, v] : terms_) {
            MultiForm m(0);
            m.add_term(Exponent{}, v);
            for (int i = 0; i < kVars; ++i) {
                if (e[i]) m = m * pw[i][e[i]];
            }
            r += m;
        }
        return r;
    }

private:
    void check_same_degree(const MultiForm& o) const {
        if (o.degree_ != degree_) throw Error("MultiForm: degree mismatch");
    }
    static BigComplex lift(const Rational& q, const BigComplex& proto) { return BigComplex(q, proto.precision()); }
    static const S& lift(const S& s, const S&) { return s; }

    int degree_;
    Terms terms_;
};

using QForm = MultiForm<Rational>;
using CForm = MultiForm<BigComplex>;

CForm to_complex(const QForm& f, long prec);

}  // namespace clemens
