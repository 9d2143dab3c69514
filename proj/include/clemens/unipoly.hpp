#pragma once

#include <algorithm>
#include <vector>

#include "clemens/error.hpp"
#include "clemens/scalar.hpp"

namespace clemens {

/// Univariate polynomial in t. `coeffs()[k]` is the coefficient of t^k; the
/// formal degree is coeffs().size() - 1 and may exceed the actual degree, so
/// a binary form of degree n is stored with its value at infinity in the
/// top slot.
template <class S>
class UniPoly {
public:
    explicit UniPoly(std::vector<S> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw Error("UniPoly: empty coefficient list");
    }
    static UniPoly zero(int formal_degree, const S& proto) {
        return UniPoly(std::vector<S>(static_cast<size_t>(formal_degree) + 1, zero_like(proto)));
    }
    static UniPoly constant(const S& v) { return UniPoly(std::vector<S>{v}); }
    /// t as a polynomial.
    static UniPoly monomial(int k, const S& coef) {
        UniPoly p = zero(k, coef);
        p.c_[k] = coef;
        return p;
    }

    int formal_degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    /// Actual degree; -1 for the zero polynomial.
    int degree() const {
        for (int k = formal_degree(); k >= 0; --k) {
            if (!is_zero(c_[k])) return k;
        }
        return -1;
    }
    bool is_zero_poly() const { return degree() < 0; }

    const std::vector<S>& coeffs() const noexcept { return c_; }
    const S& operator[](int k) const { return c_.at(static_cast<size_t>(k)); }
    S& operator[](int k) { return c_.at(static_cast<size_t>(k)); }
    /// Coefficient of t^k, zero outside the stored range.
    S coeff(int k) const {
        if (k < 0 || k > formal_degree()) return zero_like(c_[0]);
        return c_[k];
    }
    /// Coefficient at the actual degree.
    S leading() const {
        const int n = degree();
        return n < 0 ? zero_like(c_[0]) : c_[n];
    }

    template <class T>
    T eval(const T& t) const {
        T acc = lift(c_.back(), t);
        for (int k = formal_degree() - 1; k >= 0; --k) {
            acc *= t;
            acc += lift(c_[k], t);
        }
        return acc;
    }

    UniPoly derivative() const {
        if (formal_degree() == 0) return zero(0, c_[0]);
        std::vector<S> d;
        d.reserve(c_.size() - 1);
        for (int k = 1; k <= formal_degree(); ++k) d.push_back(c_[k] * from_int(k, c_[k]));
        return UniPoly(std::move(d));
    }

    UniPoly with_formal_degree(int n) const {
        if (n < degree()) throw Error("UniPoly: formal degree below actual degree");
        std::vector<S> out(static_cast<size_t>(n) + 1, zero_like(c_[0]));
        for (int k = 0; k <= std::min(n, formal_degree()); ++k) out[k] = c_[k];
        return UniPoly(std::move(out));
    }

    UniPoly& operator+=(const UniPoly& o) {
        if (o.formal_degree() > formal_degree()) c_.resize(o.c_.size(), zero_like(c_[0]));
        for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    UniPoly& operator-=(const UniPoly& o) {
        if (o.formal_degree() > formal_degree()) c_.resize(o.c_.size(), zero_like(c_[0]));
        for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        return *this;
    }
    UniPoly& operator*=(const S& s) {
        for (auto& x : c_) x *= s;
        return *this;
    }
    friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
    friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
    friend UniPoly operator*(UniPoly a, const S& s) { return a *= s; }
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        UniPoly r = zero(a.formal_degree() + b.formal_degree(), a.c_[0]);
        for (int i = 0; i <= a.formal_degree(); ++i) {
            if (is_zero(a.c_[i])) continue;
            for (int j = 0; j <= b.formal_degree(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }
    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        const int n = std::max(a.formal_degree(), b.formal_degree());
        for (int k = 0; k <= n; ++k) {
            if (!(a.coeff(k) == b.coeff(k))) return false;
        }
        return true;
    }

private:
    static BigComplex lift(const Rational& q, const BigComplex& t) { return BigComplex(q, t.precision()); }
    static const S& lift(const S& s, const S&) { return s; }

    std::vector<S> c_;
};

using QPoly = UniPoly<Rational>;
using CPoly = UniPoly<BigComplex>;

CPoly to_complex(const QPoly& p, long prec);

/// Euclidean division over Q; throws on a zero divisor.
std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
/// Monic gcd over Q (zero polynomial if both inputs vanish).
QPoly gcd(const QPoly& a, const QPoly& b);
QPoly monic(const QPoly& p);

}  // namespace clemens
