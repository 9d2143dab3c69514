#pragma once

#include <string>

#include "clemens/bigfloat.hpp"

namespace clemens {

/// Complex number with MPFR real and imaginary parts.
class BigComplex {
public:
    BigComplex() : BigComplex(kDefaultPrecision) {}
    explicit BigComplex(long prec) : re_(prec), im_(prec) {}
    BigComplex(BigFloat re, BigFloat im);
    BigComplex(const Rational& q, long prec) : re_(q, prec), im_(prec) {}
    BigComplex(double re, double im, long prec) : re_(re, prec), im_(im, prec) {}

    const BigFloat& real() const noexcept { return re_; }
    const BigFloat& imag() const noexcept { return im_; }
    long precision() const noexcept;
    BigComplex with_precision(long prec) const;

    bool is_zero() const noexcept { return re_.is_zero() && im_.is_zero(); }
    bool is_finite() const noexcept { return re_.is_finite() && im_.is_finite(); }

    BigComplex conj() const { return BigComplex(re_, -im_); }
    /// |z|^2
    BigFloat norm2() const { return re_ * re_ + im_ * im_; }

    BigComplex& operator+=(const BigComplex& o);
    BigComplex& operator-=(const BigComplex& o);
    BigComplex& operator*=(const BigComplex& o);
    BigComplex& operator/=(const BigComplex& o);
    BigComplex& operator*=(const BigFloat& s);

    friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
    friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
    friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
    friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
    friend BigComplex operator*(BigComplex a, const BigFloat& s) { return a *= s; }
    friend BigComplex operator-(const BigComplex& a) { return BigComplex(-a.re_, -a.im_); }

    friend bool operator==(const BigComplex& a, const BigComplex& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

private:
    BigFloat re_;
    BigFloat im_;
};

BigFloat abs(const BigComplex& z);

/// Lexicographic (real, imaginary) order used to canonicalise root lists.
bool lex_less(const BigComplex& a, const BigComplex& b);

}  // namespace clemens
