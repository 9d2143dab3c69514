#include "clemens/bigcomplex.hpp"

#include <algorithm>

#include "clemens/error.hpp"

namespace clemens {

BigComplex::BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {
    const long p = std::max(re_.precision(), im_.precision());
    if (re_.precision() != p) re_ = re_.with_precision(p);
    if (im_.precision() != p) im_ = im_.with_precision(p);
}

long BigComplex::precision() const noexcept { return re_.precision(); }

BigComplex BigComplex::with_precision(long prec) const {
    return BigComplex(re_.with_precision(prec), im_.with_precision(prec));
}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) {
    BigFloat re = re_ * o.re_ - im_ * o.im_;
    BigFloat im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
}

BigComplex& BigComplex::operator*=(const BigFloat& s) {
    re_ *= s;
    im_ *= s;
    return *this;
}

BigComplex& BigComplex::operator/=(const BigComplex& o) {
    if (o.is_zero()) throw Error("BigComplex: division by zero");
    // Smith's algorithm avoids overflow in |o|^2.
    if (abs(o.re_) >= abs(o.im_)) {
        const BigFloat r = o.im_ / o.re_;
        const BigFloat den = o.re_ + o.im_ * r;
        BigFloat re = (re_ + im_ * r) / den;
        BigFloat im = (im_ - re_ * r) / den;
        re_ = std::move(re);
        im_ = std::move(im);
    } else {
        const BigFloat r = o.re_ / o.im_;
        const BigFloat den = o.re_ * r + o.im_;
        BigFloat re = (re_ * r + im_) / den;
        BigFloat im = (im_ * r - re_) / den;
        re_ = std::move(re);
        im_ = std::move(im);
    }
    return *this;
}

BigFloat abs(const BigComplex& z) { return hypot(z.real(), z.imag()); }

bool lex_less(const BigComplex& a, const BigComplex& b) {
    if (a.real() < b.real()) return true;
    if (b.real() < a.real()) return false;
    return a.imag() < b.imag();
}

}  // namespace clemens
