#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

#include "clemens/rational.hpp"

namespace clemens {

inline constexpr long kDefaultPrecision = 256;
inline constexpr long kMinPrecision = 64;

/// Arbitrary-precision binary float (MPFR, round-to-nearest). Binary
/// operations produce a result at the larger of the operand precisions.
class BigFloat {
public:
    BigFloat() : BigFloat(kDefaultPrecision) {}
    explicit BigFloat(long prec);
    BigFloat(double v, long prec);
    BigFloat(const Rational& q, long prec);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    long precision() const noexcept { return static_cast<long>(mpfr_get_prec(v_)); }
    /// Copy rounded (or zero-extended) to `prec` bits.
    BigFloat with_precision(long prec) const;

    mpfr_srcptr raw() const noexcept { return v_; }
    mpfr_ptr raw() noexcept { return v_; }

    bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
    int sign() const noexcept { return mpfr_sgn(v_); }
    double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
    /// Base-2 exponent e with 0.5 <= |x| / 2^e < 1; LONG_MIN for zero.
    long exponent2() const noexcept;

    /// Hexadecimal float "0x1.8p+3" / "-0x..." / "0"; exact round-trip.
    std::string hex() const;
    /// Decimal string with `digits` significant digits.
    std::string decimal(int digits) const;
    static BigFloat parse(std::string_view text, long prec);

    static BigFloat infinity(long prec);

    BigFloat& operator+=(const BigFloat& o);
    BigFloat& operator-=(const BigFloat& o);
    BigFloat& operator*=(const BigFloat& o);
    BigFloat& operator/=(const BigFloat& o);

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
    friend BigFloat operator-(const BigFloat& a);

    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);

private:
    mpfr_t v_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat hypot(const BigFloat& x, const BigFloat& y);
BigFloat ldexp(const BigFloat& x, long e);
/// 10^e at the given precision.
BigFloat pow10(long e, long prec);
const BigFloat& max(const BigFloat& a, const BigFloat& b);
const BigFloat& min(const BigFloat& a, const BigFloat& b);

}  // namespace clemens
