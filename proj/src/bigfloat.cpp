#include "clemens/bigfloat.hpp"

#include <algorithm>
#include <climits>
#include <cstdio>
#include <vector>

#include "clemens/error.hpp"

namespace clemens {

namespace {

long checked(long prec) {
    if (prec < MPFR_PREC_MIN || prec > 1 << 20) throw Error("BigFloat: precision out of range");
    return prec;
}

}  // namespace

BigFloat::BigFloat(long prec) {
    mpfr_init2(v_, checked(prec));
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double v, long prec) {
    mpfr_init2(v_, checked(prec));
    mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const Rational& q, long prec) {
    mpfr_init2(v_, checked(prec));
    mpfr_set_q(v_, q.get().get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
    if (this != &o) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::with_precision(long prec) const {
    BigFloat r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

long BigFloat::exponent2() const noexcept {
    if (!mpfr_regular_p(v_)) return LONG_MIN;
    return static_cast<long>(mpfr_get_exp(v_));
}

std::string BigFloat::hex() const {
    if (mpfr_zero_p(v_)) return mpfr_signbit(v_) ? "-0" : "0";
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_signbit(v_) ? "-inf" : "inf";
    char* s = nullptr;
    mpfr_asprintf(&s, "%Ra", v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string BigFloat::decimal(int digits) const {
    if (mpfr_zero_p(v_)) return "0";
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return mpfr_signbit(v_) ? "-inf" : "inf";
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Rg", digits, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

BigFloat BigFloat::parse(std::string_view text, long prec) {
    BigFloat r(prec);
    std::string s(text);
    if (s == "inf") return infinity(prec);
    if (s == "-inf") return -infinity(prec);
    if (mpfr_set_str(r.v_, s.c_str(), 0, MPFR_RNDN) != 0) {
        throw Error("BigFloat: cannot parse '" + s + "'");
    }
    return r;
}

BigFloat BigFloat::infinity(long prec) {
    BigFloat r(prec);
    mpfr_set_inf(r.v_, 1);
    return r;
}

#define CLEMENS_BIGFLOAT_OP(op, fn)                                   \
    BigFloat& BigFloat::operator op(const BigFloat& o) {              \
        if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) {                \
            mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);      \
        }                                                             \
        fn(v_, v_, o.v_, MPFR_RNDN);                                  \
        return *this;                                                 \
    }

CLEMENS_BIGFLOAT_OP(+=, mpfr_add)
CLEMENS_BIGFLOAT_OP(-=, mpfr_sub)
CLEMENS_BIGFLOAT_OP(*=, mpfr_mul)
CLEMENS_BIGFLOAT_OP(/=, mpfr_div)

#undef CLEMENS_BIGFLOAT_OP

BigFloat operator-(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    const int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

BigFloat abs(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

BigFloat sqrt(const BigFloat& x) {
    BigFloat r(x.precision());
    mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

BigFloat hypot(const BigFloat& x, const BigFloat& y) {
    BigFloat r(std::max(x.precision(), y.precision()));
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

BigFloat ldexp(const BigFloat& x, long e) {
    BigFloat r(x.precision());
    mpfr_mul_2si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}

BigFloat pow10(long e, long prec) {
    BigFloat r(prec);
    mpfr_set_ui(r.raw(), 10, MPFR_RNDN);
    mpfr_pow_si(r.raw(), r.raw(), e, MPFR_RNDN);
    return r;
}

const BigFloat& max(const BigFloat& a, const BigFloat& b) { return (a < b) ? b : a; }
const BigFloat& min(const BigFloat& a, const BigFloat& b) { return (b < a) ? b : a; }

}  // namespace clemens
