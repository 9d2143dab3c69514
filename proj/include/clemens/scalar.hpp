#pragma once

#include "clemens/bigcomplex.hpp"
#include "clemens/rational.hpp"

namespace clemens {

// Uniform helpers so templates work over both scalar fields. A "prototype"
// value carries the working precision for BigComplex.

inline Rational zero_like(const Rational&) { return Rational(); }
inline BigComplex zero_like(const BigComplex& x) { return BigComplex(x.precision()); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline BigComplex one_like(const BigComplex& x) { return BigComplex(1.0, 0.0, x.precision()); }

inline bool is_zero(const Rational& x) { return x.is_zero(); }
inline bool is_zero(const BigComplex& x) { return x.is_zero(); }

inline BigComplex to_complex(const Rational& q, long prec) { return BigComplex(q, prec); }
inline BigComplex to_complex(const BigComplex& z, long prec) { return z.with_precision(prec); }

/// Scalar from a small integer, matching the field of `proto`.
inline Rational from_int(long v, const Rational&) { return Rational(v); }
inline BigComplex from_int(long v, const BigComplex& proto) {
    return BigComplex(static_cast<double>(v), 0.0, proto.precision());
}

}  // namespace clemens
