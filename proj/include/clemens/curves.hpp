#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "clemens/multiform.hpp"
#include "clemens/random.hpp"
#include "clemens/unipoly.hpp"

namespace clemens {

inline constexpr long kDefaultHeight = 32;
inline constexpr int kResampleCap = 100;

/// A point of M: five binary forms of degree d in the affine chart t.
/// Coefficient (i, k) (component i, power t^k) sits at linear index
/// i * (d + 1) + k.
class RationalCurve {
public:
    /// Validates the type invariants (components not all zero, no common
    /// projective root); throws DegeneracyError("common_root") otherwise.
    RationalCurve(int d, std::array<QPoly, kVars> components);

    static RationalCurve from_coefficients(int d, const std::vector<Rational>& coeffs);

    int degree() const noexcept { return d_; }
    int dim() const noexcept { return kVars * (d_ + 1); }
    const std::array<QPoly, kVars>& components() const noexcept { return c_; }
    const QPoly& component(int i) const { return c_.at(static_cast<size_t>(i)); }
    std::vector<Rational> coefficients() const;
    static int index(int d, int i, int k) { return i * (d + 1) + k; }

    std::array<CPoly, kVars> to_complex(long prec) const;

    friend bool operator==(const RationalCurve& a, const RationalCurve& b) {
        return a.d_ == b.d_ && a.c_ == b.c_;
    }

private:
    int d_;
    std::array<QPoly, kVars> c_;
};

/// Tangent direction in coefficient space (length 5d + 5).
template <class S>
using TangentVector = std::vector<S>;

/// Random curve with coefficients of height <= `height`; every component has
/// exact degree d and the 5d component roots are pairwise distinct. Throws
/// Error after kResampleCap rejected draws.
RationalCurve random_curve(int d, long height, std::uint64_t seed);
RationalCurve random_curve(int d, long height, Rng& rng, int* resamples = nullptr);

/// Component-wise evaluation.
template <class T>
std::array<T, kVars> evaluate(const RationalCurve& c, const T& t) {
    return {c.component(0).eval(t), c.component(1).eval(t), c.component(2).eval(t),
            c.component(3).eval(t), c.component(4).eval(t)};
}

/// The ten 2x2 minors c_i c_j' - c_j c_i' (i < j), formal degree 2d - 2.
std::vector<QPoly> derivative_minors(const RationalCurve& c);

/// True iff the differential of t -> c(t) is injective on all of P^1: the
/// minors have constant nonzero gcd and the chart at infinity is immersed.
bool immersion_check(const RationalCurve& c);

/// One-sided injectivity probe: for `trials` random parameters s, computes
/// the exact fibre {t : c(t) ~ c(s)} as the gcd of the minors of
/// (c(s), c(t)); false as soon as some fibre has a point other than s.
bool birationality_probe(const RationalCurve& c, int trials, std::uint64_t seed);

/// c(t) -> (gamma t + e)^d c((alpha t + beta) / (gamma t + e)).
RationalCurve reparametrize(const RationalCurve& c, const Rational& alpha, const Rational& beta,
                            const Rational& gamma, const Rational& e);

struct PolarCoordinates {
    std::array<Rational, kVars> r;
    /// theta[i] are the d roots of component i, sorted by (re, im).
    std::array<std::vector<BigComplex>, kVars> theta;
    /// Max over components of the coefficient error of r_i prod(t - theta)
    /// relative to the largest coefficient.
    BigFloat reconstruction_residual{kDefaultPrecision};
};

/// Leading coefficients and roots of each component (exact degree d,
/// distinct roots required; otherwise DegeneracyError).
PolarCoordinates polar_coordinates(const RationalCurve& c, long prec);

/// r * prod(t - roots) expanded.
CPoly from_roots(const BigComplex& r, const std::vector<BigComplex>& roots);

}  // namespace clemens
