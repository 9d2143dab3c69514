#pragma once

#include <map>
#include <vector>

#include "clemens/incidence.hpp"

namespace clemens {

/// Exponents (a1 >= a2 >= ...) of a bundle on P^1 isomorphic to sum O(a_i).
struct SplittingType {
    std::vector<int> summands;

    int degree() const;
    int rank() const { return static_cast<int>(summands.size()); }
    /// sum_i max(0, a_i + k + 1).
    int h0(int k) const;
    friend bool operator==(const SplittingType&, const SplittingType&) = default;
};

/// Twists probed by the profile functions.
inline constexpr int kProfileMin = -4;
inline constexpr int kProfileMax = 3;

using H0Profile = std::map<int, int>;

/// True iff sum_i (d_i f)(c) c_i == 0, i.e. the Euler directions lambda c
/// satisfy the tangency constraint.
bool euler_contained(const RationalCurve& c, const QuinticForm& f);

/// h0(c* T_X(k)) for X = {f = 0}, by an exact kernel computation. Sections
/// of c* T_P4(k) are tuples beta of degree d + k forms modulo lambda c; for
/// k <= -2 the quotient is represented by Laurent tuples beta with
/// beta + lambda c polynomial, lambda in span(t^(k+1), ..., t^-1). Requires
/// pullback(f, c) == 0.
int sections_dim(const RationalCurve& c, const QuinticForm& f, int k);

/// h0 for k = kProfileMin..kProfileMax.
H0Profile h0_profile(const RationalCurve& c, const QuinticForm& f);

/// The unique degree-`degree`, rank-`rank` non-increasing integer tuple whose
/// h0 reproduces `profile`; throws Error if there is none or it is not unique.
SplittingType splitting_from_profile(const H0Profile& profile, int rank, int degree);

/// Splitting type of c* T_X (rank 3, degree 0 for a quintic threefold).
SplittingType splitting_type_TX(const RationalCurve& c, const QuinticForm& f);

/// True iff the three sections of c* T_X induced by the vector fields on P^1
/// (c', t c', d t c - t^2 c') are independent modulo c.
bool tangent_sections_independent(const RationalCurve& c, const QuinticForm& f);

/// N = c* T_X / T_P1: the splitting of c* T_X with one summand 2 removed.
/// Requires an immersed curve whose c* T_X contains O(2) realized by the
/// tangent sections; throws Error otherwise.
SplittingType normal_splitting(const RationalCurve& c, const QuinticForm& f);
SplittingType normal_splitting(const RationalCurve& c, const QuinticForm& f, const SplittingType& tx);

/// h1(N) = 0 iff every summand is >= -1.
bool h1_normal_zero(const SplittingType& normal);

}  // namespace clemens
