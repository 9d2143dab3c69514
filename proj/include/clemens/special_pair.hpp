#pragma once

#include <array>
#include <cstdint>

#include "clemens/multiform.hpp"

namespace clemens {

using LinearChange = std::array<std::array<Rational, kVars>, kVars>;

/// f2 = (z0 z1 z2 z3 z4) o L and f1 = (z0 z1 z2 q) o L, where (L z)_i =
/// sum_j L[i][j] z_j and q is a quadratic form.
struct SpecialPair {
    QForm q{2};
    QForm f1{5};
    QForm f2{5};
    LinearChange change{};
};

/// Random invertible L (resampled until det != 0) and random quadratic q.
SpecialPair special_quintics(std::uint64_t seed, long height = 32);
/// Builds the pair for given L and q; throws on a singular L.
SpecialPair make_special_pair(const LinearChange& change, const QForm& q);
/// Exact re-expansion check of the SpecialPair invariants.
bool verify_special_pair(const SpecialPair& pair);

LinearChange identity_change();

}  // namespace clemens
