#pragma once

#include <vector>

#include "clemens/error.hpp"
#include "clemens/unipoly.hpp"

namespace clemens {

/// Raised when the simultaneous iteration fails to reach the residual bound.
class RootNonConvergence : public DegeneracyError {
public:
    RootNonConvergence(const std::string& detail, BigFloat achieved)
        : DegeneracyError("root_nonconvergence", detail), achieved_(std::move(achieved)) {}
    const BigFloat& achieved_residual() const noexcept { return achieved_; }

private:
    BigFloat achieved_;
};

inline constexpr int kRootIterationCap = 500;

/// All roots of p (actual degree many), by Aberth-Ehrlich iteration from a
/// perturbed circle of radius 1 + max|a_i / a_n|, followed by Newton
/// polishing. Every root satisfies |p(root)| < 2^(-precision/2) * max|a_i|.
/// Roots closer than 2^(-precision/4) (relative) raise
/// DegeneracyError("multiple_root"). Output sorted by (re, im).
std::vector<BigComplex> roots(const CPoly& p, long precision);

/// Largest |p(r)| / max|a_i| over the given roots.
BigFloat max_relative_residual(const CPoly& p, const std::vector<BigComplex>& rs);

/// Index of the element of `xs` nearest to `z`.
int nearest_index(const std::vector<BigComplex>& xs, const BigComplex& z);

}  // namespace clemens
