#pragma once

#include <vector>

#include "clemens/matrix.hpp"

namespace clemens {

/// Rank over Q by fraction-free (Bareiss) elimination on the integer matrix
/// obtained by clearing each row's denominators.
int exact_rank(const QMatrix& m);

/// Exact determinant (Bareiss).
Rational determinant(const QMatrix& m);

/// Basis of the right kernel {x : m x = 0}, from the reduced row echelon
/// form; one vector per free column, with a 1 in that column.
std::vector<std::vector<Rational>> kernel_basis(const QMatrix& m);

/// Determinant by LU with partial pivoting, at the entries' precision.
BigComplex determinant(const CMatrix& m);

/// Inverse by Gauss-Jordan with partial pivoting; throws DegeneracyError
/// ("singular_matrix") on an exactly zero pivot.
CMatrix inverse(const CMatrix& m);

/// Singular values in descending order (one-sided Jacobi).
std::vector<BigFloat> singular_values(const CMatrix& m);

struct NumericRank {
    int rank = 0;
    /// Smallest retained over largest discarded singular value; +inf if
    /// nothing was discarded.
    BigFloat gap{kDefaultPrecision};
};

/// Number of singular values >= rel_tol * sigma_max. Throws if the entry
/// precision is below twice the bits implied by rel_tol.
NumericRank numeric_rank(const CMatrix& m, double rel_tol);

/// Product of the Euclidean row norms (Hadamard bound on |det|).
BigFloat row_norm_product(const CMatrix& m);

/// Largest entry modulus.
BigFloat max_abs(const CMatrix& m);

/// Minimum working precision (bits) to resolve singular values down to rel_tol.
long required_precision(double rel_tol);

}  // namespace clemens
