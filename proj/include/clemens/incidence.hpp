#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clemens/curves.hpp"
#include "clemens/linalg.hpp"
#include "clemens/special_pair.hpp"

namespace clemens {

using QuinticForm = QForm;

/// Number of degree-5 monomials in five variables.
inline constexpr int kQuinticMonomials = 126;

/// A curve c with quintics f0, f1, f2 and scalars a, b such that
/// (f0 + a f1 + b f2) o c == 0 identically.
struct IncidenceSample {
    RationalCurve c;
    QuinticForm f0{5};
    QuinticForm f1{5};
    QuinticForm f2{5};
    Rational a;
    Rational b;
    int d = 1;
    std::uint64_t seed = 0;
    bool special = false;
    /// Degeneracy predicates that caused resampling, in order.
    std::vector<std::string> retry_log;
    std::optional<SpecialPair> pair;

    QuinticForm combined() const { return f0 + f1 * a + f2 * b; }
    /// f_l for l = 0, 1, 2.
    const QuinticForm& form(int l) const;
};

/// Exact f(c0(t), ..., c4(t)), formal degree 5d.
QPoly pullback(const QuinticForm& f, const RationalCurve& c);

/// The (5d+1) x 126 matrix of f -> coefficients of pullback(f, c), columns in
/// monomials(5) order.
QMatrix incidence_matrix(const RationalCurve& c);

/// Basis of the quintics vanishing on c.
std::vector<QuinticForm> quintics_through(const RationalCurve& c);

/// Quintic with all 126 coefficients drawn at the given height.
QuinticForm random_quintic(Rng& rng, long height);

/// Checks the IncidenceSample invariants; returns the failing predicate name
/// or an empty string.
std::string incidence_violation(const IncidenceSample& s);

/// Reverse-engineered sample of I_L: random c, (f1, f2) random or special,
/// random nonzero a, b, random g through c, f0 = g - a f1 - b f2.
IncidenceSample sample_incidence(int d, std::uint64_t seed, bool special, long height = kDefaultHeight);

// ---------------------------------------------------------------------------
// Gradients in the 5d + 5 curve coefficients.

/// The five partial derivatives of a form.
template <class S>
std::array<MultiForm<S>, kVars> partials(const MultiForm<S>& f) {
    return {f.derivative(0), f.derivative(1), f.derivative(2), f.derivative(3), f.derivative(4)};
}

/// Gradient of t0 -> f(c(t0)) at t0 = t with respect to coefficient (i, k):
/// (d_i f)(c(t)) * t^k.
template <class S, class T>
std::vector<T> value_gradient(const std::array<MultiForm<S>, kVars>& df, const RationalCurve& c, const T& t) {
    const int d = c.degree();
    const auto pt = evaluate(c, t);
    std::vector<T> g;
    g.reserve(static_cast<size_t>(c.dim()));
    for (int i = 0; i < kVars; ++i) {
        const T di = df[i].eval(pt);
        T tk = one_like(t);
        for (int k = 0; k <= d; ++k) {
            g.push_back(di * tk);
            tk *= t;
        }
    }
    return g;
}

template <class S, class T>
T value_at(const MultiForm<S>& f, const RationalCurve& c, const T& t) {
    return f.eval(evaluate(c, t));
}

/// f at the curve with (complex) coefficient vector `coeffs`, parameter t.
BigComplex value_at_coefficients(const QuinticForm& f, int d, const std::vector<BigComplex>& coeffs,
                                 const BigComplex& t);

/// Row k, column (i, m): coefficient of t^(k - m) in pullback(d_i f, c); the
/// gradient of the k-th coefficient of f o c.
QMatrix jacobian_single(const RationalCurve& c, const QuinticForm& f);

// ---------------------------------------------------------------------------
// Sample points and determinant generators.

template <class T>
struct SamplePoints {
    /// t[0] = t1, t[1] = t2, then t3 .. t_{5d+1}.
    std::vector<T> t;
};

/// Pairwise distinct random rational points (height 64).
SamplePoints<Rational> random_rational_points(int count, Rng& rng);
/// Pairwise distinct random complex points, |re|, |im| <= 3.
SamplePoints<BigComplex> random_complex_points(int count, Rng& rng, long prec);

BigFloat min_separation(const SamplePoints<BigComplex>& pts);

/// 3x3 matrix with rows (t_i, t1, t2) and columns (f2, f1, f0).
/// Value and exact gradient of its determinant at c.
template <class T>
struct GeneratorJet {
    T value;
    std::vector<T> gradient;
};

/// The sample must outlive the generator set.
template <class T>
class DetGenerators {
public:
    /// Throws DegeneracyError("dependent_rows") if the rows at t1, t2 are
    /// linearly dependent.
    DetGenerators(const IncidenceSample& s, SamplePoints<T> pts);

    int count() const { return static_cast<int>(pts_.t.size()) - 2; }
    /// Generator for t_i, i in [3, 5d+1] (1-based, t[0] = t1).
    GeneratorJet<T> jet(int i) const;
    /// Generator value at an arbitrary complex coefficient vector.
    BigComplex value_at(int i, const std::vector<BigComplex>& coeffs) const;

    /// Cofactors (delta0, delta1, delta2) of the t_i row.
    std::array<T, 3> deltas() const;

    const SamplePoints<T>& points() const { return pts_; }

private:
    const IncidenceSample* s_;
    SamplePoints<T> pts_;
    std::vector<std::array<QForm, kVars>> df_;
};

/// Rows = gradients of the 5d - 1 determinant generators at c.
template <class T>
Matrix<T> jacobian_J_L(const IncidenceSample& s, const SamplePoints<T>& pts);

/// Jacobian of the 5d two-row generators |F(t_i) G(t_i); F(t1) G(t1)|,
/// i = 2..5d+1, of the pencil span(F, G) at c. Requires F o c == 0.
template <class T>
Matrix<T> pencil_jacobian(const RationalCurve& c, const QuinticForm& f, const QuinticForm& g,
                          const SamplePoints<T>& pts);
/// Pencil span(f0 + a f1 + b f2, f2) of a sample.
template <class T>
Matrix<T> pencil_jacobian(const IncidenceSample& s, const SamplePoints<T>& pts);

/// Product-rule expansion of the gradient of generator i.
template <class T>
struct PhiExpansion {
    T delta0, delta1, delta2;
    /// h[l][j]: cofactor multiplying grad f_l(c(t_{j+1})), l = 0, 1, 2; j = 0, 1.
    std::array<std::array<T, 2>, 3> h;
    /// max |recomposed - direct| over gradient entries.
    T residual_max;
    bool residual_zero = false;
};

template <class T>
PhiExpansion<T> phi_expand(const IncidenceSample& s, const SamplePoints<T>& pts, int i);

/// Matrix A: rows 1..5d-1 are gradients of f3 o c at t3..t_{5d+1}; then f2,
/// f1, f0 at t1, t2 (in that order). Columns are linear coefficients.
CMatrix matrix_A(const IncidenceSample& s, const SamplePoints<BigComplex>& pts, const CForm& f3);

}  // namespace clemens
