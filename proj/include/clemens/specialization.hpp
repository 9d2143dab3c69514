#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clemens/incidence.hpp"
#include "clemens/special_pair.hpp"

namespace clemens {

/// Where the specialization chain is centred. OffIncidence replaces f0 by an
/// independent random quintic, so c lies on no member of span(f0, f1, f2).
enum class Center { Incidence, OffIncidence };

const char* center_name(Center c);
Center parse_center(const std::string& s);

/// Special sample with f0 an independent random quintic (a = b = 0).
IncidenceSample sample_off_incidence(int d, std::uint64_t seed, long height = kDefaultHeight);

/// Special sample centred per `center`.
IncidenceSample sample_special(int d, std::uint64_t seed, Center center, long height = kDefaultHeight);

/// c~ = L c, component-wise.
RationalCurve transform_curve(const RationalCurve& c, const LinearChange& change);
LinearChange invert_change(const LinearChange& change);

// ---------------------------------------------------------------------------
// The delta0 = 0 arrangement.

/// (delta0, delta1, delta2): delta0 = |F2 F1|, delta1 = |F0 F2|, delta2 = |F1 F0|
/// over the rows t1, t2, where F_l = f_l o c.
std::array<BigComplex, 3> deltas(const IncidenceSample& s, const BigComplex& t1, const BigComplex& t2);

/// Sum of the moduli of the two products in delta_k (the cancellation scale).
std::array<BigFloat, 3> delta_scales(const IncidenceSample& s, const BigComplex& t1, const BigComplex& t2);

/// t -> F2(t1) F1(t) - F1(t1) F2(t); t = t1 is always a root.
CPoly delta0_polynomial(const IncidenceSample& s, const BigComplex& t1);

struct Delta0Solution {
    BigComplex t2;
    /// |delta0| / (|F2(t1) F1(t2)| + |F1(t1) F2(t2)|).
    BigFloat relative_residual;
    BigFloat min_distance;
};

/// Root of delta0_polynomial maximizing the distance to t1 and to `excluded`.
/// Throws DegeneracyError("delta0_polynomial_zero") when the polynomial
/// vanishes and ("delta0_no_root") when every root collides.
Delta0Solution solve_delta0(const IncidenceSample& s, const BigComplex& t1, const std::vector<BigComplex>& excluded,
                            long prec);

/// f3 = delta1 f1 + delta2 f2. `factor_residual` receives the largest
/// coefficient difference to (z0 z1 z2 (delta1 q + delta2 z3 z4)) o L.
CForm build_f3(const BigComplex& delta1, const BigComplex& delta2, const SpecialPair& pair,
               BigFloat* factor_residual = nullptr);

// ---------------------------------------------------------------------------
// Charts.

/// Polar chart of c~ = L c: coordinates theta (5d, component-major, roots
/// sorted by (re, im)) then r0..r4; Jacobian with respect to the original
/// linear coefficients of c.
struct PolarChart {
    std::vector<BigComplex> theta;
    std::array<BigComplex, kVars> r;
    CMatrix jacobian{0, 0, BigComplex()};
};
PolarChart polar_chart(const RationalCurve& c, const LinearChange& change, long prec);

/// Quasi-polar chart (theta of c~0..c~2, gamma of h, r0..r3, R).
struct QuasiPolarChart {
    RationalCurve center;
    RationalCurve transformed;
    SpecialPair pair;
    BigComplex delta1;
    BigComplex delta2;
    /// 3d roots of c~0, c~1, c~2, component-major.
    std::vector<BigComplex> theta;
    /// 2d roots of h(c, t) = delta1 q(c~(t)) + delta2 c~3(t) c~4(t).
    std::vector<BigComplex> gamma;
    std::array<BigComplex, kVars> r;
    BigComplex R;
    CPoly h{std::vector<BigComplex>{BigComplex()}};
    /// d(theta, gamma, r0..r3, R) / d(linear coefficients of c).
    CMatrix jacobian{0, 0, BigComplex()};
    /// Same with the last coordinate r4 in place of R.
    CMatrix jacobian_r4{0, 0, BigComplex()};
    long precision = kDefaultPrecision;

    int dim() const { return center.dim(); }
    /// theta..., gamma..., r0, r1, r2, r3, R.
    std::vector<BigComplex> coordinates() const;
    /// |R - (delta1 q(r) + delta2 r3 r4)|.
    BigFloat leading_residual() const;
};

/// Throws DegeneracyError on repeated roots, vanishing r_i or R, or a
/// singular chart Jacobian.
QuasiPolarChart quasi_polar_chart(const RationalCurve& c, const SpecialPair& pair, const BigComplex& delta1,
                                  const BigComplex& delta2, long prec);

/// Chart coordinates of a nearby curve (complex coefficient vector), roots
/// matched to the reference chart by nearest neighbour.
std::vector<BigComplex> chart_coordinates_near(const QuasiPolarChart& ref, const std::vector<BigComplex>& coeffs);

/// Central finite-difference chart Jacobian with complex step `step`.
CMatrix finite_difference_chart_jacobian(const QuasiPolarChart& ref, const BigFloat& step);

/// Sample points for matrix A: t1, t2, t3..t_{5d} = all theta roots then the
/// gamma roots other than gamma(t1), gamma(t2), t_{5d+1} free.
struct ArrangedPoints {
    SamplePoints<BigComplex> pts;
    int gamma_t1 = -1;
    int gamma_t2 = -1;
    /// Chart coordinate indices in block order: (theta..., other gamma... |
    /// gamma(t1), gamma(t2), r0, r1, r2, r3, R).
    std::vector<int> block_order;
    BigFloat min_separation{kDefaultPrecision};
};
ArrangedPoints select_tpoints(const QuasiPolarChart& chart, const BigComplex& t1, const BigComplex& t2,
                              std::uint64_t seed);

struct RootJacobian {
    BigFloat diag_min{kDefaultPrecision};
    BigFloat offdiag_max{kDefaultPrecision};
    BigFloat a12_max{kDefaultPrecision};
    /// max |diag - (-r0 r1 r2 R prod_{other roots}(t - rho))| / |diag|.
    BigFloat product_formula_residual{kDefaultPrecision};
};

/// Jacobian of f3 o c at the 5d chart roots with respect to (theta, gamma)
/// and (r0..r3, R), in chart coordinates.
RootJacobian root_jacobian_check(const QuasiPolarChart& chart, const CForm& f3);

struct Blocks {
    CMatrix a11{0, 0, BigComplex()};
    CMatrix a12{0, 0, BigComplex()};
    CMatrix a21{0, 0, BigComplex()};
    CMatrix a22{0, 0, BigComplex()};
};
/// Split at 5d - 2 (A22 is 7 x 7).
Blocks block_decompose(const CMatrix& a, int d);

/// Rows of `jac` permuted to `order`.
CMatrix reorder_rows(const CMatrix& jac, const std::vector<int>& order);

/// |det| / (product of row norms).
BigFloat normalized_abs_det(const CMatrix& m, BigComplex* det = nullptr);

// ---------------------------------------------------------------------------
// Pencil point and the reduction chain.

/// c' with f0' = g' - b' f2 vanishing on c' together with f2 (span(f0', f2)).
struct PencilPoint {
    RationalCurve c;
    QuinticForm f0{5};
    Rational b;
};
PencilPoint sample_pencil_point(int d, const SpecialPair& pair, Rng& rng, long height);

struct PencilMetrics {
    BigComplex t1;
    BigComplex t2;
    BigComplex det_B;
    BigFloat det_B_normalized;
    BigComplex det_Jac4;
    BigFloat det_Jac4_normalized;
    /// f4(t1) f5(t2) - f5(t1) f4(t2) in the transformed coordinates.
    BigComplex J_f0;
    /// |J_f0| / (|f4(t1) f5(t2)| + |f5(t1) f4(t2)|).
    BigFloat J_f0_normalized;
    /// The 3x3 form of J, for cross-checking.
    BigComplex J_f0_3x3;
};

/// B (6x6), Jac(f0, c') (4x4) and J(f0) at a pencil point, t2 from the
/// delta0 arrangement at c'.
PencilMetrics pencil_metrics(const PencilPoint& p, const SpecialPair& pair, const BigComplex& t1, long prec);

/// J(f) = |f4 f5| at c~(t1), c~(t2) for f in transformed coordinates.
BigComplex j_invariant(const QuinticForm& f, const RationalCurve& c, const LinearChange& change,
                       const BigComplex& t1, const BigComplex& t2, BigComplex* three_by_three = nullptr,
                       BigFloat* scale = nullptr);

// ---------------------------------------------------------------------------

struct SpecOptions {
    long precision = kDefaultPrecision;
    double residual_tol = 1e-60;
    double root_jacobian_tol = 1e-20;
    double det_tol = 1e-20;
    double block_tol = 1e-10;
    double chain_tol = 1e-15;
    double rank_tol = 1e-30;
    bool precision_scaling = true;
    int t1_attempts = 3;
};

/// Every quantity the chain records, with the per-claim verdicts.
struct SpecializationReport {
    std::string center;
    BigComplex t1, t2;
    std::vector<BigComplex> points;
    BigComplex delta0, delta1, delta2;
    BigFloat delta0_residual{kDefaultPrecision};
    bool delta_collapse = false;
    /// max(|delta1|, |delta2|) relative to their cancellation scales.
    BigFloat delta12_relative{kDefaultPrecision};
    BigFloat f3_factor_residual{kDefaultPrecision};

    BigFloat diag_min{kDefaultPrecision}, offdiag_max{kDefaultPrecision}, a12_max{kDefaultPrecision};
    BigFloat offdiag_ratio{kDefaultPrecision}, a12_ratio{kDefaultPrecision};
    /// Diagonal-dominance ratios (offdiag, a12) at 128 / 256 / 512 bits.
    std::vector<std::array<BigFloat, 2>> ratio_by_precision;

    BigComplex det_A, det_A_linear, det_chart_jacobian, det_A11, det_A22, det_A22_r4;
    BigFloat det_A_normalized{kDefaultPrecision}, det_A22_normalized{kDefaultPrecision},
        det_A22_r4_normalized{kDefaultPrecision};
    BigFloat block_residual{kDefaultPrecision};
    BigFloat chain_residual{kDefaultPrecision};
    int rank_A22 = 0;

    std::optional<PencilMetrics> pencil;

    // Claim verdicts.
    bool pass_delta0 = false;
    bool pass_deltas_generic = false;
    bool pass_root_jacobian = false;
    bool pass_monotone = false;
    bool pass_det_A = false;
    bool pass_det_A22 = false;
    bool pass_rank_A22 = false;
    bool pass_block_identity = false;
    bool pass_chain_rule = false;
    bool pass_det_B = false;
    bool pass_det_Jac4 = false;
    bool pass_J_f0 = false;
    bool pass = false;

    std::vector<std::string> log;
    std::string failed_predicate;
};

/// The full chain on a special sample: arrangement, f3, chart, points,
/// matrix A and its blocks, pencil-point matrices, precision scaling.
SpecializationReport verify_specialization_chain(const IncidenceSample& s, const SpecOptions& opt, std::uint64_t seed);

/// Checks that do not need the arrangement, on a chart with random
/// (delta1, delta2): Diagonal-dominance ratios, chain rule, finite-difference chart
/// Jacobian, and the identity case delta1 = 0, delta2 = 1.
struct ChartConsistency {
    BigFloat chain_residual{kDefaultPrecision};
    BigFloat fd_identity_residual{kDefaultPrecision};
    BigFloat offdiag_ratio{kDefaultPrecision};
    BigFloat a12_ratio{kDefaultPrecision};
    /// Identity case: max distance between matched gamma and polar roots of
    /// c~3, c~4, and |R - r3 r4|.
    BigFloat identity_root_mismatch{kDefaultPrecision};
    bool identity_multiset_match = false;
    bool pass_chain_rule = false;
    bool pass_fd = false;
    bool pass_root_jacobian = false;
    bool pass_identity = false;
    bool pass = false;
};
ChartConsistency chart_consistency(const IncidenceSample& s, const SpecOptions& opt, std::uint64_t seed);

}  // namespace clemens
