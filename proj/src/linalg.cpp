#include "clemens/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace clemens {

namespace {

using ZMatrix = std::vector<std::vector<mpz_class>>;

// Scales every row by the lcm of its denominators; returns the multipliers.
ZMatrix clear_denominators(const QMatrix& m, std::vector<mpz_class>* scales) {
    ZMatrix z(static_cast<size_t>(m.rows()), std::vector<mpz_class>(static_cast<size_t>(m.cols())));
    if (scales) scales->assign(static_cast<size_t>(m.rows()), 1);
    for (int i = 0; i < m.rows(); ++i) {
        mpz_class l = 1;
        for (int j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get().get_den_mpz_t());
        for (int j = 0; j < m.cols(); ++j) {
            const mpq_class& q = m(i, j).get();
            z[i][j] = q.get_num() * (l / q.get_den());
        }
        if (scales) (*scales)[i] = l;
    }
    return z;
}

// Fraction-free elimination in place. Returns the rank; `sign` tracks row swaps
// and `last` receives the final pivot (the determinant for square full rank).
int bareiss(ZMatrix& a, int rows, int cols, int* sign, mpz_class* last) {
    int r = 0;
    mpz_class prev = 1;
    if (sign) *sign = 1;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i) {
            if (sgn(a[i][c]) != 0) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        if (p != r) {
            std::swap(a[p], a[r]);
            if (sign) *sign = -*sign;
        }
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) {
                a[i][j] = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    if (last) *last = prev;
    return r;
}

}  // namespace

int exact_rank(const QMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    ZMatrix z = clear_denominators(m, nullptr);
    return bareiss(z, m.rows(), m.cols(), nullptr, nullptr);
}

Rational determinant(const QMatrix& m) {
    if (m.rows() != m.cols()) throw Error("determinant: matrix is not square");
    const int n = m.rows();
    if (n == 0) return Rational(1);
    std::vector<mpz_class> scales;
    ZMatrix z = clear_denominators(m, &scales);
    int sign = 1;
    mpz_class last;
    if (bareiss(z, n, n, &sign, &last) < n) return Rational(0);
    mpz_class den = 1;
    for (const auto& s : scales) den *= s;
    return Rational(mpz_class(sign * last), den);
}

std::vector<std::vector<Rational>> kernel_basis(const QMatrix& m) {
    const int rows = m.rows();
    const int cols = m.cols();
    std::vector<std::vector<mpq_class>> a(static_cast<size_t>(rows), std::vector<mpq_class>(static_cast<size_t>(cols)));
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) a[i][j] = m(i, j).get();
    }
    std::vector<int> pivot_cols;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i) {
            if (sgn(a[i][c]) != 0) {
                p = i;
                break;
            }
        }
        if (p < 0) continue;
        std::swap(a[p], a[r]);
        const mpq_class inv = 1 / a[r][c];
        for (int j = c; j < cols; ++j) a[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || sgn(a[i][c]) == 0) continue;
            const mpq_class f = a[i][c];
            for (int j = c; j < cols; ++j) {
                if (sgn(a[r][j]) != 0) a[i][j] -= f * a[r][j];
            }
        }
        pivot_cols.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
    for (int c : pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(static_cast<size_t>(cols));
        v[f] = Rational(1);
        for (int k = 0; k < static_cast<int>(pivot_cols.size()); ++k) {
            v[pivot_cols[k]] = Rational(mpq_class(-a[k][f]));
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

BigComplex determinant(const CMatrix& m) {
    if (m.rows() != m.cols()) throw Error("determinant: matrix is not square");
    const int n = m.rows();
    if (n == 0) return BigComplex(1.0, 0.0, kDefaultPrecision);
    CMatrix a = m;
    BigComplex det = one_like(a(0, 0));
    for (int c = 0; c < n; ++c) {
        int p = c;
        BigFloat best = abs(a(c, c));
        for (int i = c + 1; i < n; ++i) {
            BigFloat v = abs(a(i, c));
            if (v > best) {
                best = std::move(v);
                p = i;
            }
        }
        if (best.is_zero()) return zero_like(a(0, 0));
        if (p != c) {
            a.swap_rows(p, c);
            det = -det;
        }
        det *= a(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (a(i, c).is_zero()) continue;
            const BigComplex f = a(i, c) / a(c, c);
            for (int j = c + 1; j < n; ++j) a(i, j) -= f * a(c, j);
        }
    }
    return det;
}

CMatrix inverse(const CMatrix& m) {
    if (m.rows() != m.cols()) throw Error("inverse: matrix is not square");
    const int n = m.rows();
    CMatrix a = m;
    CMatrix inv = CMatrix::identity(n, n ? m(0, 0) : BigComplex());
    for (int c = 0; c < n; ++c) {
        int p = c;
        BigFloat best = abs(a(c, c));
        for (int i = c + 1; i < n; ++i) {
            BigFloat v = abs(a(i, c));
            if (v > best) {
                best = std::move(v);
                p = i;
            }
        }
        if (best.is_zero()) throw DegeneracyError("singular_matrix", "zero pivot in inverse");
        a.swap_rows(p, c);
        inv.swap_rows(p, c);
        const BigComplex piv = a(c, c);
        for (int j = 0; j < n; ++j) {
            a(c, j) /= piv;
            inv(c, j) /= piv;
        }
        for (int i = 0; i < n; ++i) {
            if (i == c || a(i, c).is_zero()) continue;
            const BigComplex f = a(i, c);
            for (int j = 0; j < n; ++j) {
                a(i, j) -= f * a(c, j);
                inv(i, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

std::vector<BigFloat> singular_values(const CMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return {};
    // Work on columns; use the conjugate transpose when that has fewer columns.
    const bool flip = m.rows() < m.cols();
    const int rows = flip ? m.cols() : m.rows();
    const int cols = flip ? m.rows() : m.cols();
    const long prec = m(0, 0).precision();
    std::vector<std::vector<BigComplex>> col(static_cast<size_t>(cols));
    for (int j = 0; j < cols; ++j) {
        col[j].reserve(static_cast<size_t>(rows));
        for (int i = 0; i < rows; ++i) col[j].push_back(flip ? m(j, i).conj() : m(i, j));
    }
    const BigFloat tol = ldexp(BigFloat(1.0, prec), -(prec - 8));
    auto dot = [&](int p, int q) {
        BigComplex s(prec);
        for (int i = 0; i < rows; ++i) s += col[p][i].conj() * col[q][i];
        return s;
    };
    for (int sweep = 0; sweep < 100; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < cols - 1; ++p) {
            for (int q = p + 1; q < cols; ++q) {
                const BigFloat alpha = dot(p, p).real();
                const BigFloat beta = dot(q, q).real();
                const BigComplex gamma = dot(p, q);
                const BigFloat g = abs(gamma);
                if (g.is_zero() || g <= tol * sqrt(alpha * beta)) continue;
                rotated = true;
                // Rotate the phase of column q so that <a_p, a_q> is real positive.
                const BigComplex phase_inv = BigComplex(gamma.real() / g, -gamma.imag() / g);
                for (auto& x : col[q]) x *= phase_inv;
                const BigFloat zeta = (beta - alpha) / (BigFloat(2.0, prec) * g);
                BigFloat t = BigFloat(1.0, prec) / (abs(zeta) + sqrt(BigFloat(1.0, prec) + zeta * zeta));
                if (zeta.sign() < 0) t = -t;
                const BigFloat c = BigFloat(1.0, prec) / sqrt(BigFloat(1.0, prec) + t * t);
                const BigFloat s = c * t;
                for (int i = 0; i < rows; ++i) {
                    BigComplex ap = col[p][i] * c - col[q][i] * s;
                    BigComplex aq = col[p][i] * s + col[q][i] * c;
                    col[p][i] = std::move(ap);
                    col[q][i] = std::move(aq);
                }
            }
        }
        if (!rotated) break;
    }
    std::vector<BigFloat> sv;
    sv.reserve(static_cast<size_t>(cols));
    for (int j = 0; j < cols; ++j) sv.push_back(sqrt(dot(j, j).real()));
    std::sort(sv.begin(), sv.end(), [](const BigFloat& x, const BigFloat& y) { return y < x; });
    return sv;
}

long required_precision(double rel_tol) {
    return 2 * static_cast<long>(std::ceil(std::log2(1.0 / rel_tol)));
}

NumericRank numeric_rank(const CMatrix& m, double rel_tol) {
    if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw Error("numeric_rank: rel_tol must lie in (0,1)");
    NumericRank out;
    if (m.rows() == 0 || m.cols() == 0) {
        out.gap = BigFloat::infinity(kDefaultPrecision);
        return out;
    }
    const long prec = m(0, 0).precision();
    if (prec < required_precision(rel_tol)) {
        throw Error("numeric_rank: precision " + std::to_string(prec) + " bits is below the " +
                    std::to_string(required_precision(rel_tol)) + " bits needed for rel_tol");
    }
    const std::vector<BigFloat> sv = singular_values(m);
    const BigFloat threshold = sv[0] * BigFloat(rel_tol, prec);
    int r = 0;
    if (!sv[0].is_zero()) {
        while (r < static_cast<int>(sv.size()) && sv[r] >= threshold) ++r;
    }
    out.rank = r;
    if (r == static_cast<int>(sv.size())) {
        out.gap = BigFloat::infinity(prec);
    } else if (r == 0) {
        out.gap = BigFloat(prec);
    } else {
        out.gap = sv[r].is_zero() ? BigFloat::infinity(prec) : sv[r - 1] / sv[r];
    }
    return out;
}

BigFloat row_norm_product(const CMatrix& m) {
    const long prec = m.rows() && m.cols() ? m(0, 0).precision() : kDefaultPrecision;
    BigFloat prod(1.0, prec);
    for (int i = 0; i < m.rows(); ++i) {
        BigFloat s(prec);
        for (int j = 0; j < m.cols(); ++j) s += m(i, j).norm2();
        prod *= sqrt(s);
    }
    return prod;
}

BigFloat max_abs(const CMatrix& m) {
    const long prec = m.rows() && m.cols() ? m(0, 0).precision() : kDefaultPrecision;
    BigFloat best(prec);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            BigFloat v = abs(m(i, j));
            if (v > best) best = std::move(v);
        }
    }
    return best;
}

}  // namespace clemens
