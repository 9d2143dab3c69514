#include "clemens/bundles.hpp"

#include <algorithm>
#include <functional>

namespace clemens {

int SplittingType::degree() const {
    int s = 0;
    for (int a : summands) s += a;
    return s;
}

int SplittingType::h0(int k) const {
    int s = 0;
    for (int a : summands) s += std::max(0, a + k + 1);
    return s;
}

namespace {

std::array<QPoly, kVars> gradient_on_curve(const RationalCurve& c, const QuinticForm& f) {
    std::array<QPoly, kVars> out{QPoly::zero(0, Rational()), QPoly::zero(0, Rational()), QPoly::zero(0, Rational()),
                                 QPoly::zero(0, Rational()), QPoly::zero(0, Rational())};
    for (int i = 0; i < kVars; ++i) out[i] = f.derivative(i).compose(c.components());
    return out;
}

}  // namespace

bool euler_contained(const RationalCurve& c, const QuinticForm& f) {
    const auto g = gradient_on_curve(c, f);
    QPoly sum = QPoly::zero(0, Rational());
    for (int i = 0; i < kVars; ++i) sum = sum + g[i] * c.component(i);
    return sum.is_zero_poly();
}

int sections_dim(const RationalCurve& c, const QuinticForm& f, int k) {
    if (!pullback(f, c).is_zero_poly()) throw Error("sections_dim: f does not vanish on c");
    const int d = c.degree();
    const auto g = gradient_on_curve(c, f);
    const int lo = std::min(k + 1, 0);
    const int hi = d + k;
    const int nb = hi >= lo ? hi - lo + 1 : 0;  // exponents per beta component
    const int nl = std::max(0, -(k + 1));       // lambda exponents k+1 .. -1
    const int cols = kVars * nb + nl;
    if (cols == 0) return 0;
    auto beta_col = [&](int i, int e) { return i * nb + (e - lo); };
    auto lambda_col = [&](int e) { return kVars * nb + (e - (k + 1)); };

    int gdeg = 0;
    for (const auto& p : g) gdeg = std::max(gdeg, p.formal_degree());
    std::vector<std::vector<Rational>> rows;
    // sum_i g_i beta_i == 0, coefficient of t^p.
    for (int p = lo; p <= gdeg + hi; ++p) {
        std::vector<Rational> row(static_cast<size_t>(cols));
        bool any = false;
        for (int i = 0; i < kVars; ++i) {
            for (int e = lo; e <= hi; ++e) {
                const Rational& v = g[i].coeff(p - e);
                if (v.is_zero()) continue;
                row[beta_col(i, e)] = v;
                any = true;
            }
        }
        if (any) rows.push_back(std::move(row));
    }
    // beta + lambda c has no negative powers.
    for (int i = 0; i < kVars; ++i) {
        for (int p = lo; p < 0; ++p) {
            std::vector<Rational> row(static_cast<size_t>(cols));
            row[beta_col(i, p)] = Rational(1);
            for (int e = k + 1; e <= -1; ++e) {
                const Rational& v = c.component(i).coeff(p - e);
                if (!v.is_zero()) row[lambda_col(e)] = v;
            }
            rows.push_back(std::move(row));
        }
    }
    int rank = 0;
    if (!rows.empty()) {
        QMatrix m(static_cast<int>(rows.size()), cols, Rational());
        for (int r = 0; r < m.rows(); ++r) m.set_row(r, rows[r]);
        rank = exact_rank(m);
    }
    const int h0 = cols - rank - std::max(0, k + 1);
    if (h0 < 0) throw InternalError("sections_dim: Euler subspace is not contained in the constraint kernel");
    return h0;
}

H0Profile h0_profile(const RationalCurve& c, const QuinticForm& f) {
    H0Profile out;
    for (int k = kProfileMin; k <= kProfileMax; ++k) out[k] = sections_dim(c, f, k);
    return out;
}

SplittingType splitting_from_profile(const H0Profile& profile, int rank, int degree) {
    if (profile.empty() || rank <= 0) throw Error("splitting_from_profile: empty profile");
    const int kmin = profile.begin()->first;
    const int kmax = profile.rbegin()->first;
    // Summands below -kmax - 1 are invisible on the probed range; the degree
    // constraint pins them down when there is at most one such summand.
    const int amax = profile.rbegin()->second - kmin;
    const int amin = degree - (rank - 1) * amax - 1;
    std::vector<SplittingType> found;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int remaining, int bound) {
        if (static_cast<int>(cur.size()) == rank - 1) {
            const int a = remaining;
            if (a > bound || a < amin) return;
            cur.push_back(a);
            SplittingType t{cur};
            bool ok = true;
            for (const auto& [k, h] : profile) ok = ok && t.h0(k) == h;
            if (ok) found.push_back(t);
            cur.pop_back();
            return;
        }
        for (int a = bound; a >= amin; --a) {
            cur.push_back(a);
            rec(remaining - a, a);
            cur.pop_back();
        }
    };
    rec(degree, std::max(amax, kmax));
    if (found.empty()) throw Error("splitting_from_profile: no splitting type reproduces the h0 profile");
    if (found.size() > 1) throw Error("splitting_from_profile: h0 profile does not determine the splitting type");
    return found.front();
}

SplittingType splitting_type_TX(const RationalCurve& c, const QuinticForm& f) {
    return splitting_from_profile(h0_profile(c, f), 3, 0);
}

bool tangent_sections_independent(const RationalCurve& c, const QuinticForm& f) {
    const int d = c.degree();
    const auto g = gradient_on_curve(c, f);
    QPoly t = QPoly::monomial(1, Rational(1));
    QPoly t2 = QPoly::monomial(2, Rational(1));
    std::vector<std::array<QPoly, kVars>> secs(4, c.components());
    for (int i = 0; i < kVars; ++i) {
        const QPoly dc = c.component(i).derivative();
        secs[0][i] = dc;
        secs[1][i] = t * dc;
        secs[2][i] = t * c.component(i) * Rational(d) - t2 * dc;
        secs[3][i] = c.component(i);
    }
    // Each must satisfy the tangency constraint (they are derivatives of
    // f o c under reparametrization).
    for (int s = 0; s < 3; ++s) {
        QPoly sum = QPoly::zero(0, Rational());
        for (int i = 0; i < kVars; ++i) sum = sum + g[i] * secs[s][i];
        if (!sum.is_zero_poly()) return false;
    }
    QMatrix m(4, kVars * (d + 1), Rational());
    for (int s = 0; s < 4; ++s) {
        for (int i = 0; i < kVars; ++i) {
            for (int e = 0; e <= d; ++e) m(s, RationalCurve::index(d, i, e)) = secs[s][i].coeff(e);
        }
    }
    return exact_rank(m) == 4;
}

SplittingType normal_splitting(const RationalCurve& c, const QuinticForm& f) {
    return normal_splitting(c, f, splitting_type_TX(c, f));
}

SplittingType normal_splitting(const RationalCurve& c, const QuinticForm& f, const SplittingType& tx) {
    if (!immersion_check(c)) throw Error("normal_splitting: curve is not immersed");
    const auto it = std::find(tx.summands.begin(), tx.summands.end(), 2);
    if (it == tx.summands.end()) throw Error("normal_splitting: c* T_X has no O(2) summand");
    if (!tangent_sections_independent(c, f)) {
        throw Error("normal_splitting: the O(2) summand is not realized by the tangent sections");
    }
    SplittingType n = tx;
    n.summands.erase(n.summands.begin() + (it - tx.summands.begin()));
    // The quotient profile must itself be a valid h0 profile of n.
    for (int k = kProfileMin; k <= kProfileMax; ++k) {
        if (tx.h0(k) - std::max(0, k + 3) != n.h0(k)) throw InternalError("normal_splitting: inconsistent quotient");
    }
    return n;
}

bool h1_normal_zero(const SplittingType& normal) {
    return std::all_of(normal.summands.begin(), normal.summands.end(), [](int a) { return a >= -1; });
}

}  // namespace clemens
