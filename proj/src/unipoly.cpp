#include "clemens/unipoly.hpp"

namespace clemens {

CPoly to_complex(const QPoly& p, long prec) {
    std::vector<BigComplex> c;
    c.reserve(p.coeffs().size());
    for (const auto& q : p.coeffs()) c.emplace_back(q, prec);
    return CPoly(std::move(c));
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
    const int db = b.degree();
    if (db < 0) throw Error("divmod: division by the zero polynomial");
    std::vector<Rational> r = a.coeffs();
    const int da = a.degree();
    if (da < db) return {QPoly::zero(0, Rational()), QPoly(r).with_formal_degree(std::max(da, 0))};
    std::vector<Rational> q(static_cast<size_t>(da - db) + 1);
    const Rational lead = b[db];
    for (int k = da; k >= db; --k) {
        if (r[k].is_zero()) continue;
        const Rational f = r[k] / lead;
        q[k - db] = f;
        for (int j = 0; j <= db; ++j) r[k - db + j] -= f * b[j];
    }
    r.resize(static_cast<size_t>(std::max(db, 1)));
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly monic(const QPoly& p) {
    const int n = p.degree();
    if (n < 0) return QPoly::zero(0, Rational());
    std::vector<Rational> c(static_cast<size_t>(n) + 1);
    const Rational lead = p[n];
    for (int k = 0; k <= n; ++k) c[k] = p[k] / lead;
    return QPoly(std::move(c));
}

QPoly gcd(const QPoly& a, const QPoly& b) {
    QPoly x = a;
    QPoly y = b;
    while (!y.is_zero_poly()) {
        QPoly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    return monic(x);
}

}  // namespace clemens
