#include "clemens/multiform.hpp"

#include <mutex>

namespace clemens {

std::string exponent_key(const Exponent& e) {
    std::string s;
    for (auto x : e) s += std::to_string(static_cast<int>(x));
    return s;
}

Exponent parse_exponent_key(const std::string& key) {
    if (key.size() != kVars) throw Error("bad exponent key '" + key + "'");
    Exponent e{};
    for (int i = 0; i < kVars; ++i) {
        if (key[i] < '0' || key[i] > '9') throw Error("bad exponent key '" + key + "'");
        e[i] = static_cast<std::uint8_t>(key[i] - '0');
    }
    return e;
}

namespace {

void enumerate(int var, int left, Exponent& cur, std::vector<Exponent>& out) {
    if (var == kVars - 1) {
        cur[var] = static_cast<std::uint8_t>(left);
        out.push_back(cur);
        return;
    }
    for (int k = 0; k <= left; ++k) {
        cur[var] = static_cast<std::uint8_t>(k);
        enumerate(var + 1, left - k, cur, out);
    }
}

}  // namespace

const std::vector<Exponent>& monomials(int deg) {
    static std::mutex mu;
    static std::map<int, std::vector<Exponent>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(deg);
    if (it != cache.end()) return it->second;
    std::vector<Exponent> out;
    Exponent cur{};
    enumerate(0, deg, cur, out);
    return cache.emplace(deg, std::move(out)).first->second;
}

CForm to_complex(const QForm& f, long prec) {
    CForm r(f.degree());
    for (const auto& [e, v] : f.terms()) r.add_term(e, BigComplex(v, prec));
    return r;
}

}  // namespace clemens
