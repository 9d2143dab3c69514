#include "clemens/serialize.hpp"

#include <fstream>
#include <sstream>

namespace clemens {

Json to_json(const Rational& q) { return q.str(); }

Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    return Rational::parse(j.get<std::string>());
}

Json to_json(const BigComplex& z) { return Json::array({z.real().hex(), z.imag().hex(), z.precision()}); }

BigComplex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3) throw Error("complex_from_json: expected [re, im, precision]");
    const long prec = j[2].get<long>();
    return BigComplex(BigFloat::parse(j[0].get<std::string>(), prec), BigFloat::parse(j[1].get<std::string>(), prec));
}

std::string decimal(const BigFloat& x, int digits) { return x.decimal(digits); }

Json to_json(const QMatrix& m) {
    Json out = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

Json to_json(const CMatrix& m) {
    Json out = Json::array();
    for (int i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

Json to_json(const RationalCurve& c) {
    Json comps = Json::array();
    for (const auto& p : c.components()) {
        Json row = Json::array();
        for (int k = 0; k <= c.degree(); ++k) row.push_back(to_json(p.coeff(k)));
        comps.push_back(std::move(row));
    }
    return Json{{"d", c.degree()}, {"components", std::move(comps)}};
}

RationalCurve curve_from_json(const Json& j) {
    const int d = j.at("d").get<int>();
    const Json& comps = j.at("components");
    if (!comps.is_array() || comps.size() != kVars) throw Error("curve_from_json: expected five components");
    std::vector<Rational> coeffs;
    for (const auto& row : comps) {
        if (!row.is_array() || static_cast<int>(row.size()) != d + 1) {
            throw Error("curve_from_json: each component needs d + 1 coefficients");
        }
        for (const auto& x : row) coeffs.push_back(rational_from_json(x));
    }
    return RationalCurve::from_coefficients(d, coeffs);
}

Json to_json(const QForm& f) {
    Json terms = Json::object();
    for (const auto& [e, v] : f.terms()) terms[exponent_key(e)] = to_json(v);
    return Json{{"degree", f.degree()}, {"terms", std::move(terms)}};
}

QForm form_from_json(const Json& j) {
    QForm f(j.contains("degree") ? j.at("degree").get<int>() : 5);
    for (const auto& [k, v] : j.at("terms").items()) {
        const Exponent e = parse_exponent_key(k);
        int deg = 0;
        for (auto x : e) deg += x;
        if (deg != f.degree()) throw Error("form_from_json: monomial " + k + " has the wrong degree");
        f.add_term(e, rational_from_json(v));
    }
    return f;
}

Json to_json(const SpecialPair& p) {
    Json change = Json::array();
    for (const auto& row : p.change) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(to_json(x));
        change.push_back(std::move(r));
    }
    return Json{{"change", std::move(change)}, {"q", to_json(p.q)}};
}

SpecialPair special_pair_from_json(const Json& j) {
    LinearChange L;
    const Json& rows = j.at("change");
    if (!rows.is_array() || rows.size() != kVars) throw Error("special_pair_from_json: change must be 5x5");
    for (int i = 0; i < kVars; ++i) {
        if (rows[i].size() != kVars) throw Error("special_pair_from_json: change must be 5x5");
        for (int k = 0; k < kVars; ++k) L[i][k] = rational_from_json(rows[i][k]);
    }
    return make_special_pair(L, form_from_json(j.at("q")));
}

Json to_json(const IncidenceSample& s) {
    Json j{{"curve", to_json(s.c)},
           {"f0", to_json(s.f0)},
           {"f1", to_json(s.f1)},
           {"f2", to_json(s.f2)},
           {"a", to_json(s.a)},
           {"b", to_json(s.b)},
           {"seed", s.seed},
           {"special", s.special},
           {"retry_log", s.retry_log}};
    if (s.pair) j["special_pair"] = to_json(*s.pair);
    return j;
}

IncidenceSample sample_from_json(const Json& j) {
    IncidenceSample s{curve_from_json(j.at("curve"))};
    s.d = s.c.degree();
    s.f0 = form_from_json(j.at("f0"));
    s.f1 = form_from_json(j.at("f1"));
    s.f2 = form_from_json(j.at("f2"));
    s.a = rational_from_json(j.at("a"));
    s.b = rational_from_json(j.at("b"));
    s.seed = j.value("seed", std::uint64_t{0});
    s.special = j.value("special", false);
    if (j.contains("retry_log")) s.retry_log = j.at("retry_log").get<std::vector<std::string>>();
    if (j.contains("special_pair")) {
        s.pair = special_pair_from_json(j.at("special_pair"));
        if (!(s.pair->f1 == s.f1 && s.pair->f2 == s.f2)) throw Error("sample_from_json: special pair does not match f1, f2");
    }
    return s;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "' for reading");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw Error("'" + path + "': " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << text;
    out.close();
    if (!out) throw Error("write to '" + path + "' failed");
}

}  // namespace clemens
