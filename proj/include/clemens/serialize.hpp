#pragma once

#include <string>

#include <json.hpp>

#include "clemens/incidence.hpp"

namespace clemens {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

/// ["re-hex", "im-hex", precision]; exact round-trip.
Json to_json(const BigComplex& z);
BigComplex complex_from_json(const Json& j);

/// Decimal string with `digits` significant digits.
std::string decimal(const BigFloat& x, int digits = 20);

/// Row-major nested lists.
Json to_json(const QMatrix& m);
Json to_json(const CMatrix& m);

/// { "d": int, "components": [["num/den", ...(d+1)], x5] }.
Json to_json(const RationalCurve& c);
RationalCurve curve_from_json(const Json& j);

/// { "degree": int, "terms": { "e0e1e2e3e4": "num/den" } }.
Json to_json(const QForm& f);
QForm form_from_json(const Json& j);

Json to_json(const SpecialPair& p);
SpecialPair special_pair_from_json(const Json& j);

/// Curve block, quintic blocks f0, f1, f2, scalars a, b, seed, the retry log
/// and (for special samples) the coordinate change and q.
Json to_json(const IncidenceSample& s);
IncidenceSample sample_from_json(const Json& j);

Json read_json_file(const std::string& path);
/// Writes `text` to `path`; I/O failures raise Error naming the path.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace clemens
